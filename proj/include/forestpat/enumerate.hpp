#pragma once

#include "forestpat/bigint.hpp"
#include "forestpat/error.hpp"
#include "forestpat/forest.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <thread>
#include <utility>
#include <vector>

namespace forestpat {

// Exhaustive enumeration of all unordered rooted labeled forests on a fixed
// label set, i.e. all acyclic parent maps. There are (n+1)^(n-1) of them.
//
// Order is lexicographic over the parent vector indexed by sorted labels,
// with ROOT ordered before all labels, so streams are reproducible.
//
// The callback receives a reference to a single reused LabeledForest; copy it
// if it must outlive the callback.
class ForestEnumerator {
  public:
    explicit ForestEnumerator(std::vector<int> labels) : labels_(std::move(labels)) {
        std::sort(labels_.begin(), labels_.end());
        n_ = static_cast<int>(labels_.size());
        parent_.assign(static_cast<size_t>(n_), LabeledForest::kRoot);
    }

    // Partitions split the stream by the parent choice of the smallest label.
    // Each partition is an independent stream; concatenating them in order
    // reproduces the full stream.
    int partition_count() const { return n_ <= 1 ? 1 : n_; }

    template <typename Fn>
    void run(Fn&& fn) {
        for (int p = 0; p < partition_count(); ++p) run_partition(p, fn);
    }

    template <typename Fn>
    void run_partition(int part, Fn&& fn) {
        if (n_ == 0) {
            if (part == 0) emit(fn);
            return;
        }
        // Candidate parents of vertex 0, in enumeration order: ROOT, 1, .., n-1.
        int cand = (part == 0) ? LabeledForest::kRoot : part;
        if (cand >= n_) return;
        parent_[0] = cand;
        assign(1, fn);
        parent_[0] = LabeledForest::kRoot;
    }

    // Trees on the label set: single-root members, enumerated with roots in
    // increasing label order. Count is n^(n-1).
    template <typename Fn>
    void run_trees(Fn&& fn) {
        if (n_ == 0) throw error(errc::empty_label_set, "no trees on zero vertices");
        for (int r = 0; r < n_; ++r) run_trees_rooted_at(r, fn);
    }

    template <typename Fn>
    void run_trees_rooted_at(int root, Fn&& fn) {
        root_ = root;
        parent_[static_cast<size_t>(root)] = LabeledForest::kRoot;
        assign_tree(root == 0 ? 1 : 0, fn);
        root_ = -1;
    }

    const std::vector<int>& labels() const { return labels_; }

  private:
    template <typename Fn>
    void emit(Fn&& fn) {
        LabeledForest f = LabeledForest::from_indexed(labels_, parent_);
        fn(static_cast<const LabeledForest&>(f));
    }

    // Following assigned parents from j either reaches ROOT, an unassigned
    // vertex (index >= limit), or a cycle through `target`.
    bool creates_cycle(int j, int target, int limit) const {
        while (j != LabeledForest::kRoot) {
            if (j == target) return true;
            if (j >= limit && j != root_in_progress()) return false; // unassigned yet
            j = parent_[static_cast<size_t>(j)];
        }
        return false;
    }

    int root_in_progress() const { return root_; }

    template <typename Fn>
    void assign(int i, Fn&& fn) {
        if (i == n_) {
            emit(fn);
            return;
        }
        parent_[static_cast<size_t>(i)] = LabeledForest::kRoot;
        assign(i + 1, fn);
        for (int p = 0; p < n_; ++p) {
            if (p == i) continue;
            if (creates_cycle(p, i, i)) continue;
            parent_[static_cast<size_t>(i)] = p;
            assign(i + 1, fn);
        }
        parent_[static_cast<size_t>(i)] = LabeledForest::kRoot;
    }

    template <typename Fn>
    void assign_tree(int i, Fn&& fn) {
        if (i == n_) {
            emit(fn);
            return;
        }
        if (i == root_) {
            assign_tree(i + 1, fn);
            return;
        }
        for (int p = 0; p < n_; ++p) {
            if (p == i) continue;
            if (creates_cycle(p, i, i)) continue;
            parent_[static_cast<size_t>(i)] = p;
            assign_tree(i + 1, fn);
        }
        parent_[static_cast<size_t>(i)] = LabeledForest::kRoot;
    }

    std::vector<int> labels_;
    std::vector<int> parent_;
    int n_ = 0;
    int root_ = -1;
};

template <typename Fn>
void for_each_forest(std::vector<int> labels, Fn&& fn) {
    ForestEnumerator(std::move(labels)).run(fn);
}

template <typename Fn>
void for_each_tree(std::vector<int> labels, Fn&& fn) {
    ForestEnumerator(std::move(labels)).run_trees(fn);
}

inline std::vector<int> range_labels(int n) {
    std::vector<int> v(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = i + 1;
    return v;
}

// Fans enumeration out over partitions; per_partition(part) must be
// independent of other partitions. Results are merged in partition order,
// so the total is deterministic regardless of worker count.
inline BigInt parallel_forest_count(const std::vector<int>& labels, int workers,
                                    const std::function<BigInt(int)>& per_partition) {
    ForestEnumerator proto(labels);
    int parts = proto.partition_count();
    if (workers <= 1 || parts <= 1) {
        BigInt total = 0;
        for (int p = 0; p < parts; ++p) total += per_partition(p);
        return total;
    }
    std::vector<BigInt> results(static_cast<size_t>(parts));
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    int nthreads = std::min(workers, parts);
    for (int t = 0; t < nthreads; ++t) {
        pool.emplace_back([&]() {
            for (;;) {
                int p = next.fetch_add(1);
                if (p >= parts) return;
                results[static_cast<size_t>(p)] = per_partition(p);
            }
        });
    }
    for (auto& th : pool) th.join();
    BigInt total = 0;
    for (const auto& r : results) total += r;
    return total;
}

} // namespace forestpat
