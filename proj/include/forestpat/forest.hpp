#pragma once

#include "forestpat/error.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace forestpat {

// An unordered rooted labeled forest: a finite set of distinct positive
// integer labels plus an acyclic parent map. A forest IS its parent map;
// children are unordered and equality compares label sets and parent maps.
//
// Internally vertices are indexed 0..n-1 in increasing label order, with
// parent_idx[i] in {-1 (root), 0..n-1}.
class LabeledForest {
  public:
    static constexpr int kRoot = -1;

    LabeledForest() = default;

    // parent_of_label: pairs (label, parent label or 0 for root).
    static LabeledForest from_parent_map(const std::map<int, int>& parent_of_label) {
        std::vector<int> labels;
        labels.reserve(parent_of_label.size());
        for (const auto& [v, p] : parent_of_label) labels.push_back(v);
        LabeledForest f;
        f.labels_ = std::move(labels);
        f.parent_.assign(f.labels_.size(), kRoot);
        for (const auto& [v, p] : parent_of_label) {
            if (p == 0) continue;
            int ci = f.index_of(v);
            int pi = f.find_index(p);
            if (pi < 0)
                throw error(errc::unknown_label,
                            "parent " + std::to_string(p) + " is not a vertex");
            f.parent_[static_cast<size_t>(ci)] = pi;
        }
        f.validate_acyclic();
        f.rebuild_children();
        return f;
    }

    // labels must be sorted ascending and distinct; parent_idx as described above.
    static LabeledForest from_indexed(std::vector<int> labels, std::vector<int> parent_idx) {
        LabeledForest f;
        f.labels_ = std::move(labels);
        f.parent_ = std::move(parent_idx);
        f.validate_acyclic();
        f.rebuild_children();
        return f;
    }

    int size() const { return static_cast<int>(labels_.size()); }
    bool empty() const { return labels_.empty(); }
    const std::vector<int>& labels() const { return labels_; }
    const std::vector<int>& parent_idx() const { return parent_; }

    int label(int idx) const { return labels_[static_cast<size_t>(idx)]; }

    // Index of a label, or -1 if absent.
    int find_index(int lab) const {
        auto it = std::lower_bound(labels_.begin(), labels_.end(), lab);
        if (it == labels_.end() || *it != lab) return -1;
        return static_cast<int>(it - labels_.begin());
    }

    int index_of(int lab) const {
        int i = find_index(lab);
        if (i < 0) throw error(errc::unknown_label, "label " + std::to_string(lab));
        return i;
    }

    bool is_root(int idx) const { return parent_[static_cast<size_t>(idx)] == kRoot; }
    int parent_of(int idx) const { return parent_[static_cast<size_t>(idx)]; }

    const std::vector<int>& children_of(int idx) const {
        return children_[static_cast<size_t>(idx)];
    }

    std::vector<int> root_indices() const {
        std::vector<int> r;
        for (int i = 0; i < size(); ++i)
            if (is_root(i)) r.push_back(i);
        return r;
    }

    bool is_tree() const { return size() >= 1 && root_indices().size() == 1; }

    // Root depth is 1.
    int depth_of(int idx) const {
        int d = 1;
        while (parent_[static_cast<size_t>(idx)] != kRoot) {
            idx = parent_[static_cast<size_t>(idx)];
            ++d;
        }
        return d;
    }

    // Labels from the root of v's tree down to v, inclusive.
    std::vector<int> root_path(int v_label) const {
        int i = index_of(v_label);
        std::vector<int> path;
        for (int j = i; j != kRoot; j = parent_[static_cast<size_t>(j)])
            path.push_back(labels_[static_cast<size_t>(j)]);
        std::reverse(path.begin(), path.end());
        return path;
    }

    // Indices of the subtree rooted at idx (preorder), including idx.
    std::vector<int> subtree_indices(int idx) const {
        std::vector<int> out;
        out.push_back(idx);
        for (size_t q = 0; q < out.size(); ++q)
            for (int c : children_[static_cast<size_t>(out[q])]) out.push_back(c);
        return out;
    }

    bool is_ancestor(int anc_idx, int idx) const {
        for (int j = idx; j != kRoot; j = parent_[static_cast<size_t>(j)])
            if (j == anc_idx) return true;
        return false;
    }

    // Vertex labeled i becomes n+1-i; requires label set {1..n}.
    LabeledForest complement() const {
        int n = size();
        for (int i = 0; i < n; ++i)
            if (labels_[static_cast<size_t>(i)] != i + 1)
                throw error(errc::noncontiguous_labels, "complement needs labels {1..n}");
        // label i+1 -> n-i, so index i maps to index n-1-i; structure fixed.
        std::vector<int> par(static_cast<size_t>(n), kRoot);
        for (int i = 0; i < n; ++i) {
            int p = parent_[static_cast<size_t>(i)];
            par[static_cast<size_t>(n - 1 - i)] = (p == kRoot) ? kRoot : n - 1 - p;
        }
        return from_indexed(labels_, std::move(par));
    }

    // The constituent trees as separate forests (label sets preserved).
    std::vector<LabeledForest> split_trees() const {
        std::vector<LabeledForest> out;
        for (int r = 0; r < size(); ++r) {
            if (!is_root(r)) continue;
            std::vector<int> idxs = subtree_indices(r);
            std::sort(idxs.begin(), idxs.end());
            std::vector<int> labs;
            labs.reserve(idxs.size());
            std::vector<int> remap(static_cast<size_t>(size()), -1);
            for (size_t i = 0; i < idxs.size(); ++i) {
                labs.push_back(labels_[static_cast<size_t>(idxs[i])]);
                remap[static_cast<size_t>(idxs[i])] = static_cast<int>(i);
            }
            std::vector<int> par(idxs.size(), kRoot);
            for (size_t i = 0; i < idxs.size(); ++i) {
                int p = parent_[static_cast<size_t>(idxs[i])];
                if (p != kRoot) par[i] = remap[static_cast<size_t>(p)];
            }
            out.push_back(from_indexed(std::move(labs), std::move(par)));
        }
        return out;
    }

    // Relabel order-isomorphically onto {1..n}.
    LabeledForest normalized() const {
        std::vector<int> labs(static_cast<size_t>(size()));
        for (int i = 0; i < size(); ++i) labs[static_cast<size_t>(i)] = i + 1;
        return from_indexed(std::move(labs), parent_);
    }

    bool operator==(const LabeledForest& o) const {
        return labels_ == o.labels_ && parent_ == o.parent_;
    }
    bool operator!=(const LabeledForest& o) const { return !(*this == o); }
    bool operator<(const LabeledForest& o) const {
        if (labels_ != o.labels_) return labels_ < o.labels_;
        return parent_ < o.parent_;
    }

    // "{1<-ROOT, 2<-1}" style, for diagnostics.
    std::string str() const {
        std::string s = "{";
        for (int i = 0; i < size(); ++i) {
            if (i) s += ", ";
            s += std::to_string(labels_[static_cast<size_t>(i)]);
            s += "<-";
            int p = parent_[static_cast<size_t>(i)];
            s += (p == kRoot) ? "ROOT" : std::to_string(labels_[static_cast<size_t>(p)]);
        }
        return s + "}";
    }

  private:
    void validate_acyclic() const {
        int n = size();
        if (static_cast<int>(parent_.size()) != n)
            throw error(errc::internal, "parent vector size mismatch");
        for (int i = 1; i < n; ++i)
            if (labels_[static_cast<size_t>(i - 1)] >= labels_[static_cast<size_t>(i)])
                throw error(errc::internal, "labels must be sorted and distinct");
        if (n > 0 && labels_[0] < 1)
            throw error(errc::internal, "labels must be positive");
        std::vector<int> state(static_cast<size_t>(n), 0); // 0 unvisited, 1 active, 2 done
        for (int i = 0; i < n; ++i) {
            int j = i;
            while (j != kRoot && state[static_cast<size_t>(j)] == 0) {
                state[static_cast<size_t>(j)] = 1;
                j = parent_[static_cast<size_t>(j)];
                if (j != kRoot && (j < 0 || j >= n))
                    throw error(errc::internal, "parent index out of range");
            }
            if (j != kRoot && state[static_cast<size_t>(j)] == 1)
                throw error(errc::internal, "parent map has a cycle");
            int k = i;
            while (k != kRoot && state[static_cast<size_t>(k)] == 1) {
                state[static_cast<size_t>(k)] = 2;
                k = parent_[static_cast<size_t>(k)];
            }
        }
    }

    void rebuild_children() {
        children_.assign(labels_.size(), {});
        for (int i = 0; i < size(); ++i) {
            int p = parent_[static_cast<size_t>(i)];
            if (p != kRoot) children_[static_cast<size_t>(p)].push_back(i);
        }
    }

    std::vector<int> labels_;            // sorted ascending
    std::vector<int> parent_;            // parallel to labels_, kRoot for roots
    std::vector<std::vector<int>> children_; // derived, ascending label order
};

} // namespace forestpat
