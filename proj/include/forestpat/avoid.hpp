#pragma once

#include "forestpat/bigint.hpp"
#include "forestpat/config.hpp"
#include "forestpat/enumerate.hpp"
#include "forestpat/error.hpp"
#include "forestpat/forest.hpp"
#include "forestpat/pattern.hpp"

#include <atomic>
#include <functional>
#include <map>
#include <span>
#include <vector>

namespace forestpat {

enum class Universe { Forest, Tree };

namespace detail {

// True if some (k-1)-subset of path[0..end) extended by path[end] matches
// sigma, i.e. an instance of sigma ends exactly at path[end].
inline bool instance_ending_at(std::span<const int> path, size_t end, const Pattern& sigma) {
    int k = sigma.size();
    if (static_cast<int>(end) + 1 < k) return false;
    const std::vector<int>& sig = sigma.entries();
    // Backtracking over ancestor positions, rightmost pattern slot first.
    std::vector<int> chosen(static_cast<size_t>(k));
    chosen[static_cast<size_t>(k) - 1] = path[end];
    std::function<bool(int, size_t)> pick = [&](int slot, size_t hi) -> bool {
        if (slot < 0) return true;
        for (size_t pos = hi; pos-- > 0;) {
            int v = path[pos];
            bool ok = true;
            for (int j = slot + 1; j < k; ++j) {
                if ((v < chosen[static_cast<size_t>(j)]) !=
                    (sig[static_cast<size_t>(slot)] < sig[static_cast<size_t>(j)])) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            chosen[static_cast<size_t>(slot)] = v;
            if (pick(slot - 1, pos)) return true;
        }
        return false;
    };
    return pick(k - 2, end);
}

inline bool window_matches(std::span<const int> path, size_t end, const Pattern& sigma) {
    int k = sigma.size();
    if (static_cast<int>(end) + 1 < k) return false;
    return matches_pattern(path.subspan(end + 1 - static_cast<size_t>(k), static_cast<size_t>(k)),
                           sigma);
}

template <typename Visit>
void dfs_paths(const LabeledForest& f, Visit&& visit) {
    std::vector<int> path;   // labels along the current root path
    std::vector<int> stack;  // vertex indices; -2 marks "pop path"
    for (int r = f.size() - 1; r >= 0; --r)
        if (f.is_root(r)) stack.push_back(r);
    bool stop = false;
    while (!stack.empty() && !stop) {
        int v = stack.back();
        stack.pop_back();
        if (v == -2) {
            path.pop_back();
            continue;
        }
        path.push_back(f.label(v));
        stop = visit(std::span<const int>(path), v);
        if (stop) break;
        stack.push_back(-2);
        const auto& ch = f.children_of(v);
        for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
    }
}

} // namespace detail

// True iff some root-to-vertex label path has a subsequence (Classical) or
// contiguous window (Consecutive) order-isomorphic to sigma. Checks run
// per vertex against instances ending there, so containment exits early.
inline bool contains(const LabeledForest& f, const Pattern& sigma, AvoidanceMode mode) {
    bool found = false;
    detail::dfs_paths(f, [&](std::span<const int> path, int) {
        bool hit = (mode == AvoidanceMode::Classical)
                       ? detail::instance_ending_at(path, path.size() - 1, sigma)
                       : detail::window_matches(path, path.size() - 1, sigma);
        if (hit) found = true;
        return hit;
    });
    return found;
}

// Second oracle, kept independent of `contains`: collects every root-to-leaf
// path and exhaustively tests all k-subsequences / k-windows of each.
inline bool contains_naive(const LabeledForest& f, const Pattern& sigma, AvoidanceMode mode) {
    int k = sigma.size();
    std::vector<std::vector<int>> leaf_paths;
    std::vector<int> path;
    std::function<void(int)> walk = [&](int v) {
        path.push_back(f.label(v));
        if (f.children_of(v).empty()) leaf_paths.push_back(path);
        for (int c : f.children_of(v)) walk(c);
        path.pop_back();
    };
    for (int r = 0; r < f.size(); ++r)
        if (f.is_root(r)) walk(r);

    for (const auto& p : leaf_paths) {
        int d = static_cast<int>(p.size());
        if (d < k) continue;
        if (mode == AvoidanceMode::Consecutive) {
            for (int s = 0; s + k <= d; ++s)
                if (matches_pattern(std::span<const int>(p).subspan(static_cast<size_t>(s),
                                                                    static_cast<size_t>(k)),
                                    sigma))
                    return true;
        } else {
            std::vector<int> idx(static_cast<size_t>(k));
            std::vector<int> sub(static_cast<size_t>(k));
            std::function<bool(int, int)> choose = [&](int slot, int from) -> bool {
                if (slot == k) {
                    for (int j = 0; j < k; ++j)
                        sub[static_cast<size_t>(j)] = p[static_cast<size_t>(idx[static_cast<size_t>(j)])];
                    return matches_pattern(sub, sigma);
                }
                for (int i = from; i <= d - (k - slot); ++i) {
                    idx[static_cast<size_t>(slot)] = i;
                    if (choose(slot + 1, i + 1)) return true;
                }
                return false;
            };
            if (choose(0, 0)) return true;
        }
    }
    return false;
}

inline bool avoids(const LabeledForest& f, const PatternSet& s, AvoidanceMode mode) {
    for (const auto& p : s.patterns())
        if (contains(f, p, mode)) return false;
    return true;
}

// Number of distinct parent-chains of length k order-isomorphic to sigma.
inline int count_consecutive_instances(const LabeledForest& f, const Pattern& sigma) {
    int count = 0;
    detail::dfs_paths(f, [&](std::span<const int> path, int) {
        if (detail::window_matches(path, path.size() - 1, sigma)) ++count;
        return false;
    });
    return count;
}

// |{X in the universe on [n] : X avoids every pattern of S in the mode}|,
// by exhaustive enumeration. Guarded by cfg.oracle_cap.
inline BigInt count_avoiding(int n, const PatternSet& s, AvoidanceMode mode, Universe universe,
                             const RunConfig& cfg = RunConfig()) {
    if (n > cfg.oracle_cap)
        throw error(errc::cap_exceeded, "n=" + std::to_string(n) + " exceeds oracle cap " +
                                            std::to_string(cfg.oracle_cap) +
                                            "; use a recurrence instead");
    if (n == 0) {
        if (universe == Universe::Tree) return 0;
        return 1; // the empty forest avoids everything
    }
    auto labels = range_labels(n);
    auto count_part = [&](int part) {
        BigInt c = 0;
        ForestEnumerator en(labels);
        if (universe == Universe::Forest) {
            en.run_partition(part, [&](const LabeledForest& f) {
                if (avoids(f, s, mode)) ++c;
            });
        } else {
            en.run_trees_rooted_at(part, [&](const LabeledForest& f) {
                if (avoids(f, s, mode)) ++c;
            });
        }
        return c;
    };
    int parts = (universe == Universe::Forest) ? ForestEnumerator(labels).partition_count() : n;
    BigInt total = 0;
    if (cfg.workers <= 1) {
        for (int p = 0; p < parts; ++p) total += count_part(p);
    } else {
        std::vector<BigInt> results(static_cast<size_t>(parts));
        std::vector<std::thread> pool;
        std::atomic<int> next{0};
        int nthreads = std::min(cfg.workers, parts);
        for (int t = 0; t < nthreads; ++t)
            pool.emplace_back([&]() {
                for (;;) {
                    int p = next.fetch_add(1);
                    if (p >= parts) return;
                    results[static_cast<size_t>(p)] = count_part(p);
                }
            });
        for (auto& th : pool) th.join();
        for (const auto& r : results) total += r;
    }
    return total;
}

// f_{n,m}: forests on [n] keyed by their exact number of consecutive
// instances of sigma. Values sum to (n+1)^(n-1).
inline std::map<int, BigInt> count_by_instances(int n, const Pattern& sigma,
                                                const RunConfig& cfg = RunConfig()) {
    if (n > cfg.oracle_cap)
        throw error(errc::cap_exceeded, "n=" + std::to_string(n) + " exceeds oracle cap " +
                                            std::to_string(cfg.oracle_cap));
    std::map<int, BigInt> out;
    if (n == 0) {
        out[0] = 1;
        return out;
    }
    for_each_forest(range_labels(n), [&](const LabeledForest& f) {
        out[count_consecutive_instances(f, sigma)] += 1;
    });
    return out;
}

} // namespace forestpat
