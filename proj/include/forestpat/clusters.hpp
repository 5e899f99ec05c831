#pragma once

#include "forestpat/avoid.hpp"
#include "forestpat/bigint.hpp"
#include "forestpat/config.hpp"
#include "forestpat/enumerate.hpp"
#include "forestpat/error.hpp"
#include "forestpat/forest.hpp"
#include "forestpat/pattern.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace forestpat {

// A rooted tree with distinct labels plus a set of highlighted consecutive
// instances of sigma: every vertex covered, overlap graph connected. The
// label set need not be an integer interval.
struct ForestCluster {
    LabeledForest tree;
    std::vector<std::vector<int>> instances; // label sequences, starting point first

    int size() const { return tree.size(); }
    int instance_count() const { return static_cast<int>(instances.size()); }

    bool validate(const Pattern& sigma, std::string* why = nullptr) const {
        auto fail = [&](const std::string& msg) {
            if (why) *why = msg;
            return false;
        };
        if (!tree.is_tree()) return fail("not a single-rooted tree");
        if (instances.empty()) return fail("no highlighted instances");
        int k = sigma.size();
        std::vector<unsigned> masks;
        for (const auto& inst : instances) {
            if (static_cast<int>(inst.size()) != k) return fail("instance length mismatch");
            unsigned mask = 0;
            for (size_t i = 0; i < inst.size(); ++i) {
                int idx = tree.find_index(inst[i]);
                if (idx < 0) return fail("instance label not in tree");
                if (i > 0 && tree.label(tree.parent_of(idx)) != inst[i - 1])
                    return fail("instance is not a parent chain");
                mask |= 1u << idx;
            }
            if (!matches_pattern(inst, sigma)) return fail("instance not order-isomorphic");
            masks.push_back(mask);
        }
        std::sort(masks.begin(), masks.end());
        if (std::adjacent_find(masks.begin(), masks.end()) != masks.end())
            return fail("duplicate instance");
        unsigned cover = 0;
        for (unsigned m : masks) cover |= m;
        if (cover != (1u << tree.size()) - 1) return fail("vertices left uncovered");
        // overlap-graph connectivity via union-find on shared vertices
        std::vector<size_t> uf(masks.size());
        for (size_t i = 0; i < uf.size(); ++i) uf[i] = i;
        std::function<size_t(size_t)> find = [&](size_t x) {
            return uf[x] == x ? x : uf[x] = find(uf[x]);
        };
        for (size_t i = 0; i < masks.size(); ++i)
            for (size_t j = i + 1; j < masks.size(); ++j)
                if (masks[i] & masks[j]) uf[find(i)] = find(j);
        for (size_t i = 1; i < masks.size(); ++i)
            if (find(i) != find(0)) return fail("overlap graph disconnected");
        return true;
    }
};

// r_{n,m} for one pattern.
class ClusterTable {
  public:
    ClusterTable() = default;
    ClusterTable(Pattern sigma, int max_n) : sigma_(std::move(sigma)), max_n_(max_n) {}

    const Pattern& sigma() const { return sigma_; }
    int max_n() const { return max_n_; }

    void add(int n, int m, BigInt v = 1) { r_[{n, m}] += v; }

    BigInt r(int n, int m) const {
        if (n > max_n_)
            throw error(errc::missing_cluster_data,
                        "table for " + sigma_.str() + " holds n <= " + std::to_string(max_n_));
        auto it = r_.find({n, m});
        return it == r_.end() ? BigInt(0) : it->second;
    }

    const std::map<std::pair<int, int>, BigInt>& entries() const { return r_; }

    bool operator==(const ClusterTable& o) const { return r_ == o.r_; }

  private:
    Pattern sigma_;
    int max_n_ = 0;
    std::map<std::pair<int, int>, BigInt> r_;
};

namespace detail {

// All length-k parent chains of a tree, as (label sequence, vertex mask).
struct Chain {
    std::vector<int> labels; // starting point first
    unsigned mask;
};

inline std::vector<Chain> all_chains(const LabeledForest& t, int k) {
    std::vector<Chain> out;
    for (int v = 0; v < t.size(); ++v) {
        std::vector<int> idxs;
        int j = v;
        for (int step = 0; step < k && j != LabeledForest::kRoot; ++step) {
            idxs.push_back(j);
            j = t.parent_of(j);
        }
        if (static_cast<int>(idxs.size()) < k) continue;
        std::reverse(idxs.begin(), idxs.end());
        Chain c;
        c.mask = 0;
        for (int idx : idxs) {
            c.labels.push_back(t.label(idx));
            c.mask |= 1u << idx;
        }
        out.push_back(std::move(c));
    }
    return out;
}

inline bool subset_covers_and_connects(const std::vector<unsigned>& masks, unsigned subset,
                                       unsigned full) {
    unsigned cover = 0;
    std::vector<unsigned> chosen;
    for (size_t i = 0; i < masks.size(); ++i)
        if (subset & (1u << i)) {
            cover |= masks[i];
            chosen.push_back(masks[i]);
        }
    if (cover != full) return false;
    // BFS on the overlap graph
    std::vector<bool> seen(chosen.size(), false);
    std::vector<size_t> queue = {0};
    seen[0] = true;
    unsigned reached = chosen[0];
    while (!queue.empty()) {
        size_t cur = queue.back();
        queue.pop_back();
        for (size_t i = 0; i < chosen.size(); ++i)
            if (!seen[i] && (chosen[i] & chosen[cur])) {
                seen[i] = true;
                reached |= chosen[i];
                queue.push_back(i);
            }
    }
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

} // namespace detail

// Streams every m-forest cluster on [n] (all m >= 1) with respect to sigma.
template <typename Fn>
void for_each_cluster(const Pattern& sigma, int n, Fn&& fn, const RunConfig& cfg = RunConfig()) {
    int k = sigma.size();
    if (n > cfg.cluster_cap(k))
        throw error(errc::cap_exceeded,
                    "cluster enumeration capped at n = " + std::to_string(cfg.cluster_cap(k)));
    if (n < k) return; // no instance fits
    unsigned full = (1u << n) - 1;
    for_each_tree(range_labels(n), [&](const LabeledForest& t) {
        std::vector<detail::Chain> chains = detail::all_chains(t, k);
        std::vector<const detail::Chain*> inst;
        unsigned cover = 0;
        for (const auto& c : chains)
            if (matches_pattern(c.labels, sigma)) {
                inst.push_back(&c);
                cover |= c.mask;
            }
        if (cover != full || inst.empty()) return;
        std::vector<unsigned> masks;
        for (const auto* c : inst) masks.push_back(c->mask);
        unsigned subsets = 1u << inst.size();
        for (unsigned s = 1; s < subsets; ++s) {
            if (!detail::subset_covers_and_connects(masks, s, full)) continue;
            ForestCluster cluster;
            cluster.tree = t;
            for (size_t i = 0; i < inst.size(); ++i)
                if (s & (1u << i)) cluster.instances.push_back(inst[i]->labels);
            fn(static_cast<const ForestCluster&>(cluster));
        }
    });
}

inline ClusterTable cluster_table(const Pattern& sigma, int max_n,
                                  const RunConfig& cfg = RunConfig()) {
    ClusterTable table(sigma, max_n);
    for (int n = 1; n <= max_n; ++n)
        for_each_cluster(
            sigma, n, [&](const ForestCluster& c) { table.add(n, c.instance_count()); }, cfg);
    return table;
}

// Tables for many same-length patterns in one enumeration pass per n.
inline std::map<Pattern, ClusterTable> cluster_tables(const std::vector<Pattern>& sigmas,
                                                      int max_n,
                                                      const RunConfig& cfg = RunConfig()) {
    check(!sigmas.empty(), "need at least one pattern");
    int k = sigmas.front().size();
    for (const auto& s : sigmas) check(s.size() == k, "patterns must share a length");
    if (max_n > cfg.cluster_cap(k))
        throw error(errc::cap_exceeded,
                    "cluster enumeration capped at n = " + std::to_string(cfg.cluster_cap(k)));
    std::map<Pattern, ClusterTable> out;
    for (const auto& s : sigmas) out.emplace(s, ClusterTable(s, max_n));
    for (int n = k; n <= max_n; ++n) {
        unsigned full = (1u << n) - 1;
        for_each_tree(range_labels(n), [&](const LabeledForest& t) {
            std::vector<detail::Chain> chains = detail::all_chains(t, k);
            if (chains.empty()) return;
            for (const auto& sigma : sigmas) {
                std::vector<unsigned> masks;
                unsigned cover = 0;
                for (const auto& c : chains)
                    if (matches_pattern(c.labels, sigma)) {
                        masks.push_back(c.mask);
                        cover |= c.mask;
                    }
                if (cover != full || masks.empty()) continue;
                unsigned subsets = 1u << masks.size();
                auto& table = out.at(sigma);
                for (unsigned s = 1; s < subsets; ++s)
                    if (detail::subset_covers_and_connects(masks, s, full))
                        table.add(n, __builtin_popcount(s));
            }
        });
    }
    return out;
}

// r_{2k-1,2} = C(2k-1,k) - C(2s-2,s-1) C(2k-2s,k-s)/2 with s = sigma(1).
inline BigInt r_closed_form(const Pattern& sigma) {
    int k = sigma.size();
    int s = sigma(1);
    BigInt overcount = binomial(2 * s - 2, s - 1) * binomial(2 * k - 2 * s, k - s);
    check(overcount % 2 == 0, "overcount term must be even");
    return binomial(2 * k - 1, k) - overcount / 2;
}

// The mutually recursive count system determined by a cluster table:
// F(n,i,m) forests with i pots and m highlighted instances, T(n,m) trees,
// f(n,m) forests with exactly m instances.
class ClusterCounts {
  public:
    ClusterCounts(const ClusterTable& table, int max_n)
        : max_n_(max_n), F_(dims(max_n)), T_(static_cast<size_t>(max_n) + 1) {
        if (table.max_n() < max_n)
            throw error(errc::missing_cluster_data, "cluster table too small");
        int mm = max_n; // m never exceeds n: instances have distinct endpoints
        for (int n = 0; n <= max_n_; ++n) {
            T_[static_cast<size_t>(n)].assign(static_cast<size_t>(mm) + 1, 0);
            if (n >= 1) {
                for (int m = 0; m <= mm; ++m) {
                    BigInt v = BigInt(n) * F(n - 1, 1, m);
                    for (int l = 1; l <= n; ++l)
                        for (int j = 1; j <= m; ++j)
                            v += binomial(n, l) * table.r(l, j) * F(n - l, l, m - j);
                    T_[static_cast<size_t>(n)][static_cast<size_t>(m)] = v;
                }
            }
            for (int i = 0; i <= max_n_; ++i) {
                for (int m = 0; m <= mm; ++m) {
                    BigInt v;
                    if (n == 0) {
                        v = (m == 0) ? 1 : 0;
                    } else {
                        v = 0;
                        for (int l = 1; l <= n; ++l) {
                            BigInt inner = 0;
                            for (int j = 0; j <= m; ++j)
                                inner += T(l, j) * F(n - l, i, m - j);
                            v += BigInt(i) * binomial(n - 1, l - 1) * inner;
                        }
                    }
                    F_at(n, i, m) = v;
                }
            }
        }
    }

    BigInt F(int n, int i, int m) const {
        if (m < 0 || n < 0) return 0;
        check(n <= max_n_ && i <= max_n_ && m <= max_n_, "ClusterCounts index out of range");
        return F_[index(n, i, m)];
    }

    BigInt T(int n, int m) const {
        if (m < 0 || n < 0) return 0;
        if (m > max_n_) return 0;
        return T_[static_cast<size_t>(n)][static_cast<size_t>(m)];
    }

    // f_{n,m} by inclusion-exclusion over highlighted supersets.
    BigInt f(int n, int m) const {
        BigInt v = 0;
        for (int i = 0; m + i <= max_n_; ++i) {
            BigInt term = binomial(m + i, m) * F(n, 1, m + i);
            v += (i % 2 == 0) ? term : -term;
        }
        return v;
    }

    // F(n,1,m) = sum_i C(m+i,m) f_{n,m+i}; the inverse of f(). fvals is the
    // row of exact counts for one n.
    static BigInt F_from_f(int m, const std::map<int, BigInt>& fvals) {
        BigInt v = 0;
        for (const auto& [mm, cnt] : fvals)
            if (mm >= m) v += binomial(mm, m) * cnt;
        return v;
    }

    int max_n() const { return max_n_; }

  private:
    static size_t dims(int max_n) {
        size_t d = static_cast<size_t>(max_n) + 1;
        return d * d * d;
    }
    size_t index(int n, int i, int m) const {
        size_t d = static_cast<size_t>(max_n_) + 1;
        return (static_cast<size_t>(n) * d + static_cast<size_t>(i)) * d +
               static_cast<size_t>(m);
    }
    BigInt& F_at(int n, int i, int m) { return F_[index(n, i, m)]; }

    int max_n_;
    std::vector<BigInt> F_;
    std::vector<std::vector<BigInt>> T_;
};

// Inverse direction: recover the cluster numbers from the f_{n,m} data
// (e.g. from the enumeration oracle).
inline ClusterTable table_from_fvalues(const Pattern& sigma,
                                       const std::vector<std::map<int, BigInt>>& f_by_n) {
    int max_n = static_cast<int>(f_by_n.size()) - 1;
    ClusterTable table(sigma, max_n);
    size_t d = static_cast<size_t>(max_n) + 1;
    std::vector<BigInt> F(d * d * d, 0);
    auto f_at = [&](int n, int i, int m) -> BigInt& {
        return F[(static_cast<size_t>(n) * d + static_cast<size_t>(i)) * d +
                 static_cast<size_t>(m)];
    };
    std::vector<std::vector<BigInt>> T(d, std::vector<BigInt>(d, 0));
    for (int n = 0; n <= max_n; ++n) {
        // F(n,1,m) from the f-values
        for (int m = 0; m <= max_n; ++m) {
            BigInt v = 0;
            for (const auto& [mm, cnt] : f_by_n[static_cast<size_t>(n)])
                if (mm >= m) v += binomial(mm, m) * cnt;
            f_at(n, 1, m) = v;
        }
        // T(n,m): peel the single-tree term out of the i=1 recurrence
        if (n >= 1) {
            for (int m = 0; m <= max_n; ++m) {
                BigInt v = f_at(n, 1, m);
                for (int l = 1; l <= n; ++l)
                    for (int j = 0; j <= m; ++j) {
                        if (l == n && j == m) continue;
                        v -= binomial(n - 1, l - 1) * T[static_cast<size_t>(l)][static_cast<size_t>(j)] *
                             f_at(n - l, 1, m - j);
                    }
                T[static_cast<size_t>(n)][static_cast<size_t>(m)] = v;
            }
        }
        // remaining pot counts via the same recurrence
        for (int i = 0; i <= max_n; ++i) {
            if (i == 1) continue;
            for (int m = 0; m <= max_n; ++m) {
                BigInt v;
                if (n == 0) {
                    v = (m == 0) ? 1 : 0;
                } else {
                    v = 0;
                    for (int l = 1; l <= n; ++l) {
                        BigInt inner = 0;
                        for (int j = 0; j <= m; ++j)
                            inner += T[static_cast<size_t>(l)][static_cast<size_t>(j)] *
                                     f_at(n - l, i, m - j);
                        v += BigInt(i) * binomial(n - 1, l - 1) * inner;
                    }
                }
                f_at(n, i, m) = v;
            }
        }
        // cluster numbers from the T recurrence
        if (n >= 1) {
            for (int m = 1; m <= max_n; ++m) {
                BigInt v = T[static_cast<size_t>(n)][static_cast<size_t>(m)] -
                           BigInt(n) * f_at(n - 1, 1, m);
                for (int l = 1; l <= n; ++l)
                    for (int j = 1; j <= m; ++j) {
                        if (l == n && j == m) continue;
                        v -= binomial(n, l) * table.r(l, j) * f_at(n - l, l, m - j);
                    }
                if (v != 0) table.add(n, m, v);
            }
        }
    }
    return table;
}

// Verdict of a strong-c-forest-Wilf comparison at desk scale.
struct EquivVerdict {
    bool equal;
    int max_n;
    // first divergence, when not equal
    std::optional<std::tuple<int, int, BigInt, BigInt>> witness; // (n, m, lhs, rhs)
    ClusterTable lhs_table;
    ClusterTable rhs_table;
};

inline EquivVerdict strong_cfw_equivalent(const Pattern& sigma, const Pattern& tau, int max_n,
                                          const RunConfig& cfg = RunConfig()) {
    if (sigma.size() != tau.size())
        throw error(errc::precondition_violated, "patterns must have the same length");
    EquivVerdict v{true, max_n, std::nullopt, ClusterTable(), ClusterTable()};
    if (sigma == tau) {
        auto t = cluster_table(sigma, max_n, cfg);
        v.lhs_table = t;
        v.rhs_table = t;
        return v;
    }
    auto tables = cluster_tables({sigma, tau}, max_n, cfg);
    v.lhs_table = tables.at(sigma);
    v.rhs_table = tables.at(tau);
    for (int n = 1; n <= max_n && v.equal; ++n)
        for (int m = 1; m <= n && v.equal; ++m)
            if (v.lhs_table.r(n, m) != v.rhs_table.r(n, m)) {
                v.equal = false;
                v.witness = {n, m, v.lhs_table.r(n, m), v.rhs_table.r(n, m)};
            }
    return v;
}

// Necessary condition for strong-c-forest-Wilf equivalence: the first values
// agree outright or under complementation.
inline bool first_value_test(const Pattern& sigma, const Pattern& tau) {
    if (sigma.size() != tau.size())
        throw error(errc::precondition_violated, "patterns must have the same length");
    int k = sigma.size();
    return sigma(1) == tau(1) || sigma(1) + tau(1) == k + 1;
}

inline std::vector<Pattern> all_patterns(int k) {
    std::vector<int> perm(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) perm[static_cast<size_t>(i)] = i + 1;
    std::vector<Pattern> out;
    do {
        out.emplace_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

} // namespace forestpat
