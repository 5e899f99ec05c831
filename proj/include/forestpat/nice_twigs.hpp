#pragma once

#include "forestpat/avoid.hpp"
#include "forestpat/bigint.hpp"
#include "forestpat/clusters.hpp"
#include "forestpat/config.hpp"
#include "forestpat/enumerate.hpp"
#include "forestpat/error.hpp"
#include "forestpat/forest.hpp"
#include "forestpat/pattern.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace forestpat {

// Depth-2 building block: a parent vertex with at least one child. Proper
// when every child label exceeds the parent label.
struct Twig {
    int parent = 0;
    std::vector<int> children; // sorted, distinct, nonempty

    bool proper() const {
        for (int c : children)
            if (c <= parent) return false;
        return true;
    }

    bool operator==(const Twig& o) const { return parent == o.parent && children == o.children; }
};

// Twigs with pairwise disjoint child label sets, kept sorted by parent label.
class TwigCollection {
  public:
    TwigCollection() = default;

    static TwigCollection make(std::vector<Twig> twigs) {
        if (twigs.empty()) throw error(errc::parse_error, "twig collection must be nonempty");
        TwigCollection w;
        for (auto& t : twigs) {
            if (t.children.empty())
                throw error(errc::parse_error, "a twig needs at least one child");
            std::sort(t.children.begin(), t.children.end());
            if (std::adjacent_find(t.children.begin(), t.children.end()) != t.children.end())
                throw error(errc::parse_error, "duplicate child label within a twig");
        }
        std::sort(twigs.begin(), twigs.end(), [](const Twig& a, const Twig& b) {
            if (a.parent != b.parent) return a.parent < b.parent;
            return a.children < b.children;
        });
        std::set<int> child_seen;
        for (const auto& t : twigs)
            for (int c : t.children)
                if (!child_seen.insert(c).second)
                    throw error(errc::parse_error, "child label sets must be disjoint");
        w.twigs_ = std::move(twigs);
        return w;
    }

    const std::vector<Twig>& twigs() const { return twigs_; }
    int size() const { return static_cast<int>(twigs_.size()); }

    bool proper() const {
        std::set<int> labels;
        for (const auto& t : twigs_) {
            if (!t.proper()) return false;
            if (!labels.insert(t.parent).second) return false;
            for (int c : t.children)
                if (!labels.insert(c).second) return false;
        }
        return true;
    }

    std::vector<int> child_labels() const { // sorted union
        std::vector<int> out;
        for (const auto& t : twigs_) out.insert(out.end(), t.children.begin(), t.children.end());
        std::sort(out.begin(), out.end());
        return out;
    }

    std::vector<int> all_labels() const { // parents + children, sorted
        std::vector<int> out;
        for (const auto& t : twigs_) {
            out.push_back(t.parent);
            out.insert(out.end(), t.children.begin(), t.children.end());
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    int total_children() const {
        int c = 0;
        for (const auto& t : twigs_) c += static_cast<int>(t.children.size());
        return c;
    }

    bool operator==(const TwigCollection& o) const { return twigs_ == o.twigs_; }

  private:
    std::vector<Twig> twigs_;
};

// --- sigma-nice predicates ---------------------------------------------------

// Per constituent tree: odd-depth vertices have children; even-depth vertices
// exceed their parent's label, and past depth 2 they end a consecutive
// instance of sigma.
inline bool is_nice(const LabeledForest& f, const Pattern& sigma) {
    if (f.empty()) return true;
    int k = sigma.size();
    for (int v = 0; v < f.size(); ++v) {
        int d = f.depth_of(v);
        if (d % 2 == 1) {
            if (f.children_of(v).empty()) return false;
        } else {
            if (f.label(v) <= f.label(f.parent_of(v))) return false;
            if (d >= 4) {
                std::vector<int> path = f.root_path(f.label(v));
                if (static_cast<int>(path.size()) < k) return false;
                if (!detail::window_matches(path, path.size() - 1, sigma)) return false;
            }
        }
    }
    return true;
}

inline bool is_extranice(const LabeledForest& f, const Pattern& sigma) {
    if (!is_nice(f, sigma)) return false;
    for (int v = 0; v < f.size(); ++v)
        if (f.depth_of(v) % 2 == 1 && f.children_of(v).size() != 1) return false;
    return true;
}

// Every odd-depth vertex with its children becomes a twig.
inline TwigCollection decompose(const LabeledForest& f, const Pattern& sigma) {
    if (!is_nice(f, sigma)) throw error(errc::not_nice, "decompose needs a sigma-nice forest");
    std::vector<Twig> twigs;
    for (int v = 0; v < f.size(); ++v) {
        if (f.depth_of(v) % 2 != 1) continue;
        Twig t;
        t.parent = f.label(v);
        for (int c : f.children_of(v)) t.children.push_back(f.label(c));
        twigs.push_back(std::move(t));
    }
    TwigCollection w = TwigCollection::make(std::move(twigs));
    check(w.proper(), "decomposition of a nice forest must be proper");
    return w;
}

// Relabel child vertices order-isomorphically onto the set T; parents fixed.
inline TwigCollection rel(const TwigCollection& w, const std::vector<int>& target) {
    std::vector<int> t(target);
    std::sort(t.begin(), t.end());
    std::vector<int> current = w.child_labels();
    if (current.size() != t.size())
        throw error(errc::size_mismatch, "rel needs exactly one new label per child vertex");
    std::map<int, int> remap;
    for (size_t i = 0; i < t.size(); ++i) remap[current[i]] = t[i];
    std::vector<Twig> twigs;
    for (const auto& tw : w.twigs()) {
        Twig nt;
        nt.parent = tw.parent;
        for (int c : tw.children) nt.children.push_back(remap.at(c));
        twigs.push_back(std::move(nt));
    }
    return TwigCollection::make(std::move(twigs));
}

// Reverse the child labels within the sorted order of E.
inline Twig alpha_reversal(const Twig& t, const std::vector<int>& e_in) {
    std::vector<int> e(e_in);
    std::sort(e.begin(), e.end());
    Twig out;
    out.parent = t.parent;
    for (int c : t.children) {
        auto it = std::lower_bound(e.begin(), e.end(), c);
        if (it == e.end() || *it != c)
            throw error(errc::not_subset, "child label set must be contained in E");
        size_t i = static_cast<size_t>(it - e.begin());
        out.children.push_back(e[e.size() - 1 - i]);
    }
    std::sort(out.children.begin(), out.children.end());
    return out;
}

// The label-permuting involution on proper twig collections.
inline TwigCollection gamma(const TwigCollection& w) {
    if (!w.proper()) throw error(errc::not_proper, "gamma is defined on proper collections");
    if (w.size() == 1) return w;
    const Twig& last = w.twigs().back(); // largest parent label
    std::vector<int> c = w.child_labels();
    std::vector<int> e;
    for (int x : c)
        if (x > last.parent) e.push_back(x);
    Twig moved = alpha_reversal(last, e);
    std::vector<Twig> rest_twigs(w.twigs().begin(), w.twigs().end() - 1);
    TwigCollection rest = gamma(TwigCollection::make(std::move(rest_twigs)));
    std::vector<int> c_minus_d;
    std::set_difference(c.begin(), c.end(), moved.children.begin(), moved.children.end(),
                        std::back_inserter(c_minus_d));
    std::vector<Twig> out = rel(rest, c_minus_d).twigs();
    out.push_back(moved);
    TwigCollection result = TwigCollection::make(std::move(out));
    check(result.proper(), "gamma must produce a proper collection");
    return result;
}

// --- construction counts -----------------------------------------------------

struct ConstructionCounts {
    BigInt forests;
    BigInt trees;
};

namespace detail {

inline TwigCollection normalize_collection(const TwigCollection& w) {
    std::vector<int> labels = w.all_labels();
    std::map<int, int> rank;
    for (size_t i = 0; i < labels.size(); ++i) rank[labels[i]] = static_cast<int>(i) + 1;
    std::vector<Twig> twigs;
    for (const auto& t : w.twigs()) {
        Twig nt;
        nt.parent = rank.at(t.parent);
        for (int ch : t.children) nt.children.push_back(rank.at(ch));
        twigs.push_back(std::move(nt));
    }
    return TwigCollection::make(std::move(twigs));
}

} // namespace detail

// Product formula along the removal of the largest-parent twig; only the two
// patterns whose attachment freedom is an interval support it.
inline ConstructionCounts count_constructions_formula(const TwigCollection& w_in,
                                                      const Pattern& sigma) {
    bool is1423 = sigma == Pattern({1, 4, 2, 3});
    bool is1324 = sigma == Pattern({1, 3, 2, 4});
    if (!is1423 && !is1324)
        throw error(errc::unsupported_pattern,
                    "formula path supports 1423 and 1324; use the brute-force path");
    if (!w_in.proper()) throw error(errc::not_proper, "counts need a proper collection");
    TwigCollection w = detail::normalize_collection(w_in);
    if (w.size() == 1) return {1, 1};
    int n = static_cast<int>(w.all_labels().size());
    const Twig& last = w.twigs().back();
    int p = last.parent;
    int c = last.children.front();
    int d = last.children.back();
    std::vector<Twig> rest(w.twigs().begin(), w.twigs().end() - 1);
    ConstructionCounts sub = count_constructions_formula(TwigCollection::make(std::move(rest)), sigma);
    ConstructionCounts out;
    if (is1423) {
        out.forests = BigInt(n - d + 1) * sub.forests;
        out.trees = BigInt(n - d) * sub.trees;
    } else {
        out.forests = BigInt(c - p) * sub.forests;
        out.trees = BigInt(c - p - 1) * sub.trees;
    }
    return out;
}

// Exhaustive assembly: each twig hangs below some child vertex of another
// twig or stands as a root; acyclic assemblies are built and tested with the
// generic niceness predicate, so any sigma works.
inline ConstructionCounts count_constructions_bruteforce(const TwigCollection& w,
                                                         const Pattern& sigma) {
    if (!w.proper()) throw error(errc::not_proper, "counts need a proper collection");
    int s = w.size();
    // attachment points: (owning twig, child label)
    std::vector<std::pair<int, int>> points;
    for (int i = 0; i < s; ++i)
        for (int c : w.twigs()[static_cast<size_t>(i)].children) points.emplace_back(i, c);
    ConstructionCounts out{0, 0};
    std::vector<int> attach(static_cast<size_t>(s), -1); // -1 root, else point index
    std::function<void(int)> rec = [&](int i) {
        if (i == s) {
            // acyclic on the twig digraph?
            for (int t = 0; t < s; ++t) {
                int steps = 0, j = t;
                while (attach[static_cast<size_t>(j)] >= 0) {
                    j = points[static_cast<size_t>(attach[static_cast<size_t>(j)])].first;
                    if (j == t || ++steps > s) return;
                }
            }
            std::map<int, int> pm;
            int roots = 0;
            for (int t = 0; t < s; ++t) {
                const Twig& tw = w.twigs()[static_cast<size_t>(t)];
                int a = attach[static_cast<size_t>(t)];
                pm[tw.parent] = (a < 0) ? 0 : points[static_cast<size_t>(a)].second;
                if (a < 0) ++roots;
                for (int c : tw.children) pm[c] = tw.parent;
            }
            LabeledForest f = LabeledForest::from_parent_map(pm);
            if (!is_nice(f, sigma)) return;
            out.forests += 1;
            if (roots == 1) out.trees += 1;
        } else {
            attach[static_cast<size_t>(i)] = -1;
            rec(i + 1);
            for (size_t pt = 0; pt < points.size(); ++pt) {
                if (points[pt].first == i) continue; // no self-attachment
                attach[static_cast<size_t>(i)] = static_cast<int>(pt);
                rec(i + 1);
            }
            attach[static_cast<size_t>(i)] = -1;
        }
    };
    rec(0);
    return out;
}

// All proper twig collections with label set [n]: partitions of [n] into
// blocks of size >= 2, the block minimum acting as the parent.
template <typename Fn>
void for_each_proper_collection(int n, Fn&& fn) {
    std::vector<std::vector<int>> blocks;
    std::function<void(int)> rec = [&](int v) {
        if (v > n) {
            std::vector<Twig> twigs;
            for (const auto& b : blocks) {
                if (b.size() < 2) return;
                Twig t;
                t.parent = b.front();
                t.children.assign(b.begin() + 1, b.end());
                twigs.push_back(std::move(t));
            }
            if (twigs.empty()) return;
            fn(TwigCollection::make(std::move(twigs)));
            return;
        }
        // prune: singletons still needing a partner
        int singles = 0;
        for (const auto& b : blocks) singles += (b.size() == 1);
        if (singles > n - v + 1) return;
        for (size_t bi = 0; bi < blocks.size(); ++bi) { // rec() may grow `blocks`
            blocks[bi].push_back(v);
            rec(v + 1);
            blocks[bi].pop_back();
        }
        blocks.push_back({v});
        rec(v + 1);
        blocks.pop_back();
    };
    if (n >= 2) rec(1);
}

// --- A and B counts ----------------------------------------------------------

// A(n,m): sigma-nice trees on [n] with exactly m consecutive instances;
// B(n,m): additionally no childless depth-2 vertices. A comes from the
// enumeration oracle and B from peeling the childless depth-2 vertices off.
class NiceTreeCounts {
  public:
    explicit NiceTreeCounts(Pattern sigma, RunConfig cfg = RunConfig())
        : sigma_(std::move(sigma)), cfg_(cfg) {}

    BigInt A(int n, int m) {
        if (n <= 1 || m < 0) return 0;
        fill_a(n);
        const auto& hist = a_cache_[static_cast<size_t>(n)];
        auto it = hist.find(m);
        return it == hist.end() ? BigInt(0) : it->second;
    }

    BigInt B(int n, int m) {
        if (n <= 1 || m < 0) return 0;
        auto key = std::make_pair(n, m);
        auto it = b_cache_.find(key);
        if (it != b_cache_.end()) return it->second;
        BigInt v = A(n, m) - (m == 0 ? 1 : 0);
        for (int i = 1; i <= n - 1; ++i) v -= binomial(n - 1, i) * B(n - i, m);
        b_cache_[key] = v;
        return v;
    }

    BigInt B_bruteforce(int n, int m) {
        if (n <= 1 || m < 0) return 0;
        if (n > cfg_.oracle_cap) throw error(errc::cap_exceeded, "nice-tree scan capped");
        BigInt count = 0;
        for_each_tree(range_labels(n), [&](const LabeledForest& t) {
            if (!is_nice(t, sigma_)) return;
            if (count_consecutive_instances(t, sigma_) != m) return;
            for (int v = 0; v < t.size(); ++v)
                if (t.depth_of(v) == 2 && t.children_of(v).empty()) return;
            count += 1;
        });
        return count;
    }

    const Pattern& sigma() const { return sigma_; }

  private:
    void fill_a(int n) {
        if (static_cast<size_t>(n) < a_cache_.size() && a_filled_[static_cast<size_t>(n)]) return;
        if (n > cfg_.oracle_cap) throw error(errc::cap_exceeded, "nice-tree scan capped");
        if (a_cache_.size() <= static_cast<size_t>(n)) {
            a_cache_.resize(static_cast<size_t>(n) + 1);
            a_filled_.resize(static_cast<size_t>(n) + 1, false);
        }
        auto& hist = a_cache_[static_cast<size_t>(n)];
        for_each_tree(range_labels(n), [&](const LabeledForest& t) {
            if (is_nice(t, sigma_)) hist[count_consecutive_instances(t, sigma_)] += 1;
        });
        a_filled_[static_cast<size_t>(n)] = true;
    }

    Pattern sigma_;
    RunConfig cfg_;
    std::vector<std::map<int, BigInt>> a_cache_;
    std::vector<bool> a_filled_;
    std::map<std::pair<int, int>, BigInt> b_cache_;
};

// --- maximum nice subtree of a forest cluster --------------------------------

struct NiceDecomposition {
    std::vector<int> tmax_labels;         // sorted
    int tmax_instances = 0;
    std::vector<int> attach_labels;       // R(X), sorted
    std::vector<ForestCluster> attached;  // aligned with attach_labels
};

// T_max grows from the root: depth-2 children always join; deeper even
// vertices join when a highlighted instance ends there; odd vertices join
// when some child ends a highlighted instance.
inline NiceDecomposition max_nice_subtree(const ForestCluster& x, const Pattern& sigma) {
    if (!(sigma == Pattern({1, 4, 2, 3}) || sigma == Pattern({1, 3, 2, 4})))
        throw error(errc::unsupported_pattern, "decomposition is defined for 1423 and 1324");
    const LabeledForest& t = x.tree;
    check(t.is_tree(), "cluster must be a tree");
    std::set<int> highlighted_endpoints;
    for (const auto& inst : x.instances) highlighted_endpoints.insert(inst.back());

    std::vector<bool> in_tmax(static_cast<size_t>(t.size()), false);
    std::function<void(int)> grow = [&](int v) {
        in_tmax[static_cast<size_t>(v)] = true;
        int d = t.depth_of(v);
        for (int w : t.children_of(v)) {
            int dw = d + 1;
            if (dw == 2) {
                grow(w);
            } else if (dw % 2 == 0) {
                if (highlighted_endpoints.count(t.label(w))) grow(w);
            } else {
                bool has_endpoint_child = false;
                for (int c : t.children_of(w))
                    if (highlighted_endpoints.count(t.label(c))) has_endpoint_child = true;
                if (has_endpoint_child) {
                    in_tmax[static_cast<size_t>(w)] = true;
                    for (int c : t.children_of(w))
                        if (highlighted_endpoints.count(t.label(c))) grow(c);
                }
            }
        }
    };
    int root = t.root_indices().front();
    grow(root);

    NiceDecomposition out;
    for (int v = 0; v < t.size(); ++v)
        if (in_tmax[static_cast<size_t>(v)]) out.tmax_labels.push_back(t.label(v));

    // attachments: T_max vertices with an excluded child
    for (int v = 0; v < t.size(); ++v) {
        if (!in_tmax[static_cast<size_t>(v)]) continue;
        std::vector<int> outside;
        for (int w : t.children_of(v))
            if (!in_tmax[static_cast<size_t>(w)]) outside.push_back(w);
        if (outside.empty()) continue;
        out.attach_labels.push_back(t.label(v));
        std::map<int, int> pm;
        pm[t.label(v)] = 0;
        std::function<void(int)> collect = [&](int u) {
            pm[t.label(u)] = t.label(t.parent_of(u));
            for (int c : t.children_of(u)) collect(c);
        };
        for (int w : outside) collect(w);
        ForestCluster sub;
        sub.tree = LabeledForest::from_parent_map(pm);
        out.attached.push_back(std::move(sub));
    }

    // assign each highlighted instance to exactly one part
    for (const auto& inst : x.instances) {
        bool all_tmax = true;
        for (int lab : inst)
            all_tmax = all_tmax && std::binary_search(out.tmax_labels.begin(),
                                                      out.tmax_labels.end(), lab);
        if (all_tmax) {
            ++out.tmax_instances;
            continue;
        }
        int owner = -1;
        for (size_t a = 0; a < out.attached.size(); ++a) {
            bool inside = true;
            for (int lab : inst)
                inside = inside && out.attached[a].tree.find_index(lab) >= 0;
            if (inside) {
                check(owner < 0, "instance claimed by two attached clusters");
                owner = static_cast<int>(a);
            }
        }
        check(owner >= 0, "instance crosses the decomposition boundary");
        out.attached[static_cast<size_t>(owner)].instances.push_back(inst);
    }
    return out;
}

// --- the cluster-number recurrence of the decomposition ----------------------

struct CheckReport {
    bool pass = true;
    std::string detail;
};

// Confirms the enumerated r_{n,m} against the T_max/attachment recurrence:
// sum over attachment label data of B(tmax size, m0) * prod r_{|L_i|, m_i}.
inline CheckReport cluster_recurrence_check(const Pattern& sigma, int max_n, int max_m,
                                            const RunConfig& cfg = RunConfig()) {
    ClusterTable table = cluster_table(sigma, max_n, cfg);
    NiceTreeCounts nice(sigma, cfg);
    CheckReport report;
    for (int n = 1; n <= max_n && report.pass; ++n) {
        std::vector<BigInt> rhs(static_cast<size_t>(max_m) + 1, 0);
        // choose R(X) labels and the attached label sets
        std::vector<int> rest;
        std::function<void(int, std::vector<int>&)> pick_lr = [&](int next,
                                                                  std::vector<int>& lr) {
            if (next > n) {
                // assign remaining labels to part 0 (tmax) or parts 1..r
                int r = static_cast<int>(lr.size());
                std::vector<int> remaining;
                for (int x = 2; x <= n; ++x)
                    if (!std::binary_search(lr.begin(), lr.end(), x)) remaining.push_back(x);
                std::vector<int> part_size(static_cast<size_t>(r), 1); // each L_i holds l_i
                std::function<void(size_t)> assign = [&](size_t idx) {
                    if (idx == remaining.size()) {
                        int attached_total = 0;
                        for (int ps : part_size) attached_total += ps;
                        int tmax_size = n - attached_total + r;
                        // convolve B(tmax_size, .) with the r tables
                        std::vector<BigInt> conv(static_cast<size_t>(max_m) + 1, 0);
                        for (int m0 = 0; m0 <= max_m; ++m0) conv[static_cast<size_t>(m0)] =
                            nice.B(tmax_size, m0);
                        for (int i = 0; i < r; ++i) {
                            std::vector<BigInt> next_conv(static_cast<size_t>(max_m) + 1, 0);
                            for (int acc = 0; acc <= max_m; ++acc) {
                                if (conv[static_cast<size_t>(acc)] == 0) continue;
                                for (int mi = 1; acc + mi <= max_m; ++mi) {
                                    BigInt rv = table.r(part_size[static_cast<size_t>(i)], mi);
                                    if (rv == 0) continue;
                                    next_conv[static_cast<size_t>(acc + mi)] +=
                                        conv[static_cast<size_t>(acc)] * rv;
                                }
                            }
                            conv = std::move(next_conv);
                        }
                        for (int m = 0; m <= max_m; ++m) rhs[static_cast<size_t>(m)] +=
                            conv[static_cast<size_t>(m)];
                        return;
                    }
                    int x = remaining[idx];
                    for (int part = 0; part <= r; ++part) {
                        if (part > 0 && x < lr[static_cast<size_t>(part) - 1]) continue;
                        if (part > 0) ++part_size[static_cast<size_t>(part) - 1];
                        assign(idx + 1);
                        if (part > 0) --part_size[static_cast<size_t>(part) - 1];
                    }
                };
                assign(0);
                return;
            }
            pick_lr(next + 1, lr);
            lr.push_back(next);
            pick_lr(next + 1, lr);
            lr.pop_back();
        };
        std::vector<int> lr;
        pick_lr(2, lr);
        for (int m = 1; m <= max_m; ++m) {
            if (table.r(n, m) != rhs[static_cast<size_t>(m)]) {
                report.pass = false;
                report.detail = "mismatch at n=" + std::to_string(n) + " m=" + std::to_string(m) +
                                ": enumerated " + table.r(n, m).str() + ", recurrence " +
                                rhs[static_cast<size_t>(m)].str();
                break;
            }
        }
    }
    return report;
}

// --- the G involution ---------------------------------------------------------

// Applies g_v at every odd-depth vertex, shallowest level first: children of
// v flip within the subtree label order, grandchild subtrees move to the
// mirrored label sets keeping their internal order.
inline LabeledForest g_map(const LabeledForest& tree) {
    check(tree.is_tree(), "G is defined on single-rooted trees");
    std::vector<int> lab = tree.labels(); // lab[idx] mutable
    int max_depth = 0;
    for (int v = 0; v < tree.size(); ++v) max_depth = std::max(max_depth, tree.depth_of(v));
    for (int level = 1; level <= max_depth; level += 2) {
        for (int v = 0; v < tree.size(); ++v) {
            if (tree.depth_of(v) != level) continue;
            // snapshot: the reversal map on subtree labels minus v's
            std::vector<int> sub = tree.subtree_indices(v);
            std::vector<int> rest_labels;
            for (int i : sub)
                if (i != v) rest_labels.push_back(lab[static_cast<size_t>(i)]);
            std::sort(rest_labels.begin(), rest_labels.end());
            auto mirrored = [&](int x) {
                auto it = std::lower_bound(rest_labels.begin(), rest_labels.end(), x);
                size_t i = static_cast<size_t>(it - rest_labels.begin());
                return rest_labels[rest_labels.size() - 1 - i];
            };
            // step 1: children flip pointwise
            std::vector<int> new_lab = lab;
            for (int w : tree.children_of(v))
                new_lab[static_cast<size_t>(w)] = mirrored(lab[static_cast<size_t>(w)]);
            // step 2: each grandchild subtree takes the mirrored label set,
            // order-preserved
            for (int w : tree.children_of(v)) {
                for (int g : tree.children_of(w)) {
                    std::vector<int> gs = tree.subtree_indices(g);
                    std::vector<int> old_ls, new_ls;
                    for (int i : gs) old_ls.push_back(lab[static_cast<size_t>(i)]);
                    for (int x : old_ls) new_ls.push_back(mirrored(x));
                    std::sort(new_ls.begin(), new_ls.end());
                    std::vector<size_t> order(gs.size());
                    for (size_t i = 0; i < gs.size(); ++i) order[i] = i;
                    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
                        return old_ls[a] < old_ls[b];
                    });
                    for (size_t ri = 0; ri < order.size(); ++ri)
                        new_lab[static_cast<size_t>(gs[order[ri]])] = new_ls[ri];
                }
            }
            lab = std::move(new_lab);
        }
    }
    std::map<int, int> pm;
    for (int i = 0; i < tree.size(); ++i) {
        int p = tree.parent_of(i);
        pm[lab[static_cast<size_t>(i)]] =
            (p == LabeledForest::kRoot) ? 0 : lab[static_cast<size_t>(p)];
    }
    return LabeledForest::from_parent_map(pm);
}

// --- extranice enumeration ----------------------------------------------------

// Tangent numbers T_1, T_2, ... via the Entringer boustrophedon, all integer.
inline std::vector<BigInt> tangent_numbers(int count) {
    std::vector<BigInt> out;
    int rows = 2 * count;
    std::vector<std::vector<BigInt>> e(static_cast<size_t>(rows));
    for (int n = 0; n < rows; ++n) {
        e[static_cast<size_t>(n)].assign(static_cast<size_t>(n) + 1, 0);
        if (n == 0) {
            e[0][0] = 1;
            continue;
        }
        for (int k = 1; k <= n; ++k)
            e[static_cast<size_t>(n)][static_cast<size_t>(k)] =
                e[static_cast<size_t>(n)][static_cast<size_t>(k) - 1] +
                e[static_cast<size_t>(n) - 1][static_cast<size_t>(n - k)];
    }
    for (int i = 1; i <= count; ++i)
        out.push_back(e[static_cast<size_t>(2 * i - 1)][static_cast<size_t>(2 * i - 1)]);
    return out;
}

// B_{2n} as an exact rational, derived from the tangent numbers.
inline BigRat bernoulli_2n(int n) {
    check(n >= 1, "bernoulli_2n needs n >= 1");
    BigInt tn = tangent_numbers(n).back();
    BigRat sign = (n % 2 == 1) ? 1 : -1;
    return sign * BigRat(tn * 2 * n, ipow(2, 2 * n) * (ipow(2, 2 * n) - 1));
}

// Number of sigma-extranice trees on [n2] for sigma in {1234, 1423, 1324}:
// (-1)^(n-1) 2^(n+1) (2^(2n)-1) B_{2n} / (2n) with n2 = 2n, evaluated in
// exact rationals.
inline BigInt extranice_count(int n2) {
    if (n2 % 2 != 0)
        throw error(errc::odd_size, "extranice trees exist only on an even number of vertices");
    if (n2 <= 0) return 0;
    int n = n2 / 2;
    BigRat v = bernoulli_2n(n) * ipow(2, n + 1) * (ipow(2, 2 * n) - 1) / (2 * n);
    if (n % 2 == 0) v = -v;
    check(boost::multiprecision::denominator(v) == 1, "closed form must be an integer");
    return boost::multiprecision::numerator(v);
}

// Independent series route: tree counts from T(n) = F(n-2) and the
// forest-from-tree convolution. Returns T(0..max_n).
inline std::vector<BigInt> extranice_tree_series(int max_n) {
    std::vector<BigInt> forests(static_cast<size_t>(max_n) + 1, 0);
    std::vector<BigInt> trees(static_cast<size_t>(max_n) + 1, 0);
    forests[0] = 1;
    for (int n = 1; n <= max_n; ++n) {
        trees[static_cast<size_t>(n)] = (n >= 2) ? forests[static_cast<size_t>(n) - 2] : 0;
        BigInt f = 0;
        for (int i = 1; i <= n; ++i)
            f += binomial(n - 1, i - 1) * trees[static_cast<size_t>(i)] *
                 forests[static_cast<size_t>(n - i)];
        forests[static_cast<size_t>(n)] = f;
    }
    return trees;
}

} // namespace forestpat
