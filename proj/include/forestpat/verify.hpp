#pragma once

#include "forestpat/avoid.hpp"
#include "forestpat/bijections.hpp"
#include "forestpat/clusters.hpp"
#include "forestpat/forest_young.hpp"
#include "forestpat/nice_twigs.hpp"
#include "forestpat/recurrences.hpp"

#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace forestpat {

struct PropertyResult {
    std::string name;
    bool pass = true;
    std::string witness; // failure detail, empty on pass
};

struct CampaignReport {
    std::string campaign;
    std::vector<PropertyResult> results;

    bool pass() const {
        for (const auto& r : results)
            if (!r.pass) return false;
        return true;
    }

    void add(const std::string& name, bool ok, const std::string& witness = "") {
        results.push_back({name, ok, ok ? "" : witness});
    }
};

namespace detail {

inline std::string forest_shape_code(const LabeledForest& f) {
    std::function<std::string(int)> code = [&](int v) -> std::string {
        std::vector<std::string> parts;
        for (int c : f.children_of(v)) parts.push_back(code(c));
        std::sort(parts.begin(), parts.end());
        std::string s = "(";
        for (const auto& p : parts) s += p;
        return s + ")";
    };
    std::vector<std::string> parts;
    for (int r = 0; r < f.size(); ++r)
        if (f.is_root(r)) parts.push_back(code(r));
    std::sort(parts.begin(), parts.end());
    std::string s;
    for (const auto& p : parts) s += p;
    return s;
}

} // namespace detail

// Round trips, image avoidance and per-shape labeling counts for the
// tau / tau~ structure-preserving bijection, exhaustively through max_n.
inline CampaignReport verify_westbijection(const Pattern& tau, int max_n) {
    CampaignReport rep{"westbijection tau=" + tau.str(), {}};
    TauPair pair(tau);
    bool round_ok = true, image_ok = true, shape_ok = true, label_ok = true;
    std::string round_w, image_w, shape_w, label_w;
    for (int n = 1; n <= max_n; ++n) {
        std::map<std::string, std::pair<long, long>> by_shape;
        for_each_forest(range_labels(n), [&](const LabeledForest& f) {
            bool avoids_tilde = !contains(f, pair.tau_tilde, AvoidanceMode::Classical);
            bool avoids_tau = !contains(f, pair.tau, AvoidanceMode::Classical);
            auto& cell = by_shape[detail::forest_shape_code(f)];
            if (avoids_tau) cell.first++;
            if (avoids_tilde) cell.second++;
            if (avoids_tilde) {
                auto img = alpha(f, pair);
                if (contains(img, pair.tau, AvoidanceMode::Classical) && image_ok) {
                    image_ok = false;
                    image_w = "alpha image contains tau at " + f.str();
                }
                if (beta(img, pair) != f && round_ok) {
                    round_ok = false;
                    round_w = "beta(alpha(F)) != F at " + f.str();
                }
            }
            if (avoids_tau) {
                auto img = beta(f, pair);
                if (contains(img, pair.tau_tilde, AvoidanceMode::Classical) && image_ok) {
                    image_ok = false;
                    image_w = "beta image contains tau~ at " + f.str();
                }
                if (alpha(img, pair) != f && round_ok) {
                    round_ok = false;
                    round_w = "alpha(beta(F)) != F at " + f.str();
                }
                // non-special vertices keep their labels
                auto specials = special_vertices(f, pair);
                for (int lab : f.labels()) {
                    bool special = std::binary_search(specials.begin(), specials.end(), lab);
                    if (!special && label_ok) {
                        int i = f.index_of(lab);
                        int j = img.find_index(lab);
                        if (j < 0 || img.depth_of(j) != f.depth_of(i)) {
                            label_ok = false;
                            label_w = "non-special vertex moved at " + f.str();
                        }
                    }
                }
            }
        });
        for (const auto& [shape, cell] : by_shape)
            if (cell.first != cell.second && shape_ok) {
                shape_ok = false;
                shape_w = "shape " + shape + " at n=" + std::to_string(n) + ": " +
                          std::to_string(cell.first) + " vs " + std::to_string(cell.second);
            }
    }
    rep.add("beta/alpha round trips (n <= " + std::to_string(max_n) + ")", round_ok, round_w);
    rep.add("images avoid the right patterns", image_ok, image_w);
    rep.add("per-shape labeling counts agree", shape_ok, shape_w);
    rep.add("non-special vertices keep labels under beta", label_ok, label_w);
    return rep;
}

// Injection inequality f_n(sigma, tau~) <= f_n(sigma, tau) plus the
// 213-restricted equalities.
inline CampaignReport verify_west_restrictions(int max_n_ineq, int max_n_eq) {
    CampaignReport rep{"west restrictions", {}};
    TauPair pair(Pattern({1, 2, 3}));
    bool ineq_ok = true;
    std::string ineq_w;
    for (const Pattern& sigma : {Pattern({1, 2}), Pattern({1, 2, 3}), Pattern({2, 1, 3})}) {
        for (int n = 1; n <= max_n_ineq; ++n) {
            BigInt lhs = count_avoiding(n, PatternSet{sigma, pair.tau_tilde},
                                        AvoidanceMode::Classical, Universe::Forest);
            BigInt rhs = count_avoiding(n, PatternSet{sigma, pair.tau},
                                        AvoidanceMode::Classical, Universe::Forest);
            if (lhs > rhs && ineq_ok) {
                ineq_ok = false;
                ineq_w = "sigma=" + sigma.str() + " n=" + std::to_string(n);
            }
        }
    }
    rep.add("f_n(sigma,tau~) <= f_n(sigma,tau)", ineq_ok, ineq_w);
    bool eq_ok = true;
    std::string eq_w;
    Pattern p213({2, 1, 3});
    for (int k : {3, 4}) {
        std::vector<int> inc(static_cast<size_t>(k));
        for (int i = 0; i < k; ++i) inc[static_cast<size_t>(i)] = i + 1;
        TauPair tp{Pattern(inc)};
        for (int n = 1; n <= max_n_eq; ++n) {
            BigInt lhs = count_avoiding(n, PatternSet{p213, tp.tau}, AvoidanceMode::Classical,
                                        Universe::Forest);
            BigInt rhs = count_avoiding(n, PatternSet{p213, tp.tau_tilde},
                                        AvoidanceMode::Classical, Universe::Forest);
            if (lhs != rhs && eq_ok) {
                eq_ok = false;
                eq_w = "k=" + std::to_string(k) + " n=" + std::to_string(n);
            }
        }
    }
    rep.add("f_n(213, 12..k(k-1)) = f_n(213, 12..(k-1)k)", eq_ok, eq_w);
    return rep;
}

// I2/J2 class sizes with round trips over every diagram up to max_vertices,
// and the composed multi-pattern bijection on diagrams up to fswe_vertices.
inline CampaignReport verify_shapewilf(int max_vertices, int fswe_vertices) {
    CampaignReport rep{"shapewilf", {}};
    bool size_ok = true, trip_ok = true;
    std::string size_w, trip_w;
    for (int n = 1; n <= max_vertices; ++n) {
        for (const auto& y : all_diagrams(n, max_vertices)) {
            long i2 = 0, j2 = 0;
            for (const auto& t : enumerate_transversals(y)) {
                bool has_i2 = transversal_contains(y, t, PermMatrix::i2());
                bool has_j2 = transversal_contains(y, t, PermMatrix::j2());
                if (!has_i2) ++i2;
                if (!has_j2) ++j2;
                if (!has_j2) {
                    auto img = i2j2_f(y, t);
                    if ((transversal_contains(y, img, PermMatrix::i2()) ||
                         i2j2_g(y, img) != t) &&
                        trip_ok) {
                        trip_ok = false;
                        trip_w = "f/g round trip failed on " + y.key();
                    }
                }
            }
            if (i2 != j2 && size_ok) {
                size_ok = false;
                size_w = y.key() + ": " + std::to_string(i2) + " vs " + std::to_string(j2);
            }
        }
    }
    rep.add("|S_Y(I2)| = |S_Y(J2)| (<= " + std::to_string(max_vertices) + " vertices)", size_ok,
            size_w);
    rep.add("f/g round trips", trip_ok, trip_w);

    auto check_pairs = [&](const std::vector<Pattern>& taus, const std::string& label) {
        std::vector<PermMatrix> ms, ms_tilde;
        for (const auto& tau : taus) {
            TauPair tp(tau);
            ms.push_back(PermMatrix::from_pattern(tp.tau));
            ms_tilde.push_back(PermMatrix::from_pattern(tp.tau_tilde));
        }
        bool ok = true;
        std::string w;
        for (int n = 1; n <= fswe_vertices && ok; ++n) {
            for (const auto& y : all_diagrams(n, fswe_vertices)) {
                long lhs = 0, rhs = 0;
                for (const auto& t : enumerate_transversals(y)) {
                    if (transversal_avoids_all(y, t, ms)) {
                        ++lhs;
                        auto img = fswe_forward(y, t, taus);
                        if (!transversal_avoids_all(y, img, ms_tilde) ||
                            fswe_backward(y, img, taus) != t) {
                            ok = false;
                            w = "fswe round trip failed on " + y.key();
                        }
                    }
                    if (transversal_avoids_all(y, t, ms_tilde)) ++rhs;
                }
                if (lhs != rhs && ok) {
                    ok = false;
                    w = y.key() + ": " + std::to_string(lhs) + " vs " + std::to_string(rhs);
                }
            }
        }
        rep.add(label, ok, w);
    };
    check_pairs({Pattern({1, 2, 3})}, "pair set {(123,132)}");
    check_pairs({Pattern({1, 2, 3}), Pattern({1, 2, 3, 4})},
                "pair set {(123,132),(1234,1243)}");
    return rep;
}

// Table equality for 1324/1423, the exact-count consequence, and the
// exhaustive pairwise scan over S_4 with the first-value necessary condition.
inline CampaignReport verify_clusters_1324_1423(int max_n, int count_n,
                                                const RunConfig& cfg = RunConfig()) {
    CampaignReport rep{"clusters-1324-1423", {}};
    Pattern a({1, 3, 2, 4}), b({1, 4, 2, 3});
    auto verdict = strong_cfw_equivalent(a, b, max_n, cfg);
    std::string w;
    if (!verdict.equal) {
        auto [n, m, l, r] = *verdict.witness;
        w = "diverges at n=" + std::to_string(n) + " m=" + std::to_string(m) + ": " + l.str() +
            " vs " + r.str();
    }
    rep.add("ClusterTable(1324) = ClusterTable(1423), n <= " + std::to_string(max_n),
            verdict.equal, w);

    bool counts_ok = true;
    std::string counts_w;
    {
        ClusterCounts ca(verdict.lhs_table, count_n);
        ClusterCounts cb(verdict.rhs_table, count_n);
        for (int n = 0; n <= count_n && counts_ok; ++n) {
            auto oracle_a = count_by_instances(n, a, cfg);
            auto oracle_b = count_by_instances(n, b, cfg);
            for (int m = 0; m <= count_n; ++m) {
                BigInt ea = oracle_a.count(m) ? oracle_a.at(m) : 0;
                BigInt eb = oracle_b.count(m) ? oracle_b.at(m) : 0;
                if (ca.f(n, m) != ea || cb.f(n, m) != eb || ea != eb) {
                    counts_ok = false;
                    counts_w = "n=" + std::to_string(n) + " m=" + std::to_string(m);
                    break;
                }
            }
        }
    }
    rep.add("forests with exactly m instances agree, n <= " + std::to_string(count_n), counts_ok,
            counts_w);
    return rep;
}

// Scan all of S_4 pairwise; the only equal tables, beyond complement pairs,
// must lie inside {1324, 1423, 4231, 4132}; every equal pair must satisfy
// the first-value condition.
inline CampaignReport verify_s4_scan(int max_n, const RunConfig& cfg = RunConfig()) {
    CampaignReport rep{"s4 scan", {}};
    auto pats = all_patterns(4);
    auto tables = cluster_tables(pats, max_n, cfg);
    std::set<Pattern> exceptional = {Pattern({1, 3, 2, 4}), Pattern({1, 4, 2, 3}),
                                     Pattern({4, 2, 3, 1}), Pattern({4, 1, 3, 2})};
    bool scan_ok = true, necc_ok = true;
    std::string scan_w, necc_w;
    for (size_t i = 0; i < pats.size(); ++i) {
        for (size_t j = i + 1; j < pats.size(); ++j) {
            bool equal = tables.at(pats[i]) == tables.at(pats[j]);
            if (!equal) continue;
            if (!first_value_test(pats[i], pats[j]) && necc_ok) {
                necc_ok = false;
                necc_w = pats[i].str() + " ~ " + pats[j].str();
            }
            bool complement_pair = pats[i].complement() == pats[j];
            bool in_class = exceptional.count(pats[i]) && exceptional.count(pats[j]);
            if (!complement_pair && !in_class && scan_ok) {
                scan_ok = false;
                scan_w = "unexpected equal pair " + pats[i].str() + ", " + pats[j].str();
            }
        }
    }
    // the exceptional class really is equal
    bool class_ok = tables.at(Pattern({1, 3, 2, 4})) == tables.at(Pattern({1, 4, 2, 3}));
    rep.add("only the 1324~1423 class (and complements) has equal tables", scan_ok && class_ok,
            scan_w);
    rep.add("equal pairs satisfy the first-value condition", necc_ok, necc_w);
    return rep;
}

// gamma involution, the twig-count transport, and the A/B equalities.
inline CampaignReport verify_gamma(int max_n) {
    CampaignReport rep{"gamma", {}};
    Pattern p1423({1, 4, 2, 3}), p1324({1, 3, 2, 4});
    bool invol_ok = true, twig_ok = true;
    std::string invol_w, twig_w;
    for (int n = 2; n <= max_n; ++n) {
        for_each_proper_collection(n, [&](const TwigCollection& w) {
            auto g = gamma(w);
            if ((!g.proper() || gamma(g) != w) && invol_ok) {
                invol_ok = false;
                invol_w = "n=" + std::to_string(n);
            }
            auto lhs = count_constructions_formula(w, p1423);
            auto rhs = count_constructions_formula(g, p1324);
            auto brute = count_constructions_bruteforce(w, p1423);
            if ((lhs.forests != rhs.forests || lhs.trees != rhs.trees ||
                 lhs.forests != brute.forests || lhs.trees != brute.trees) &&
                twig_ok) {
                twig_ok = false;
                twig_w = "n=" + std::to_string(n);
            }
        });
    }
    rep.add("gamma is an involution (n <= " + std::to_string(max_n) + ")", invol_ok, invol_w);
    rep.add("F_1423(W) = F_1324(gamma(W)), T likewise, formula = brute", twig_ok, twig_w);

    bool ab_ok = true;
    std::string ab_w;
    NiceTreeCounts c1423(p1423), c1324(p1324);
    for (int n = 2; n <= max_n && ab_ok; ++n)
        for (int m = 0; m <= n; ++m)
            if (c1423.A(n, m) != c1324.A(n, m) || c1423.B(n, m) != c1324.B(n, m)) {
                ab_ok = false;
                ab_w = "n=" + std::to_string(n) + " m=" + std::to_string(m);
                break;
            }
    rep.add("A and B counts agree for 1423 and 1324", ab_ok, ab_w);
    return rep;
}

// G involution and nice-class swap, the extranice count identities, and the
// closed form against brute force and the series route.
inline CampaignReport verify_extranice(int g_max_n, int brute_max_n, int series_max_n) {
    CampaignReport rep{"extranice", {}};
    Pattern p1423({1, 4, 2, 3}), p1324({1, 3, 2, 4}), p1234({1, 2, 3, 4});

    bool g_ok = true;
    std::string g_w;
    for (int n = 1; n <= g_max_n && g_ok; ++n) {
        for_each_tree(range_labels(n), [&](const LabeledForest& t) {
            if (!g_ok) return;
            if (g_map(g_map(t)) != t) {
                g_ok = false;
                g_w = "involution fails at " + t.str();
                return;
            }
            if (is_nice(t, p1423) && !is_nice(g_map(t), p1234)) {
                g_ok = false;
                g_w = "1423-nice not mapped to 1234-nice at " + t.str();
            }
            if (is_nice(t, p1234) && !is_nice(g_map(t), p1423)) {
                g_ok = false;
                g_w = "1234-nice not mapped to 1423-nice at " + t.str();
            }
        });
    }
    rep.add("G involution and nice-class swap (n <= " + std::to_string(g_max_n) + ")", g_ok, g_w);

    bool eq_ok = true;
    std::string eq_w;
    for (int n = 2; n <= g_max_n + 1 && eq_ok; ++n) {
        std::vector<std::vector<long>> counts;
        for (const Pattern& sigma : {p1234, p1423, p1324}) {
            long nf = 0, nt = 0, ef = 0, et = 0;
            for_each_forest(range_labels(n), [&](const LabeledForest& f) {
                if (is_nice(f, sigma)) {
                    ++nf;
                    if (f.is_tree()) ++nt;
                }
                if (is_extranice(f, sigma)) {
                    ++ef;
                    if (f.is_tree()) ++et;
                }
            });
            counts.push_back({nf, nt, ef, et});
        }
        if (counts[1] != counts[0] || counts[2] != counts[0]) {
            eq_ok = false;
            eq_w = "n=" + std::to_string(n);
        }
    }
    rep.add("nice/extranice counts equal across 1234, 1423, 1324", eq_ok, eq_w);

    bool brute_ok = true;
    std::string brute_w;
    std::vector<BigInt> expect = {1, 1, 4, 34};
    for (int n2 = 2; n2 <= 8 && brute_ok; n2 += 2) {
        if (extranice_count(n2) != expect[static_cast<size_t>(n2 / 2) - 1]) {
            brute_ok = false;
            brute_w = "closed form at n=" + std::to_string(n2);
        }
    }
    for (int n2 = 2; n2 <= brute_max_n && brute_ok; n2 += 2) {
        BigInt brute = 0;
        for_each_tree(range_labels(n2), [&](const LabeledForest& t) {
            if (is_extranice(t, p1423)) brute += 1;
        });
        if (extranice_count(n2) != brute) {
            brute_ok = false;
            brute_w = "brute force at n=" + std::to_string(n2);
        }
    }
    rep.add("closed form = 1,1,4,34 and matches brute force (n <= " +
                std::to_string(brute_max_n) + ")",
            brute_ok, brute_w);

    bool series_ok = true;
    std::string series_w;
    auto series = extranice_tree_series(series_max_n);
    for (int n = 2; n <= series_max_n; n += 2)
        if (series[static_cast<size_t>(n)] != extranice_count(n) && series_ok) {
            series_ok = false;
            series_w = "n=" + std::to_string(n);
        }
    rep.add("closed form matches the tangent series (n <= " + std::to_string(series_max_n) + ")",
            series_ok, series_w);
    return rep;
}

// Every registered recurrence against the enumeration oracle.
inline CampaignReport verify_recurrences(int max_n, const RunConfig& cfg = RunConfig()) {
    CampaignReport rep{"recurrences", {}};
    std::vector<PatternSet> registry = {
        PatternSet{Pattern({2, 1, 3}), Pattern({2, 3, 1})},
        PatternSet{Pattern({2, 1, 3})},
        PatternSet{Pattern({2, 1, 3}), Pattern({1, 2, 3})},
        PatternSet{Pattern({2, 1, 3}), Pattern({1, 3, 2})},
        PatternSet{Pattern({2, 1, 3}), Pattern({3, 2, 1})},
        PatternSet{Pattern({2, 1, 3}), Pattern({1, 2, 3}), Pattern({1, 3, 2})},
        PatternSet{Pattern({2, 1, 3}), Pattern({2, 3, 1}), Pattern({1, 2, 3})},
        PatternSet{Pattern({2, 1, 3}), Pattern({2, 3, 1}), Pattern({1, 3, 2})},
    };
    for (const auto& s : registry) {
        RecurrenceCounter rc(s);
        bool ok = true;
        std::string w;
        for (int n = 0; n <= max_n; ++n) {
            if (rc.forests(n) !=
                count_avoiding(n, s, AvoidanceMode::Classical, Universe::Forest, cfg)) {
                ok = false;
                w = "n=" + std::to_string(n);
                break;
            }
        }
        rep.add("{" + s.str() + "} matches the oracle", ok, w);
    }
    for (int k : {3, 4}) {
        std::vector<int> desc(static_cast<size_t>(k));
        for (int i = 0; i < k; ++i) desc[static_cast<size_t>(i)] = k - i;
        Pattern dp(desc);
        DescendingCounter dc(k);
        bool ok = true;
        std::string w;
        for (int n = 0; n <= max_n; ++n)
            if (dc.forests(n) != count_avoiding(n, PatternSet{dp}, AvoidanceMode::Classical,
                                                Universe::Forest, cfg)) {
                ok = false;
                w = "n=" + std::to_string(n);
                break;
            }
        rep.add("{" + dp.str() + "} matches the oracle", ok, w);

        PatternSet bell_set{Pattern({1, 2}), dp};
        bool bok = true;
        std::string bw;
        for (int n = 0; n <= max_n; ++n)
            if (higher_order_bell(k - 2, n) != count_avoiding(n, bell_set,
                                                              AvoidanceMode::Classical,
                                                              Universe::Forest, cfg)) {
                bok = false;
                bw = "n=" + std::to_string(n);
                break;
            }
        rep.add("{" + bell_set.str() + "} matches the oracle", bok, bw);
    }
    return rep;
}

} // namespace forestpat
