#include "forestpat/avoid.hpp"
#include "forestpat/bijections.hpp"
#include "forestpat/enumerate.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <string>
#include <vector>

using namespace forestpat;

namespace {

// Structure signature: sorted multiset encoding of child subtrees, so two
// forests agree iff they are isomorphic as unlabeled rooted forests.
std::string shape_code(const LabeledForest& f, int idx) {
    std::vector<std::string> parts;
    for (int c : f.children_of(idx)) parts.push_back(shape_code(f, c));
    std::sort(parts.begin(), parts.end());
    std::string s = "(";
    for (const auto& p : parts) s += p;
    return s + ")";
}

std::string shape_code(const LabeledForest& f) {
    std::vector<std::string> parts;
    for (int r = 0; r < f.size(); ++r)
        if (f.is_root(r)) parts.push_back(shape_code(f, r));
    std::sort(parts.begin(), parts.end());
    std::string s;
    for (const auto& p : parts) s += p;
    return s;
}

} // namespace

TEST_CASE("TauPair derives tau~ and tau-bar") {
    TauPair p(Pattern({1, 2, 3}));
    CHECK(p.tau_tilde == Pattern({1, 3, 2}));
    CHECK(p.tau_bar == Pattern({1, 2}));
    TauPair q(Pattern({2, 1, 3, 4}));
    CHECK(q.tau_tilde == Pattern({2, 1, 4, 3}));
    CHECK(q.tau_bar == Pattern({2, 1, 3}));
    CHECK_THROWS_AS(TauPair(Pattern({2, 1, 3})), error);
    CHECK_THROWS_AS(TauPair(Pattern({1, 2})), error);
}

TEST_CASE("special vertices") {
    TauPair p123(Pattern({1, 2, 3}));
    // strictly decreasing chain: no 12 instance, nothing special
    auto dec = LabeledForest::from_parent_map({{3, 0}, {2, 3}, {1, 2}});
    CHECK(special_vertices(dec, p123).empty());
    // 6 an ancestor of 10 establishes that 10 is special
    auto f = LabeledForest::from_parent_map({{6, 0}, {10, 6}, {4, 10}});
    CHECK(special_vertices(f, p123) == std::vector<int>{10});
    // chain 1->2->3 with tau = 1234: only 3 ends a 123 instance
    TauPair p1234(Pattern({1, 2, 3, 4}));
    auto c = LabeledForest::from_parent_map({{1, 0}, {2, 1}, {3, 2}});
    CHECK(special_vertices(c, p1234) == std::vector<int>{3});
}

TEST_CASE("shuffle") {
    TauPair p(Pattern({1, 2, 3}));
    // v=5 under root 1, strict descendants 2->7; subtree labels {2,5,7}
    auto f = LabeledForest::from_parent_map({{1, 0}, {5, 1}, {2, 5}, {7, 2}});
    auto g = shuffle(f, 5, p);
    CHECK(g == LabeledForest::from_parent_map({{1, 0}, {7, 1}, {2, 7}, {5, 2}}));
    // already holding the max label: unchanged
    auto h = LabeledForest::from_parent_map({{1, 0}, {7, 1}, {2, 7}, {5, 2}});
    CHECK(shuffle(h, 7, p) == h);
    // special set preserved
    CHECK(special_vertices(f, p) == special_vertices(g, p));
    CHECK_THROWS_AS(shuffle(f, 1, p), error); // a root is never special
}

TEST_CASE("antishuffle") {
    TauPair p(Pattern({1, 2, 3}));
    auto f = LabeledForest::from_parent_map({{1, 0}, {7, 1}, {2, 7}, {5, 2}});
    auto g = antishuffle(f, 7, p);
    // y = 2 keeps the vertex special (1 < 2); descendants reorder to {5,7}
    CHECK(g == LabeledForest::from_parent_map({{1, 0}, {2, 1}, {5, 2}, {7, 5}}));
    CHECK(special_vertices(f, p) == special_vertices(g, p));
    CHECK(antishuffle(g, 2, p) == g); // already minimal
    // label multiset of the subtree is preserved
    CHECK(g.labels() == f.labels());
}

TEST_CASE("alpha and beta fix forests without special vertices") {
    TauPair p(Pattern({1, 2, 3}));
    for_each_forest(range_labels(4), [&](const LabeledForest& f) {
        if (special_vertices(f, p).empty()) {
            REQUIRE(alpha(f, p) == f);
            REQUIRE(beta(f, p) == f);
        }
    });
}

TEST_CASE("alpha/beta are inverse bijections between avoidance classes") {
    for (const Pattern& tau : {Pattern({1, 2, 3}), Pattern({1, 2, 3, 4}), Pattern({2, 1, 3, 4})}) {
        TauPair pair(tau);
        for (int n = 1; n <= 5; ++n) {
            for_each_forest(range_labels(n), [&](const LabeledForest& f) {
                bool avoids_tilde = !contains(f, pair.tau_tilde, AvoidanceMode::Classical);
                bool avoids_tau = !contains(f, pair.tau, AvoidanceMode::Classical);
                if (avoids_tilde) {
                    auto img = alpha(f, pair);
                    REQUIRE_FALSE(contains(img, pair.tau, AvoidanceMode::Classical));
                    REQUIRE(beta(img, pair) == f);
                }
                if (avoids_tau) {
                    auto img = beta(f, pair);
                    REQUIRE_FALSE(contains(img, pair.tau_tilde, AvoidanceMode::Classical));
                    REQUIRE(alpha(img, pair) == f);
                }
            });
        }
    }
}

TEST_CASE("alpha preserves structure and non-special labels") {
    TauPair pair(Pattern({1, 2, 3}));
    for_each_forest(range_labels(5), [&](const LabeledForest& f) {
        auto a = alpha(f, pair);
        REQUIRE(shape_code(a) == shape_code(f));
        auto specials = special_vertices(f, pair);
        for (int i = 0; i < f.size(); ++i) {
            int lab = f.label(i);
            bool is_spec = std::binary_search(specials.begin(), specials.end(), lab);
            if (!is_spec) {
                REQUIRE(a.find_index(lab) >= 0);
                REQUIRE(a.depth_of(a.index_of(lab)) == f.depth_of(i));
            }
        }
    });
}

TEST_CASE("per-shape labeling counts agree (forest-structure-Wilf)") {
    for (const Pattern& tau : {Pattern({1, 2, 3}), Pattern({1, 2, 3, 4})}) {
        TauPair pair(tau);
        for (int n = 1; n <= 5; ++n) {
            std::map<std::string, std::pair<long, long>> by_shape;
            for_each_forest(range_labels(n), [&](const LabeledForest& f) {
                auto& c = by_shape[shape_code(f)];
                if (!contains(f, pair.tau, AvoidanceMode::Classical)) c.first++;
                if (!contains(f, pair.tau_tilde, AvoidanceMode::Classical)) c.second++;
            });
            for (const auto& [shape, c] : by_shape) {
                INFO("tau = " << tau.str() << ", n = " << n << ", shape " << shape);
                CHECK(c.first == c.second);
            }
        }
    }
}

TEST_CASE("restriction: alpha injects F_n(sigma,tau~) into F_n(sigma,tau)") {
    TauPair pair(Pattern({1, 2, 3}));
    // sigma must fix its last value
    std::vector<Pattern> sigmas = {Pattern({1, 2}), Pattern({1, 2, 3}), Pattern({2, 1, 3})};
    for (int n = 1; n <= 5; ++n) {
        for (const auto& sigma : sigmas) {
            long lhs = 0, rhs = 0;
            for_each_forest(range_labels(n), [&](const LabeledForest& f) {
                bool av_sigma = !contains(f, sigma, AvoidanceMode::Classical);
                if (av_sigma && !contains(f, pair.tau_tilde, AvoidanceMode::Classical)) {
                    ++lhs;
                    auto img = alpha(f, pair);
                    REQUIRE_FALSE(contains(img, sigma, AvoidanceMode::Classical));
                    REQUIRE_FALSE(contains(img, pair.tau, AvoidanceMode::Classical));
                }
                if (av_sigma && !contains(f, pair.tau, AvoidanceMode::Classical)) ++rhs;
            });
            INFO("sigma = " << sigma.str() << ", n = " << n);
            CHECK(lhs <= rhs);
        }
    }
}

TEST_CASE("213-restricted bijection gives equalities") {
    Pattern p213({2, 1, 3});
    for (int k : {3, 4}) {
        std::vector<int> inc(static_cast<size_t>(k));
        for (int i = 0; i < k; ++i) inc[static_cast<size_t>(i)] = i + 1;
        Pattern tau(inc);
        TauPair pair(tau);
        for (int n = 1; n <= 5; ++n) {
            BigInt lhs = count_avoiding(n, PatternSet{p213, tau}, AvoidanceMode::Classical,
                                        Universe::Forest);
            BigInt rhs = count_avoiding(n, PatternSet{p213, pair.tau_tilde},
                                        AvoidanceMode::Classical, Universe::Forest);
            INFO("k = " << k << ", n = " << n);
            CHECK(lhs == rhs);
        }
    }
}
