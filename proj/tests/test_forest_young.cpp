#include "forestpat/forest_young.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <functional>
#include <set>
#include <vector>

using namespace forestpat;

namespace {

// independent permutation-pattern brute force
bool perm_contains(const std::vector<int>& w, const Pattern& sigma) {
    int n = static_cast<int>(w.size()), k = sigma.size();
    std::vector<int> idx;
    std::function<bool(int, int)> choose = [&](int from, int need) -> bool {
        if (need == 0) {
            std::vector<int> sub;
            for (int i : idx) sub.push_back(w[static_cast<size_t>(i)]);
            return matches_pattern(sub, sigma);
        }
        for (int i = from; i + need <= n; ++i) {
            idx.push_back(i);
            if (choose(i + 1, need - 1)) return true;
            idx.pop_back();
        }
        return false;
    };
    return choose(0, k);
}

ForestYoungDiagram path_diagram(const std::vector<int>& heights_root_first) {
    int n = static_cast<int>(heights_root_first.size());
    std::vector<int> parent(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v) parent[static_cast<size_t>(v)] = v - 1;
    return ForestYoungDiagram::make(parent, heights_root_first);
}

ForestYoungDiagram full_square_path(int n) {
    return path_diagram(std::vector<int>(static_cast<size_t>(n), n));
}

long count_avoiding_transversals(const ForestYoungDiagram& y, const std::vector<PermMatrix>& ms) {
    long c = 0;
    for (const auto& t : enumerate_transversals(y))
        if (transversal_avoids_all(y, t, ms)) ++c;
    return c;
}

} // namespace

TEST_CASE("pattern-to-matrix convention: 21 -> I2, 12 -> J2") {
    CHECK(PermMatrix::from_pattern(Pattern({2, 1})) == PermMatrix::i2());
    CHECK(PermMatrix::from_pattern(Pattern({1, 2})) == PermMatrix::j2());
    auto m = PermMatrix::from_pattern(Pattern({2, 4, 1, 3}));
    for (int i = 1; i <= 4; ++i) {
        int row_count = 0, col_count = 0;
        for (int j = 1; j <= 4; ++j) {
            if (m.entry(i, j)) ++row_count;
            if (m.entry(j, i)) ++col_count;
        }
        CHECK(row_count == 1);
        CHECK(col_count == 1);
    }
}

TEST_CASE("tau matrices decompose into corner blocks") {
    CHECK(PermMatrix::from_pattern(Pattern({1, 2, 3})) ==
          PermMatrix::block(PermMatrix::j2(), PermMatrix::from_pattern(Pattern({1}))));
    CHECK(PermMatrix::from_pattern(Pattern({1, 3, 2})) ==
          PermMatrix::block(PermMatrix::i2(), PermMatrix::from_pattern(Pattern({1}))));
    CHECK(PermMatrix::from_pattern(Pattern({1, 2, 3, 4})) ==
          PermMatrix::block(PermMatrix::j2(), PermMatrix::from_pattern(Pattern({1, 2}))));
    CHECK(PermMatrix::from_pattern(Pattern({1, 2, 4, 3})) ==
          PermMatrix::block(PermMatrix::i2(), PermMatrix::from_pattern(Pattern({1, 2}))));
    CHECK(PermMatrix::from_pattern(Pattern({2, 1, 3, 4})) ==
          PermMatrix::block(PermMatrix::j2(), PermMatrix::from_pattern(Pattern({2, 1}))));
}

TEST_CASE("transversal enumeration") {
    auto single = path_diagram({1});
    CHECK(enumerate_transversals(single).size() == 1);
    CHECK(enumerate_transversals(full_square_path(3)).size() == 6);
    CHECK(enumerate_transversals(full_square_path(4)).size() == 24);
    // max height below vertex count: pigeonhole, no transversal
    auto squat = path_diagram({1, 2, 2});
    CHECK(enumerate_transversals(squat).empty());
    // empty diagram has exactly the empty transversal
    CHECK(enumerate_transversals(ForestYoungDiagram()).size() == 1);
}

TEST_CASE("backtracking enumeration matches the bijection brute force") {
    for (int n = 1; n <= 4; ++n)
        for (const auto& y : all_diagrams(n, n))
            REQUIRE(enumerate_transversals(y) == enumerate_transversals_bruteforce(y));
}

TEST_CASE("containment of the 1x1 matrix") {
    auto m1 = PermMatrix::from_pattern(Pattern({1}));
    auto y = full_square_path(2);
    for (const auto& t : enumerate_transversals(y)) CHECK(transversal_contains(y, t, m1));
    CHECK_FALSE(transversal_contains(ForestYoungDiagram(), Transversal{}, m1));
}

TEST_CASE("the classical Young diagram example, as a path diagram") {
    // column heights right-to-left of the classical picture; the root gets
    // the shortest column
    auto y = path_diagram({2, 3, 6, 6, 7, 7, 8, 8});
    Transversal t{{2, 1, 6, 3, 5, 7, 8, 4}};
    REQUIRE(is_valid_transversal(y, t));
    // the classical matrix with 1s at (1,3),(2,2),(3,1) reads column-reversed
    // along the root-to-leaf chain, i.e. as the identity-shaped matrix here
    auto m = PermMatrix({1, 2, 3});
    CHECK_FALSE(transversal_contains(y, t, m));
    // adding the cell in row 4 of the second-oldest column creates an instance
    auto y2 = path_diagram({2, 4, 6, 6, 7, 7, 8, 8});
    REQUIRE(is_valid_transversal(y2, t));
    CHECK(transversal_contains(y2, t, m));
}

TEST_CASE("full squares over a path specialize to permutation avoidance") {
    std::vector<Pattern> pats = {Pattern({1, 2, 3}), Pattern({1, 3, 2}), Pattern({2, 1, 3}),
                                 Pattern({2, 3, 1}), Pattern({3, 1, 2}), Pattern({3, 2, 1})};
    for (int n = 1; n <= 5; ++n) {
        auto y = full_square_path(n);
        auto ts = enumerate_transversals(y);
        for (const auto& sigma : pats) {
            auto m = PermMatrix::from_pattern(sigma);
            long lhs = 0;
            for (const auto& t : ts)
                if (!transversal_contains(y, t, m)) ++lhs;
            long rhs = 0;
            std::vector<int> w(static_cast<size_t>(n));
            for (int i = 0; i < n; ++i) w[static_cast<size_t>(i)] = i + 1;
            do {
                if (!perm_contains(w, sigma)) ++rhs;
            } while (std::next_permutation(w.begin(), w.end()));
            INFO("sigma = " << sigma.str() << ", n = " << n);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("phi swaps the minimal I2 into a J2 on the two-cell chain") {
    auto y = path_diagram({2, 2});
    Transversal i2t{{1, 2}};
    Transversal j2t{{2, 1}};
    REQUIRE(transversal_contains(y, i2t, PermMatrix::i2()));
    CHECK(phi(y, i2t) == j2t);
    CHECK(psi(y, j2t) == i2t);
    CHECK_THROWS_AS(phi(y, j2t), error);
    CHECK_THROWS_AS(psi(y, i2t), error);
    CHECK(is_valid_transversal(y, phi(y, i2t)));
}

TEST_CASE("phi/psi single-step inverses") {
    for (int n = 2; n <= 4; ++n) {
        for (const auto& y : all_diagrams(n, n)) {
            for (const auto& t : enumerate_transversals(y)) {
                bool has_i2 = transversal_contains(y, t, PermMatrix::i2());
                bool has_j2 = transversal_contains(y, t, PermMatrix::j2());
                if (has_i2 && !has_j2) REQUIRE(psi(y, phi(y, t)) == t);
                if (has_j2 && !has_i2) REQUIRE(phi(y, psi(y, t)) == t);
            }
        }
    }
}

TEST_CASE("I2 and J2 avoider classes have equal size, with inverse maps") {
    for (int n = 1; n <= 4; ++n) {
        for (const auto& y : all_diagrams(n, n)) {
            std::set<Transversal> i2_avoiders, j2_avoiders;
            for (const auto& t : enumerate_transversals(y)) {
                if (!transversal_contains(y, t, PermMatrix::i2())) i2_avoiders.insert(t);
                if (!transversal_contains(y, t, PermMatrix::j2())) j2_avoiders.insert(t);
            }
            REQUIRE(i2_avoiders.size() == j2_avoiders.size());
            for (const auto& l : j2_avoiders) {
                auto img = i2j2_f(y, l);
                REQUIRE(i2_avoiders.count(img) == 1);
                REQUIRE(i2j2_g(y, img) == l);
            }
            for (const auto& t : i2_avoiders) {
                auto img = i2j2_g(y, t);
                REQUIRE(j2_avoiders.count(img) == 1);
                REQUIRE(i2j2_f(y, img) == t);
            }
        }
    }
}

TEST_CASE("i2j2 maps move between the avoidance classes") {
    auto y = path_diagram({2, 2});
    // {1,2} is the I2 instance (avoids J2); {2,1} is the J2 instance
    CHECK(i2j2_f(y, Transversal{{1, 2}}) == Transversal{{2, 1}});
    CHECK(i2j2_g(y, Transversal{{2, 1}}) == Transversal{{1, 2}});
    // wrong-side inputs violate the precondition
    CHECK_THROWS_AS(i2j2_f(y, Transversal{{2, 1}}), error);
    CHECK_THROWS_AS(i2j2_g(y, Transversal{{1, 2}}), error);
    // a transversal avoiding both is a fixed point of either map
    auto y2 = path_diagram({1, 2});
    CHECK(i2j2_f(y2, Transversal{{1, 2}}) == Transversal{{1, 2}});
    CHECK(i2j2_g(y2, Transversal{{1, 2}}) == Transversal{{1, 2}});
}

TEST_CASE("coloring with no A-instances blues everything") {
    std::vector<PermMatrix> as = {PermMatrix::from_pattern(Pattern({1}))};
    // isolated vertices: no strict ancestors, so step 1 colors all cells blue
    auto iso = ForestYoungDiagram::make({-1, -1}, {1, 2});
    for (const auto& tt : enumerate_transversals(iso)) {
        auto c = coloring(iso, tt, as);
        CHECK(c.sub.size() == 0);
        for (int v = 0; v < iso.size(); ++v) CHECK(c.white_prefix[static_cast<size_t>(v)] == 0);
        auto out = blocks_apply(iso, tt, PermMatrix::j2(), PermMatrix::i2(), as,
                                [](const ForestYoungDiagram& z, const Transversal& l) {
                                    return i2j2_f(z, l);
                                });
        CHECK(out == tt);
    }
}

TEST_CASE("coloring is stable under the block map") {
    std::vector<Pattern> taus = {Pattern({1, 2, 3})};
    auto as = fswe_prefix_matrices(taus);
    std::vector<PermMatrix> ms = {PermMatrix::from_pattern(Pattern({1, 2, 3}))};
    for (int n = 2; n <= 4; ++n) {
        for (const auto& y : all_diagrams(n, n)) {
            for (const auto& t : enumerate_transversals(y)) {
                if (!transversal_avoids_all(y, t, ms)) continue;
                auto col1 = coloring(y, t, as);
                CHECK_FALSE(transversal_contains(col1.sub, col1.sub_t, PermMatrix::j2()));
                auto img = fswe_forward(y, t, taus);
                auto col2 = coloring(y, img, as);
                CHECK(col1.same_as(col2));
            }
        }
    }
}

TEST_CASE("block bijection: class sizes match and maps invert") {
    std::vector<Pattern> taus = {Pattern({1, 2, 3})};
    std::vector<PermMatrix> ms = {PermMatrix::from_pattern(Pattern({1, 2, 3}))};
    std::vector<PermMatrix> ms_tilde = {PermMatrix::from_pattern(Pattern({1, 3, 2}))};
    for (int n = 1; n <= 4; ++n) {
        for (const auto& y : all_diagrams(n, n)) {
            REQUIRE(count_avoiding_transversals(y, ms) ==
                    count_avoiding_transversals(y, ms_tilde));
            for (const auto& t : enumerate_transversals(y)) {
                if (!transversal_avoids_all(y, t, ms)) continue;
                auto img = fswe_forward(y, t, taus);
                REQUIRE(transversal_avoids_all(y, img, ms_tilde));
                REQUIRE(fswe_backward(y, img, taus) == t);
            }
        }
    }
}

TEST_CASE("two-pair forest-shape-Wilf equivalence") {
    std::vector<Pattern> taus = {Pattern({1, 2, 3}), Pattern({1, 2, 3, 4})};
    std::vector<PermMatrix> ms = {PermMatrix::from_pattern(Pattern({1, 2, 3})),
                                  PermMatrix::from_pattern(Pattern({1, 2, 3, 4}))};
    std::vector<PermMatrix> ms_tilde = {PermMatrix::from_pattern(Pattern({1, 3, 2})),
                                        PermMatrix::from_pattern(Pattern({1, 2, 4, 3}))};
    for (int n = 1; n <= 4; ++n) {
        for (const auto& y : all_diagrams(n, n)) {
            REQUIRE(count_avoiding_transversals(y, ms) ==
                    count_avoiding_transversals(y, ms_tilde));
            for (const auto& t : enumerate_transversals(y)) {
                if (!transversal_avoids_all(y, t, ms)) continue;
                auto img = fswe_forward(y, t, taus);
                REQUIRE(transversal_avoids_all(y, img, ms_tilde));
                REQUIRE(fswe_backward(y, img, taus) == t);
            }
        }
    }
}

TEST_CASE("single pair on the full square over a 4-path") {
    auto y = full_square_path(4);
    std::vector<PermMatrix> m123 = {PermMatrix::from_pattern(Pattern({1, 2, 3}))};
    std::vector<PermMatrix> m132 = {PermMatrix::from_pattern(Pattern({1, 3, 2}))};
    CHECK(count_avoiding_transversals(y, m123) == count_avoiding_transversals(y, m132));
}

TEST_CASE("block map rejects inputs containing a forbidden matrix") {
    auto y = full_square_path(3);
    std::vector<Pattern> taus = {Pattern({1, 2, 3})};
    auto m = PermMatrix::from_pattern(Pattern({1, 2, 3}));
    bool found = false;
    for (const auto& t : enumerate_transversals(y)) {
        if (!transversal_contains(y, t, m)) continue;
        found = true;
        CHECK_THROWS_AS(fswe_forward(y, t, taus), error);
    }
    CHECK(found);
    // and the wrapper validates the tau shape
    CHECK_THROWS_AS(fswe_prefix_matrices({Pattern({2, 1, 3})}), error);
}
