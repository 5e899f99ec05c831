#include "forestpat/avoid.hpp"
#include "forestpat/recurrences.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <vector>

using namespace forestpat;

namespace {

BigInt oracle_forests(int n, const PatternSet& s) {
    return count_avoiding(n, s, AvoidanceMode::Classical, Universe::Forest);
}

BigInt oracle_trees(int n, const PatternSet& s) {
    return count_avoiding(n, s, AvoidanceMode::Classical, Universe::Tree);
}

const std::vector<PatternSet>& registry_sets() {
    static const std::vector<PatternSet> sets = {
        PatternSet{Pattern({2, 1, 3}), Pattern({2, 3, 1})},
        PatternSet{Pattern({2, 1, 3})},
        PatternSet{Pattern({2, 1, 3}), Pattern({1, 2, 3})},
        PatternSet{Pattern({2, 1, 3}), Pattern({1, 3, 2})},
        PatternSet{Pattern({2, 1, 3}), Pattern({3, 2, 1})},
        PatternSet{Pattern({2, 1, 3}), Pattern({1, 2, 3}), Pattern({1, 3, 2})},
        PatternSet{Pattern({2, 1, 3}), Pattern({2, 3, 1}), Pattern({1, 2, 3})},
        PatternSet{Pattern({2, 1, 3}), Pattern({2, 3, 1}), Pattern({1, 3, 2})},
    };
    return sets;
}

} // namespace

TEST_CASE("forest_from_tree convolution") {
    ForestFromTree all_trees([](int n) { return n == 0 ? BigInt(0) : ipow(n, n - 1); });
    CHECK(all_trees(3, 1) == 16); // must reproduce the total forest count (3+1)^2
    CHECK(all_trees(0, 1) == 1);
    CHECK(all_trees(6, 1) == ipow(7, 5));

    ForestFromTree inc_trees(
        [](int n) { return oracle_trees(n, PatternSet{Pattern({2, 1})}); });
    CHECK(inc_trees(4, 1) == 24); // f_4(21) = 4!
    for (int n = 0; n <= 6; ++n) CHECK(inc_trees(n, 1) == factorial(n));
}

TEST_CASE("registry recurrences match the enumeration oracle") {
    for (const auto& s : registry_sets()) {
        RecurrenceCounter rc(s);
        for (int n = 0; n <= 6; ++n) {
            INFO("S = {" << s.str() << "}, n = " << n);
            CHECK(rc.forests(n) == oracle_forests(n, s));
            if (n >= 1) CHECK(rc.trees(n) == oracle_trees(n, s));
        }
    }
}

TEST_CASE("registry base cases and twins") {
    CHECK(RecurrenceCounter(PatternSet{Pattern({2, 1, 3}), Pattern({2, 3, 1})}).forests(0) == 1);
    RecurrenceCounter a(PatternSet{Pattern({2, 1, 3}), Pattern({1, 2, 3})});
    RecurrenceCounter b(PatternSet{Pattern({2, 1, 3}), Pattern({1, 3, 2})});
    for (int n = 0; n <= 8; ++n) CHECK(a.forests(n) == b.forests(n));
}

TEST_CASE("complement reduction reuses the registry") {
    RecurrenceCounter rc(PatternSet{Pattern({2, 3, 1})}); // {231} = {213}^c
    for (int n = 0; n <= 6; ++n)
        CHECK(rc.forests(n) == oracle_forests(n, PatternSet{Pattern({2, 3, 1})}));
    RecurrenceCounter rc2(PatternSet{Pattern({2, 3, 1}), Pattern({3, 2, 1})});
    for (int n = 0; n <= 6; ++n)
        CHECK(rc2.forests(n) ==
              oracle_forests(n, PatternSet{Pattern({2, 3, 1}), Pattern({3, 2, 1})}));
    CHECK_THROWS_AS(RecurrenceCounter(PatternSet{Pattern({1, 2, 3})}), error);
    CHECK_FALSE(RecurrenceCounter::supported(PatternSet{Pattern({1, 2, 3, 4})}));
}

TEST_CASE("potted convolution identity F(n,m) = m sum C(n-1,i-1) F(n-i,m) T(i)") {
    RecurrenceCounter rc(PatternSet{Pattern({2, 1, 3})});
    for (int m = 1; m <= 4; ++m) {
        for (int n = 1; n <= 7; ++n) {
            BigInt rhs = 0;
            for (int i = 1; i <= n; ++i)
                rhs += binomial(n - 1, i - 1) * rc.potted_forest(n - i, m) * rc.trees(i);
            CHECK(rc.potted_forest(n, m) == m * rhs);
        }
    }
}

TEST_CASE("descending_count k=2 is n!") {
    DescendingCounter d(2);
    for (int n = 0; n <= 9; ++n) CHECK(d.forests(n) == factorial(n));
}

TEST_CASE("descending_count matches the oracle for 321 and 4321") {
    DescendingCounter d3(3);
    for (int n = 0; n <= 6; ++n)
        CHECK(d3.forests(n) == oracle_forests(n, PatternSet{Pattern({3, 2, 1})}));
    DescendingCounter d4(4);
    for (int n = 0; n <= 6; ++n)
        CHECK(d4.forests(n) == oracle_forests(n, PatternSet{Pattern({4, 3, 2, 1})}));
    for (int n = 1; n <= 6; ++n)
        CHECK(d3.trees(n) == oracle_trees(n, PatternSet{Pattern({3, 2, 1})}));
}

TEST_CASE("pattern longer than any path avoids everything") {
    for (int k = 5; k <= 8; ++k) {
        DescendingCounter d(k);
        for (int n = 0; n < k && n <= 6; ++n)
            CHECK(d.forests(n) == ipow(n + 1, n - 1 < 0 ? 0 : n - 1));
    }
}

TEST_CASE("descending_count weakly increasing in k, reaching the total") {
    int n = 5;
    BigInt prev = 0;
    for (int k = 2; k <= 7; ++k) {
        BigInt cur = DescendingCounter(k).forests(n);
        CHECK(cur >= prev);
        prev = cur;
    }
    CHECK(prev == ipow(n + 1, n - 1));
}

TEST_CASE("full-dimension recurrence agrees with the reduced one") {
    for (int k : {3, 4}) {
        DescendingCounter d(k);
        for (int n = 0; n <= 8; ++n) {
            std::vector<int> full(static_cast<size_t>(k) - 1, 0);
            full.back() = n;
            std::vector<int> red(static_cast<size_t>(k) - 2, 0);
            CHECK(d.full_forest(n, full) == d.reduced_forest(n, red));
        }
    }
}

TEST_CASE("bell transform basics") {
    std::vector<BigInt> ones(10, 1);
    BellTriangle tri = bell_transform(ones, 7);
    CHECK(tri.at(1, 1) == 1); // Delta(1,1) = a_0
    for (int n = 0; n <= 7; ++n) CHECK(tri.at(n, n) == 1);
    std::vector<BigInt> bell = {1, 1, 2, 5, 15, 52, 203, 877};
    for (int n = 0; n <= 5; ++n) CHECK(tri.row_sum(n) == bell[static_cast<size_t>(n)]);
    CHECK_THROWS_AS(bell_transform(ones, 11), error);
}

TEST_CASE("higher-order Bell numbers") {
    for (int n = 0; n <= 8; ++n) CHECK(higher_order_bell(0, n) == 1);
    CHECK(higher_order_bell(1, 0) == 1);
    CHECK(higher_order_bell(2, 0) == 1);
    // f_n(12, k(k-1)...1) = (S_{k-2})_n, against the oracle
    for (int k : {3, 4}) {
        std::vector<int> desc(static_cast<size_t>(k));
        for (int i = 0; i < k; ++i) desc[static_cast<size_t>(i)] = k - i;
        PatternSet s{Pattern({1, 2}), Pattern(desc)};
        for (int n = 0; n <= 6; ++n) CHECK(higher_order_bell(k - 2, n) == oracle_forests(n, s));
    }
}

TEST_CASE("count memo flushes whole families past the cap") {
    CountMemo memo(2);
    memo.store("A", {1}, 1);
    memo.store("A", {2}, 2);
    CHECK(memo.family_size("A") == 2);
    memo.store("A", {3}, 3);
    CHECK(memo.family_size("A") == 1); // flushed, then stored
    CHECK(memo.find("A", {1}) == nullptr);
    CHECK(memo.find("A", {3}) != nullptr);
}
