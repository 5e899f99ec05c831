#include "forestpat/avoid.hpp"
#include "forestpat/clusters.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <vector>

using namespace forestpat;

TEST_CASE("cluster validation") {
    Pattern sigma({1, 2, 3});
    ForestCluster c;
    c.tree = LabeledForest::from_parent_map({{1, 0}, {2, 1}, {3, 2}, {4, 3}});
    c.instances = {{1, 2, 3}, {2, 3, 4}};
    CHECK(c.validate(sigma));
    // dropping one instance leaves vertex 4 uncovered
    ForestCluster d = c;
    d.instances = {{1, 2, 3}};
    std::string why;
    CHECK_FALSE(d.validate(sigma, &why));
    CHECK(why == "vertices left uncovered");
    // non-chain sequence rejected
    ForestCluster e = c;
    e.instances = {{1, 2, 3}, {1, 3, 4}};
    CHECK_FALSE(e.validate(sigma, &why));
}

TEST_CASE("cluster streams agree with the validator") {
    Pattern sigma({1, 3, 2});
    long count = 0;
    for_each_cluster(sigma, 5, [&](const ForestCluster& c) {
        std::string why;
        REQUIRE(c.validate(sigma, &why));
        ++count;
    });
    CHECK(count > 0);
}

TEST_CASE("r_{k,1} = 1 and r vanishes below k") {
    for (const auto& sigma :
         {Pattern({1, 2, 3}), Pattern({2, 1, 3}), Pattern({1, 3, 2, 4}), Pattern({1, 4, 2, 3})}) {
        auto table = cluster_table(sigma, sigma.size() + 1);
        CHECK(table.r(sigma.size(), 1) == 1);
        for (int n = 1; n < sigma.size(); ++n)
            for (int m = 1; m <= n; ++m) CHECK(table.r(n, m) == 0);
    }
}

TEST_CASE("cluster size bounds: k <= n <= m(k-1)+1") {
    for (const auto& sigma : {Pattern({1, 2, 3}), Pattern({2, 1, 3})}) {
        auto table = cluster_table(sigma, 6);
        int k = sigma.size();
        for (const auto& [nm, count] : table.entries()) {
            auto [n, m] = nm;
            if (count == 0) continue;
            CHECK(n >= k);
            CHECK(n <= m * (k - 1) + 1);
        }
    }
}

TEST_CASE("closed form for r_{2k-1,2}") {
    CHECK(r_closed_form(Pattern({1, 2, 3})) == 7);
    CHECK(r_closed_form(Pattern({1, 3, 2, 4})) == 25);
    // complement symmetry of the expression
    for (const auto& sigma : all_patterns(4))
        CHECK(r_closed_form(sigma) == r_closed_form(sigma.complement()));
    // brute force agreement at length 3 (length 4 runs in the acceptance suite)
    for (const auto& sigma : all_patterns(3)) {
        auto table = cluster_table(sigma, 5);
        INFO("sigma = " << sigma.str());
        CHECK(table.r(5, 2) == r_closed_form(sigma));
    }
}

TEST_CASE("cluster tables are complement-invariant") {
    auto t123 = cluster_table(Pattern({1, 2, 3}), 6);
    auto t321 = cluster_table(Pattern({3, 2, 1}), 6);
    CHECK(t123 == t321);
    auto a = cluster_table(Pattern({1, 4, 2, 3}), 6);
    auto b = cluster_table(Pattern({4, 1, 3, 2}), 6);
    CHECK(a == b);
}

TEST_CASE("counts_from_clusters reproduces the instance-count oracle") {
    for (const auto& sigma : {Pattern({1, 2, 3}), Pattern({1, 3, 2, 4}), Pattern({1, 4, 2, 3})}) {
        int max_n = 5;
        ClusterCounts counts(cluster_table(sigma, max_n), max_n);
        CHECK(counts.F(0, 3, 0) == 1);
        CHECK(counts.F(0, 3, 2) == 0);
        for (int n = 0; n <= max_n; ++n) {
            auto oracle = count_by_instances(n, sigma);
            for (int m = 0; m <= max_n; ++m) {
                BigInt expect = oracle.count(m) ? oracle.at(m) : 0;
                INFO("sigma = " << sigma.str() << ", n = " << n << ", m = " << m);
                CHECK(counts.f(n, m) == expect);
            }
        }
    }
}

TEST_CASE("the highlighted/exact transforms invert each other") {
    Pattern sigma({1, 2, 3});
    int max_n = 5;
    ClusterCounts counts(cluster_table(sigma, max_n), max_n);
    for (int n = 0; n <= max_n; ++n) {
        std::map<int, BigInt> fvals;
        for (int m = 0; m <= max_n; ++m) {
            BigInt v = counts.f(n, m);
            if (v != 0) fvals[m] = v;
        }
        for (int m = 0; m <= max_n; ++m) CHECK(ClusterCounts::F_from_f(m, fvals) == counts.F(n, 1, m));
    }
}

TEST_CASE("cluster numbers are recovered from the f-values") {
    for (const auto& sigma : {Pattern({1, 2, 3}), Pattern({2, 1, 3})}) {
        int max_n = 5;
        std::vector<std::map<int, BigInt>> f_by_n;
        for (int n = 0; n <= max_n; ++n) f_by_n.push_back(count_by_instances(n, sigma));
        auto recovered = table_from_fvalues(sigma, f_by_n);
        auto direct = cluster_table(sigma, max_n);
        INFO("sigma = " << sigma.str());
        CHECK(recovered == direct);
    }
}

TEST_CASE("strong-c-forest-Wilf verdicts") {
    auto self = strong_cfw_equivalent(Pattern({1, 2, 3}), Pattern({1, 2, 3}), 5);
    CHECK(self.equal);

    auto good = strong_cfw_equivalent(Pattern({1, 3, 2, 4}), Pattern({1, 4, 2, 3}), 6);
    CHECK(good.equal);

    auto bad = strong_cfw_equivalent(Pattern({1, 2, 3}), Pattern({1, 3, 2}), 5);
    CHECK_FALSE(bad.equal);
    REQUIRE(bad.witness.has_value());
    auto [n, m, lhs, rhs] = *bad.witness;
    CHECK(n <= 5);
    CHECK(lhs == bad.lhs_table.r(n, m));
    CHECK(rhs == bad.rhs_table.r(n, m));
    CHECK(lhs != rhs);

    CHECK_THROWS_AS(strong_cfw_equivalent(Pattern({1, 2}), Pattern({1, 2, 3}), 4), error);
}

TEST_CASE("first-value necessary condition") {
    CHECK(first_value_test(Pattern({1, 3, 2, 4}), Pattern({1, 4, 2, 3})));
    CHECK(first_value_test(Pattern({2, 1, 3, 4}), Pattern({3, 1, 2, 4}))); // 2+3 = 5 = k+1
    CHECK_FALSE(first_value_test(Pattern({1, 2, 3, 4}), Pattern({2, 1, 3, 4})));
}

TEST_CASE("enumeration cap") {
    RunConfig cfg;
    cfg.cluster_cap_k3 = 5;
    CHECK_THROWS_AS(cluster_table(Pattern({1, 2, 3}), 6, cfg), error);
}
