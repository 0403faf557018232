#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "hamperturb/clfactor.hpp"
#include "hamperturb/mindeg.hpp"
#include "hamperturb/permutation.hpp"
#include "hamperturb/stats.hpp"
#include "support.hpp"

using namespace hamperturb;

TEST_CASE("permutation validation") {
    Permutation p({2, 0, 1});
    CHECK(p(0) == 2);
    CHECK(p(2) == 1);
    CHECK(p.images() == std::vector<int>{2, 0, 1});
    CHECK_THROWS_AS(Permutation({0, 0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(Permutation({0, 3}), std::invalid_argument);
}

TEST_CASE("uniform sampling is a bijection and is uniform at n=4") {
    Rng rng(17);
    for (int n = 1; n <= 5; ++n) {
        Permutation p = sample_uniform(n, rng);
        std::vector<std::uint8_t> seen(static_cast<std::size_t>(n), 0);
        for (int i = 0; i < n; ++i) seen[static_cast<std::size_t>(p(i))] = 1;
        for (int i = 0; i < n; ++i) CHECK(seen[static_cast<std::size_t>(i)]);
    }

    // all 24 outcomes equally likely
    std::map<std::vector<int>, long long> counts;
    const long long trials = 24000;
    for (long long t = 0; t < trials; ++t) counts[sample_uniform(4, rng).images()]++;
    REQUIRE(counts.size() == 24);
    std::vector<long long> observed;
    std::vector<double> expected;
    for (const auto& [img, c] : counts) {
        observed.push_back(c);
        expected.push_back(static_cast<double>(trials) / 24.0);
    }
    CHECK(chi_square_gof_pvalue(observed, expected) > 0.001);

    Rng a(4), b(4);
    CHECK(sample_uniform(30, a).images() == sample_uniform(30, b).images());
    CHECK_THROWS_AS(sample_uniform(0, rng), std::invalid_argument);
}

TEST_CASE("cycle structure of hand permutations") {
    CycleStructure id(Permutation({0, 1, 2, 3, 4}));
    CHECK(id.cycles().size() == 5);
    CHECK(id.type() == std::vector<int>{1, 1, 1, 1, 1});

    CycleStructure cs(Permutation({1, 2, 0, 4, 3}));
    CHECK(cs.cycles() == std::vector<std::vector<int>>{{0, 1, 2}, {3, 4}});
    CHECK(cs.type() == std::vector<int>{3, 2});
    CHECK(cs.cycle_count_upto(2) == 1);
    CHECK(cs.longest_cycle() == 3);
    CHECK(cs.containing_cycle_length(4) == 2);
    CHECK(cs.containing_cycle_length(1) == 3);
}

TEST_CASE("two factor validation") {
    CHECK_THROWS_AS(TwoFactor(5, {{0, 1}, {2, 3, 4}}), std::invalid_argument);
    CHECK_THROWS_AS(TwoFactor(6, {{0, 1, 2}, {2, 3, 4}}), std::invalid_argument); // repeat
    CHECK_THROWS_AS(TwoFactor(7, {{0, 1, 2}, {3, 4, 5}}), std::invalid_argument); // misses 6
}

TEST_CASE("two factor orientation rule") {
    // both orientations of the same 4-cycle normalize identically
    TwoFactor a(4, {{1, 0, 2, 3}});
    TwoFactor b(4, {{1, 3, 2, 0}});
    CHECK(a == b);
    CHECK(a.cycles().front().front() == 0);
    CHECK(a.cycles().front()[1] < a.cycles().front().back());

    TwoFactor f(7, {{5, 6, 4}, {0, 2, 1, 3}});
    CHECK(f.cycles().size() == 2);
    CHECK(f.cycles()[0].front() == 0);
    CHECK(f.cycles()[1].front() == 4);
    CHECK(f.type() == std::vector<int>{4, 3});
    CHECK(f.cycle_count_upto(3) == 1);
    CHECK(f.longest_cycle() == 4);
}

TEST_CASE("canonical blocks lay out descending lengths") {
    TwoFactor blocks = canonical_blocks({3, 5, 4});
    REQUIRE(blocks.size() == 12);
    CHECK(blocks.cycles()[0] == std::vector<int>{0, 1, 2, 3, 4});
    CHECK(blocks.cycles()[1] == std::vector<int>{5, 6, 7, 8});
    CHECK(blocks.cycles()[2] == std::vector<int>{9, 10, 11});
}

TEST_CASE("relabeling preserves the type") {
    Rng rng(23);
    TwoFactor f = sample_two_factor(12, rng);
    Permutation p = sample_uniform(12, rng);
    TwoFactor g = apply_permutation(p, f);
    CHECK(g.type() == f.type());
    CHECK_THROWS_AS(apply_permutation(sample_uniform(11, rng), f), std::invalid_argument);
}

TEST_CASE("alignment permutation reproduces the factor from its blocks") {
    Rng rng(31);
    for (int rep = 0; rep < 50; ++rep) {
        TwoFactor f = sample_two_factor(30, rng);
        Permutation pi = alignment_permutation(f);
        CHECK(apply_permutation(pi, canonical_blocks(f.type())) == f);
    }
}

TEST_CASE("factor sampling matches the conditioned enumeration at n=6") {
    // 6-cycles: 120; two triangles: 40; everything else has a short cycle
    Rng rng(41);
    const int trials = 4000;
    int two_cycles = 0;
    for (int t = 0; t < trials; ++t) {
        TwoFactor f = sample_two_factor(6, rng);
        for (const auto& c : f.cycles()) REQUIRE(c.size() >= 3);
        if (f.cycle_count() == 2) ++two_cycles;
    }
    double freq = static_cast<double>(two_cycles) / trials;
    double sigma = std::sqrt(0.25 * 0.75 / trials);
    CHECK(std::abs(freq - 0.25) < 3 * sigma);

    CHECK_THROWS_AS(sample_two_factor(2, rng), std::invalid_argument);
}

TEST_CASE("factor graph is 2-regular") {
    Rng rng(51);
    TwoFactor f = sample_two_factor(20, rng);
    Graph g = two_factor_graph(f);
    CHECK(g.edge_count() == 20);
    CHECK(min_degree(g) == 2);
    CHECK(max_degree(g) == 2);
}

TEST_CASE("component counting within a set matches a union-find oracle") {
    Rng rng(61);
    for (int rep = 0; rep < 100; ++rep) {
        TwoFactor f = sample_two_factor(20, rng);
        VertexSet b(20);
        std::vector<std::uint8_t> keep(20, 0);
        for (int v = 0; v < 20; ++v)
            if (rng.coin()) {
                b.add(v);
                keep[static_cast<std::size_t>(v)] = 1;
            }
        int direct = count_components_within(f, b);
        CHECK(direct == testsupport::components_within(two_factor_graph(f), keep));

        // identity behind the obstruction count: components inside B equal
        // |A| minus the factor edges inside A, plus cycles avoiding A
        int z_inside_a = 0, cycles_in_b = 0;
        for (const auto& c : f.cycles()) {
            bool avoids_a = true;
            for (std::size_t i = 0; i < c.size(); ++i) {
                int u = c[i], v = c[(i + 1) % c.size()];
                if (!b.contains(u)) avoids_a = false;
                if (!b.contains(u) && !b.contains(v)) ++z_inside_a;
            }
            if (avoids_a) ++cycles_in_b;
        }
        int a_size = 20 - b.size();
        CHECK(direct == a_size - z_inside_a + cycles_in_b);
    }
}

TEST_CASE("uniform cycle length factors") {
    Rng rng(71);
    TwoFactor f = sample_cl_factor(12, 3, rng);
    CHECK(f.cycle_count() == 4);
    for (const auto& c : f.cycles()) CHECK(c.size() == 3);

    TwoFactor g = sample_cl_factor(12, 12, rng);
    CHECK(g.cycle_count() == 1);

    CHECK_THROWS_AS(sample_cl_factor(10, 3, rng), std::invalid_argument);
    CHECK_THROWS_AS(sample_cl_factor(12, 2, rng), std::invalid_argument);

    Rng a(5), b(5);
    TwoFactor fa = sample_cl_factor(30, 5, a);
    TwoFactor fb = sample_cl_factor(30, 5, b);
    CHECK(fa == fb);
    Rng c(6);
    CHECK_FALSE(sample_cl_factor(30, 5, c) == fa);
}
