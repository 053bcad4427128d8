#include <gtest/gtest.h>

#include "hilbres/hilbstrata.hpp"
#include "oracles.hpp"

#include <set>

using namespace hilbres;

TEST(Partitions, CountsAgainstOracle) {
    auto p = oracle::partition_counts(30);
    for (int k = 1; k <= 30; ++k) EXPECT_EQ(static_cast<long>(partitions(k).size()), p[k]) << k;
    // frozen golden list, k = 1..12
    const std::vector<std::size_t> golden{1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77};
    for (int k = 1; k <= 12; ++k) EXPECT_EQ(partitions(k).size(), golden[k - 1]);
}

TEST(Partitions, CanonicalOrderAndShape) {
    auto ps = partitions(1);
    ASSERT_EQ(ps.size(), 1u);
    EXPECT_EQ(ps[0].parts(), std::vector<int>{1});
    auto p5 = partitions(5);
    EXPECT_EQ(p5.front().parts(), std::vector<int>{5});
    EXPECT_EQ(p5.back().parts(), (std::vector<int>{1, 1, 1, 1, 1}));
    std::set<std::vector<int>> seen;
    for (const auto& p : partitions(8)) {
        EXPECT_TRUE(std::is_sorted(p.parts().rbegin(), p.parts().rend()));
        EXPECT_EQ(p.total(), 8);
        EXPECT_TRUE(seen.insert(p.parts()).second);
    }
    EXPECT_THROW(partitions(61), Error);
}

TEST(TorusFixedPoints, Examples) {
    auto one = torus_fixed_points(1);
    ASSERT_EQ(one.size(), 1u);
    EXPECT_EQ(one[0].steps(), std::vector<int>{1});
    EXPECT_EQ(one[0].generators(), (std::vector<std::string>{"x", "y"}));
    auto three = torus_fixed_points(3);
    std::set<std::vector<int>> steps;
    for (const auto& i : three) steps.insert(i.steps());
    EXPECT_EQ(steps, (std::set<std::vector<int>>{{3}, {2, 1}, {1, 1, 1}}));
    EXPECT_EQ(torus_fixed_points(5).size(), 7u);
}

TEST(TorusFixedPoints, BijectionWithPartitions) {
    for (int k = 1; k <= 30; ++k) {
        auto ideals = torus_fixed_points(k);
        auto parts = partitions(k);
        ASSERT_EQ(ideals.size(), parts.size());
        std::set<std::vector<int>> a, b;
        for (const auto& i : ideals) {
            a.insert(i.steps());
            EXPECT_EQ(colength(i), k);
        }
        for (const auto& p : parts) b.insert(p.parts());
        EXPECT_EQ(a, b);
    }
}

TEST(Colength, Examples) {
    EXPECT_EQ(colength(std::vector<int>{1}), 1);
    EXPECT_EQ(colength(std::vector<int>{2, 1}), 3);
    EXPECT_EQ(colength(std::vector<int>{3, 3, 1}), 7);
    EXPECT_THROW(colength(std::vector<int>{1, 2}), Error);
    EXPECT_THROW(StaircaseIdeal(std::vector<int>{2, 3}), Error);
}

TEST(Staircase, Generators) {
    StaircaseIdeal i(std::vector<int>{2, 1});
    EXPECT_EQ(i.generators(), (std::vector<std::string>{"x^2", "x y", "y^2"}));
}

TEST(Subdivision, Examples) {
    EXPECT_TRUE(is_subdivision(Partition({1, 1, 1}), Partition({3})).has_value());
    EXPECT_TRUE(is_subdivision(Partition({3, 1}), Partition({3, 1})).has_value());
    EXPECT_FALSE(is_subdivision(Partition({2, 2}), Partition({3, 1})).has_value());
    EXPECT_FALSE(oracle::groups_into({2, 2}, {3, 1}));
    EXPECT_THROW(is_subdivision(Partition({2}), Partition({3})), Error);
    auto w = is_subdivision(Partition({2, 1, 1}), Partition({3, 1}));
    ASSERT_TRUE(w.has_value());
    for (std::size_t i = 0; i < w->size(); ++i) {
        int s = 0;
        for (int x : (*w)[i]) s += x;
        EXPECT_EQ(s, Partition({3, 1}).parts()[i]);
    }
}

TEST(Subdivision, AgreesWithExhaustiveOracle) {
    for (int k = 1; k <= 8; ++k) {
        auto ps = partitions(k);
        for (const auto& f : ps)
            for (const auto& c : ps)
                EXPECT_EQ(is_subdivision(f, c).has_value(), oracle::groups_into(f.parts(), c.parts()))
                    << f.to_string() << " " << c.to_string();
    }
}

TEST(StrataPoset, Examples) {
    auto p2 = strata_poset(2);
    ASSERT_EQ(p2.elements.size(), 2u);
    auto covers = p2.covers();
    ASSERT_EQ(covers.size(), 1u);
    EXPECT_EQ(p2.elements[covers[0].first].parts(), (std::vector<int>{1, 1}));
    EXPECT_EQ(p2.elements[covers[0].second].parts(), std::vector<int>{2});

    auto p4 = strata_poset(4);
    auto i = p4.index_of(Partition({2, 1, 1}));
    // {2} + {1, 1} groups {2, 1, 1} into {2, 2}
    EXPECT_TRUE(p4.refines[i][p4.index_of(Partition({2, 2}))]);
    EXPECT_TRUE(oracle::groups_into({2, 1, 1}, {2, 2}));
    EXPECT_TRUE(p4.refines[i][p4.index_of(Partition({3, 1}))]);
    EXPECT_TRUE(p4.refines[i][p4.index_of(Partition({4}))]);
    EXPECT_EQ(p4.relation_count(), 14u);
    EXPECT_EQ(strata_poset(5).relation_count(), 26u);
    EXPECT_THROW(strata_poset(16), Error);
}

TEST(StrataPoset, PartialOrderAxioms) {
    for (int k = 1; k <= 8; ++k) {
        auto p = strata_poset(k);
        const std::size_t n = p.elements.size();
        const auto top = p.index_of(Partition(std::vector<int>(k, 1)));
        const auto bottom = p.index_of(Partition({k}));
        for (std::size_t a = 0; a < n; ++a) {
            EXPECT_TRUE(p.refines[a][a]);
            EXPECT_TRUE(p.refines[top][a]);
            EXPECT_TRUE(p.refines[a][bottom]);
            for (std::size_t b = 0; b < n; ++b) {
                if (a != b) {
                    EXPECT_FALSE(p.refines[a][b] && p.refines[b][a]);
                }
                for (std::size_t c = 0; c < n; ++c)
                    if (p.refines[a][b] && p.refines[b][c]) {
                        EXPECT_TRUE(p.refines[a][c]);
                    }
            }
        }
    }
}

TEST(StratumInfo, Examples) {
    for (int k = 1; k <= 6; ++k) {
        auto open = stratum_info(Partition(std::vector<int>(k, 1)));
        EXPECT_EQ(open.dim_symmetric, 2 * k);
        EXPECT_EQ(open.dim_fiber, 0);
        Integer fact = 1;
        for (int i = 2; i <= k; ++i) fact *= i;
        EXPECT_EQ(open.sigma_order, fact);

        auto small = stratum_info(Partition({k}));
        EXPECT_EQ(small.dim_symmetric, 2);
        EXPECT_EQ(small.dim_fiber, k - 1);
        EXPECT_EQ(small.dim_hilbert_stratum, k + 1);
    }
    auto s = stratum_info(Partition({2, 1}));
    EXPECT_EQ(s.dim_symmetric, 4);
    EXPECT_EQ(s.dim_fiber, 1);
    EXPECT_EQ(s.dim_hilbert_stratum, 5);
    EXPECT_EQ(s.sigma_order, 1);
}

TEST(StratumInfo, DimensionsDecreaseDownCovers) {
    for (int k = 1; k <= 8; ++k) {
        auto p = strata_poset(k);
        for (const auto& e : p.elements) {
            auto info = stratum_info(e);
            EXPECT_EQ(info.dim_hilbert_stratum, k + static_cast<int>(e.length()));
            Integer fact = 1;
            for (std::size_t i = 2; i <= e.length(); ++i) fact *= static_cast<unsigned long>(i);
            EXPECT_EQ(fact % info.sigma_order, 0);
        }
        for (auto [fine, coarse] : p.covers())
            EXPECT_GT(stratum_info(p.elements[fine]).dim_hilbert_stratum,
                      stratum_info(p.elements[coarse]).dim_hilbert_stratum);
    }
}
