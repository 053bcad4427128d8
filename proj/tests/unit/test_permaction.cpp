#include <gtest/gtest.h>

#include "hilbres/permaction.hpp"
#include "oracles.hpp"

#include <random>
#include <set>

using namespace hilbres;

namespace {

std::set<oracle::Images> as_images(const PermGroup& g) {
    std::set<oracle::Images> out;
    for (const auto& e : g.elements()) out.insert(e.images());
    return out;
}

oracle::QRows rows_of(const QMatrix& m) {
    oracle::QRows out(m.rows(), std::vector<Rational>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
    return out;
}

QSubspace ones(std::size_t k) {
    QMatrix m(1, k);
    for (std::size_t i = 0; i < k; ++i) m(0, i) = 1;
    return QSubspace::span(m);
}

} // namespace

TEST(Perm, CyclesSignsOrders) {
    auto t = Perm::from_cycles(4, {{0, 1}});
    EXPECT_EQ(t.sign(), -1);
    EXPECT_EQ(t.order(), 2u);
    auto c = Perm::from_cycles(4, {{0, 1, 2, 3}});
    EXPECT_EQ(c.order(), 4u);
    EXPECT_EQ(c.sign(), -1);
    EXPECT_EQ(c.cycle_string(), "(0 1 2 3)");
    EXPECT_EQ(Perm::identity(3).cycle_string(), "()");
    EXPECT_EQ((c * c.inverse()), Perm::identity(4));
    // (a*b)(i) = a(b(i))
    auto a = Perm::from_cycles(3, {{0, 1}}), b = Perm::from_cycles(3, {{1, 2}});
    for (int i = 0; i < 3; ++i) EXPECT_EQ((a * b)(i), a(b(i)));
    EXPECT_THROW(Perm(std::vector<int>{0, 0}), Error);
}

TEST(CloseSubgroup, Examples) {
    auto triv = close_subgroup({}, 3);
    EXPECT_EQ(triv.order(), 1u);
    std::vector<Perm> gens{Perm::from_cycles(3, {{0, 1}}), Perm::from_cycles(3, {{1, 2}})};
    auto s3 = close_subgroup(gens, 3);
    EXPECT_EQ(s3.order(), 6u);
    EXPECT_EQ(as_images(s3), oracle::closure({gens[0].images(), gens[1].images()}, 3));
    EXPECT_EQ(close_subgroup({Perm::from_cycles(4, {{0, 1, 2, 3}})}, 4).order(), 4u);
    EXPECT_TRUE(s3.satisfies_group_axioms());
}

TEST(CloseSubgroup, CapExceeded) {
    std::vector<Perm> gens{Perm::from_cycles(6, {{0, 1}}), Perm::from_cycles(6, {{0, 1, 2, 3, 4, 5}})};
    try {
        close_subgroup(gens, 6, 100);
        FAIL();
    } catch (const Error& e) {
        EXPECT_STREQ(e.what(), "group too large");
    }
}

TEST(Normalizer, Examples) {
    for (std::size_t k = 2; k <= 6; ++k) {
        auto g = normalizer_of_subspace(ones(k));
        std::size_t fact = 1;
        for (std::size_t i = 2; i <= k; ++i) fact *= i;
        EXPECT_EQ(g.order(), fact);
        EXPECT_TRUE(g.satisfies_group_axioms());
    }
    auto e1 = QSubspace::span(qmatrix({{1, 0, 0}}));
    auto g = normalizer_of_subspace(e1);
    EXPECT_EQ(g.order(), 2u);
    EXPECT_TRUE(g.contains(Perm::from_cycles(3, {{1, 2}})));

    auto b2 = QSubspace::span(qmatrix({{1, -1, 0, 0}, {0, 0, 1, -1}}));
    auto n = normalizer_of_subspace(b2);
    EXPECT_EQ(n.order(), 8u);
    EXPECT_TRUE(n.contains(Perm::from_cycles(4, {{0, 1}})));
    EXPECT_TRUE(n.contains(Perm::from_cycles(4, {{2, 3}})));
    EXPECT_TRUE(n.contains(Perm::from_cycles(4, {{0, 2}, {1, 3}})));
}

TEST(Normalizer, MatchesBruteForceOracle) {
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<long> d(-1, 1);
    for (int t = 0; t < 40; ++t) {
        const std::size_t k = 2 + t % 4;
        const std::size_t r = 1 + t % (k - 1);
        QMatrix b(r, k);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < k; ++j) b(i, j) = d(rng);
        auto u = QSubspace::span(b);
        if (u.dim() == 0) continue;
        auto g = normalizer_of_subspace(u);
        EXPECT_EQ(as_images(g), oracle::normalizer(rows_of(u.basis()), k)) << t;
    }
}

TEST(Normalizer, WithinSearchGroupAndCap) {
    auto full = QSubspace::full(3);
    auto cyc = close_subgroup({Perm::from_cycles(3, {{0, 1, 2}})}, 3);
    EXPECT_EQ(normalizer_of_subspace(full, &cyc).order(), 3u);
    Caps caps;
    caps.max_full_search_k = 3;
    EXPECT_THROW(normalizer_of_subspace(ones(4), nullptr, caps), Error);
    EXPECT_NO_THROW(normalizer_of_subspace(ones(3), nullptr, caps));
}

TEST(RestrictAction, Examples) {
    auto s2 = close_subgroup({Perm::from_cycles(2, {{0, 1}})}, 2);
    auto diag = restrict_action(s2, QSubspace::span(qmatrix({{1, 1}})));
    EXPECT_EQ(diag.group.order(), 1u);
    EXPECT_EQ(diag.kernel.order(), 2u);

    auto anti = restrict_action(s2, QSubspace::span(qmatrix({{1, -1}})));
    EXPECT_EQ(anti.group.order(), 2u);
    EXPECT_EQ(anti.kernel.order(), 1u);
    EXPECT_TRUE(anti.group.index_of(qmatrix({{-1}})).has_value());

    auto plane = QSubspace::span(qmatrix({{1, -1, 0}, {0, 1, -1}}));
    auto s3 = normalizer_of_subspace(plane);
    auto r = restrict_action(s3, plane);
    EXPECT_EQ(r.group.order(), 6u);
    EXPECT_EQ(r.kernel.order(), 1u);
    std::set<QMatrix> distinct(r.group.elements().begin(), r.group.elements().end());
    EXPECT_EQ(distinct.size(), 6u);
}

TEST(RestrictAction, PreconditionViolation) {
    auto s3 = close_subgroup({Perm::from_cycles(3, {{0, 1}}), Perm::from_cycles(3, {{1, 2}})}, 3);
    EXPECT_THROW(restrict_action(s3, QSubspace::span(qmatrix({{1, 0, 0}}))), Error);
}

TEST(RestrictAction, KernelNormalAndOrderDivides) {
    std::mt19937_64 rng(22);
    std::uniform_int_distribution<long> d(-1, 1);
    for (int t = 0; t < 40; ++t) {
        const std::size_t k = 2 + t % 4;
        QMatrix b(1 + t % (k - 1), k);
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < k; ++j) b(i, j) = d(rng);
        auto u = QSubspace::span(b);
        if (u.dim() == 0) continue;
        auto g = normalizer_of_subspace(u);
        auto r = restrict_action(g, u);
        EXPECT_EQ(g.order() % r.group.order(), 0u);
        EXPECT_EQ(r.group.order() * r.kernel.order(), g.order());
        for (const auto& s : g.elements())
            for (const auto& h : r.kernel.elements()) EXPECT_TRUE(r.kernel.contains(s * h * s.inverse()));
        // the induced map is a homomorphism
        for (const auto& s : g.elements())
            for (const auto& h : g.elements()) {
                const auto& ms = r.group.element(r.group.perm_index().at(s));
                const auto& mh = r.group.element(r.group.perm_index().at(h));
                EXPECT_EQ(r.group.element(r.group.perm_index().at(s * h)), ms * mh);
            }
    }
}

TEST(YoungSubgroup, Examples) {
    EXPECT_EQ(young_subgroup(Partition({4}), 4).order(), 24u);
    EXPECT_EQ(young_subgroup(Partition({1, 1, 1, 1}), 4).order(), 1u);
    EXPECT_EQ(young_subgroup(Partition({2, 1}), 3).order(), 2u);
    EXPECT_EQ(young_subgroup(Partition({3, 2}), 5).order(), 12u);
    EXPECT_THROW(young_subgroup(Partition({2, 1}), 4), Error);
}

TEST(PermutationMatrix, MapsBasisVectors) {
    auto s = Perm::from_cycles(3, {{0, 1, 2}});
    auto p = permutation_matrix(s);
    for (int i = 0; i < 3; ++i) EXPECT_EQ(p(s(i), i), 1);
    EXPECT_EQ(permutation_matrix(s * s), p * p);
}
