#include "mzquad/errors.hpp"
#include "mzquad/linalg.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

using namespace mzquad;

namespace {

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> v(n);
    for (auto& x : v) x = u(rng);
    return v;
}

// B^T B + shift I for a random square B.
SymMatrix random_spd(std::mt19937_64& rng, std::size_t n, double shift) {
    const auto b = random_vector(rng, n * n);
    std::vector<double> g(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double s = i == j ? shift : 0.0;
            for (std::size_t k = 0; k < n; ++k) s += b[k * n + i] * b[k * n + j];
            g[i * n + j] = s;
        }
    return SymMatrix::from_dense(n, g);
}

SymMatrix random_symmetric(std::mt19937_64& rng, std::size_t n) {
    return SymMatrix::from_dense(n, random_vector(rng, n * n));
}

} // namespace

TEST(SymMatrix, FromDenseSymmetrizes) {
    const SymMatrix a = SymMatrix::from_dense(2, {1.0, 2.0, 4.0, 5.0});
    EXPECT_DOUBLE_EQ(a(0, 1), 3.0);
    EXPECT_DOUBLE_EQ(a(1, 0), 3.0);
    EXPECT_DOUBLE_EQ(a.trace(), 6.0);
}

TEST(SymMatrix, LeadingBlock) {
    const SymMatrix a = SymMatrix::from_dense(3, {1, 2, 3, 2, 4, 5, 3, 5, 6});
    const SymMatrix b = a.leading_block(2);
    ASSERT_EQ(b.order(), 2u);
    EXPECT_EQ(b(0, 0), 1.0);
    EXPECT_EQ(b(0, 1), 2.0);
    EXPECT_EQ(b(1, 1), 4.0);
}

TEST(SymEig, TwoByTwoByHand) {
    // [[2,1],[1,2]] has eigenvalues 1 and 3 with eigenvectors (1,-1)/sqrt2, (1,1)/sqrt2
    const auto e = sym_eig(SymMatrix::from_dense(2, {2.0, 1.0, 1.0, 2.0}));
    EXPECT_NEAR(e.eigenvalues[0], 1.0, 1e-15);
    EXPECT_NEAR(e.eigenvalues[1], 3.0, 1e-15);
    EXPECT_NEAR(std::abs(e.eigenvector(1)[0]), 1.0 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(e.eigenvector(0)[0] * e.eigenvector(0)[1], -0.5, 1e-15);
}

TEST(SymEig, DiagonalAndIdentity) {
    const auto e = sym_eig(SymMatrix::diagonal(std::vector<double>{3.0, -1.0, 2.0}));
    EXPECT_EQ(e.eigenvalues, (std::vector<double>{-1.0, 2.0, 3.0}));
    EXPECT_EQ(spectral_dist_from_identity(SymMatrix::identity(5)), 0.0);
    EXPECT_DOUBLE_EQ(spectral_dist_from_identity(SymMatrix::diagonal(std::vector<double>{0.5, 1.25})), 0.5);
}

TEST(SymEig, ClampsRoundoffNegatives) {
    // rank-one matrix: the zero eigenvalue may come out as tiny negative noise
    const double v[3] = {1.0, 1.0 / 3.0, std::sqrt(2.0)};
    std::vector<double> g(9);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) g[i * 3 + j] = v[i] * v[j];
    const auto e = sym_eig(SymMatrix::from_dense(3, g));
    EXPECT_GE(e.eigenvalues[0], 0.0);
    EXPECT_NEAR(e.eigenvalues[2], 1.0 + 1.0 / 9.0 + 2.0, 1e-14);
}

TEST(SymEig, RandomPropertiesResidualTraceOrthogonality) {
    std::mt19937_64 rng(7);
    for (std::size_t n : {1u, 2u, 5u, 17u, 40u}) {
        const SymMatrix g = random_symmetric(rng, n);
        const auto e = sym_eig(g);
        EXPECT_TRUE(std::is_sorted(e.eigenvalues.begin(), e.eigenvalues.end()));
        const double sum = std::accumulate(e.raw_eigenvalues.begin(), e.raw_eigenvalues.end(), 0.0);
        EXPECT_NEAR(sum, g.trace(), 1e-12 * std::max(1.0, g.frobenius_norm()));
        for (std::size_t j = 0; j < n; ++j) {
            const auto v = e.eigenvector(j);
            const auto gv = g.multiply(v);
            double res = 0.0;
            for (std::size_t i = 0; i < n; ++i) res = std::max(res, std::abs(gv[i] - e.raw_eigenvalues[j] * v[i]));
            EXPECT_LT(res, 1e-12 * g.frobenius_norm());
            for (std::size_t k = 0; k <= j; ++k) {
                const auto w = e.eigenvector(k);
                const double dot = std::inner_product(v.begin(), v.end(), w.begin(), 0.0);
                EXPECT_NEAR(dot, j == k ? 1.0 : 0.0, 1e-12);
            }
        }
    }
}

TEST(SymEig, SpectrumInvariantUnderPermutation) {
    std::mt19937_64 rng(11);
    const std::size_t n = 12;
    const SymMatrix g = random_symmetric(rng, n);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    SymMatrix p(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) p.set(i, j, g(perm[i], perm[j]));
    const auto a = sym_eig(g).raw_eigenvalues;
    const auto b = sym_eig(p).raw_eigenvalues;
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(a[i], b[i], 1e-12);
}

TEST(SpdSolve, RandomSystemsAgainstResidual) {
    std::mt19937_64 rng(3);
    for (std::size_t n : {1u, 3u, 10u, 30u}) {
        const SymMatrix g = random_spd(rng, n, 0.1);
        const auto xtrue = random_vector(rng, n);
        const auto b = g.multiply(xtrue);
        const auto x = spd_solve(g, b);
        for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(x[i], xtrue[i], 1e-9);
    }
}

TEST(SpdSolve, RejectsIndefinite) {
    const SymMatrix g = SymMatrix::from_dense(2, {1.0, 2.0, 2.0, 1.0});
    EXPECT_THROW(spd_solve(g, std::vector<double>{1.0, 1.0}), NotSpdError);
    // singular positive semidefinite
    const SymMatrix z = SymMatrix::diagonal(std::vector<double>{1.0, 0.0});
    EXPECT_THROW(spd_solve(z, std::vector<double>{1.0, 1.0}), NotSpdError);
}

TEST(LuSolve, GeneralSystems) {
    std::mt19937_64 rng(5);
    for (std::size_t n : {1u, 4u, 25u}) {
        const auto a = random_vector(rng, n * n);
        const auto xtrue = random_vector(rng, n);
        std::vector<double> b(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) b[i] += a[i * n + j] * xtrue[j];
        const auto x = lu_solve(n, a, b);
        for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(x[i], xtrue[i], 1e-9);
    }
    // needs pivoting: zero leading entry
    const auto x = lu_solve(2, {0.0, 1.0, 1.0, 0.0}, std::vector<double>{2.0, 3.0});
    EXPECT_DOUBLE_EQ(x[0], 3.0);
    EXPECT_DOUBLE_EQ(x[1], 2.0);
    EXPECT_THROW(lu_solve(2, {1.0, 2.0, 2.0, 4.0}, std::vector<double>{1.0, 1.0}), SingularSystemError);
}

TEST(CrossProductAccumulator, MatchesDenseProductAcrossBlocks) {
    std::mt19937_64 rng(13);
    const std::size_t rows = 37, cols = 6;
    const auto b = random_vector(rng, rows * cols);
    auto w = random_vector(rng, rows);
    CrossProductAccumulator acc(cols);
    // uneven blocks
    acc.add_rows({b.data(), 10 * cols}, {w.data(), 10});
    acc.add_rows({b.data() + 10 * cols, 27 * cols}, {w.data() + 10, 27});
    const SymMatrix g = acc.result();
    for (std::size_t j = 0; j < cols; ++j)
        for (std::size_t k = 0; k < cols; ++k) {
            double s = 0.0;
            for (std::size_t i = 0; i < rows; ++i) s += w[i] * b[i * cols + j] * b[i * cols + k];
            EXPECT_NEAR(g(j, k), s, 1e-13);
        }
}
