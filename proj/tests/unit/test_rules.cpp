#include "mzquad/bases.hpp"
#include "mzquad/errors.hpp"
#include "mzquad/rules.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

using namespace mzquad;

namespace {

constexpr double pi = std::numbers::pi;

// nodes sorted ascending for 1D comparisons
std::vector<std::pair<double, double>> sorted_pairs(const CubatureRule& r) {
    std::vector<std::pair<double, double>> v;
    for (std::size_t i = 0; i < r.size(); ++i) v.emplace_back(r.nodes[i][0], r.weights[i]);
    std::sort(v.begin(), v.end());
    return v;
}

template <class F>
double apply(const CubatureRule& r, F f) {
    double s = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) s += r.weights[i] * f(r.nodes[i]);
    return s;
}

} // namespace

TEST(GaussLegendre, HandValues) {
    auto g1 = sorted_pairs(gauss_legendre(1));
    ASSERT_EQ(g1.size(), 1u);
    EXPECT_NEAR(g1[0].first, 0.0, 1e-15);
    EXPECT_NEAR(g1[0].second, 2.0, 1e-15);

    auto g2 = sorted_pairs(gauss_legendre(2));
    EXPECT_NEAR(g2[0].first, -1.0 / std::sqrt(3.0), 1e-15);
    EXPECT_NEAR(g2[1].first, 1.0 / std::sqrt(3.0), 1e-15);
    EXPECT_NEAR(g2[0].second, 1.0, 1e-15);
    EXPECT_NEAR(g2[1].second, 1.0, 1e-15);

    auto g3 = sorted_pairs(gauss_legendre(3));
    EXPECT_NEAR(g3[0].first, -std::sqrt(0.6), 1e-15);
    EXPECT_NEAR(g3[1].first, 0.0, 1e-15);
    EXPECT_NEAR(g3[2].first, std::sqrt(0.6), 1e-15);
    EXPECT_NEAR(g3[0].second, 5.0 / 9.0, 1e-15);
    EXPECT_NEAR(g3[1].second, 8.0 / 9.0, 1e-15);
    EXPECT_EQ(gauss_legendre(3).ade, 5);
    EXPECT_THROW(gauss_legendre(0), InvalidArgument);
}

TEST(GaussLegendre, SymmetricNodesAndPositiveWeights) {
    for (int k = 1; k <= 40; ++k) {
        const auto p = sorted_pairs(gauss_legendre(k));
        for (std::size_t i = 0; i < p.size(); ++i) {
            EXPECT_EQ(p[i].first, -p[p.size() - 1 - i].first);
            EXPECT_GT(p[i].second, 0.0);
        }
        EXPECT_NEAR(gauss_legendre(k).weight_sum(), 2.0, 1e-13);
    }
}

TEST(GaussJacobi, MomentsOfTheWeight) {
    // weight (1+x) on [-1,1]: int (1+x) x^j dx
    const auto g = gauss_jacobi(5, 0.0, 1.0);
    for (int j = 0; j <= 9; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < g.nodes.size(); ++i) s += g.weights[i] * std::pow(g.nodes[i], j);
        // int x^j + x^(j+1)
        const double exact = (j % 2 == 0 ? 2.0 / (j + 1) : 0.0) + ((j + 1) % 2 == 0 ? 2.0 / (j + 2) : 0.0);
        EXPECT_NEAR(s, exact, 1e-13) << j;
    }
}

TEST(ClenshawCurtis, HandValues) {
    auto c1 = sorted_pairs(clenshaw_curtis(1));
    EXPECT_NEAR(c1[0].first, -1.0, 1e-15);
    EXPECT_NEAR(c1[1].first, 1.0, 1e-15);
    EXPECT_NEAR(c1[0].second, 1.0, 1e-15);
    EXPECT_NEAR(c1[1].second, 1.0, 1e-15);

    auto c2 = sorted_pairs(clenshaw_curtis(2));
    EXPECT_NEAR(c2[1].first, 0.0, 1e-15);
    EXPECT_NEAR(c2[0].second, 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(c2[1].second, 4.0 / 3.0, 1e-15);
    EXPECT_NEAR(c2[2].second, 1.0 / 3.0, 1e-15);

    EXPECT_NEAR(clenshaw_curtis(4).weight_sum(), 2.0, 1e-14);
    for (int m = 1; m <= 30; ++m) {
        const auto r = clenshaw_curtis(m);
        EXPECT_EQ(r.size(), static_cast<std::size_t>(m + 1));
        EXPECT_GT(r.min_weight(), 0.0);
    }
}

TEST(TensorRule, Products) {
    const CubatureRule g2 = gauss_legendre(2);
    const CubatureRule sq = tensor_rule(std::vector<CubatureRule>{g2, g2});
    EXPECT_EQ(sq.size(), 4u);
    EXPECT_EQ(sq.domain, Domain(DomainKind::Square));
    for (double w : sq.weights) EXPECT_NEAR(w, 1.0, 1e-15);

    const CubatureRule c2 = clenshaw_curtis(2);
    const CubatureRule cc = tensor_rule(std::vector<CubatureRule>{c2, c2});
    EXPECT_EQ(cc.size(), 9u);
    bool found = false;
    for (std::size_t i = 0; i < cc.size(); ++i)
        if (std::abs(cc.nodes[i][0]) < 1e-15 && std::abs(cc.nodes[i][1]) < 1e-15) {
            EXPECT_NEAR(cc.weights[i], 16.0 / 9.0, 1e-15);
            found = true;
        }
    EXPECT_TRUE(found);

    const CubatureRule g1 = gauss_legendre(1);
    const CubatureRule cube = tensor_rule(std::vector<CubatureRule>{g1, g1, g1});
    ASSERT_EQ(cube.size(), 1u);
    EXPECT_NEAR(cube.weights[0], 8.0, 1e-14);
    EXPECT_NEAR(cube.nodes[0][2], 0.0, 1e-15);

    EXPECT_EQ(tensor_rule(std::vector<CubatureRule>{gauss_legendre(3), clenshaw_curtis(2)}).ade, 2);
    EXPECT_THROW(tensor_rule(std::vector<CubatureRule>{g1}), InvalidArgument);
    EXPECT_THROW(tensor_rule(std::vector<CubatureRule>{sq, g1}), InvalidArgument);
}

TEST(Padua, SizesWeightsAndExactness) {
    EXPECT_EQ(padua_rule(1).size(), 3u);
    EXPECT_EQ(padua_rule(15).size(), 136u);
    for (int m = 1; m <= 30; ++m) {
        const CubatureRule r = padua_rule(m);
        EXPECT_EQ(r.size(), static_cast<std::size_t>((m + 1) * (m + 2) / 2));
        EXPECT_NEAR(r.weight_sum(), 4.0, 1e-12);
        EXPECT_LE(verify_ade(r, m), 1e-10) << m;
    }
    // first family contains the corner (1,1)... check node membership
    const PointSet p = padua_points(4);
    for (std::size_t i = 0; i < p.size(); ++i) EXPECT_TRUE(Domain(DomainKind::Square).contains(p[i]));
}

TEST(MorrowPattersonXu, OddDegrees) {
    for (int m = 1; m <= 29; m += 2) {
        const CubatureRule r = morrow_patterson_xu(m);
        EXPECT_NEAR(r.weight_sum(), pi * pi, 1e-12);
        EXPECT_GT(r.min_weight(), 0.0);
        EXPECT_LE(verify_ade(r, m), 1e-10) << m;
        EXPECT_EQ(r.domain.measure(), Measure::ProductChebyshev);
    }
    EXPECT_THROW(morrow_patterson_xu(4), UnsupportedDegree);
}

TEST(PolarDisk, MassMomentsAndExactness) {
    for (int m = 0; m <= 30; ++m) {
        const CubatureRule r = polar_disk_rule(m);
        EXPECT_NEAR(r.weight_sum(), pi, 1e-12);
        EXPECT_GT(r.min_weight(), 0.0);
        EXPECT_LE(verify_ade(r, m), 1e-10);
        if (m >= 2) EXPECT_NEAR(apply(r, [](auto x) { return x[0] * x[0]; }), pi / 4.0, 1e-12);
    }
}

TEST(StroudConical, CardinalityAndMoments) {
    EXPECT_EQ(stroud_conical(5).size(), 9u);
    for (int m = 0; m <= 30; ++m) {
        const CubatureRule r = stroud_conical(m);
        const std::size_t k = static_cast<std::size_t>((m + 2) / 2);
        EXPECT_EQ(r.size(), k * k);
        EXPECT_NEAR(r.weight_sum(), 0.5, 1e-12);
        EXPECT_GT(r.min_weight(), 0.0);
        EXPECT_LE(verify_ade(r, m), 1e-10);
        for (std::size_t i = 0; i < r.size(); ++i) EXPECT_TRUE(r.domain.contains(r.nodes[i]));
    }
    EXPECT_NEAR(apply(stroud_conical(4), [](auto x) { return x[0]; }), 1.0 / 6.0, 1e-12);
}

TEST(LatLong, MassAndExactness) {
    for (int m = 0; m <= 30; ++m) {
        const CubatureRule r = latlong_sphere(m);
        EXPECT_NEAR(r.weight_sum(), 4.0 * pi, 1e-10);
        EXPECT_LE(verify_ade(r, m), 1e-10);
        for (std::size_t i = 0; i < r.size(); ++i) EXPECT_TRUE(r.domain.contains(r.nodes[i], 1e-10));
    }
    // degree-1 and degree-2 harmonics integrate to zero
    const CubatureRule r = latlong_sphere(2);
    const OrthonormalBasis b(r.domain, 2);
    const BasisMatrix bm = eval_basis(b, r.nodes);
    for (std::size_t j = 1; j < b.size(); ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < r.size(); ++i) s += r.weights[i] * bm(i, j);
        EXPECT_NEAR(s, 0.0, 1e-12);
    }
}

TEST(Halton, HandNodes) {
    EXPECT_DOUBLE_EQ(radical_inverse(1, 2), 0.5);
    EXPECT_DOUBLE_EQ(radical_inverse(2, 2), 0.25);
    EXPECT_DOUBLE_EQ(radical_inverse(3, 2), 0.75);
    EXPECT_NEAR(radical_inverse(1, 3), 1.0 / 3.0, 1e-16);
    EXPECT_NEAR(radical_inverse(2, 3), 2.0 / 3.0, 1e-16);
    EXPECT_NEAR(radical_inverse(3, 3), 1.0 / 9.0, 1e-16);

    const CubatureRule one = halton_qmc(1, Domain(DomainKind::Square));
    EXPECT_NEAR(one.nodes[0][0], 0.0, 1e-15);
    EXPECT_NEAR(one.nodes[0][1], -1.0 / 3.0, 1e-15);
    EXPECT_NEAR(one.weights[0], 4.0, 1e-15);

    const CubatureRule two = halton_qmc(2, Domain(DomainKind::Square));
    EXPECT_NEAR(two.nodes[1][0], -0.5, 1e-15);
    EXPECT_NEAR(two.nodes[1][1], 1.0 / 3.0, 1e-15);

    const CubatureRule cube = halton_qmc(4, Domain(DomainKind::Cube));
    EXPECT_NEAR(cube.weight_sum(), 8.0, 1e-14);
    EXPECT_FALSE(cube.ade.has_value());
    EXPECT_EQ(cube.nodes, halton_qmc(4, Domain(DomainKind::Cube)).nodes);
    EXPECT_THROW(halton_qmc(4, Domain(DomainKind::Disk)), InvalidArgument);
}

TEST(VerifyAde, SpecExamples) {
    EXPECT_LE(verify_ade(gauss_legendre(3), 5), 1e-13);
    EXPECT_LE(verify_ade(clenshaw_curtis(2), 3), 1e-13);
    EXPECT_GE(verify_ade(gauss_legendre(2), 4), 0.1);
}

TEST(VerifyAde, GaussRulesAreSharp) {
    for (int k = 1; k <= 15; ++k) {
        EXPECT_LE(verify_ade(gauss_legendre(k), 2 * k - 1), 1e-10);
        EXPECT_GE(verify_ade(gauss_legendre(k), 2 * k), 1e-3);
    }
}

TEST(MakeRule, Families) {
    const Domain iv(DomainKind::Interval), sq(DomainKind::Square), cube(DomainKind::Cube);
    EXPECT_EQ(make_rule(RuleFamily::GaussLegendre, iv, 7).size(), 4u);
    EXPECT_EQ(make_rule(RuleFamily::GaussLegendre, iv, 7).ade, 7);
    EXPECT_EQ(make_rule(RuleFamily::GaussLegendre, sq, 7).size(), 16u);
    EXPECT_EQ(make_rule(RuleFamily::ClenshawCurtis, cube, 2).size(), 27u);
    EXPECT_EQ(make_rule(RuleFamily::HaltonQMC, cube, 5).size(), 32u);
    EXPECT_THROW(make_rule(RuleFamily::Padua, iv, 3), InvalidArgument);
    EXPECT_THROW(make_rule(RuleFamily::MorrowPattersonXu, Domain(DomainKind::Square, Measure::ProductChebyshev), 6),
                 UnsupportedDegree);
    EXPECT_THROW(make_rule(RuleFamily::SphericalDesign, Domain(DomainKind::Sphere), 4), DatasetMissing);
    EXPECT_EQ(parse_family("sym-design"), RuleFamily::SymmetricSphericalDesign);
    EXPECT_EQ(family_token(RuleFamily::MorrowPattersonXu), "mpx");
    EXPECT_THROW(parse_family("simpson"), InvalidArgument);
}

TEST(MakeRule, EveryBuiltInFamilyHasPositiveWeightsAndItsClaimedExactness) {
    const Domain cheb(DomainKind::Square, Measure::ProductChebyshev);
    struct Case {
        RuleFamily f;
        Domain d;
    };
    const std::vector<Case> cases = {
        {RuleFamily::GaussLegendre, Domain(DomainKind::Interval)}, {RuleFamily::GaussLegendre, Domain(DomainKind::Square)},
        {RuleFamily::ClenshawCurtis, Domain(DomainKind::Interval)}, {RuleFamily::ClenshawCurtis, Domain(DomainKind::Cube)},
        {RuleFamily::GaussChebyshev, cheb}, {RuleFamily::PolarDisk, Domain(DomainKind::Disk)},
        {RuleFamily::StroudConical, Domain(DomainKind::Simplex)}, {RuleFamily::LatLong, Domain(DomainKind::Sphere)},
    };
    for (const auto& c : cases)
        for (int m = 1; m <= 12; ++m) {
            const CubatureRule r = make_rule(c.f, c.d, m);
            EXPECT_GT(r.min_weight(), 0.0);
            ASSERT_TRUE(r.ade.has_value());
            EXPECT_GE(*r.ade, m);
            EXPECT_LE(verify_ade(r, *r.ade), 1e-10) << family_token(c.f) << " " << m;
            EXPECT_NEAR(r.weight_sum(), c.d.mass(), 1e-10 * c.d.mass());
        }
}
