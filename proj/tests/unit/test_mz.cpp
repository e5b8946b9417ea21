#include "mzquad/errors.hpp"
#include "mzquad/mz.hpp"
#include "mzquad/rules.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

using namespace mzquad;

namespace {

const Domain kInterval(DomainKind::Interval);

CubatureRule midpoint() {
    CubatureRule r{kInterval, PointSet(1, {0.0}), {2.0}, 1, Provenance::GaussLegendre};
    return r;
}

std::vector<double> random_unit(std::mt19937_64& rng, std::size_t n) {
    std::normal_distribution<double> g;
    std::vector<double> v(n);
    for (auto& x : v) x = g(rng);
    const double s = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
    for (auto& x : v) x /= s;
    return v;
}

} // namespace

TEST(Gramian, MidpointRuleByHand) {
    const SymMatrix g = gramian(midpoint(), OrthonormalBasis(kInterval, 1));
    EXPECT_NEAR(g(0, 0), 1.0, 1e-15);
    EXPECT_NEAR(g(0, 1), 0.0, 1e-15);
    EXPECT_NEAR(g(1, 1), 0.0, 1e-15);
}

TEST(Gramian, TwoPointGaussAtDegreeTwo) {
    const SymMatrix g = gramian(gauss_legendre(2), OrthonormalBasis(kInterval, 2));
    for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(g(j, k), (j == k && j < 2) ? 1.0 : 0.0, 1e-14);
}

TEST(Gramian, IdentityInTheExactRegime) {
    for (int k = 1; k <= 10; ++k) {
        const SymMatrix g = gramian(gauss_legendre(k), OrthonormalBasis(kInterval, k - 1));
        for (std::size_t j = 0; j < g.order(); ++j)
            for (std::size_t l = 0; l < g.order(); ++l) EXPECT_NEAR(g(j, l), j == l ? 1.0 : 0.0, 1e-12);
    }
}

TEST(Gramian, DomainMismatch) {
    EXPECT_THROW(gramian(gauss_legendre(3), OrthonormalBasis(Domain(DomainKind::Square), 1)), DomainMismatch);
    EXPECT_THROW(gramian(gauss_chebyshev_square(3), OrthonormalBasis(Domain(DomainKind::Square), 1)),
                 DomainMismatch);
}

TEST(MzReport, IdentityGramian) {
    const OrthonormalBasis b(Domain(DomainKind::Square), 2);
    const MzReport r = mz_report(SymMatrix::identity(b.size()), b);
    EXPECT_EQ(r.A, 1.0);
    EXPECT_EQ(r.B, 1.0);
    EXPECT_EQ(r.eta, 0.0);
    EXPECT_EQ(r.cond2, 1.0);
    EXPECT_TRUE(r.mz_property);
}

TEST(MzReport, MidpointHasNoMzProperty) {
    const MzReport r = analyze(midpoint(), 1);
    EXPECT_NEAR(r.A, 0.0, 1e-15);
    EXPECT_NEAR(r.B, 1.0, 1e-15);
    EXPECT_NEAR(r.eta, 1.0, 1e-15);
    EXPECT_TRUE(std::isinf(r.cond2));
    EXPECT_FALSE(r.mz_property);
}

TEST(MzReport, WorstPolynomialOfTwoPointGaussIsPsi2) {
    const MzReport r = analyze(gauss_legendre(2), 2);
    EXPECT_NEAR(r.A, 0.0, 1e-14);
    EXPECT_NEAR(r.B, 1.0, 1e-14);
    EXPECT_NEAR(r.eta, 1.0, 1e-14);
    EXPECT_NEAR(std::abs(r.worst_coeffs[2]), 1.0, 1e-12);
    std::vector<double> e3{0.0, 0.0, 1.0};
    EXPECT_NEAR(eta_direct_check(gauss_legendre(2), OrthonormalBasis(kInterval, 2), e3), 1.0, 1e-14);
}

TEST(MzReport, GaussRuleEtaIsOneAtDegreeK) {
    for (int k = 2; k <= 10; ++k) {
        const CubatureRule g = gauss_legendre(k);
        for (int n = 0; n < k; ++n) {
            const MzReport r = analyze(g, n);
            EXPECT_LE(r.eta, 1e-12);
            EXPECT_LE(r.cond2, 1.0 + 1e-10);
        }
        const MzReport at_k = analyze(g, k);
        EXPECT_NEAR(at_k.eta, 1.0, 1e-10);
        EXPECT_GE(std::abs(at_k.worst_coeffs[k]), 1.0 - 1e-8);
        for (int n = k; n <= k + 5; ++n) EXPECT_GE(analyze(g, n).eta, 1.0 - 1e-10);
    }
}

TEST(MzReport, TensorGaussianEtaAtLeastOne) {
    for (int k = 2; k <= 5; ++k) {
        const CubatureRule g = gauss_legendre(k);
        const CubatureRule sq = tensor_rule(std::vector<CubatureRule>{g, g});
        for (int n = k; n <= k + 2; ++n) EXPECT_GE(analyze(sq, n).eta, 1.0 - 1e-10);
    }
}

TEST(MzReport, ExtremalValuesAreAttained) {
    const CubatureRule r = clenshaw_curtis(10);
    const OrthonormalBasis b(kInterval, 8);
    const MzReport rep = analyze(r, b);
    const SymMatrix g = gramian(r, b);
    EXPECT_NEAR(g.quadratic_form(rep.pA_coeffs), rep.A, 1e-10);
    EXPECT_NEAR(g.quadratic_form(rep.pB_coeffs), rep.B, 1e-10);
    EXPECT_NEAR(std::sqrt(std::inner_product(rep.pA_coeffs.begin(), rep.pA_coeffs.end(), rep.pA_coeffs.begin(), 0.0)),
                1.0, 1e-12);
    EXPECT_NEAR(rep.eta, std::max(std::abs(1.0 - rep.A), std::abs(1.0 - rep.B)), 0.0);
    EXPECT_GE(rep.cond2, 1.0);
}

TEST(EtaDirectCheck, OracleEquivalenceAcrossDomains) {
    std::mt19937_64 rng(2024);
    const Domain cheb(DomainKind::Square, Measure::ProductChebyshev);
    const std::vector<std::pair<CubatureRule, int>> cases = {
        {clenshaw_curtis(12), 9},
        {gauss_legendre(5), 6},
        {padua_rule(8), 6},
        {halton_qmc(64, Domain(DomainKind::Square)), 3},
        {halton_qmc(128, Domain(DomainKind::Cube)), 2},
        {morrow_patterson_xu(7), 5},
        {polar_disk_rule(6), 5},
        {stroud_conical(7), 5},
        {latlong_sphere(6), 4},
        {make_rule(RuleFamily::SphericalDesign, Domain(DomainKind::Sphere), 5), 3},
    };
    for (const auto& [rule, n] : cases) {
        const OrthonormalBasis b(rule.domain, n);
        const MzReport rep = analyze(rule, b);
        for (int t = 0; t < 200; ++t) {
            const auto c = random_unit(rng, b.size());
            EXPECT_LE(eta_direct_check(rule, b, c), rep.eta + 1e-10);
        }
        EXPECT_NEAR(eta_direct_check(rule, b, rep.worst_coeffs), rep.eta, 1e-10) << rule.domain.token();
    }
}

TEST(EtaDirectCheck, RejectsNonUnitVectors) {
    const OrthonormalBasis b(kInterval, 1);
    EXPECT_THROW(eta_direct_check(gauss_legendre(2), b, std::vector<double>{1.0, 1.0}), InvalidArgument);
    EXPECT_NEAR(eta_direct_check(gauss_legendre(2), b, std::vector<double>{1.0, 0.0}), 0.0, 1e-15);
}

TEST(MzReport, EtaMonotoneInDegree) {
    for (const CubatureRule& r :
         {clenshaw_curtis(14), padua_rule(10), polar_disk_rule(8), halton_qmc(256, Domain(DomainKind::Square))}) {
        double prev = -1.0;
        for (int n = 0; n <= 12; ++n) {
            const double eta = analyze(r, n).eta;
            EXPECT_GE(eta, prev - 1e-12) << to_string(r.provenance) << " n=" << n;
            prev = eta;
        }
    }
}

TEST(MzReport, SpectrumInvariantUnderOrthogonalRemix) {
    // G' = Q^T G Q for a random orthogonal Q from Gram-Schmidt
    std::mt19937_64 rng(99);
    const CubatureRule r = clenshaw_curtis(9);
    const OrthonormalBasis b(kInterval, 7);
    const SymMatrix g = gramian(r, b);
    const std::size_t d = b.size();
    std::vector<std::vector<double>> q;
    while (q.size() < d) {
        auto v = random_unit(rng, d);
        for (const auto& u : q) {
            const double p = std::inner_product(v.begin(), v.end(), u.begin(), 0.0);
            for (std::size_t i = 0; i < d; ++i) v[i] -= p * u[i];
        }
        const double s = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
        for (auto& x : v) x /= s;
        q.push_back(v);
    }
    SymMatrix h(d);
    for (std::size_t i = 0; i < d; ++i) {
        const auto gq = g.multiply(q[i]);
        for (std::size_t j = 0; j <= i; ++j) h.set(i, j, std::inner_product(q[j].begin(), q[j].end(), gq.begin(), 0.0));
    }
    EXPECT_NEAR(mz_report(h, b).eta, mz_report(g, b).eta, 1e-10);
}

TEST(MzReport, Json) {
    const std::string inf = to_json(analyze(midpoint(), 1));
    EXPECT_NE(inf.find("\"cond2\": \"inf\""), std::string::npos);
    EXPECT_NE(inf.find("\"mz_property\": false"), std::string::npos);
    const std::string ok = to_json(analyze(halton_qmc(32, Domain(DomainKind::Square)), 1));
    EXPECT_NE(ok.find("\"ade\": \"unknown\""), std::string::npos);
    EXPECT_NE(ok.find("\"M\": 32"), std::string::npos);
    EXPECT_NE(ok.find("\"d_n\": 3"), std::string::npos);
    EXPECT_NE(ok.find("\"family\": "), std::string::npos);
}
