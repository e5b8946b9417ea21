#include "mzquad/bases.hpp"

#include "mzquad/errors.hpp"
#include "mzquad/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace mzquad {

namespace {

using std::numbers::pi;

BasisFamily default_family(const Domain& domain) {
    switch (domain.kind()) {
    case DomainKind::Interval: return BasisFamily::Legendre1D;
    case DomainKind::Square:
        return domain.measure() == Measure::ProductChebyshev ? BasisFamily::ProductChebyshevTD
                                                              : BasisFamily::ProductLegendreTD;
    case DomainKind::Cube: return BasisFamily::ProductLegendreTD;
    case DomainKind::Disk: return BasisFamily::LoganShepp;
    case DomainKind::Simplex: return BasisFamily::Dubiner;
    case DomainKind::Sphere: return BasisFamily::SphericalHarmonics;
    }
    return BasisFamily::Legendre1D;
}

bool family_fits(BasisFamily family, const Domain& domain) {
    const bool lebesgue = domain.measure() == Measure::Lebesgue;
    switch (family) {
    case BasisFamily::Legendre1D: return domain.kind() == DomainKind::Interval;
    case BasisFamily::ProductLegendreTD:
        return lebesgue && (domain.kind() == DomainKind::Square || domain.kind() == DomainKind::Cube);
    case BasisFamily::ProductChebyshevTD: return domain.measure() == Measure::ProductChebyshev;
    case BasisFamily::LoganShepp: return domain.kind() == DomainKind::Disk;
    case BasisFamily::Dubiner: return domain.kind() == DomainKind::Simplex;
    case BasisFamily::SphericalHarmonics: return domain.kind() == DomainKind::Sphere;
    }
    return false;
}

/// Orthonormal Legendre values sqrt((2k+1)/2) P_k(x), k = 0..n.
void legendre_orthonormal(double x, int n, double* out) {
    double p0 = 1.0;
    double p1 = x;
    out[0] = std::sqrt(0.5);
    if (n >= 1) out[1] = std::sqrt(1.5) * x;
    for (int k = 1; k < n; ++k) {
        const double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
        p0 = p1;
        p1 = p2;
        out[k + 1] = std::sqrt((2.0 * k + 3.0) / 2.0) * p2;
    }
}

/// Chebyshev values orthonormal for dx / sqrt(1-x^2) on [-1,1].
void chebyshev_orthonormal(double x, int n, double* out) {
    const double c0 = 1.0 / std::sqrt(pi);
    const double ck = std::sqrt(2.0 / pi);
    double t0 = 1.0;
    double t1 = x;
    out[0] = c0;
    if (n >= 1) out[1] = ck * x;
    for (int k = 1; k < n; ++k) {
        const double t2 = 2.0 * x * t1 - t0;
        t0 = t1;
        t1 = t2;
        out[k + 1] = ck * t2;
    }
}

/// U_k(t), Chebyshev polynomial of the second kind.
double chebyshev_u(int k, double t) {
    double u0 = 1.0;
    if (k == 0) return u0;
    double u1 = 2.0 * t;
    for (int j = 1; j < k; ++j) {
        const double u2 = 2.0 * t * u1 - u0;
        u0 = u1;
        u1 = u2;
    }
    return u1;
}

/// P_k^{(alpha,0)}(x) for k = 0..n.
void jacobi_alpha0(double alpha, double x, int n, double* out) {
    out[0] = 1.0;
    if (n == 0) return;
    out[1] = (alpha + 1.0) + (alpha + 2.0) * (x - 1.0) / 2.0;
    for (int k = 2; k <= n; ++k) {
        const double s = 2.0 * k + alpha;
        const double a1 = 2.0 * k * (k + alpha) * (s - 2.0);
        const double a2 = (s - 1.0) * (s * (s - 2.0) * x + alpha * alpha);
        const double a3 = 2.0 * (k + alpha - 1.0) * (k - 1.0) * s;
        out[k] = (a2 * out[k - 1] - a3 * out[k - 2]) / a1;
    }
}

} // namespace

std::string to_string(BasisFamily f) {
    switch (f) {
    case BasisFamily::Legendre1D: return "legendre";
    case BasisFamily::ProductLegendreTD: return "product-legendre";
    case BasisFamily::ProductChebyshevTD: return "product-chebyshev";
    case BasisFamily::LoganShepp: return "logan-shepp";
    case BasisFamily::Dubiner: return "dubiner";
    case BasisFamily::SphericalHarmonics: return "spherical-harmonics";
    }
    return {};
}

std::size_t basis_dim(const Domain& domain, int n) {
    if (n < 0) throw InvalidArgument("basis_dim: degree must be nonnegative");
    const auto m = static_cast<std::size_t>(n);
    switch (domain.kind()) {
    case DomainKind::Interval: return m + 1;
    case DomainKind::Square:
    case DomainKind::Disk:
    case DomainKind::Simplex: return (m + 1) * (m + 2) / 2;
    case DomainKind::Cube: return (m + 1) * (m + 2) * (m + 3) / 6;
    case DomainKind::Sphere: return (m + 1) * (m + 1);
    }
    return 0;
}

OrthonormalBasis::OrthonormalBasis(const Domain& domain, int degree)
    : OrthonormalBasis(domain, degree, default_family(domain)) {}

OrthonormalBasis::OrthonormalBasis(const Domain& domain, int degree, BasisFamily family)
    : domain_(domain), degree_(degree), family_(family), size_(basis_dim(domain, degree)) {
    if (!family_fits(family, domain))
        throw DomainMismatch("basis family " + to_string(family) + " is not defined on " + domain.token() + "/" +
                             domain.measure_token());
    index_.reserve(size_);
    for (int t = 0; t <= degree; ++t) {
        switch (family) {
        case BasisFamily::Legendre1D: index_.push_back({t, 0, 0}); break;
        case BasisFamily::ProductLegendreTD:
        case BasisFamily::ProductChebyshevTD:
            if (domain.kind() == DomainKind::Cube) {
                for (int a = t; a >= 0; --a)
                    for (int b = t - a; b >= 0; --b) index_.push_back({a, b, t - a - b});
            } else {
                for (int a = t; a >= 0; --a) index_.push_back({a, t - a, 0});
            }
            break;
        case BasisFamily::LoganShepp:
            for (int j = 0; j <= t; ++j) index_.push_back({t, j, 0});
            break;
        case BasisFamily::Dubiner:
            for (int p = t; p >= 0; --p) index_.push_back({p, t - p, 0});
            break;
        case BasisFamily::SphericalHarmonics:
            for (int m = -t; m <= t; ++m) index_.push_back({t, m, 0});
            break;
        }
    }
}

int OrthonormalBasis::element_degree(std::size_t j) const {
    const auto& e = index_.at(j);
    switch (family_) {
    case BasisFamily::ProductLegendreTD:
    case BasisFamily::ProductChebyshevTD: return e[0] + e[1] + e[2];
    case BasisFamily::Dubiner: return e[0] + e[1];
    default: return e[0];
    }
}

std::string OrthonormalBasis::element_label(std::size_t j) const {
    const auto& e = index_.at(j);
    const auto s = [](int v) { return std::to_string(v); };
    switch (family_) {
    case BasisFamily::Legendre1D: return "P" + s(e[0]) + "(x)";
    case BasisFamily::ProductLegendreTD:
    case BasisFamily::ProductChebyshevTD: {
        const char* f = family_ == BasisFamily::ProductLegendreTD ? "P" : "T";
        std::string out = f + s(e[0]) + "(x)" + f + s(e[1]) + "(y)";
        if (domain_.kind() == DomainKind::Cube) out += f + s(e[2]) + "(z)";
        return out;
    }
    case BasisFamily::LoganShepp: return "U" + s(e[0]) + "[theta" + s(e[1]) + "]";
    case BasisFamily::Dubiner: return "D(" + s(e[0]) + "," + s(e[1]) + ")";
    case BasisFamily::SphericalHarmonics: return "Y(" + s(e[0]) + "," + s(e[1]) + ")";
    }
    return {};
}

void OrthonormalBasis::check_point(std::span<const double> x, std::size_t index) const {
    if (x.size() != domain_.dim())
        throw DomainViolation(index, "point " + std::to_string(index) + " has dimension " + std::to_string(x.size()) +
                                         ", expected " + std::to_string(domain_.dim()));
    if (domain_.contains(x, 1e-12)) return;
    if (domain_.kind() == DomainKind::Sphere)
        throw NormalizationError(index, "sphere point " + std::to_string(index) + " does not have unit norm");
    throw DomainViolation(index, "point " + std::to_string(index) + " lies outside the " + domain_.token());
}

void OrthonormalBasis::eval_point(std::span<const double> x, std::span<double> out) const {
    const int n = degree_;
    const auto np1 = static_cast<std::size_t>(n + 1);
    switch (family_) {
    case BasisFamily::Legendre1D:
        legendre_orthonormal(x[0], n, out.data());
        return;
    case BasisFamily::ProductLegendreTD:
    case BasisFamily::ProductChebyshevTD: {
        const std::size_t dim = domain_.dim();
        std::vector<double> f(dim * np1);
        for (std::size_t c = 0; c < dim; ++c) {
            if (family_ == BasisFamily::ProductLegendreTD)
                legendre_orthonormal(x[c], n, f.data() + c * np1);
            else
                chebyshev_orthonormal(x[c], n, f.data() + c * np1);
        }
        for (std::size_t j = 0; j < size_; ++j) {
            const auto& e = index_[j];
            double v = f[static_cast<std::size_t>(e[0])] * f[np1 + static_cast<std::size_t>(e[1])];
            if (dim == 3) v *= f[2 * np1 + static_cast<std::size_t>(e[2])];
            out[j] = v;
        }
        return;
    }
    case BasisFamily::LoganShepp: {
        const double scale = 1.0 / std::sqrt(pi);
        for (std::size_t j = 0; j < size_; ++j) {
            const int k = index_[j][0];
            const double theta = index_[j][1] * pi / (k + 1);
            const double t = x[0] * std::cos(theta) + x[1] * std::sin(theta);
            out[j] = scale * chebyshev_u(k, t);
        }
        return;
    }
    case BasisFamily::Dubiner: {
        // Collapsed coordinates: Q_p = (1-y)^p P_p((2x+y-1)/(1-y)) via the
        // homogeneous Legendre recurrence, so the vertex y = 1 needs no care.
        const double t = 1.0 - x[1];
        const double u = 2.0 * x[0] + x[1] - 1.0;
        const double b = 2.0 * x[1] - 1.0;
        std::vector<double> q(np1);
        q[0] = 1.0;
        if (n >= 1) q[1] = u;
        for (int p = 1; p < n; ++p)
            q[static_cast<std::size_t>(p + 1)] =
                ((2.0 * p + 1.0) * u * q[static_cast<std::size_t>(p)] - p * t * t * q[static_cast<std::size_t>(p - 1)]) /
                (p + 1.0);
        std::vector<double> jac(np1);
        std::vector<double> row_cache(np1 * np1, 0.0);
        for (int p = 0; p <= n; ++p) {
            jacobi_alpha0(2.0 * p + 1.0, b, n - p, jac.data());
            for (int qq = 0; qq <= n - p; ++qq)
                row_cache[static_cast<std::size_t>(p) * np1 + static_cast<std::size_t>(qq)] =
                    std::sqrt(2.0 * (2.0 * p + 1.0) * (p + qq + 1.0)) * q[static_cast<std::size_t>(p)] *
                    jac[static_cast<std::size_t>(qq)];
        }
        for (std::size_t j = 0; j < size_; ++j)
            out[j] = row_cache[static_cast<std::size_t>(index_[j][0]) * np1 + static_cast<std::size_t>(index_[j][1])];
        return;
    }
    case BasisFamily::SphericalHarmonics: {
        const double z = x[2];
        const double st = std::hypot(x[0], x[1]);
        const double phi = std::atan2(x[1], x[0]);
        // Fully normalized associated Legendre functions, no Condon-Shortley phase.
        std::vector<double> plm(np1 * np1, 0.0);
        auto at = [&](int l, int m) -> double& {
            return plm[static_cast<std::size_t>(l) * np1 + static_cast<std::size_t>(m)];
        };
        at(0, 0) = 1.0 / std::sqrt(4.0 * pi);
        for (int m = 1; m <= n; ++m) at(m, m) = std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * st * at(m - 1, m - 1);
        for (int m = 0; m < n; ++m) at(m + 1, m) = std::sqrt(2.0 * m + 3.0) * z * at(m, m);
        for (int m = 0; m <= n; ++m)
            for (int l = m + 2; l <= n; ++l) {
                const double a = std::sqrt((4.0 * l * l - 1.0) / (static_cast<double>(l) * l - m * m));
                const double bb = std::sqrt(((l - 1.0) * (l - 1.0) - m * m) / (4.0 * (l - 1.0) * (l - 1.0) - 1.0));
                at(l, m) = a * (z * at(l - 1, m) - bb * at(l - 2, m));
            }
        std::vector<double> cm(np1), sm(np1);
        for (int m = 0; m <= n; ++m) {
            cm[static_cast<std::size_t>(m)] = std::cos(m * phi);
            sm[static_cast<std::size_t>(m)] = std::sin(m * phi);
        }
        for (std::size_t j = 0; j < size_; ++j) {
            const int l = index_[j][0];
            const int m = index_[j][1];
            if (m == 0)
                out[j] = at(l, 0);
            else if (m > 0)
                out[j] = std::numbers::sqrt2 * at(l, m) * cm[static_cast<std::size_t>(m)];
            else
                out[j] = std::numbers::sqrt2 * at(l, -m) * sm[static_cast<std::size_t>(-m)];
        }
        return;
    }
    }
}

BasisMatrix eval_basis(const OrthonormalBasis& basis, const PointSet& points) {
    if (!points.empty() && points.dim() != basis.domain().dim())
        throw DomainViolation(0, "point dimension does not match the basis domain");
    BasisMatrix b;
    b.rows = points.size();
    b.cols = basis.size();
    b.values.resize(b.rows * b.cols);
    for (std::size_t i = 0; i < b.rows; ++i) {
        basis.check_point(points[i], i);
        basis.eval_point(points[i], {b.values.data() + i * b.cols, b.cols});
    }
    return b;
}

double check_orthonormality(const OrthonormalBasis& basis, const CubatureRule& reference) {
    if (!(reference.domain == basis.domain()))
        throw DomainMismatch("reference rule and basis live on different domains or measures");
    if (!reference.ade || *reference.ade < 2 * basis.degree())
        throw InvalidArgument("check_orthonormality needs a reference rule with ADE >= 2n");
    const BasisMatrix b = eval_basis(basis, reference.nodes);
    CrossProductAccumulator acc(b.cols);
    acc.add_rows(b.values, reference.weights);
    const SymMatrix g = acc.result();
    double worst = 0.0;
    for (std::size_t j = 0; j < g.order(); ++j)
        for (std::size_t k = 0; k < g.order(); ++k)
            worst = std::max(worst, std::abs(g(j, k) - (j == k ? 1.0 : 0.0)));
    return worst;
}

} // namespace mzquad
