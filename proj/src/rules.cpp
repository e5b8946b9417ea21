#include "mzquad/rules.hpp"

#include "mzquad/bases.hpp"
#include "mzquad/errors.hpp"
#include "mzquad/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace mzquad {

namespace {

using std::numbers::pi;

int half_up(int m) { return (m + 2) / 2; } // ceil((m+1)/2)

CubatureRule make_interval_rule(std::vector<double> x, std::vector<double> w, int ade, Provenance p) {
    CubatureRule r;
    r.domain = Domain(DomainKind::Interval);
    r.nodes = PointSet(1, std::move(x));
    r.weights = std::move(w);
    r.ade = ade;
    r.provenance = p;
    return r;
}

} // namespace

std::string to_string(Provenance p) {
    switch (p) {
    case Provenance::GaussLegendre: return "gauss-legendre";
    case Provenance::ClenshawCurtis: return "clenshaw-curtis";
    case Provenance::GaussChebyshev: return "gauss-chebyshev";
    case Provenance::TensorProduct: return "tensor-product";
    case Provenance::Padua: return "padua";
    case Provenance::MorrowPattersonXu: return "morrow-patterson-xu";
    case Provenance::PolarDisk: return "polar-disk";
    case Provenance::StroudConical: return "stroud-conical";
    case Provenance::LatLong: return "lat-long";
    case Provenance::SphericalDesign: return "spherical-design";
    case Provenance::SymmetricSphericalDesign: return "symmetric-spherical-design";
    case Provenance::HaltonQMC: return "halton-qmc";
    case Provenance::NearMinimalFile: return "near-minimal";
    }
    return {};
}

double CubatureRule::weight_sum() const { return std::accumulate(weights.begin(), weights.end(), 0.0); }

double CubatureRule::min_weight() const {
    return weights.empty() ? 0.0 : *std::min_element(weights.begin(), weights.end());
}

double CubatureRule::max_weight() const {
    return weights.empty() ? 0.0 : *std::max_element(weights.begin(), weights.end());
}

GaussRule1D gauss_jacobi(int k, double alpha, double beta) {
    if (k < 1) throw InvalidArgument("gauss_jacobi: need at least one point");
    if (!(alpha > -1.0) || !(beta > -1.0)) throw InvalidArgument("gauss_jacobi: exponents must exceed -1");

    const double ab = alpha + beta;
    const auto ku = static_cast<std::size_t>(k);
    std::vector<double> a(ku);
    std::vector<double> b(ku + 1, 0.0); // b[n]: off-diagonal between n-1 and n
    for (int n = 0; n < k; ++n) {
        const double s = 2.0 * n + ab;
        a[static_cast<std::size_t>(n)] =
            (n == 0) ? (beta - alpha) / (ab + 2.0) : (beta * beta - alpha * alpha) / (s * (s + 2.0));
    }
    for (int n = 1; n <= k; ++n) {
        const double s = 2.0 * n + ab;
        const double num = 4.0 * n * (n + alpha) * (n + beta) * (n + ab);
        const double den = s * s * (s + 1.0) * (s - 1.0);
        b[static_cast<std::size_t>(n)] = std::sqrt(num / den);
    }
    const double mu0 =
        std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(alpha + 1.0) + std::lgamma(beta + 1.0) - std::lgamma(ab + 2.0));

    SymMatrix jac(ku);
    for (std::size_t i = 0; i < ku; ++i) {
        jac.set(i, i, a[i]);
        if (i + 1 < ku) jac.set(i, i + 1, b[i + 1]);
    }
    std::vector<double> x = sym_eig(jac).raw_eigenvalues;

    // p_n orthonormal for the weight: p_{n+1} b_{n+1} = (x - a_n) p_n - b_n p_{n-1}.
    const auto recur = [&](double t, double& pk, double& dk, double& christoffel) {
        double p_prev = 0.0, p = 1.0 / std::sqrt(mu0);
        double d_prev = 0.0, d = 0.0;
        christoffel = p * p;
        for (std::size_t n = 0; n < ku; ++n) {
            const double p_next = ((t - a[n]) * p - b[n] * p_prev) / b[n + 1];
            const double d_next = (p + (t - a[n]) * d - b[n] * d_prev) / b[n + 1];
            p_prev = p;
            p = p_next;
            d_prev = d;
            d = d_next;
            if (n + 1 < ku) christoffel += p * p;
        }
        pk = p;
        dk = d;
    };

    GaussRule1D r;
    r.nodes.resize(ku);
    r.weights.resize(ku);
    for (std::size_t i = 0; i < ku; ++i) {
        double t = x[i];
        double pk = 0.0, dk = 0.0, ch = 0.0;
        for (int it = 0; it < 4; ++it) {
            recur(t, pk, dk, ch);
            if (dk == 0.0) break;
            const double step = pk / dk;
            t -= step;
            if (std::abs(step) <= 1e-17) break;
        }
        recur(t, pk, dk, ch);
        r.nodes[i] = t;
        r.weights[i] = 1.0 / ch;
    }
    std::vector<std::size_t> order(ku);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return r.nodes[i] < r.nodes[j]; });
    GaussRule1D sorted;
    for (std::size_t i : order) {
        sorted.nodes.push_back(r.nodes[i]);
        sorted.weights.push_back(r.weights[i]);
    }
    return sorted;
}

CubatureRule gauss_legendre(int k) {
    if (k < 1) throw InvalidArgument("gauss_legendre: k must be at least 1");
    GaussRule1D g = gauss_jacobi(k, 0.0, 0.0);
    // Exact symmetry about the origin.
    const auto ku = static_cast<std::size_t>(k);
    for (std::size_t i = 0; i < ku / 2; ++i) {
        const std::size_t j = ku - 1 - i;
        const double x = 0.5 * (g.nodes[j] - g.nodes[i]);
        const double w = 0.5 * (g.weights[i] + g.weights[j]);
        g.nodes[i] = -x;
        g.nodes[j] = x;
        g.weights[i] = g.weights[j] = w;
    }
    if (ku % 2 == 1) g.nodes[ku / 2] = 0.0;
    return make_interval_rule(std::move(g.nodes), std::move(g.weights), 2 * k - 1, Provenance::GaussLegendre);
}

CubatureRule clenshaw_curtis(int m) {
    if (m < 1) throw InvalidArgument("clenshaw_curtis: m must be at least 1");
    const auto mu = static_cast<std::size_t>(m);
    std::vector<double> x(mu + 1), w(mu + 1);
    for (int j = 0; j <= m; ++j) {
        const double theta = j * pi / m;
        x[static_cast<std::size_t>(j)] = (2 * j == m) ? 0.0 : std::cos(theta);
        double s = 1.0;
        for (int k = 1; 2 * k <= m; ++k) {
            const double bk = (2 * k == m) ? 1.0 : 2.0;
            s -= bk / (4.0 * k * k - 1.0) * std::cos(2.0 * k * theta);
        }
        const double c = (j == 0 || j == m) ? 1.0 : 2.0;
        w[static_cast<std::size_t>(j)] = c * s / m;
    }
    return make_interval_rule(std::move(x), std::move(w), m, Provenance::ClenshawCurtis);
}

CubatureRule gauss_chebyshev_square(int k) {
    if (k < 1) throw InvalidArgument("gauss_chebyshev_square: k must be at least 1");
    std::vector<double> t(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) t[static_cast<std::size_t>(i)] = std::cos((2.0 * i + 1.0) * pi / (2.0 * k));
    CubatureRule r;
    r.domain = Domain(DomainKind::Square, Measure::ProductChebyshev);
    r.nodes = PointSet(2);
    r.nodes.reserve(t.size() * t.size());
    for (double x : t)
        for (double y : t) {
            const double p[2] = {x, y};
            r.nodes.push_back(p);
        }
    r.weights.assign(t.size() * t.size(), (pi / k) * (pi / k));
    r.ade = 2 * k - 1;
    r.provenance = Provenance::GaussChebyshev;
    return r;
}

CubatureRule tensor_rule(std::span<const CubatureRule> factors) {
    if (factors.size() != 2 && factors.size() != 3)
        throw InvalidArgument("tensor_rule: need two (square) or three (cube) factors");
    for (const auto& f : factors)
        if (f.domain.kind() != DomainKind::Interval)
            throw InvalidArgument("tensor_rule: every factor must be an interval rule");

    const std::size_t dim = factors.size();
    CubatureRule r;
    r.domain = Domain(dim == 2 ? DomainKind::Square : DomainKind::Cube);
    r.nodes = PointSet(dim);
    std::optional<int> ade = factors[0].ade;
    for (const auto& f : factors) {
        if (!f.ade)
            ade.reset();
        else if (ade)
            ade = std::min(*ade, *f.ade);
    }
    r.ade = ade;
    r.provenance = Provenance::TensorProduct;

    std::size_t total = 1;
    for (const auto& f : factors) total *= f.size();
    r.nodes.reserve(total);
    r.weights.reserve(total);
    std::vector<std::size_t> idx(dim, 0);
    std::vector<double> p(dim);
    for (std::size_t n = 0; n < total; ++n) {
        double w = 1.0;
        for (std::size_t c = 0; c < dim; ++c) {
            p[c] = factors[c].nodes[idx[c]][0];
            w *= factors[c].weights[idx[c]];
        }
        r.nodes.push_back(p);
        r.weights.push_back(w);
        for (std::size_t c = dim; c-- > 0;) {
            if (++idx[c] < factors[c].size()) break;
            idx[c] = 0;
        }
    }
    return r;
}

PointSet padua_points(int m) {
    if (m < 1) throw InvalidArgument("padua_points: m must be at least 1");
    PointSet pts(2);
    pts.reserve(static_cast<std::size_t>((m + 1) * (m + 2) / 2));
    for (int j = 0; j <= m; ++j) {
        const double x = (2 * j == m) ? 0.0 : std::cos(j * pi / m);
        for (int k = 0; k <= m + 1; ++k) {
            if ((j + k) % 2 != 0) continue;
            const double y = (2 * k == m + 1) ? 0.0 : std::cos(k * pi / (m + 1));
            const double p[2] = {x, y};
            pts.push_back(p);
        }
    }
    return pts;
}

CubatureRule padua_rule(int m) {
    PointSet pts = padua_points(m);
    const std::size_t d = pts.size();

    // Moment fitting in the Chebyshev basis T_a(x) T_b(y), a + b <= m.
    std::vector<std::pair<int, int>> exps;
    for (int t = 0; t <= m; ++t)
        for (int a = t; a >= 0; --a) exps.emplace_back(a, t - a);
    const auto cheb_moment = [](int k) { return (k % 2 == 1) ? 0.0 : 2.0 / (1.0 - static_cast<double>(k) * k); };

    const auto mu = static_cast<std::size_t>(m);
    std::vector<double> tx(mu + 1), ty(mu + 1);
    std::vector<double> a(d * d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t c = 0; c < 2; ++c) {
            auto& t = c == 0 ? tx : ty;
            const double v = pts[i][c];
            t[0] = 1.0;
            if (m >= 1) t[1] = v;
            for (std::size_t k = 2; k <= mu; ++k) t[k] = 2.0 * v * t[k - 1] - t[k - 2];
        }
        for (std::size_t r = 0; r < d; ++r)
            a[r * d + i] = tx[static_cast<std::size_t>(exps[r].first)] * ty[static_cast<std::size_t>(exps[r].second)];
    }
    std::vector<double> moments(d);
    for (std::size_t r = 0; r < d; ++r) moments[r] = cheb_moment(exps[r].first) * cheb_moment(exps[r].second);

    std::vector<double> w;
    try {
        w = lu_solve(d, std::move(a), moments);
    } catch (const SingularSystemError& e) {
        throw Error(std::string("padua_rule: moment system is singular: ") + e.what());
    }

    CubatureRule r;
    r.domain = Domain(DomainKind::Square);
    r.nodes = std::move(pts);
    r.weights = std::move(w);
    r.ade = m;
    r.provenance = Provenance::Padua;
    return r;
}

CubatureRule morrow_patterson_xu(int m) {
    if (m < 1 || m % 2 == 0)
        throw UnsupportedDegree("morrow_patterson_xu: only odd degrees m = 1, 3, 5, ... are supported (got " +
                                std::to_string(m) + ")");
    const int s = (m + 1) / 2;
    CubatureRule r;
    r.domain = Domain(DomainKind::Square, Measure::ProductChebyshev);
    r.nodes = PointSet(2);
    const auto z = [s](int k) { return (2 * k == s) ? 0.0 : std::cos(k * pi / s); };
    const auto c = [s](int k) { return (k == 0 || k == s) ? 0.5 : 1.0; };
    for (int k = 0; k <= s; ++k)
        for (int l = 0; l <= s; ++l) {
            if ((k + l) % 2 == 0) continue;
            const double p[2] = {z(k), z(l)};
            r.nodes.push_back(p);
            r.weights.push_back(2.0 * pi * pi * c(k) * c(l) / (static_cast<double>(s) * s));
        }
    r.ade = m;
    r.provenance = Provenance::MorrowPattersonXu;
    return r;
}

CubatureRule polar_disk_rule(int m) {
    if (m < 0) throw InvalidArgument("polar_disk_rule: m must be nonnegative");
    // Weight r on [0,1] is (1+u)/2 on [-1,1] with r = (1+u)/2: Jacobi (0,1).
    const GaussRule1D g = gauss_jacobi(half_up(m), 0.0, 1.0);
    const int angles = m + 1;
    CubatureRule r;
    r.domain = Domain(DomainKind::Disk);
    r.nodes = PointSet(2);
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        const double rad = 0.5 * (1.0 + g.nodes[i]);
        const double wr = 0.25 * g.weights[i]; // int_0^1 g(r) r dr
        for (int j = 0; j < angles; ++j) {
            const double th = 2.0 * pi * j / angles;
            const double p[2] = {rad * std::cos(th), rad * std::sin(th)};
            r.nodes.push_back(p);
            r.weights.push_back(wr * 2.0 * pi / angles);
        }
    }
    r.ade = m;
    r.provenance = Provenance::PolarDisk;
    return r;
}

CubatureRule stroud_conical(int m) {
    if (m < 0) throw InvalidArgument("stroud_conical: m must be nonnegative");
    const int q = half_up(m);
    // x = u, y = (1-u) v with Jacobian (1-u): Gauss-Jacobi (1,0) in u, Gauss-Legendre in v.
    const GaussRule1D gu = gauss_jacobi(q, 1.0, 0.0);
    const GaussRule1D gv = gauss_jacobi(q, 0.0, 0.0);
    CubatureRule r;
    r.domain = Domain(DomainKind::Simplex);
    r.nodes = PointSet(2);
    for (std::size_t i = 0; i < gu.nodes.size(); ++i) {
        const double u = 0.5 * (1.0 + gu.nodes[i]);
        const double wu = 0.25 * gu.weights[i];
        for (std::size_t j = 0; j < gv.nodes.size(); ++j) {
            const double v = 0.5 * (1.0 + gv.nodes[j]);
            const double p[2] = {u, (1.0 - u) * v};
            r.nodes.push_back(p);
            r.weights.push_back(wu * 0.5 * gv.weights[j]);
        }
    }
    r.ade = m;
    r.provenance = Provenance::StroudConical;
    return r;
}

CubatureRule latlong_sphere(int m) {
    if (m < 0) throw InvalidArgument("latlong_sphere: m must be nonnegative");
    const GaussRule1D g = gauss_jacobi(half_up(m), 0.0, 0.0);
    const int lons = m + 1;
    CubatureRule r;
    r.domain = Domain(DomainKind::Sphere);
    r.nodes = PointSet(3);
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        const double z = g.nodes[i];
        const double st = std::sqrt((1.0 - z) * (1.0 + z));
        for (int j = 0; j < lons; ++j) {
            const double ph = 2.0 * pi * j / lons;
            const double p[3] = {st * std::cos(ph), st * std::sin(ph), z};
            r.nodes.push_back(p);
            r.weights.push_back(g.weights[i] * 2.0 * pi / lons);
        }
    }
    r.ade = m;
    r.provenance = Provenance::LatLong;
    return r;
}

double radical_inverse(std::uint64_t index, unsigned base) {
    const double inv = 1.0 / base;
    double f = inv;
    double r = 0.0;
    while (index > 0) {
        r += static_cast<double>(index % base) * f;
        index /= base;
        f *= inv;
    }
    return r;
}

CubatureRule halton_qmc(std::size_t count, const Domain& domain) {
    if (count < 1) throw InvalidArgument("halton_qmc: need at least one point");
    if (domain.measure() != Measure::Lebesgue ||
        (domain.kind() != DomainKind::Square && domain.kind() != DomainKind::Cube))
        throw InvalidArgument("halton_qmc: only the square and the cube are supported");
    static constexpr unsigned bases[3] = {2, 3, 5};
    const std::size_t dim = domain.dim();
    CubatureRule r;
    r.domain = domain;
    r.nodes = PointSet(dim);
    r.nodes.reserve(count);
    std::vector<double> p(dim);
    for (std::size_t i = 1; i <= count; ++i) {
        for (std::size_t c = 0; c < dim; ++c) p[c] = 2.0 * radical_inverse(i, bases[c]) - 1.0;
        r.nodes.push_back(p);
    }
    r.weights.assign(count, domain.mass() / static_cast<double>(count));
    r.ade.reset();
    r.provenance = Provenance::HaltonQMC;
    return r;
}

double verify_ade(const CubatureRule& rule, int claimed_m) {
    const OrthonormalBasis basis(rule.domain, claimed_m);
    const double sqrt_mass = std::sqrt(rule.domain.mass());
    std::vector<double> s(basis.size(), 0.0);
    std::vector<double> phi(basis.size());
    for (std::size_t i = 0; i < rule.size(); ++i) {
        basis.eval_point(rule.nodes[i], phi);
        for (std::size_t j = 0; j < phi.size(); ++j) s[j] += rule.weights[i] * phi[j];
    }
    double worst = 0.0;
    for (std::size_t j = 0; j < s.size(); ++j) worst = std::max(worst, std::abs(s[j] - (j == 0 ? sqrt_mass : 0.0)));
    return worst;
}

} // namespace mzquad
