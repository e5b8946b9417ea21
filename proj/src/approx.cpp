#include "mzquad/approx.hpp"

#include "mzquad/errors.hpp"
#include "mzquad/rules.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <ostream>
#include <random>

namespace mzquad {

namespace {

constexpr std::size_t kBlock = 256;

double eval_checked(const Function& f, std::span<const double> x, std::size_t index) {
    double v;
    try {
        v = f(x);
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        throw EvaluationError(index, "function evaluation failed at node " + std::to_string(index) + ": " + e.what());
    }
    if (!std::isfinite(v))
        throw EvaluationError(index, "function is not finite at node " + std::to_string(index));
    return v;
}

bool all_positive(const CubatureRule& rule) {
    return std::all_of(rule.weights.begin(), rule.weights.end(), [](double w) { return w > 0.0; });
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double normal(std::mt19937_64& rng) {
    // Box-Muller; u1 in (0,1]
    const double u1 = 1.0 - uniform01(rng);
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

} // namespace

std::string to_string(Method m) {
    return m == Method::Hyperinterpolation ? "hyperinterpolation" : "least-squares";
}

bool is_classical(const CubatureRule& rule, int n) { return rule.ade && *rule.ade >= 2 * n; }

std::vector<double> moments(const CubatureRule& rule, const OrthonormalBasis& basis, const Function& f) {
    if (!(rule.domain == basis.domain())) throw DomainMismatch("moments: rule and basis domains differ");
    const std::size_t d = basis.size();
    std::vector<double> m(d, 0.0);
    std::vector<double> phi(d);
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const auto x = rule.nodes[i];
        basis.check_point(x, i);
        const double wf = rule.weights[i] * eval_checked(f, x, i);
        basis.eval_point(x, phi);
        for (std::size_t j = 0; j < d; ++j) m[j] += wf * phi[j];
    }
    return m;
}

Approximant hyperinterpolate(const CubatureRule& rule, const OrthonormalBasis& basis, const Function& f) {
    return {basis, moments(rule, basis, f), Method::Hyperinterpolation, rule.provenance};
}

std::vector<double> solve_gramian(const SymMatrix& g, std::span<const double> m, bool positive_weights) {
    if (positive_weights) {
        try {
            return spd_solve(g, m);
        } catch (const NotSpdError& e) {
            throw NoMzProperty(std::string("no MZ property at this degree: ") + e.what());
        }
    }
    try {
        return lu_solve(g.order(), g.data(), m);
    } catch (const SingularSystemError& e) {
        throw NoMzProperty(std::string("no MZ property at this degree: ") + e.what());
    }
}

Approximant least_squares(const CubatureRule& rule, const OrthonormalBasis& basis, const SymMatrix& g,
                          const Function& f) {
    if (g.order() != basis.size()) throw InvalidArgument("least_squares: Gramian order does not match the basis");
    const auto m = moments(rule, basis, f);
    return {basis, solve_gramian(g, m, all_positive(rule)), Method::LeastSquares, rule.provenance};
}

Approximant least_squares(const CubatureRule& rule, const OrthonormalBasis& basis, const Function& f) {
    return least_squares(rule, basis, gramian(rule, basis), f);
}

double evaluate(const Approximant& approx, std::span<const double> x) {
    approx.basis.check_point(x, 0);
    std::vector<double> phi(approx.basis.size());
    approx.basis.eval_point(x, phi);
    return std::inner_product(phi.begin(), phi.end(), approx.coeffs.begin(), 0.0);
}

std::vector<double> evaluate(const Approximant& approx, const PointSet& points) {
    const std::size_t d = approx.basis.size();
    if (approx.coeffs.size() != d) throw InvalidArgument("evaluate: coefficient length differs from the basis size");
    std::vector<double> out(points.size());
    std::vector<double> phi(d);
    for (std::size_t i = 0; i < points.size(); ++i) {
        approx.basis.check_point(points[i], i);
        approx.basis.eval_point(points[i], phi);
        out[i] = std::inner_product(phi.begin(), phi.end(), approx.coeffs.begin(), 0.0);
    }
    return out;
}

Function as_function(const Approximant& approx) {
    return [approx](std::span<const double> x) {
        std::vector<double> phi(approx.basis.size());
        approx.basis.eval_point(x, phi);
        return std::inner_product(phi.begin(), phi.end(), approx.coeffs.begin(), 0.0);
    };
}

double rel_l2_error(const Approximant& approx, const Function& f, const CubatureRule& reference) {
    if (!(reference.domain == approx.basis.domain()))
        throw DomainMismatch("rel_l2_error: reference rule is on another domain");
    const auto p = evaluate(approx, reference.nodes);
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < reference.size(); ++k) {
        const double fk = eval_checked(f, reference.nodes[k], k);
        num += reference.weights[k] * (p[k] - fk) * (p[k] - fk);
        den += reference.weights[k] * fk * fk;
    }
    if (!(den > 0.0)) throw DegenerateFunction("rel_l2_error: f vanishes on the reference nodes");
    return std::sqrt(num / den);
}

CubatureRule reference_rule(const Domain& domain) {
    constexpr int ade = 50;
    constexpr int k = ade / 2 + 1;
    switch (domain.kind()) {
    case DomainKind::Interval:
        return gauss_legendre(k);
    case DomainKind::Square: {
        if (domain.measure() == Measure::ProductChebyshev) return gauss_chebyshev_square(k);
        const CubatureRule g = gauss_legendre(k);
        const CubatureRule f[] = {g, g};
        return tensor_rule(f);
    }
    case DomainKind::Cube: {
        const CubatureRule g = gauss_legendre(k);
        const CubatureRule f[] = {g, g, g};
        return tensor_rule(f);
    }
    case DomainKind::Disk:
        return polar_disk_rule(ade);
    case DomainKind::Simplex:
        return stroud_conical(ade);
    case DomainKind::Sphere:
        return latlong_sphere(ade);
    }
    throw InvalidArgument("reference_rule: unknown domain");
}

Function chebyshev_truncation(const Function& f, const Domain& domain, int n) {
    if (n < 0) throw InvalidArgument("chebyshev_truncation: negative degree");
    const std::size_t dim = domain.dim();
    const std::size_t N = static_cast<std::size_t>(n) + 1;

    // 1D transform: a_k = (2 - delta_k0)/N sum_i v_i T_k(x_i) at the N Chebyshev-Gauss points.
    std::vector<double> x(N), T(N * N);
    for (std::size_t i = 0; i < N; ++i) x[i] = std::cos((static_cast<double>(i) + 0.5) * std::numbers::pi / N);
    for (std::size_t k = 0; k < N; ++k)
        for (std::size_t i = 0; i < N; ++i)
            T[k * N + i] = (k == 0 ? 1.0 : 2.0) / N * std::cos(k * (static_cast<double>(i) + 0.5) * std::numbers::pi / N);

    std::size_t total = 1;
    for (std::size_t a = 0; a < dim; ++a) total *= N;
    std::vector<double> vals(total);
    std::vector<double> pt(dim);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t r = idx;
        for (std::size_t a = dim; a-- > 0;) {
            pt[a] = x[r % N];
            r /= N;
        }
        vals[idx] = eval_checked(f, pt, idx);
    }

    // Apply the transform along each axis; axis a has stride N^(dim-1-a).
    std::vector<double> tmp(total);
    std::size_t stride = total;
    for (std::size_t a = 0; a < dim; ++a) {
        stride /= N;
        const std::size_t outer = total / (stride * N);
        for (std::size_t o = 0; o < outer; ++o)
            for (std::size_t s = 0; s < stride; ++s) {
                const std::size_t base = o * stride * N + s;
                for (std::size_t k = 0; k < N; ++k) {
                    double acc = 0.0;
                    for (std::size_t i = 0; i < N; ++i) acc += T[k * N + i] * vals[base + i * stride];
                    tmp[base + k * stride] = acc;
                }
            }
        vals.swap(tmp);
    }

    struct Term {
        std::array<int, 3> e;
        double c;
    };
    std::vector<Term> terms;
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::array<int, 3> e{0, 0, 0};
        std::size_t r = idx;
        int deg = 0;
        for (std::size_t a = dim; a-- > 0;) {
            e[a] = static_cast<int>(r % N);
            deg += e[a];
            r /= N;
        }
        if (deg <= n) terms.push_back({e, vals[idx]});
    }

    return [terms = std::move(terms), dim, n](std::span<const double> z) {
        std::array<std::vector<double>, 3> t;
        for (std::size_t a = 0; a < dim; ++a) {
            auto& ta = t[a];
            ta.resize(static_cast<std::size_t>(n) + 1);
            ta[0] = 1.0;
            if (n >= 1) ta[1] = z[a];
            for (int k = 2; k <= n; ++k) ta[k] = 2.0 * z[a] * ta[k - 1] - ta[k - 2];
        }
        double s = 0.0;
        for (const auto& term : terms) {
            double v = term.c;
            for (std::size_t a = 0; a < dim; ++a) v *= t[a][term.e[a]];
            s += v;
        }
        return s;
    };
}

PointSet dense_sample(const Domain& domain, std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const std::size_t dim = domain.dim();
    PointSet out(dim);
    out.reserve(count);
    std::vector<double> x(dim);
    while (out.size() < count) {
        switch (domain.kind()) {
        case DomainKind::Interval:
        case DomainKind::Square:
        case DomainKind::Cube:
            for (auto& v : x) v = 2.0 * uniform01(rng) - 1.0;
            break;
        case DomainKind::Disk:
            do {
                x[0] = 2.0 * uniform01(rng) - 1.0;
                x[1] = 2.0 * uniform01(rng) - 1.0;
            } while (x[0] * x[0] + x[1] * x[1] > 1.0);
            break;
        case DomainKind::Simplex:
            x[0] = uniform01(rng);
            x[1] = uniform01(rng);
            if (x[0] + x[1] > 1.0) {
                x[0] = 1.0 - x[0];
                x[1] = 1.0 - x[1];
            }
            break;
        case DomainKind::Sphere: {
            double r;
            do {
                for (auto& v : x) v = normal(rng);
                r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
            } while (r < 1e-8);
            for (auto& v : x) v /= r;
            break;
        }
        }
        out.push_back(x);
    }
    return out;
}

BoundCheck check_error_bounds(const MzReport& report, const CubatureRule& rule, const OrthonormalBasis& basis,
                              const Function& f, const Function& surrogate, const CubatureRule& reference,
                              std::uint64_t seed, std::size_t samples_count) {
    if (!(report.A > 0.0)) throw InvalidArgument("check_error_bounds: A <= 0, the bound is inapplicable");
    if (!all_positive(rule)) throw InvalidArgument("check_error_bounds: the bound needs positive weights");

    const Approximant ls = least_squares(rule, basis, f);
    const auto p = evaluate(ls, reference.nodes);
    double err2 = 0.0;
    for (std::size_t k = 0; k < reference.size(); ++k) {
        const double e = p[k] - eval_checked(f, reference.nodes[k], k);
        err2 += reference.weights[k] * e * e;
    }

    BoundCheck out;
    out.lhs = std::sqrt(err2);
    auto scan = [&](const PointSet& pts) {
        for (std::size_t i = 0; i < pts.size(); ++i)
            out.sup_estimate = std::max(out.sup_estimate, std::abs(f(pts[i]) - surrogate(pts[i])));
    };
    scan(dense_sample(rule.domain, samples_count, seed));
    scan(rule.nodes);
    scan(reference.nodes);
    out.rhs = (1.0 + 1.0 / std::sqrt(report.A)) * std::sqrt(rule.domain.mass()) * out.sup_estimate;
    out.pass = out.lhs <= out.rhs;
    return out;
}

void write_error_csv(std::ostream& out, std::span<const ErrorRecord> records) {
    out << "domain,family,ade,n,method,fid,relerr\n";
    char buf[40];
    for (const auto& r : records) {
        out << r.domain << ',' << r.family << ',' << (r.ade ? std::to_string(*r.ade) : std::string("unknown")) << ','
            << r.n << ',' << r.method << ',' << r.fid << ',';
        if (std::isfinite(r.relerr)) {
            std::snprintf(buf, sizeof buf, "%.17g", r.relerr);
            out << buf;
        }
        out << '\n';
    }
}

} // namespace mzquad
