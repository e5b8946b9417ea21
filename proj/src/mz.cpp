#include "mzquad/mz.hpp"

#include "mzquad/errors.hpp"
#include "mzquad/rules.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

namespace mzquad {

namespace {

constexpr std::size_t kBlock = 256;
constexpr double kNoMzThreshold = 1e-14;

std::string num(double v) {
    if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
    if (std::isnan(v)) return "\"nan\"";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

SymMatrix gramian(const CubatureRule& rule, const OrthonormalBasis& basis) {
    if (!(rule.domain == basis.domain()))
        throw DomainMismatch("gramian: rule is on " + rule.domain.token() + "/" + rule.domain.measure_token() +
                             " but the basis is on " + basis.domain().token() + "/" +
                             basis.domain().measure_token());
    if (rule.size() == 0) throw InvalidArgument("gramian: rule has no nodes");

    const std::size_t d = basis.size();
    CrossProductAccumulator acc(d);
    std::vector<double> block(kBlock * d);
    for (std::size_t start = 0; start < rule.size(); start += kBlock) {
        const std::size_t count = std::min(kBlock, rule.size() - start);
        for (std::size_t r = 0; r < count; ++r) {
            const auto x = rule.nodes[start + r];
            basis.check_point(x, start + r);
            basis.eval_point(x, {block.data() + r * d, d});
        }
        acc.add_rows({block.data(), count * d}, {rule.weights.data() + start, count});
    }
    return acc.result();
}

MzReport mz_report(const SymMatrix& g, const OrthonormalBasis& basis) {
    if (g.order() != basis.size()) throw InvalidArgument("mz_report: Gramian order does not match the basis");
    const EigDecomposition eig = sym_eig(g);
    const std::size_t d = g.order();

    MzReport r;
    r.n = basis.degree();
    r.d_n = d;
    r.A = eig.eigenvalues.front();
    r.B = eig.eigenvalues.back();
    r.eta = std::max(std::abs(1.0 - r.A), std::abs(1.0 - r.B));
    r.mz_property = r.A > kNoMzThreshold * r.B;
    r.cond2 = r.mz_property ? r.B / r.A : std::numeric_limits<double>::infinity();
    const auto first = eig.eigenvector(0);
    const auto last = eig.eigenvector(d - 1);
    r.pA_coeffs.assign(first.begin(), first.end());
    r.pB_coeffs.assign(last.begin(), last.end());
    r.worst_coeffs = std::abs(1.0 - r.A) >= std::abs(1.0 - r.B) ? r.pA_coeffs : r.pB_coeffs;
    r.domain = basis.domain().token();
    return r;
}

MzReport analyze(const CubatureRule& rule, const OrthonormalBasis& basis) {
    MzReport r = mz_report(gramian(rule, basis), basis);
    r.M = rule.size();
    r.family = to_string(rule.provenance);
    r.ade = rule.ade;
    return r;
}

MzReport analyze(const CubatureRule& rule, int n) { return analyze(rule, OrthonormalBasis(rule.domain, n)); }

double eta_direct_check(const CubatureRule& rule, const OrthonormalBasis& basis, std::span<const double> coeffs) {
    if (coeffs.size() != basis.size()) throw InvalidArgument("eta_direct_check: coefficient vector has the wrong length");
    const double norm = std::sqrt(std::inner_product(coeffs.begin(), coeffs.end(), coeffs.begin(), 0.0));
    if (std::abs(norm - 1.0) > 1e-10) throw InvalidArgument("eta_direct_check: coefficient vector is not a unit vector");
    if (!(rule.domain == basis.domain())) throw DomainMismatch("eta_direct_check: rule and basis domains differ");

    std::vector<double> phi(basis.size());
    double s = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        basis.check_point(rule.nodes[i], i);
        basis.eval_point(rule.nodes[i], phi);
        const double p = std::inner_product(phi.begin(), phi.end(), coeffs.begin(), 0.0);
        s += rule.weights[i] * p * p;
    }
    return std::abs(1.0 - s);
}

std::string to_json(const MzReport& r) {
    std::string out = "{";
    out += "\"n\": " + std::to_string(r.n);
    out += ", \"A\": " + num(r.A);
    out += ", \"B\": " + num(r.B);
    out += ", \"eta\": " + num(r.eta);
    out += ", \"cond2\": " + num(r.cond2);
    out += ", \"M\": " + std::to_string(r.M);
    out += ", \"d_n\": " + std::to_string(r.d_n);
    out += ", \"family\": \"" + r.family + "\"";
    out += ", \"ade\": " + (r.ade ? std::to_string(*r.ade) : std::string("\"unknown\""));
    out += ", \"domain\": \"" + r.domain + "\"";
    out += std::string(", \"mz_property\": ") + (r.mz_property ? "true" : "false");
    out += "}";
    return out;
}

} // namespace mzquad
