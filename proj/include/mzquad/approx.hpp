#pragma once

#include "mzquad/bases.hpp"
#include "mzquad/linalg.hpp"
#include "mzquad/mz.hpp"
#include "mzquad/rule.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mzquad {

/// A function on the domain. Must be safe to call concurrently.
using Function = std::function<double(std::span<const double>)>;

enum class Method { Hyperinterpolation, LeastSquares };

std::string to_string(Method m);

struct Approximant {
    OrthonormalBasis basis;
    std::vector<double> coeffs;
    Method method;
    Provenance source;
};

/// Degree-n hyperinterpolation is classical when the rule integrates P_2n
/// exactly, unfettered otherwise.
bool is_classical(const CubatureRule& rule, int n);

/// S(f phi_j) for every basis element. Evaluation failures are rethrown as
/// EvaluationError carrying the node index.
std::vector<double> moments(const CubatureRule& rule, const OrthonormalBasis& basis, const Function& f);

/// c_j = S(f phi_j).
Approximant hyperinterpolate(const CubatureRule& rule, const OrthonormalBasis& basis, const Function& f);

/// Weighted least-squares fit on the rule nodes, c = G^{-1} S(f phi).
///
/// Positive-weight rules go through Cholesky and a non-SPD Gramian raises
/// NoMzProperty. Rules with some negative weights (Padua) have an
/// indefinite G at high degree, so the system is solved by LU instead and
/// only a singular G raises NoMzProperty.
Approximant least_squares(const CubatureRule& rule, const OrthonormalBasis& basis, const Function& f);
/// Same with a precomputed Gramian of the rule for this basis.
Approximant least_squares(const CubatureRule& rule, const OrthonormalBasis& basis, const SymMatrix& g,
                          const Function& f);

/// Solves G c = m as least_squares does.
std::vector<double> solve_gramian(const SymMatrix& g, std::span<const double> m, bool positive_weights);

std::vector<double> evaluate(const Approximant& approx, const PointSet& points);
double evaluate(const Approximant& approx, std::span<const double> x);

/// Wraps the approximant as a Function (copies it).
Function as_function(const Approximant& approx);

/// ||p - f|| / ||f|| in the discrete L2 norm of the reference rule.
/// Throws DegenerateFunction when f vanishes on the reference nodes.
double rel_l2_error(const Approximant& approx, const Function& f, const CubatureRule& reference);

/// ADE 50 rule used to measure errors: tensor Gauss-Legendre with 26 points
/// per direction on boxes (Gauss-Chebyshev for the Chebyshev measure),
/// polar, conical and lat-long rules of degree 50 elsewhere.
CubatureRule reference_rule(const Domain& domain);

/// Polynomial of total degree n obtained by tensor Chebyshev interpolation of
/// f on the bounding box [-1,1]^d and dropping terms of total degree > n.
/// f is sampled on the whole box, also outside the domain.
Function chebyshev_truncation(const Function& f, const Domain& domain, int n);

/// count pseudo-random points distributed uniformly on the domain.
PointSet dense_sample(const Domain& domain, std::size_t count, std::uint64_t seed);

struct BoundCheck {
    double lhs = 0.0;           ///< ||f - LS f||_2 on the reference rule
    double rhs = 0.0;           ///< (1 + 1/sqrt(A)) sqrt(mu) * sup_estimate
    double sup_estimate = 0.0;  ///< max |f - surrogate| over sampled points
    bool pass = false;
};

/// Checks ||f - LS_n f|| <= (1 + 1/sqrt(A)) sqrt(mu(Omega)) ||f - p||_inf for a
/// surrogate p in P_n. The sup norm is estimated on samples_count seeded
/// random points plus the rule and reference nodes. Throws InvalidArgument
/// when A <= 0 or the rule has non-positive weights.
BoundCheck check_error_bounds(const MzReport& report, const CubatureRule& rule, const OrthonormalBasis& basis,
                              const Function& f, const Function& surrogate, const CubatureRule& reference,
                              std::uint64_t seed = 1, std::size_t samples_count = 10000);

struct ErrorRecord {
    std::string domain;
    std::string family;
    std::optional<int> ade;
    int n = 0;
    std::string method;
    std::string fid;
    /// NaN when the approximant could not be built.
    double relerr = 0.0;
};

/// CSV with header domain,family,ade,n,method,fid,relerr; failed records
/// leave relerr empty.
void write_error_csv(std::ostream& out, std::span<const ErrorRecord> records);

} // namespace mzquad
