#pragma once

#include "mzquad/bases.hpp"
#include "mzquad/linalg.hpp"
#include "mzquad/rule.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mzquad {

/// Weak Marcinkiewicz-Zygmund constants of a rule at degree n.
///
/// A and B are the extreme eigenvalues of the Gramian G = (S(phi_j phi_k)),
/// i.e. the sharpest constants in A ||p||^2 <= S(p^2) <= B ||p||^2 on P_n,
/// and eta = ||Id - G||_2 = max(|1-A|, |1-B|).
struct MzReport {
    int n = 0;
    std::size_t d_n = 0;
    std::size_t M = 0;
    double A = 0.0;
    double B = 0.0;
    double eta = 0.0;
    /// B / A, or +infinity when A <= 1e-14 B (no MZ property at this degree).
    double cond2 = 0.0;
    bool mz_property = false;
    /// Unit coefficient vectors of p_A and p_B in basis order.
    std::vector<double> pA_coeffs;
    std::vector<double> pB_coeffs;
    /// Worst-case polynomial: eigenvector of Id - G for its largest |eigenvalue|.
    std::vector<double> worst_coeffs;

    // Rule metadata, filled by analyze().
    std::string family;
    std::string domain;
    std::optional<int> ade;
};

/// G = B^T diag(w) B with B = eval_basis(basis, rule.nodes), assembled in
/// blocks of nodes without storing B.
SymMatrix gramian(const CubatureRule& rule, const OrthonormalBasis& basis);

MzReport mz_report(const SymMatrix& g, const OrthonormalBasis& basis);

/// gramian + mz_report with the rule metadata attached.
MzReport analyze(const CubatureRule& rule, const OrthonormalBasis& basis);
MzReport analyze(const CubatureRule& rule, int n);

/// |1 - S(p^2)| for p = sum_j c_j phi_j, evaluated at the nodes directly.
/// coeffs must have unit 2-norm (to 1e-10).
double eta_direct_check(const CubatureRule& rule, const OrthonormalBasis& basis, std::span<const double> coeffs);

/// Flat JSON object with n, A, B, eta, cond2, M, d_n, family, ade, domain and
/// mz_property; floats with 17 significant digits, an infinite cond2 as "inf".
std::string to_json(const MzReport& report);

} // namespace mzquad
