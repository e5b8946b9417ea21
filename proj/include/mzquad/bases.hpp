#pragma once

#include "mzquad/domain.hpp"
#include "mzquad/rule.hpp"

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace mzquad {

enum class BasisFamily {
    Legendre1D,
    ProductLegendreTD,
    ProductChebyshevTD,
    LoganShepp,
    Dubiner,
    SphericalHarmonics,
};

std::string to_string(BasisFamily f);

/// Dimension of the total-degree-n space on the domain (spherical
/// harmonics of degree <= n on the sphere). Throws for negative n.
std::size_t basis_dim(const Domain& domain, int n);

/// M x d_n matrix B(i,j) = phi_j(x_i), row-major.
struct BasisMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;

    double operator()(std::size_t i, std::size_t j) const { return values[i * cols + j]; }
    std::span<const double> row(std::size_t i) const { return {values.data() + i * cols, cols}; }
};

/// A mu-orthonormal basis of total degree n on a domain.
///
/// Index order is graded: all elements of degree t come before those of
/// degree t+1, so the basis of degree n is a prefix of the basis of degree
/// n+1. Within a degree:
///  - product families: exponents (a, b[, c]) in descending lexicographic
///    order, e.g. (2,0), (1,1), (0,2);
///  - Logan-Shepp: ridge directions j = 0..k;
///  - Dubiner: p = t..0 with q = t - p;
///  - spherical harmonics: m = -l..l.
class OrthonormalBasis {
public:
    /// The family used throughout for the domain and measure: Legendre on the
    /// interval, product Legendre on boxes, product Chebyshev for the
    /// Chebyshev measure, Logan-Shepp on the disk, Dubiner on the simplex and
    /// real spherical harmonics on the sphere.
    OrthonormalBasis(const Domain& domain, int degree);
    OrthonormalBasis(const Domain& domain, int degree, BasisFamily family);

    const Domain& domain() const noexcept { return domain_; }
    int degree() const noexcept { return degree_; }
    BasisFamily family() const noexcept { return family_; }
    std::size_t size() const noexcept { return size_; }

    /// Total degree of element j.
    int element_degree(std::size_t j) const;
    /// Human-readable label of element j, e.g. "P2(x)P1(y)" or "Y(3,-1)".
    std::string element_label(std::size_t j) const;

    /// Writes phi_1(x)..phi_dn(x) into out (size d_n). Does not validate x.
    void eval_point(std::span<const double> x, std::span<double> out) const;

    /// Throws DomainViolation / NormalizationError if x is not in the domain.
    void check_point(std::span<const double> x, std::size_t index) const;

private:
    Domain domain_;
    int degree_;
    BasisFamily family_;
    std::size_t size_;
    std::vector<std::array<int, 3>> index_;
};

BasisMatrix eval_basis(const OrthonormalBasis& basis, const PointSet& points);

/// max_{j,k} |S_ref(phi_j phi_k) - delta_jk|. Requires reference.ade >= 2n.
double check_orthonormality(const OrthonormalBasis& basis, const CubatureRule& reference);

} // namespace mzquad
