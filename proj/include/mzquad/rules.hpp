#pragma once

#include "mzquad/domain.hpp"
#include "mzquad/rule.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mzquad {

/// Nodes and weights of a one-dimensional Gauss rule.
struct GaussRule1D {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// k-point Gauss-Jacobi rule for (1-x)^alpha (1+x)^beta on [-1,1].
///
/// Nodes are the eigenvalues of the symmetric tridiagonal Jacobi matrix,
/// refined by Newton steps on the orthonormal recurrence; weights come from
/// the Christoffel function. Requires alpha, beta > -1 and k >= 1.
GaussRule1D gauss_jacobi(int k, double alpha, double beta);

/// k-point Gauss-Legendre rule on [-1,1], ADE 2k-1.
CubatureRule gauss_legendre(int k);

/// Clenshaw-Curtis rule on the m+1 Chebyshev-Lobatto points cos(j pi/m), ADE m.
CubatureRule clenshaw_curtis(int m);

/// Tensor Gauss-Chebyshev rule with k x k points for the product Chebyshev
/// measure on the square, ADE 2k-1.
CubatureRule gauss_chebyshev_square(int k);

/// Product of interval rules: two factors give the square, three the cube.
CubatureRule tensor_rule(std::span<const CubatureRule> factors);

/// The (m+1)(m+2)/2 Padua points of degree m (first family).
PointSet padua_points(int m);

/// Interpolatory cubature at the Padua points for dx dy on [-1,1]^2, ADE m.
/// A few weights are slightly negative.
CubatureRule padua_rule(int m);

/// Morrow-Patterson-Xu rule for the product Chebyshev measure. Only odd
/// degrees m = 2s-1 are supported: nodes (cos(k pi/s), cos(l pi/s)) with k+l
/// odd, weights 2 pi^2 c_k c_l / s^2 (c = 1/2 on the boundary, 1 inside).
CubatureRule morrow_patterson_xu(int m);

/// Gauss (weight r on [0,1]) times trapezoid in angle on the unit disk, ADE m.
CubatureRule polar_disk_rule(int m);

/// Collapsed (Duffy) tensor of Gauss-Jacobi and Gauss-Legendre rules on the
/// unit simplex, ceil((m+1)/2)^2 nodes, ADE m.
CubatureRule stroud_conical(int m);

/// Gauss-Legendre in cos(theta) times trapezoid in longitude on S^2, ADE m.
CubatureRule latlong_sphere(int m);

/// Van der Corput radical inverse of index in the given base.
double radical_inverse(std::uint64_t index, unsigned base);

/// Equal-weight rule at the Halton points 1..M (bases 2,3[,5]) mapped to
/// [-1,1]^d. Only square and cube.
CubatureRule halton_qmc(std::size_t count, const Domain& domain);

/// max_j |S(phi_j) - I(phi_j)| over the orthonormal basis of degree claimed_m.
double verify_ade(const CubatureRule& rule, int claimed_m);

// Plain-text rule files.
//
//   # domain=<token> ade=<int|unknown> count=<M> columns=<d|d+1> [measure=cheb] [kind=...]
//   x_1 ... x_d [w]
//
// A missing weight column is legal only on the sphere and means equal
// weights 4 pi / M (spherical designs). kind is one of near-minimal, design,
// symmetric-design; without it sphere files with no weights are designs,
// symmetric when every node has its antipode in the set.

/// Parses a rule file. ade_claim overrides the header's ade when given.
CubatureRule load_rule(const std::filesystem::path& path, const Domain& domain,
                       std::optional<int> ade_claim = std::nullopt);
CubatureRule parse_rule(std::istream& in, const Domain& domain, std::optional<int> ade_claim = std::nullopt);

/// Writes a rule in the text format with 17 significant digits.
void write_rule(std::ostream& out, const CubatureRule& rule);

/// True when -x is a node for every node x (to tol).
bool is_antipodal(const PointSet& nodes, double tol = 1e-12);

// Rule families addressable by degree m, as used by the scans and the CLI.

enum class RuleFamily {
    GaussLegendre,
    ClenshawCurtis,
    GaussChebyshev,
    Padua,
    MorrowPattersonXu,
    PolarDisk,
    StroudConical,
    LatLong,
    SphericalDesign,
    SymmetricSphericalDesign,
    HaltonQMC,
    NearMinimal,
};

RuleFamily parse_family(std::string_view token);
std::string family_token(RuleFamily family);

/// True for families read from external data files.
bool is_dataset_family(RuleFamily family);

/// Directory with rule datasets: $MZQUAD_DATA_DIR if set, else the
/// fixtures shipped with the sources.
std::filesystem::path default_data_dir();

/// Path of the data file for a dataset family at degree m.
std::filesystem::path dataset_path(const std::filesystem::path& data_dir, RuleFamily family,
                                   const Domain& domain, int m);

/// Builds the rule of the family at parameter m. For Gauss families m is the
/// target ADE and the rule uses floor(m/2)+1 points per direction; for QMC
/// the rule has 2^m points. Throws DatasetMissing for absent data files and
/// UnsupportedDegree when the family has no rule at m.
CubatureRule make_rule(RuleFamily family, const Domain& domain, int m,
                       const std::filesystem::path& data_dir = default_data_dir());

} // namespace mzquad
