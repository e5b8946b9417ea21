#pragma once

#include "mzquad/domain.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mzquad {

enum class Provenance {
    GaussLegendre,
    ClenshawCurtis,
    GaussChebyshev,
    TensorProduct,
    Padua,
    MorrowPattersonXu,
    PolarDisk,
    StroudConical,
    LatLong,
    SphericalDesign,
    SymmetricSphericalDesign,
    HaltonQMC,
    NearMinimalFile,
};

std::string to_string(Provenance p);

/// S(f) = sum_i w_i f(x_i) on a reference domain.
struct CubatureRule {
    Domain domain{DomainKind::Interval};
    PointSet nodes;
    std::vector<double> weights;
    /// Claimed algebraic degree of exactness; empty means unknown (QMC).
    std::optional<int> ade;
    Provenance provenance = Provenance::GaussLegendre;

    std::size_t size() const noexcept { return weights.size(); }
    double weight_sum() const;
    double min_weight() const;
    double max_weight() const;
};

} // namespace mzquad
