#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mzquad {

enum class DomainKind { Interval, Square, Cube, Disk, Simplex, Sphere };
enum class Measure { Lebesgue, ProductChebyshev };

/// One of the unit reference sets together with its reference measure.
///
/// Interval [-1,1], Square [-1,1]^2, Cube [-1,1]^3, Disk B(0,1),
/// Simplex {x,y >= 0, x+y <= 1} and the unit sphere S^2 (surface measure).
/// The product Chebyshev measure dx dy / sqrt((1-x^2)(1-y^2)) is only
/// available on the square and keeps its unnormalized mass pi^2.
class Domain {
public:
    explicit Domain(DomainKind kind, Measure measure = Measure::Lebesgue);

    /// Parses a lowercase CLI token ("interval", ..., "sphere") and an
    /// optional measure token ("" or "lebesgue", "cheb").
    static Domain parse(std::string_view kind_token, std::string_view measure_token = {});

    DomainKind kind() const noexcept { return kind_; }
    Measure measure() const noexcept { return measure_; }

    /// Number of coordinates of a point (3 for the sphere).
    std::size_t dim() const noexcept;

    double mass() const noexcept;

    /// Lowercase kind token.
    std::string token() const;
    /// "lebesgue" or "cheb".
    std::string measure_token() const;

    /// True when x lies in the closed set, with absolute slack tol. For the
    /// sphere this checks | |x| - 1 | <= tol.
    bool contains(std::span<const double> x, double tol = 1e-12) const;

    friend bool operator==(const Domain&, const Domain&) = default;

private:
    DomainKind kind_;
    Measure measure_;
};

double mass(const Domain& domain) noexcept;

/// Row-major list of points of a fixed dimension.
class PointSet {
public:
    PointSet() = default;
    explicit PointSet(std::size_t dim) : dim_(dim) {}
    PointSet(std::size_t dim, std::vector<double> coords);

    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return dim_ == 0 ? 0 : coords_.size() / dim_; }
    bool empty() const noexcept { return coords_.empty(); }

    std::span<const double> operator[](std::size_t i) const {
        return {coords_.data() + i * dim_, dim_};
    }
    void push_back(std::span<const double> x);
    void reserve(std::size_t n) { coords_.reserve(n * dim_); }

    const std::vector<double>& coords() const noexcept { return coords_; }

    friend bool operator==(const PointSet&, const PointSet&) = default;

private:
    std::size_t dim_ = 0;
    std::vector<double> coords_;
};

} // namespace mzquad
