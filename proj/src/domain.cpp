#include "mzquad/domain.hpp"

#include "mzquad/errors.hpp"

#include <cmath>
#include <numbers>

namespace mzquad {

Domain::Domain(DomainKind kind, Measure measure) : kind_(kind), measure_(measure) {
    if (measure == Measure::ProductChebyshev && kind != DomainKind::Square)
        throw InvalidArgument("the product Chebyshev measure is only defined on the square");
}

Domain Domain::parse(std::string_view kind_token, std::string_view measure_token) {
    Measure measure = Measure::Lebesgue;
    if (measure_token == "cheb")
        measure = Measure::ProductChebyshev;
    else if (!measure_token.empty() && measure_token != "lebesgue")
        throw InvalidArgument("unknown measure '" + std::string(measure_token) + "'");

    if (kind_token == "interval") return Domain(DomainKind::Interval, measure);
    if (kind_token == "square") return Domain(DomainKind::Square, measure);
    if (kind_token == "cube") return Domain(DomainKind::Cube, measure);
    if (kind_token == "disk") return Domain(DomainKind::Disk, measure);
    if (kind_token == "simplex") return Domain(DomainKind::Simplex, measure);
    if (kind_token == "sphere") return Domain(DomainKind::Sphere, measure);
    throw InvalidArgument("unknown domain '" + std::string(kind_token) + "'");
}

std::size_t Domain::dim() const noexcept {
    switch (kind_) {
    case DomainKind::Interval: return 1;
    case DomainKind::Square:
    case DomainKind::Disk:
    case DomainKind::Simplex: return 2;
    case DomainKind::Cube:
    case DomainKind::Sphere: return 3;
    }
    return 0;
}

double Domain::mass() const noexcept {
    using std::numbers::pi;
    switch (kind_) {
    case DomainKind::Interval: return 2.0;
    case DomainKind::Square: return measure_ == Measure::ProductChebyshev ? pi * pi : 4.0;
    case DomainKind::Cube: return 8.0;
    case DomainKind::Disk: return pi;
    case DomainKind::Simplex: return 0.5;
    case DomainKind::Sphere: return 4.0 * pi;
    }
    return 0.0;
}

std::string Domain::token() const {
    switch (kind_) {
    case DomainKind::Interval: return "interval";
    case DomainKind::Square: return "square";
    case DomainKind::Cube: return "cube";
    case DomainKind::Disk: return "disk";
    case DomainKind::Simplex: return "simplex";
    case DomainKind::Sphere: return "sphere";
    }
    return {};
}

std::string Domain::measure_token() const {
    return measure_ == Measure::ProductChebyshev ? "cheb" : "lebesgue";
}

bool Domain::contains(std::span<const double> x, double tol) const {
    if (x.size() != dim()) return false;
    for (double c : x)
        if (!std::isfinite(c)) return false;
    switch (kind_) {
    case DomainKind::Interval:
    case DomainKind::Square:
    case DomainKind::Cube:
        for (double c : x)
            if (std::abs(c) > 1.0 + tol) return false;
        return true;
    case DomainKind::Disk:
        return std::hypot(x[0], x[1]) <= 1.0 + tol;
    case DomainKind::Simplex:
        return x[0] >= -tol && x[1] >= -tol && x[0] + x[1] <= 1.0 + tol;
    case DomainKind::Sphere: {
        const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
        return std::abs(r - 1.0) <= tol;
    }
    }
    return false;
}

double mass(const Domain& domain) noexcept { return domain.mass(); }

PointSet::PointSet(std::size_t dim, std::vector<double> coords)
    : dim_(dim), coords_(std::move(coords)) {
    if (dim_ == 0 || coords_.size() % dim_ != 0)
        throw InvalidArgument("point coordinates do not match the point dimension");
}

void PointSet::push_back(std::span<const double> x) {
    if (x.size() != dim_) throw InvalidArgument("point has the wrong dimension");
    coords_.insert(coords_.end(), x.begin(), x.end());
}

} // namespace mzquad
