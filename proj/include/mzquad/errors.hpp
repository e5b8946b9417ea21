#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mzquad {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A point lies outside the closed domain it was evaluated on.
class DomainViolation : public Error {
public:
    DomainViolation(std::size_t index, const std::string& what)
        : Error(what), index_(index) {}
    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

/// A sphere point whose Euclidean norm is not 1.
class NormalizationError : public DomainViolation {
public:
    using DomainViolation::DomainViolation;
};

/// Rule, basis or reference defined on different domains or measures.
class DomainMismatch : public Error {
public:
    using Error::Error;
};

class ConvergenceError : public Error {
public:
    ConvergenceError(double off_mass, const std::string& what)
        : Error(what), off_mass_(off_mass) {}
    double off_diagonal_mass() const noexcept { return off_mass_; }

private:
    double off_mass_;
};

/// Cholesky met a nonpositive pivot.
class NotSpdError : public Error {
public:
    NotSpdError(std::size_t pivot, const std::string& what)
        : Error(what), pivot_(pivot) {}
    std::size_t pivot() const noexcept { return pivot_; }

private:
    std::size_t pivot_;
};

class SingularSystemError : public Error {
public:
    using Error::Error;
};

/// The Gramian is not positive definite at the requested degree.
class NoMzProperty : public Error {
public:
    using Error::Error;
};

class DegenerateFunction : public Error {
public:
    using Error::Error;
};

/// A user function threw or returned a non-finite value at a node.
class EvaluationError : public Error {
public:
    EvaluationError(std::size_t node, const std::string& what)
        : Error(what), node_(node) {}
    std::size_t node() const noexcept { return node_; }

private:
    std::size_t node_;
};

/// An external rule file is not available for the requested degree.
class DatasetMissing : public Error {
public:
    using Error::Error;
};

/// The rule family has no construction for the requested degree.
class UnsupportedDegree : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    enum class Kind { Io, Header, Malformed, NonpositiveWeight, OutsideDomain, CountMismatch };

    ParseError(Kind kind, std::size_t line, const std::string& what)
        : Error(what), kind_(kind), line_(line) {}
    Kind kind() const noexcept { return kind_; }
    /// 1-based line number; 0 when the error is not tied to a line.
    std::size_t line() const noexcept { return line_; }

private:
    Kind kind_;
    std::size_t line_;
};

} // namespace mzquad
