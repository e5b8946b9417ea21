#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace mzquad {

/// Dense real symmetric matrix, full row-major storage.
class SymMatrix {
public:
    SymMatrix() = default;
    /// Zero matrix of order d.
    explicit SymMatrix(std::size_t d) : order_(d), data_(d * d, 0.0) {}

    /// Builds from a dense row-major d x d array, replacing it by (A + A^T)/2.
    static SymMatrix from_dense(std::size_t d, std::vector<double> entries);
    static SymMatrix identity(std::size_t d);
    static SymMatrix diagonal(std::span<const double> diag);

    std::size_t order() const noexcept { return order_; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * order_ + j]; }

    /// Sets (i,j) and (j,i).
    void set(std::size_t i, std::size_t j, double v) {
        data_[i * order_ + j] = v;
        data_[j * order_ + i] = v;
    }

    std::span<const double> row(std::size_t i) const { return {data_.data() + i * order_, order_}; }
    const std::vector<double>& data() const noexcept { return data_; }

    /// Upper-left k x k block.
    SymMatrix leading_block(std::size_t k) const;

    double frobenius_norm() const;
    double trace() const;

    std::vector<double> multiply(std::span<const double> x) const;
    double quadratic_form(std::span<const double> x) const;

private:
    std::size_t order_ = 0;
    std::vector<double> data_;
};

/// Accumulates B^T diag(w) B over blocks of rows of B.
class CrossProductAccumulator {
public:
    explicit CrossProductAccumulator(std::size_t cols) : cols_(cols), upper_(cols * cols, 0.0) {}

    /// rows: r x cols row-major block of B; weights: the r matching weights.
    void add_rows(std::span<const double> rows, std::span<const double> weights);
    SymMatrix result() const;

private:
    std::size_t cols_;
    std::vector<double> upper_;
    std::vector<double> scratch_;
    std::vector<double> weighted_;
};

struct EigDecomposition {
    /// Ascending; values within 1e-14 ||G||_F below zero are clamped to 0.
    std::vector<double> eigenvalues;
    /// Unclamped eigenvalues in the same order.
    std::vector<double> raw_eigenvalues;
    /// Row j holds the unit eigenvector of eigenvalues[j].
    std::vector<double> eigenvectors;
    std::size_t order = 0;
    int sweeps = 0;
    double off_diagonal_mass = 0.0;

    std::span<const double> eigenvector(std::size_t j) const {
        return {eigenvectors.data() + j * order, order};
    }
};

/// Full symmetric eigendecomposition by cyclic Jacobi rotations.
///
/// Sweeps until the off-diagonal Frobenius mass is at most 1e-14 ||G||_F;
/// throws ConvergenceError after 50 sweeps.
EigDecomposition sym_eig(const SymMatrix& g);

/// Solves G x = b by Cholesky. Throws NotSpdError naming the first pivot
/// that is not positive (relative to 1e-14 max_i G_ii).
std::vector<double> spd_solve(const SymMatrix& g, std::span<const double> b);

/// Solves a general square system (row-major n x n) by LU with partial
/// pivoting. Throws SingularSystemError for a numerically zero pivot.
std::vector<double> lu_solve(std::size_t n, std::vector<double> a, std::span<const double> b);

/// ||Id - G||_2 = max(|1 - lambda_min|, |1 - lambda_max|).
double spectral_dist_from_identity(const SymMatrix& g);

} // namespace mzquad
