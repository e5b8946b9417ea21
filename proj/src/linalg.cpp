#include "mzquad/linalg.hpp"

#include "mzquad/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace mzquad {

SymMatrix SymMatrix::from_dense(std::size_t d, std::vector<double> entries) {
    if (entries.size() != d * d) throw InvalidArgument("dense matrix has the wrong number of entries");
    SymMatrix g(d);
    for (std::size_t i = 0; i < d; ++i) {
        g.data_[i * d + i] = entries[i * d + i];
        for (std::size_t j = i + 1; j < d; ++j)
            g.set(i, j, 0.5 * (entries[i * d + j] + entries[j * d + i]));
    }
    return g;
}

SymMatrix SymMatrix::identity(std::size_t d) {
    SymMatrix g(d);
    for (std::size_t i = 0; i < d; ++i) g.data_[i * d + i] = 1.0;
    return g;
}

SymMatrix SymMatrix::diagonal(std::span<const double> diag) {
    SymMatrix g(diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) g.data_[i * diag.size() + i] = diag[i];
    return g;
}

SymMatrix SymMatrix::leading_block(std::size_t k) const {
    if (k > order_) throw InvalidArgument("leading block larger than the matrix");
    SymMatrix b(k);
    for (std::size_t i = 0; i < k; ++i)
        std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(i * order_), k,
                    b.data_.begin() + static_cast<std::ptrdiff_t>(i * k));
    return b;
}

double SymMatrix::frobenius_norm() const {
    double s = 0.0;
    for (double v : data_) s += v * v;
    return std::sqrt(s);
}

double SymMatrix::trace() const {
    double s = 0.0;
    for (std::size_t i = 0; i < order_; ++i) s += data_[i * order_ + i];
    return s;
}

std::vector<double> SymMatrix::multiply(std::span<const double> x) const {
    if (x.size() != order_) throw InvalidArgument("vector length does not match the matrix order");
    std::vector<double> y(order_, 0.0);
    for (std::size_t i = 0; i < order_; ++i) {
        const auto r = row(i);
        y[i] = std::inner_product(r.begin(), r.end(), x.begin(), 0.0);
    }
    return y;
}

double SymMatrix::quadratic_form(std::span<const double> x) const {
    const auto y = multiply(x);
    return std::inner_product(y.begin(), y.end(), x.begin(), 0.0);
}

namespace {

constexpr int kMaxSweeps = 50;
constexpr double kOffTolerance = 1e-14;
constexpr double kClampTolerance = 1e-14;

double off_diagonal(const std::vector<double>& a, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) s += a[i * n + j] * a[i * n + j];
    return std::sqrt(2.0 * s);
}

} // namespace

EigDecomposition sym_eig(const SymMatrix& g) {
    const std::size_t n = g.order();
    for (double v : g.data())
        if (!std::isfinite(v)) throw InvalidArgument("sym_eig: matrix has non-finite entries");

    std::vector<double> a = g.data();
    std::vector<double> vt(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) vt[i * n + i] = 1.0;

    const double norm = g.frobenius_norm();
    EigDecomposition out;
    out.order = n;

    int sweep = 0;
    double off = off_diagonal(a, n);
    while (norm > 0.0 && off > kOffTolerance * norm) {
        if (sweep == kMaxSweeps)
            throw ConvergenceError(off, "sym_eig: no convergence after " + std::to_string(kMaxSweeps) +
                                            " sweeps (off-diagonal mass " + std::to_string(off) + ")");
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a[p * n + q];
                if (apq == 0.0) continue;
                const double app = a[p * n + p];
                const double aqq = a[q * n + q];
                // Entries negligible against both diagonal entries are dropped
                // once the first sweeps have done the bulk of the work.
                const double g100 = 100.0 * std::abs(apq);
                if (sweep > 3 && std::abs(app) + g100 == std::abs(app) &&
                    std::abs(aqq) + g100 == std::abs(aqq)) {
                    a[p * n + q] = a[q * n + p] = 0.0;
                    continue;
                }
                const double theta = (aqq - app) / (2.0 * apq);
                double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                if (theta < 0.0) t = -t;
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                double* rp = a.data() + p * n;
                double* rq = a.data() + q * n;
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const double apk = rp[k];
                    const double aqk = rq[k];
                    rp[k] = c * apk - s * aqk;
                    rq[k] = s * apk + c * aqk;
                    a[k * n + p] = rp[k];
                    a[k * n + q] = rq[k];
                }
                rp[p] = app - t * apq;
                rq[q] = aqq + t * apq;
                rp[q] = rq[p] = 0.0;

                double* vp = vt.data() + p * n;
                double* vq = vt.data() + q * n;
                for (std::size_t k = 0; k < n; ++k) {
                    const double x = vp[k];
                    const double y = vq[k];
                    vp[k] = c * x - s * y;
                    vq[k] = s * x + c * y;
                }
            }
        }
        ++sweep;
        off = off_diagonal(a, n);
    }
    out.sweeps = sweep;
    out.off_diagonal_mass = off;

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a[i * n + i] < a[j * n + j]; });

    out.eigenvalues.resize(n);
    out.raw_eigenvalues.resize(n);
    out.eigenvectors.resize(n * n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t src = order[j];
        const double lambda = a[src * n + src];
        out.raw_eigenvalues[j] = lambda;
        out.eigenvalues[j] = (lambda < 0.0 && lambda >= -kClampTolerance * norm) ? 0.0 : lambda;
        std::copy_n(vt.begin() + static_cast<std::ptrdiff_t>(src * n), n,
                    out.eigenvectors.begin() + static_cast<std::ptrdiff_t>(j * n));
    }
    return out;
}

std::vector<double> spd_solve(const SymMatrix& g, std::span<const double> b) {
    const std::size_t n = g.order();
    if (b.size() != n) throw InvalidArgument("spd_solve: right-hand side has the wrong length");

    double max_diag = 0.0;
    for (std::size_t i = 0; i < n; ++i) max_diag = std::max(max_diag, std::abs(g(i, i)));
    const double pivot_floor = 1e-14 * max_diag;

    // Lower Cholesky factor, row-major.
    std::vector<double> l(n * n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        double d = g(j, j);
        for (std::size_t k = 0; k < j; ++k) d -= l[j * n + k] * l[j * n + k];
        if (!(d > pivot_floor))
            throw NotSpdError(j, "spd_solve: matrix is not positive definite (pivot " + std::to_string(j) +
                                     " = " + std::to_string(d) + ")");
        const double ljj = std::sqrt(d);
        l[j * n + j] = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = g(i, j);
            const double* li = l.data() + i * n;
            const double* lj = l.data() + j * n;
            for (std::size_t k = 0; k < j; ++k) s -= li[k] * lj[k];
            l[i * n + j] = s / ljj;
        }
    }

    std::vector<double> x(b.begin(), b.end());
    for (std::size_t i = 0; i < n; ++i) {
        double s = x[i];
        for (std::size_t k = 0; k < i; ++k) s -= l[i * n + k] * x[k];
        x[i] = s / l[i * n + i];
    }
    for (std::size_t i = n; i-- > 0;) {
        double s = x[i];
        for (std::size_t k = i + 1; k < n; ++k) s -= l[k * n + i] * x[k];
        x[i] = s / l[i * n + i];
    }
    return x;
}

std::vector<double> lu_solve(std::size_t n, std::vector<double> a, std::span<const double> b) {
    if (a.size() != n * n || b.size() != n) throw InvalidArgument("lu_solve: dimension mismatch");
    double max_abs = 0.0;
    for (double v : a) max_abs = std::max(max_abs, std::abs(v));
    const double floor = 1e-14 * max_abs;

    std::vector<double> x(b.begin(), b.end());
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(a[i * n + k]) > std::abs(a[piv * n + k])) piv = i;
        if (!(std::abs(a[piv * n + k]) > floor))
            throw SingularSystemError("lu_solve: matrix is numerically singular at column " + std::to_string(k));
        if (piv != k) {
            std::swap_ranges(a.begin() + static_cast<std::ptrdiff_t>(k * n),
                             a.begin() + static_cast<std::ptrdiff_t>((k + 1) * n),
                             a.begin() + static_cast<std::ptrdiff_t>(piv * n));
            std::swap(x[k], x[piv]);
        }
        const double akk = a[k * n + k];
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = a[i * n + k] / akk;
            if (f == 0.0) continue;
            a[i * n + k] = f;
            for (std::size_t j = k + 1; j < n; ++j) a[i * n + j] -= f * a[k * n + j];
            x[i] -= f * x[k];
        }
    }
    for (std::size_t i = n; i-- > 0;) {
        double s = x[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= a[i * n + j] * x[j];
        x[i] = s / a[i * n + i];
    }
    return x;
}

double spectral_dist_from_identity(const SymMatrix& g) {
    if (g.order() == 0) return 0.0;
    const auto eig = sym_eig(g);
    return std::max(std::abs(1.0 - eig.eigenvalues.front()), std::abs(1.0 - eig.eigenvalues.back()));
}

} // namespace mzquad

namespace mzquad {

void CrossProductAccumulator::add_rows(std::span<const double> rows, std::span<const double> weights) {
    const std::size_t d = cols_;
    const std::size_t r = weights.size();
    if (rows.size() != r * d) throw InvalidArgument("cross product block has the wrong shape");
    // Transposed copies so the inner loop runs over contiguous rows.
    scratch_.resize(d * r);
    weighted_.resize(d * r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            scratch_[j * r + i] = rows[i * d + j];
            weighted_[j * r + i] = weights[i] * rows[i * d + j];
        }
    for (std::size_t j = 0; j < d; ++j) {
        const double* wj = weighted_.data() + j * r;
        double* gj = upper_.data() + j * d;
        for (std::size_t k = j; k < d; ++k) {
            const double* bk = scratch_.data() + k * r;
            double s = 0.0;
            for (std::size_t i = 0; i < r; ++i) s += wj[i] * bk[i];
            gj[k] += s;
        }
    }
}

SymMatrix CrossProductAccumulator::result() const {
    std::vector<double> full(cols_ * cols_);
    for (std::size_t j = 0; j < cols_; ++j)
        for (std::size_t k = j; k < cols_; ++k) full[j * cols_ + k] = full[k * cols_ + j] = upper_[j * cols_ + k];
    return SymMatrix::from_dense(cols_, std::move(full));
}

} // namespace mzquad
