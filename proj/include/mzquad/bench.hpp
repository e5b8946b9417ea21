#pragma once

#include "mzquad/approx.hpp"
#include "mzquad/domain.hpp"
#include "mzquad/rules.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace mzquad {

/// Test function f1..f5 (id 1..5) in dimension 1, 2 or 3:
///   f1 = exp(-|x|^2)
///   f2 = (0.5 + x + 0.1 y + 0.4 z)^15   (only the leading terms in lower dimension)
///   f3 = sin(pi (x + y + z))
///   f4 = |x - c|^3, f5 = |x - c|^7 with c = (0.5, ..., 0.5)
Function test_function(int id, std::size_t dim);
std::string test_function_id(int id);

/// Buckets for cond2: [1,10), [10,1e2), [1e2,1e4), [1e4,1e7), [1e7,inf).
std::string cond_bucket(double cond2);

struct ScanCell {
    int m = 0;
    int n = 0;
    std::size_t M = 0;
    std::size_t d_n = 0;
    double eta = 0.0;
    double cond2 = 0.0;
    /// ok, no-mz, dataset-missing, unsupported-degree or error.
    std::string status;
    std::string message;
    bool has_values() const { return status == "ok" || status == "no-mz"; }
};

struct ScanConfig {
    RuleFamily family = RuleFamily::GaussLegendre;
    Domain domain{DomainKind::Interval};
    int m_first = 1;
    int m_last = 20;
    int n_first = 0;
    int n_last = 30;
    std::filesystem::path data_dir = default_data_dir();
    /// Worker threads; 0 means the number of logical processors.
    unsigned jobs = 0;
};

/// One cell per (m, n), ordered by m then n.
struct ScanGrid {
    ScanConfig config;
    std::vector<ScanCell> cells;
};

/// Builds the rule of every column m once, assembles its Gramian at the
/// largest n and reads the smaller degrees off leading blocks, so eta is
/// nondecreasing down each column. Columns run on a worker pool; the result
/// does not depend on the number of jobs. Cell failures are recorded, never
/// thrown.
ScanGrid scan(const ScanConfig& config);

/// The grid as CSV: header family,domain,m,n,M,d_n,eta,cond2,bucket,status.
/// Skipped cells keep their status and leave the numeric fields empty.
void write_scan_csv(std::ostream& out, const ScanGrid& grid);
void write_scan_json(std::ostream& out, const ScanGrid& grid);

struct ApproxBench {
    std::string domain;
    /// Exactness-relaxed rule (cc, padua or qmc) and the classical tensor GL rule.
    std::string relaxed_family;
    std::size_t relaxed_M = 0;
    std::size_t classical_M = 0;
    std::size_t reference_M = 0;
    std::vector<ErrorRecord> records;
};

/// Relative L2 errors of unfettered hyperinterpolation and least squares on
/// the relaxed rule of degree build_ade (Clenshaw-Curtis on the interval,
/// Padua on the square, 2^build_ade Halton points on the cube) and of
/// classical hyperinterpolation on tensor Gauss-Legendre of degree
/// 2 build_ade, for f1..f5 and n = 1..n_max. Rows are ordered by n, function,
/// then method (unfettered, classical, ls).
ApproxBench approx_bench(const Domain& domain, int build_ade = 15, int n_max = 15);

} // namespace mzquad
