#include "mzquad/bench.hpp"

#include "mzquad/errors.hpp"
#include "mzquad/mz.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <numeric>
#include <ostream>
#include <thread>

namespace mzquad {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string json_num(double v) {
    if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
    if (std::isnan(v)) return "null";
    return fmt17(v);
}

std::string json_str(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

template <class Task>
void run_pool(std::size_t tasks, unsigned jobs, Task task) {
    if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
    jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, tasks));
    if (jobs <= 1) {
        for (std::size_t t = 0; t < tasks; ++t) task(t);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    for (unsigned j = 0; j < jobs; ++j)
        workers.emplace_back([&] {
            for (std::size_t t = next++; t < tasks; t = next++) task(t);
        });
    for (auto& w : workers) w.join();
}

void scan_column(const ScanConfig& cfg, int m, std::span<ScanCell> cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        cells[i].m = m;
        cells[i].n = cfg.n_first + static_cast<int>(i);
    }
    auto skip_all = [&](const std::string& status, const std::string& msg) {
        for (auto& c : cells) {
            c.status = status;
            c.message = msg;
        }
    };

    CubatureRule rule;
    SymMatrix g;
    try {
        rule = make_rule(cfg.family, cfg.domain, m, cfg.data_dir);
        g = gramian(rule, OrthonormalBasis(cfg.domain, cfg.n_last));
    } catch (const DatasetMissing& e) {
        return skip_all("dataset-missing", e.what());
    } catch (const UnsupportedDegree& e) {
        return skip_all("unsupported-degree", e.what());
    } catch (const std::exception& e) {
        return skip_all("error", e.what());
    }

    for (auto& c : cells) {
        try {
            const OrthonormalBasis basis(cfg.domain, c.n);
            const MzReport r = mz_report(g.leading_block(basis.size()), basis);
            c.M = rule.size();
            c.d_n = r.d_n;
            c.eta = r.eta;
            c.cond2 = r.cond2;
            c.status = r.mz_property ? "ok" : "no-mz";
        } catch (const std::exception& e) {
            c.status = "error";
            c.message = e.what();
        }
    }
}

double ipow(double x, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= x;
    return r;
}

} // namespace

Function test_function(int id, std::size_t dim) {
    if (dim < 1 || dim > 3) throw InvalidArgument("test_function: dimension must be 1, 2 or 3");
    static constexpr double lin[3] = {1.0, 0.1, 0.4};
    switch (id) {
    case 1:
        return [dim](std::span<const double> x) {
            double r2 = 0.0;
            for (std::size_t a = 0; a < dim; ++a) r2 += x[a] * x[a];
            return std::exp(-r2);
        };
    case 2:
        return [dim](std::span<const double> x) {
            double s = 0.5;
            for (std::size_t a = 0; a < dim; ++a) s += lin[a] * x[a];
            return ipow(s, 15);
        };
    case 3:
        return [dim](std::span<const double> x) {
            double s = 0.0;
            for (std::size_t a = 0; a < dim; ++a) s += x[a];
            return std::sin(std::numbers::pi * s);
        };
    case 4:
    case 5: {
        const double p = id == 4 ? 3.0 : 7.0;
        return [dim, p](std::span<const double> x) {
            double r2 = 0.0;
            for (std::size_t a = 0; a < dim; ++a) r2 += (x[a] - 0.5) * (x[a] - 0.5);
            return std::pow(r2, p / 2.0);
        };
    }
    default:
        throw InvalidArgument("test_function: id must be 1..5");
    }
}

std::string test_function_id(int id) { return "f" + std::to_string(id); }

std::string cond_bucket(double cond2) {
    if (std::isnan(cond2)) return "";
    if (cond2 < 10.0) return "[1,10)";
    if (cond2 < 1e2) return "[10,1e2)";
    if (cond2 < 1e4) return "[1e2,1e4)";
    if (cond2 < 1e7) return "[1e4,1e7)";
    return "[1e7,inf)";
}

ScanGrid scan(const ScanConfig& config) {
    if (config.m_first > config.m_last || config.n_first > config.n_last)
        throw InvalidArgument("scan: empty m or n range");
    if (config.n_first < 0) throw InvalidArgument("scan: negative degree");

    ScanGrid grid;
    grid.config = config;
    const std::size_t nm = static_cast<std::size_t>(config.m_last - config.m_first + 1);
    const std::size_t nn = static_cast<std::size_t>(config.n_last - config.n_first + 1);
    grid.cells.resize(nm * nn);
    run_pool(nm, config.jobs, [&](std::size_t col) {
        scan_column(config, config.m_first + static_cast<int>(col), std::span(grid.cells).subspan(col * nn, nn));
    });
    return grid;
}

void write_scan_csv(std::ostream& out, const ScanGrid& grid) {
    const std::string fam = family_token(grid.config.family);
    const std::string dom = grid.config.domain.token();
    out << "family,domain,m,n,M,d_n,eta,cond2,bucket,status\n";
    for (const auto& c : grid.cells) {
        out << fam << ',' << dom << ',' << c.m << ',' << c.n << ',';
        if (c.has_values())
            out << c.M << ',' << c.d_n << ',' << fmt17(c.eta) << ','
                << (std::isinf(c.cond2) ? std::string("inf") : fmt17(c.cond2)) << ',' << cond_bucket(c.cond2);
        else
            out << ",,,,";
        out << ',' << c.status << '\n';
    }
}

void write_scan_json(std::ostream& out, const ScanGrid& grid) {
    const auto& cfg = grid.config;
    out << "{\"family\": " << json_str(family_token(cfg.family)) << ", \"domain\": " << json_str(cfg.domain.token())
        << ", \"measure\": " << json_str(cfg.domain.measure_token()) << ", \"m\": [" << cfg.m_first << ", "
        << cfg.m_last << "], \"n\": [" << cfg.n_first << ", " << cfg.n_last << "], \"cells\": [";
    for (std::size_t i = 0; i < grid.cells.size(); ++i) {
        const auto& c = grid.cells[i];
        out << (i ? ",\n  " : "\n  ") << "{\"m\": " << c.m << ", \"n\": " << c.n;
        if (c.has_values())
            out << ", \"M\": " << c.M << ", \"d_n\": " << c.d_n << ", \"eta\": " << json_num(c.eta)
                << ", \"cond2\": " << json_num(c.cond2) << ", \"bucket\": " << json_str(cond_bucket(c.cond2));
        out << ", \"status\": " << json_str(c.status);
        if (!c.message.empty()) out << ", \"message\": " << json_str(c.message);
        out << "}";
    }
    out << "\n]}\n";
}

ApproxBench approx_bench(const Domain& domain, int build_ade, int n_max) {
    if (domain.measure() != Measure::Lebesgue ||
        (domain.kind() != DomainKind::Interval && domain.kind() != DomainKind::Square &&
         domain.kind() != DomainKind::Cube))
        throw InvalidArgument("approx_bench: domain must be interval, square or cube");
    if (build_ade < 1 || n_max < 1) throw InvalidArgument("approx_bench: build_ade and n_max must be positive");

    RuleFamily relaxed_family = domain.kind() == DomainKind::Interval ? RuleFamily::ClenshawCurtis
                                : domain.kind() == DomainKind::Square ? RuleFamily::Padua
                                                                      : RuleFamily::HaltonQMC;
    const CubatureRule relaxed = make_rule(relaxed_family, domain, build_ade);
    const CubatureRule classical = make_rule(RuleFamily::GaussLegendre, domain, 2 * build_ade);
    const CubatureRule reference = reference_rule(domain);
    const std::size_t dim = domain.dim();

    constexpr int nf = 5;
    std::vector<Function> fs;
    for (int id = 1; id <= nf; ++id) fs.push_back(test_function(id, dim));

    const OrthonormalBasis top(domain, n_max);
    const std::size_t D = top.size();

    // Moments S(f phi_j) at degree n_max for all functions, plus the Gramian
    // of the relaxed rule; lower degrees use prefixes and leading blocks.
    auto all_moments = [&](const CubatureRule& rule, CrossProductAccumulator* acc) {
        constexpr std::size_t block = 256;
        std::vector<double> mom(nf * D, 0.0);
        std::vector<double> rows(block * D);
        for (std::size_t start = 0; start < rule.size(); start += block) {
            const std::size_t count = std::min(block, rule.size() - start);
            for (std::size_t r = 0; r < count; ++r) {
                const std::size_t i = start + r;
                const std::span<double> phi(rows.data() + r * D, D);
                top.check_point(rule.nodes[i], i);
                top.eval_point(rule.nodes[i], phi);
                for (int f = 0; f < nf; ++f) {
                    const double wf = rule.weights[i] * fs[f](rule.nodes[i]);
                    for (std::size_t j = 0; j < D; ++j) mom[f * D + j] += wf * phi[j];
                }
            }
            if (acc) acc->add_rows({rows.data(), count * D}, {rule.weights.data() + start, count});
        }
        return mom;
    };
    CrossProductAccumulator acc(D);
    const auto mom_relaxed = all_moments(relaxed, &acc);
    const SymMatrix g = acc.result();
    const auto mom_classical = all_moments(classical, nullptr);
    const bool positive =
        std::all_of(relaxed.weights.begin(), relaxed.weights.end(), [](double w) { return w > 0.0; });

    // coeffs[((n-1) * nf + f) * 3 + method]; empty when the fit failed.
    const char* method_names[3] = {"unfettered", "classical", "ls"};
    std::vector<std::vector<double>> coeffs(static_cast<std::size_t>(n_max) * nf * 3);
    for (int n = 1; n <= n_max; ++n) {
        const std::size_t d = basis_dim(domain, n);
        const SymMatrix gn = g.leading_block(d);
        for (int f = 0; f < nf; ++f) {
            const std::size_t base = (static_cast<std::size_t>(n - 1) * nf + f) * 3;
            coeffs[base + 0].assign(mom_relaxed.begin() + f * D, mom_relaxed.begin() + f * D + d);
            coeffs[base + 1].assign(mom_classical.begin() + f * D, mom_classical.begin() + f * D + d);
            try {
                coeffs[base + 2] = solve_gramian(gn, coeffs[base + 0], positive);
            } catch (const Error&) {
                coeffs[base + 2].clear();
            }
        }
    }

    // Errors on the reference rule in one pass over its nodes.
    std::vector<double> num(coeffs.size(), 0.0), den(nf, 0.0), fv(nf);
    std::vector<double> phi(D);
    for (std::size_t k = 0; k < reference.size(); ++k) {
        top.eval_point(reference.nodes[k], phi);
        const double u = reference.weights[k];
        for (int f = 0; f < nf; ++f) {
            fv[f] = fs[f](reference.nodes[k]);
            den[f] += u * fv[f] * fv[f];
        }
        for (std::size_t a = 0; a < coeffs.size(); ++a) {
            const auto& c = coeffs[a];
            if (c.empty()) continue;
            const double p = std::inner_product(c.begin(), c.end(), phi.begin(), 0.0);
            const double e = p - fv[(a / 3) % nf];
            num[a] += u * e * e;
        }
    }

    ApproxBench out;
    out.domain = domain.token();
    out.relaxed_family = family_token(relaxed_family);
    out.relaxed_M = relaxed.size();
    out.classical_M = classical.size();
    out.reference_M = reference.size();
    for (std::size_t a = 0; a < coeffs.size(); ++a) {
        const int method = static_cast<int>(a % 3);
        const int f = static_cast<int>((a / 3) % nf);
        const int n = static_cast<int>(a / (3 * nf)) + 1;
        const CubatureRule& rule = method == 1 ? classical : relaxed;
        ErrorRecord r;
        r.domain = out.domain;
        r.family = method == 1 ? family_token(RuleFamily::GaussLegendre) : out.relaxed_family;
        r.ade = rule.ade;
        r.n = n;
        r.method = method_names[method];
        r.fid = test_function_id(f + 1);
        r.relerr = coeffs[a].empty() ? std::numeric_limits<double>::quiet_NaN() : std::sqrt(num[a] / den[f]);
        out.records.push_back(std::move(r));
    }
    return out;
}

} // namespace mzquad
