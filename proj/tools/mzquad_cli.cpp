// mzquad: MZ constants of cubature rules, eta/cond scans and approximation benches.
//
// Exit codes: 0 ok, 2 no MZ property (report), 64 usage, 66 missing input,
// 73 cannot write output.

#include "mzquad/approx.hpp"
#include "mzquad/bench.hpp"
#include "mzquad/errors.hpp"
#include "mzquad/mz.hpp"
#include "mzquad/rules.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

namespace {

using namespace mzquad;

constexpr int kOk = 0;
constexpr int kNoMz = 2;
constexpr int kUsage = 64;
constexpr int kNoInput = 66;
constexpr int kCantCreate = 73;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NoInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct CantCreate : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Range {
    int first = 0;
    int last = 0;
};

int parse_int(std::string_view s) {
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) throw UsageError("not an integer: '" + std::string(s) + "'");
    return v;
}

Range parse_range(const std::string& s) {
    const auto colon = s.find(':');
    if (colon == std::string::npos) {
        const int v = parse_int(s);
        return {v, v};
    }
    Range r{parse_int(std::string_view(s).substr(0, colon)), parse_int(std::string_view(s).substr(colon + 1))};
    if (r.first > r.last) throw UsageError("empty range '" + s + "'");
    return r;
}

std::string range_str(Range r) {
    return r.first == r.last ? std::to_string(r.first) : std::to_string(r.first) + ":" + std::to_string(r.last);
}

// Output sink: a file when --out is given, stdout otherwise.
class Output {
public:
    explicit Output(const std::string& path) : path_(path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw CantCreate("cannot write " + path);
        }
    }
    std::ostream& stream() { return path_.empty() ? std::cout : file_; }
    bool to_file() const { return !path_.empty(); }
    void finish() {
        stream().flush();
        if (!stream()) throw CantCreate("write failed for " + (path_.empty() ? std::string("stdout") : path_));
    }

private:
    std::string path_;
    std::ofstream file_;
};

struct Options {
    std::string family;
    std::string domain;
    std::string measure;
    std::string m;
    std::string n;
    std::string data_dir;
    std::string out;
    std::string rule_file;
    std::string format = "csv";
    unsigned jobs = 0;
    int n_max = 15;
};

Domain get_domain(const Options& o) {
    if (o.domain.empty()) throw UsageError("--domain is required");
    try {
        return Domain::parse(o.domain, o.measure);
    } catch (const InvalidArgument& e) {
        throw UsageError(e.what());
    }
}

RuleFamily get_family(const Options& o) {
    if (o.family.empty()) throw UsageError("--family is required");
    try {
        return parse_family(o.family);
    } catch (const InvalidArgument& e) {
        throw UsageError(e.what());
    }
}

std::filesystem::path get_data_dir(const Options& o) {
    return o.data_dir.empty() ? default_data_dir() : std::filesystem::path(o.data_dir);
}

CubatureRule get_rule(const Options& o, const Domain& domain, std::optional<int> m) {
    if (!o.rule_file.empty()) {
        if (!std::filesystem::exists(o.rule_file)) throw NoInput("no such rule file: " + o.rule_file);
        return load_rule(o.rule_file, domain, m);
    }
    const RuleFamily family = get_family(o);
    if (!m) throw UsageError("--m is required");
    try {
        return make_rule(family, domain, *m, get_data_dir(o));
    } catch (const DatasetMissing& e) {
        throw NoInput(e.what());
    } catch (const UnsupportedDegree& e) {
        throw UsageError(e.what());
    } catch (const InvalidArgument& e) {
        throw UsageError(e.what());
    }
}

std::string config_line(const std::string& cmd, const std::vector<std::pair<std::string, std::string>>& kv) {
    std::string s = "# mzquad " + cmd;
    for (const auto& [k, v] : kv) s += " " + k + "=" + v;
    return s;
}

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

int cmd_report(const Options& o) {
    const Domain domain = get_domain(o);
    if (o.n.empty()) throw UsageError("--n is required");
    const int n = parse_int(o.n);
    if (n < 0) throw UsageError("--n must be nonnegative");
    std::optional<int> m;
    if (!o.m.empty()) m = parse_int(o.m);
    const CubatureRule rule = get_rule(o, domain, m);
    const MzReport r = analyze(rule, n);

    std::vector<std::pair<std::string, std::string>> cfg = {
        {"family", o.family},
        {"domain", domain.token()},
        {"measure", domain.measure_token()},
        {"m", m ? std::to_string(*m) : "none"},
        {"n", std::to_string(n)},
    };
    if (!o.rule_file.empty()) cfg[0] = {"rule_file", o.rule_file};
    else if (is_dataset_family(get_family(o))) cfg.push_back({"data_dir", get_data_dir(o).string()});

    std::string json = to_json(r);
    json.pop_back();
    json += ", \"config\": {";
    for (std::size_t i = 0; i < cfg.size(); ++i)
        json += (i ? ", \"" : "\"") + cfg[i].first + "\": \"" + json_escape(cfg[i].second) + "\"";
    json += "}}";

    Output out(o.out);
    out.stream() << json << '\n';
    out.finish();
    return r.mz_property ? kOk : kNoMz;
}

int cmd_scan(const Options& o, bool cond) {
    ScanConfig cfg;
    cfg.family = get_family(o);
    cfg.domain = get_domain(o);
    const bool qmc = cfg.family == RuleFamily::HaltonQMC;
    const Range m = o.m.empty() ? Range{1, 20} : parse_range(o.m);
    const Range n = o.n.empty() ? Range{0, qmc ? 20 : 30} : parse_range(o.n);
    if (n.first < 0 || m.first < 0) throw UsageError("degrees must be nonnegative");
    cfg.m_first = m.first;
    cfg.m_last = m.last;
    cfg.n_first = n.first;
    cfg.n_last = n.last;
    cfg.data_dir = get_data_dir(o);
    cfg.jobs = o.jobs;
    if (o.format != "csv" && o.format != "json") throw UsageError("--format must be csv or json");

    // Reject family/domain combinations before spending time on the grid.
    // Missing data files and unsupported degrees are per-cell statuses.
    try {
        make_rule(cfg.family, cfg.domain, qmc ? 1 : std::max(m.first, 1), cfg.data_dir);
    } catch (const InvalidArgument& e) {
        throw UsageError(e.what());
    } catch (const Error&) {
    }

    Output out(o.out);
    const ScanGrid grid = scan(cfg);
    std::vector<std::pair<std::string, std::string>> kv = {
        {"family", family_token(cfg.family)}, {"domain", cfg.domain.token()},
        {"measure", cfg.domain.measure_token()}, {"m", range_str(m)},
        {"n", range_str(n)},
    };
    if (is_dataset_family(cfg.family)) kv.push_back({"data_dir", cfg.data_dir.string()});
    if (o.format == "csv") {
        out.stream() << config_line(cond ? "scan-cond" : "scan-eta", kv) << '\n';
        write_scan_csv(out.stream(), grid);
    } else {
        write_scan_json(out.stream(), grid);
    }
    out.finish();

    std::size_t below = 0, valued = 0;
    std::map<std::string, std::size_t> status_count;
    std::map<std::string, std::size_t> buckets;
    for (const auto& c : grid.cells) {
        ++status_count[c.status];
        if (!c.has_values()) continue;
        ++valued;
        if (c.eta < 1.0) ++below;
        ++buckets[cond_bucket(c.cond2)];
    }
    std::ostream& summary = out.to_file() ? std::cout : std::cerr;
    summary << "cells: " << grid.cells.size();
    for (const auto& [s, k] : status_count) summary << ", " << s << ": " << k;
    summary << "\n";
    if (cond) {
        summary << "cond2 buckets:";
        for (const char* b : {"[1,10)", "[10,1e2)", "[1e2,1e4)", "[1e4,1e7)", "[1e7,inf)"})
            summary << ' ' << b << '=' << buckets[b];
        summary << "\n";
    } else {
        summary << "eta < 1: " << below << " of " << valued << "\n";
    }
    return kOk;
}

int cmd_bench(const Options& o) {
    const Domain domain = get_domain(o);
    const int build_ade = o.m.empty() ? 15 : parse_int(o.m);
    if (o.format != "csv" && o.format != "json") throw UsageError("--format must be csv or json");
    ApproxBench b;
    try {
        b = approx_bench(domain, build_ade, o.n_max);
    } catch (const InvalidArgument& e) {
        throw UsageError(e.what());
    }
    Output out(o.out);
    auto& s = out.stream();
    if (o.format == "csv") {
        s << config_line("bench", {{"domain", b.domain},
                                   {"build_ade", std::to_string(build_ade)},
                                   {"n_max", std::to_string(o.n_max)},
                                   {"relaxed", b.relaxed_family},
                                   {"M", std::to_string(b.relaxed_M)},
                                   {"classical", "gl"},
                                   {"classical_M", std::to_string(b.classical_M)},
                                   {"reference_M", std::to_string(b.reference_M)}})
          << '\n';
        write_error_csv(s, b.records);
    } else {
        s << "{\"domain\": \"" << b.domain << "\", \"build_ade\": " << build_ade << ", \"n_max\": " << o.n_max
          << ", \"relaxed\": \"" << b.relaxed_family << "\", \"M\": " << b.relaxed_M
          << ", \"classical_M\": " << b.classical_M << ", \"reference_M\": " << b.reference_M << ", \"records\": [";
        char buf[40];
        for (std::size_t i = 0; i < b.records.size(); ++i) {
            const auto& r = b.records[i];
            s << (i ? ",\n  " : "\n  ") << "{\"family\": \"" << r.family << "\", \"ade\": "
              << (r.ade ? std::to_string(*r.ade) : std::string("\"unknown\"")) << ", \"n\": " << r.n
              << ", \"method\": \"" << r.method << "\", \"fid\": \"" << r.fid << "\", \"relerr\": ";
            if (std::isfinite(r.relerr)) {
                std::snprintf(buf, sizeof buf, "%.17g", r.relerr);
                s << buf;
            } else {
                s << "null";
            }
            s << "}";
        }
        s << "\n]}\n";
    }
    out.finish();
    return kOk;
}

int cmd_rule_dump(const Options& o) {
    const Domain domain = get_domain(o);
    std::optional<int> m;
    if (!o.m.empty()) m = parse_int(o.m);
    const CubatureRule rule = get_rule(o, domain, m);
    Output out(o.out);
    write_rule(out.stream(), rule);
    out.finish();
    return kOk;
}

int cmd_rule_check(const Options& o) {
    const Domain domain = get_domain(o);
    std::optional<int> m;
    if (!o.m.empty()) m = parse_int(o.m);
    const CubatureRule rule = get_rule(o, domain, m);
    Output out(o.out);
    auto& s = out.stream();
    char buf[200];
    s << "domain=" << domain.token() << " measure=" << domain.measure_token() << " provenance="
      << to_string(rule.provenance) << " count=" << rule.size()
      << " ade=" << (rule.ade ? std::to_string(*rule.ade) : std::string("unknown")) << '\n';
    std::snprintf(buf, sizeof buf, "weight_sum=%.17g mass=%.17g min_weight=%.17g max_weight=%.17g\n",
                  rule.weight_sum(), domain.mass(), rule.min_weight(), rule.max_weight());
    s << buf;
    if (rule.ade) {
        std::snprintf(buf, sizeof buf, "ade_defect=%.17g\n", verify_ade(rule, *rule.ade));
        s << buf;
    }
    out.finish();
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Marcinkiewicz-Zygmund constants of cubature rules"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--domain", o.domain, "interval, square, cube, disk, simplex or sphere");
        sub->add_option("--measure", o.measure, "lebesgue (default) or cheb");
        sub->add_option("--data-dir", o.data_dir, "rule dataset directory")->envname("MZQUAD_DATA_DIR");
        sub->add_option("--out", o.out, "output file (default stdout)");
    };
    auto* report = app.add_subcommand("report", "MZ constants of one rule at one degree (JSON)");
    auto* scan_eta = app.add_subcommand("scan-eta", "eta over an (m, n) grid (CSV)");
    auto* scan_cond = app.add_subcommand("scan-cond", "cond2(G) over an (m, n) grid (CSV)");
    auto* bench = app.add_subcommand("bench", "hyperinterpolation / least-squares error comparison");
    auto* dump = app.add_subcommand("rule-dump", "write a rule in the text format");
    auto* check = app.add_subcommand("rule-check", "weights and exactness defect of a rule");

    for (auto* sub : {report, scan_eta, scan_cond, bench, dump, check}) common(sub);
    for (auto* sub : {report, scan_eta, scan_cond, dump, check}) sub->add_option("--family", o.family, "rule family");
    for (auto* sub : {report, dump, check}) sub->add_option("--rule-file", o.rule_file, "read the rule from a file");
    report->add_option("--m", o.m, "rule degree");
    report->add_option("--n", o.n, "polynomial degree");
    dump->add_option("--m", o.m, "rule degree");
    check->add_option("--m", o.m, "rule degree (claimed ADE for --rule-file)");
    for (auto* sub : {scan_eta, scan_cond}) {
        sub->add_option("--m", o.m, "rule degrees a:b (default 1:20)");
        sub->add_option("--n", o.n, "polynomial degrees a:b (default 0:30, 0:20 for qmc)");
        sub->add_option("--jobs", o.jobs, "worker threads (default: logical processors)");
        sub->add_option("--format", o.format, "csv or json");
    }
    bench->add_option("--m", o.m, "ADE of the relaxed rule (default 15)");
    bench->add_option("--n-max", o.n_max, "largest degree (default 15)");
    bench->add_option("--format", o.format, "csv or json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*report) return cmd_report(o);
        if (*scan_eta) return cmd_scan(o, false);
        if (*scan_cond) return cmd_scan(o, true);
        if (*bench) return cmd_bench(o);
        if (*dump) return cmd_rule_dump(o);
        if (*check) return cmd_rule_check(o);
    } catch (const UsageError& e) {
        std::cerr << "mzquad: " << e.what() << '\n';
        return kUsage;
    } catch (const NoInput& e) {
        std::cerr << "mzquad: " << e.what() << '\n';
        return kNoInput;
    } catch (const CantCreate& e) {
        std::cerr << "mzquad: " << e.what() << '\n';
        return kCantCreate;
    } catch (const ParseError& e) {
        std::cerr << "mzquad: " << e.what() << '\n';
        return e.kind() == ParseError::Kind::Io ? kNoInput : kUsage;
    } catch (const DatasetMissing& e) {
        std::cerr << "mzquad: " << e.what() << '\n';
        return kNoInput;
    } catch (const InvalidArgument& e) {
        std::cerr << "mzquad: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "mzquad: " << e.what() << '\n';
        return 1;
    }
    return kUsage;
}
