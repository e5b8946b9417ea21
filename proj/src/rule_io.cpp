#include "mzquad/errors.hpp"
#include "mzquad/rules.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#ifndef MZQUAD_DEFAULT_DATA_DIR
#define MZQUAD_DEFAULT_DATA_DIR "data/rules"
#endif

namespace mzquad {

namespace {

using Kind = ParseError::Kind;

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

bool parse_double(std::string_view tok, double& out) {
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    if (first != last && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && std::isfinite(out);
}

bool parse_int(std::string_view tok, long long& out) {
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    return ec == std::errc() && ptr == tok.data() + tok.size();
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

bool is_antipodal(const PointSet& nodes, double tol) {
    const std::size_t d = nodes.dim();
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        bool found = false;
        for (std::size_t j = 0; j < nodes.size() && !found; ++j) {
            double dist = 0.0;
            for (std::size_t c = 0; c < d; ++c) dist = std::max(dist, std::abs(nodes[i][c] + nodes[j][c]));
            found = dist <= tol;
        }
        if (!found) return false;
    }
    return true;
}

CubatureRule parse_rule(std::istream& in, const Domain& domain, std::optional<int> ade_claim) {
    std::string line;
    std::size_t lineno = 0;

    // Header: first non-blank line.
    std::map<std::string, std::string, std::less<>> header;
    std::size_t header_line = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto toks = split_ws(line);
        if (toks.empty()) continue;
        header_line = lineno;
        if (toks[0] != "#") throw ParseError(Kind::Header, lineno, "line " + std::to_string(lineno) + ": missing '#' header");
        for (std::size_t i = 1; i < toks.size(); ++i) {
            const auto eq = toks[i].find('=');
            if (eq == std::string_view::npos || eq == 0)
                throw ParseError(Kind::Header, lineno,
                                 "line " + std::to_string(lineno) + ": malformed header field '" + std::string(toks[i]) + "'");
            header.emplace(std::string(toks[i].substr(0, eq)), std::string(toks[i].substr(eq + 1)));
        }
        break;
    }
    if (header_line == 0) throw ParseError(Kind::Header, 0, "empty rule file");

    const auto require = [&](const char* key) -> const std::string& {
        const auto it = header.find(key);
        if (it == header.end())
            throw ParseError(Kind::Header, header_line,
                             "line " + std::to_string(header_line) + ": header lacks '" + key + "='");
        return it->second;
    };

    const std::string measure = header.count("measure") ? header.at("measure") : std::string();
    Domain file_domain = domain;
    try {
        file_domain = Domain::parse(require("domain"), measure);
    } catch (const InvalidArgument& e) {
        throw ParseError(Kind::Header, header_line, "line " + std::to_string(header_line) + ": " + e.what());
    }
    if (!(file_domain == domain))
        throw ParseError(Kind::Header, header_line,
                         "line " + std::to_string(header_line) + ": file holds a " + file_domain.token() + "/" +
                             file_domain.measure_token() + " rule, expected " + domain.token() + "/" +
                             domain.measure_token());

    std::optional<int> ade;
    if (const auto& a = require("ade"); a != "unknown") {
        long long v = 0;
        if (!parse_int(a, v) || v < 0)
            throw ParseError(Kind::Header, header_line, "line " + std::to_string(header_line) + ": bad ade '" + a + "'");
        ade = static_cast<int>(v);
    }
    long long count = 0;
    if (!parse_int(require("count"), count) || count < 1)
        throw ParseError(Kind::Header, header_line, "line " + std::to_string(header_line) + ": bad count");
    long long columns = 0;
    const auto d = static_cast<long long>(domain.dim());
    if (!parse_int(require("columns"), columns) || (columns != d && columns != d + 1))
        throw ParseError(Kind::Header, header_line,
                         "line " + std::to_string(header_line) + ": columns must be " + std::to_string(d) + " or " +
                             std::to_string(d + 1));
    const bool weighted = columns == d + 1;
    if (!weighted && domain.kind() != DomainKind::Sphere)
        throw ParseError(Kind::Header, header_line,
                         "line " + std::to_string(header_line) + ": a weight column is required off the sphere");

    CubatureRule r;
    r.domain = domain;
    r.nodes = PointSet(domain.dim());
    std::vector<double> vals(static_cast<std::size_t>(columns));
    std::size_t last_data_line = header_line;
    while (std::getline(in, line)) {
        ++lineno;
        const auto toks = split_ws(line);
        if (toks.empty() || toks[0].front() == '#') continue;
        last_data_line = lineno;
        if (static_cast<long long>(r.size()) >= count)
            throw ParseError(Kind::CountMismatch, lineno,
                             "line " + std::to_string(lineno) + ": more data lines than count=" + std::to_string(count));
        if (static_cast<long long>(toks.size()) != columns)
            throw ParseError(Kind::Malformed, lineno,
                             "line " + std::to_string(lineno) + ": expected " + std::to_string(columns) + " values, got " +
                                 std::to_string(toks.size()));
        for (std::size_t c = 0; c < toks.size(); ++c)
            if (!parse_double(toks[c], vals[c]))
                throw ParseError(Kind::Malformed, lineno,
                                 "line " + std::to_string(lineno) + ": not a number: '" + std::string(toks[c]) + "'");
        const std::span<const double> x(vals.data(), static_cast<std::size_t>(d));
        const double tol = domain.kind() == DomainKind::Sphere ? 1e-10 : 1e-12;
        if (!domain.contains(x, tol))
            throw ParseError(Kind::OutsideDomain, lineno,
                             "line " + std::to_string(lineno) + ": node lies outside the " + domain.token());
        if (weighted && !(vals.back() > 0.0))
            throw ParseError(Kind::NonpositiveWeight, lineno, "line " + std::to_string(lineno) + ": weight is not positive");
        r.nodes.push_back(x);
        r.weights.push_back(weighted ? vals.back() : 0.0);
    }
    if (static_cast<long long>(r.size()) != count)
        throw ParseError(Kind::CountMismatch, last_data_line,
                         "line " + std::to_string(last_data_line) + ": header declares count=" + std::to_string(count) +
                             " but the file has " + std::to_string(r.size()) + " nodes");
    if (!weighted) {
        const double w = 4.0 * std::numbers::pi / static_cast<double>(count);
        std::fill(r.weights.begin(), r.weights.end(), w);
    }

    r.ade = ade_claim ? ade_claim : ade;
    const std::string kind = header.count("kind") ? header.at("kind") : std::string();
    if (kind == "design")
        r.provenance = Provenance::SphericalDesign;
    else if (kind == "symmetric-design")
        r.provenance = Provenance::SymmetricSphericalDesign;
    else if (kind == "near-minimal")
        r.provenance = Provenance::NearMinimalFile;
    else if (!kind.empty())
        throw ParseError(Kind::Header, header_line, "line " + std::to_string(header_line) + ": unknown kind '" + kind + "'");
    else if (domain.kind() == DomainKind::Sphere && !weighted)
        r.provenance = is_antipodal(r.nodes, 1e-10) ? Provenance::SymmetricSphericalDesign : Provenance::SphericalDesign;
    else
        r.provenance = Provenance::NearMinimalFile;
    return r;
}

CubatureRule load_rule(const std::filesystem::path& path, const Domain& domain, std::optional<int> ade_claim) {
    std::ifstream in(path);
    if (!in) throw ParseError(Kind::Io, 0, "cannot open rule file " + path.string());
    return parse_rule(in, domain, ade_claim);
}

void write_rule(std::ostream& out, const CubatureRule& rule) {
    const bool design = rule.provenance == Provenance::SphericalDesign ||
                        rule.provenance == Provenance::SymmetricSphericalDesign;
    const std::size_t d = rule.domain.dim();
    out << "# domain=" << rule.domain.token() << " ade=" << (rule.ade ? std::to_string(*rule.ade) : "unknown")
        << " count=" << rule.size() << " columns=" << (design ? d : d + 1);
    if (rule.domain.measure() == Measure::ProductChebyshev) out << " measure=cheb";
    if (rule.provenance == Provenance::SphericalDesign) out << " kind=design";
    if (rule.provenance == Provenance::SymmetricSphericalDesign) out << " kind=symmetric-design";
    if (rule.provenance == Provenance::NearMinimalFile) out << " kind=near-minimal";
    out << '\n';
    for (std::size_t i = 0; i < rule.size(); ++i) {
        for (std::size_t c = 0; c < d; ++c) out << (c ? " " : "") << fmt17(rule.nodes[i][c]);
        if (!design) out << ' ' << fmt17(rule.weights[i]);
        out << '\n';
    }
}

// Family catalog.

RuleFamily parse_family(std::string_view token) {
    static const std::map<std::string_view, RuleFamily> table = {
        {"gl", RuleFamily::GaussLegendre},       {"cc", RuleFamily::ClenshawCurtis},
        {"gc", RuleFamily::GaussChebyshev},      {"padua", RuleFamily::Padua},
        {"mpx", RuleFamily::MorrowPattersonXu},  {"polar", RuleFamily::PolarDisk},
        {"conical", RuleFamily::StroudConical},  {"latlong", RuleFamily::LatLong},
        {"design", RuleFamily::SphericalDesign}, {"sym-design", RuleFamily::SymmetricSphericalDesign},
        {"qmc", RuleFamily::HaltonQMC},          {"nearmin", RuleFamily::NearMinimal},
    };
    const auto it = table.find(token);
    if (it == table.end()) throw InvalidArgument("unknown rule family '" + std::string(token) + "'");
    return it->second;
}

std::string family_token(RuleFamily family) {
    switch (family) {
    case RuleFamily::GaussLegendre: return "gl";
    case RuleFamily::ClenshawCurtis: return "cc";
    case RuleFamily::GaussChebyshev: return "gc";
    case RuleFamily::Padua: return "padua";
    case RuleFamily::MorrowPattersonXu: return "mpx";
    case RuleFamily::PolarDisk: return "polar";
    case RuleFamily::StroudConical: return "conical";
    case RuleFamily::LatLong: return "latlong";
    case RuleFamily::SphericalDesign: return "design";
    case RuleFamily::SymmetricSphericalDesign: return "sym-design";
    case RuleFamily::HaltonQMC: return "qmc";
    case RuleFamily::NearMinimal: return "nearmin";
    }
    return {};
}

bool is_dataset_family(RuleFamily family) {
    return family == RuleFamily::SphericalDesign || family == RuleFamily::SymmetricSphericalDesign ||
           family == RuleFamily::NearMinimal;
}

std::filesystem::path default_data_dir() {
    if (const char* env = std::getenv("MZQUAD_DATA_DIR"); env && *env) return env;
    return MZQUAD_DEFAULT_DATA_DIR;
}

std::filesystem::path dataset_path(const std::filesystem::path& data_dir, RuleFamily family, const Domain& domain,
                                   int m) {
    char name[64];
    switch (family) {
    case RuleFamily::SphericalDesign: std::snprintf(name, sizeof name, "design_t%03d.txt", m); break;
    case RuleFamily::SymmetricSphericalDesign: std::snprintf(name, sizeof name, "symdesign_t%03d.txt", m); break;
    case RuleFamily::NearMinimal: std::snprintf(name, sizeof name, "nearmin_m%03d.txt", m); break;
    default: throw InvalidArgument("family " + family_token(family) + " is not read from files");
    }
    return data_dir / domain.token() / name;
}

CubatureRule make_rule(RuleFamily family, const Domain& domain, int m, const std::filesystem::path& data_dir) {
    if (m < 0) throw InvalidArgument("rule parameter m must be nonnegative");
    const auto kind = domain.kind();
    const bool lebesgue = domain.measure() == Measure::Lebesgue;
    const bool box = kind == DomainKind::Interval || kind == DomainKind::Square || kind == DomainKind::Cube;
    const auto mismatch = [&]() {
        return InvalidArgument("family " + family_token(family) + " has no rule on " + domain.token() + "/" +
                               domain.measure_token());
    };
    const auto tensor = [&](const CubatureRule& f) {
        if (kind == DomainKind::Interval) return f;
        std::vector<CubatureRule> fs(domain.dim(), f);
        return tensor_rule(fs);
    };

    switch (family) {
    case RuleFamily::GaussLegendre:
        if (!box || !lebesgue) throw mismatch();
        return tensor(gauss_legendre(m / 2 + 1));
    case RuleFamily::ClenshawCurtis:
        if (!box || !lebesgue) throw mismatch();
        if (m < 1) throw UnsupportedDegree("clenshaw_curtis needs m >= 1");
        return tensor(clenshaw_curtis(m));
    case RuleFamily::GaussChebyshev:
        if (domain.measure() != Measure::ProductChebyshev) throw mismatch();
        return gauss_chebyshev_square(m / 2 + 1);
    case RuleFamily::Padua:
        if (kind != DomainKind::Square || !lebesgue) throw mismatch();
        if (m < 1) throw UnsupportedDegree("padua_rule needs m >= 1");
        return padua_rule(m);
    case RuleFamily::MorrowPattersonXu:
        if (domain.measure() != Measure::ProductChebyshev) throw mismatch();
        return morrow_patterson_xu(m);
    case RuleFamily::PolarDisk:
        if (kind != DomainKind::Disk) throw mismatch();
        return polar_disk_rule(m);
    case RuleFamily::StroudConical:
        if (kind != DomainKind::Simplex) throw mismatch();
        return stroud_conical(m);
    case RuleFamily::LatLong:
        if (kind != DomainKind::Sphere) throw mismatch();
        return latlong_sphere(m);
    case RuleFamily::HaltonQMC:
        if ((kind != DomainKind::Square && kind != DomainKind::Cube) || !lebesgue) throw mismatch();
        if (m > 40) throw UnsupportedDegree("qmc: 2^m points with m > 40 is not supported");
        return halton_qmc(std::size_t{1} << m, domain);
    case RuleFamily::SphericalDesign:
    case RuleFamily::SymmetricSphericalDesign:
    case RuleFamily::NearMinimal: {
        if (family != RuleFamily::NearMinimal && kind != DomainKind::Sphere) throw mismatch();
        if (family == RuleFamily::NearMinimal &&
            !(kind == DomainKind::Square || kind == DomainKind::Disk || kind == DomainKind::Simplex))
            throw mismatch();
        const auto path = dataset_path(data_dir, family, domain, m);
        if (!std::filesystem::exists(path)) throw DatasetMissing("no data file " + path.string());
        CubatureRule r = load_rule(path, domain, m);
        if (family == RuleFamily::SymmetricSphericalDesign && !is_antipodal(r.nodes, 1e-10))
            throw ParseError(ParseError::Kind::Malformed, 0, path.string() + " is not antipodally symmetric");
        return r;
    }
    }
    throw mismatch();
}

} // namespace mzquad
