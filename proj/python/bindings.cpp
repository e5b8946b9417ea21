#include "mzquad/approx.hpp"
#include "mzquad/bases.hpp"
#include "mzquad/bench.hpp"
#include "mzquad/errors.hpp"
#include "mzquad/mz.hpp"
#include "mzquad/rules.hpp"

#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

namespace py = pybind11;
using namespace mzquad;

namespace {

py::array_t<double> matrix(std::size_t rows, std::size_t cols, const std::vector<double>& v) {
    py::array_t<double> a({rows, cols});
    std::copy(v.begin(), v.end(), a.mutable_data());
    return a;
}

PointSet to_points(const Domain& domain, py::array_t<double, py::array::c_style | py::array::forcecast> x) {
    const std::size_t dim = domain.dim();
    if (x.ndim() == 1 && dim == 1) return PointSet(1, {x.data(), x.data() + x.size()});
    if (x.ndim() != 2 || static_cast<std::size_t>(x.shape(1)) != dim)
        throw InvalidArgument("points must be an array of shape (M, " + std::to_string(dim) + ")");
    return PointSet(dim, {x.data(), x.data() + x.size()});
}

// Python callables receive one point as a 1-D numpy array.
Function wrap(py::function f) {
    return [f](std::span<const double> x) {
        py::gil_scoped_acquire gil;
        py::array_t<double> a(x.size());
        std::copy(x.begin(), x.end(), a.mutable_data());
        return f(a).cast<double>();
    };
}

py::dict report_dict(const MzReport& r) {
    py::dict d;
    d["n"] = r.n;
    d["A"] = r.A;
    d["B"] = r.B;
    d["eta"] = r.eta;
    d["cond2"] = r.cond2;
    d["M"] = r.M;
    d["d_n"] = r.d_n;
    d["family"] = r.family;
    d["ade"] = r.ade ? py::object(py::int_(*r.ade)) : py::object(py::none());
    d["domain"] = r.domain;
    d["mz_property"] = r.mz_property;
    d["worst"] = r.worst_coeffs;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Marcinkiewicz-Zygmund constants of cubature rules";

    py::register_exception<Error>(m, "Error");
    py::register_exception<NoMzProperty>(m, "NoMzProperty");
    py::register_exception<DatasetMissing>(m, "DatasetMissing");

    py::class_<Domain>(m, "Domain")
        .def(py::init([](const std::string& kind, const std::string& measure) { return Domain::parse(kind, measure); }),
             py::arg("kind"), py::arg("measure") = "")
        .def_property_readonly("token", &Domain::token)
        .def_property_readonly("measure", &Domain::measure_token)
        .def_property_readonly("dim", &Domain::dim)
        .def_property_readonly("mass", &Domain::mass)
        .def("__repr__", [](const Domain& d) { return "Domain('" + d.token() + "', '" + d.measure_token() + "')"; });

    py::class_<CubatureRule>(m, "CubatureRule")
        .def_property_readonly("domain", [](const CubatureRule& r) { return r.domain; })
        .def_property_readonly("nodes",
                               [](const CubatureRule& r) { return matrix(r.size(), r.nodes.dim(), r.nodes.coords()); })
        .def_property_readonly("weights", [](const CubatureRule& r) { return py::array_t<double>(r.size(), r.weights.data()); })
        .def_property_readonly("ade", [](const CubatureRule& r) { return r.ade; })
        .def_property_readonly("provenance", [](const CubatureRule& r) { return to_string(r.provenance); })
        .def("__len__", &CubatureRule::size)
        .def("dumps", [](const CubatureRule& r) {
            std::ostringstream s;
            write_rule(s, r);
            return s.str();
        });

    m.def(
        "make_rule",
        [](const std::string& family, const Domain& domain, int degree, std::optional<std::filesystem::path> data_dir) {
            return make_rule(parse_family(family), domain, degree, data_dir ? *data_dir : default_data_dir());
        },
        py::arg("family"), py::arg("domain"), py::arg("m"), py::arg("data_dir") = py::none());
    m.def(
        "load_rule",
        [](const std::filesystem::path& path, const Domain& domain, std::optional<int> ade) {
            return load_rule(path, domain, ade);
        },
        py::arg("path"), py::arg("domain"), py::arg("ade") = py::none());
    m.def("verify_ade", &verify_ade, py::arg("rule"), py::arg("m"));
    m.def("basis_dim", &basis_dim, py::arg("domain"), py::arg("n"));

    m.def(
        "eval_basis",
        [](const Domain& domain, int n, py::array_t<double, py::array::c_style | py::array::forcecast> x) {
            const auto b = eval_basis(OrthonormalBasis(domain, n), to_points(domain, x));
            return matrix(b.rows, b.cols, b.values);
        },
        py::arg("domain"), py::arg("n"), py::arg("points"));
    m.def(
        "gramian",
        [](const CubatureRule& rule, int n) {
            const SymMatrix g = gramian(rule, OrthonormalBasis(rule.domain, n));
            return matrix(g.order(), g.order(), g.data());
        },
        py::arg("rule"), py::arg("n"));
    m.def(
        "analyze", [](const CubatureRule& rule, int n) { return report_dict(analyze(rule, n)); }, py::arg("rule"),
        py::arg("n"));
    m.def(
        "report_json", [](const CubatureRule& rule, int n) { return to_json(analyze(rule, n)); }, py::arg("rule"),
        py::arg("n"));

    m.def(
        "hyperinterpolate",
        [](const CubatureRule& rule, int n, py::function f) {
            return hyperinterpolate(rule, OrthonormalBasis(rule.domain, n), wrap(f)).coeffs;
        },
        py::arg("rule"), py::arg("n"), py::arg("f"));
    m.def(
        "least_squares",
        [](const CubatureRule& rule, int n, py::function f) {
            return least_squares(rule, OrthonormalBasis(rule.domain, n), wrap(f)).coeffs;
        },
        py::arg("rule"), py::arg("n"), py::arg("f"));
    m.def(
        "evaluate",
        [](const Domain& domain, int n, const std::vector<double>& coeffs,
           py::array_t<double, py::array::c_style | py::array::forcecast> x) {
            const OrthonormalBasis basis(domain, n);
            if (coeffs.size() != basis.size()) throw InvalidArgument("coefficient length differs from the basis size");
            const Approximant a{basis, coeffs, Method::LeastSquares, Provenance::NearMinimalFile};
            return evaluate(a, to_points(domain, x));
        },
        py::arg("domain"), py::arg("n"), py::arg("coeffs"), py::arg("points"));
    m.def("reference_rule", &reference_rule, py::arg("domain"));
    m.def(
        "test_function",
        [](int id, const Domain& domain, py::array_t<double, py::array::c_style | py::array::forcecast> x) {
            const PointSet pts = to_points(domain, x);
            const Function f = test_function(id, domain.dim());
            std::vector<double> out(pts.size());
            for (std::size_t i = 0; i < pts.size(); ++i) out[i] = f(pts[i]);
            return out;
        },
        py::arg("id"), py::arg("domain"), py::arg("points"));

    m.def(
        "scan",
        [](const std::string& family, const Domain& domain, std::pair<int, int> m_range, std::pair<int, int> n_range,
           std::optional<std::filesystem::path> data_dir, unsigned jobs) {
            ScanConfig cfg;
            cfg.family = parse_family(family);
            cfg.domain = domain;
            cfg.m_first = m_range.first;
            cfg.m_last = m_range.second;
            cfg.n_first = n_range.first;
            cfg.n_last = n_range.second;
            if (data_dir) cfg.data_dir = *data_dir;
            cfg.jobs = jobs;
            ScanGrid grid;
            {
                py::gil_scoped_release release;
                grid = scan(cfg);
            }
            py::list cells;
            for (const auto& c : grid.cells) {
                py::dict d;
                d["m"] = c.m;
                d["n"] = c.n;
                d["status"] = c.status;
                if (c.has_values()) {
                    d["M"] = c.M;
                    d["d_n"] = c.d_n;
                    d["eta"] = c.eta;
                    d["cond2"] = c.cond2;
                    d["bucket"] = cond_bucket(c.cond2);
                }
                cells.append(d);
            }
            return cells;
        },
        py::arg("family"), py::arg("domain"), py::arg("m"), py::arg("n"), py::arg("data_dir") = py::none(),
        py::arg("jobs") = 1);

    m.def(
        "approx_bench",
        [](const Domain& domain, int build_ade, int n_max) {
            ApproxBench b;
            {
                py::gil_scoped_release release;
                b = approx_bench(domain, build_ade, n_max);
            }
            py::list rows;
            for (const auto& r : b.records) {
                py::dict d;
                d["family"] = r.family;
                d["ade"] = r.ade ? py::object(py::int_(*r.ade)) : py::object(py::none());
                d["n"] = r.n;
                d["method"] = r.method;
                d["fid"] = r.fid;
                d["relerr"] = r.relerr;
                rows.append(d);
            }
            py::dict out;
            out["relaxed"] = b.relaxed_family;
            out["M"] = b.relaxed_M;
            out["classical_M"] = b.classical_M;
            out["reference_M"] = b.reference_M;
            out["records"] = rows;
            return out;
        },
        py::arg("domain"), py::arg("build_ade") = 15, py::arg("n_max") = 15);
}
