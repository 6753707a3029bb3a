#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "smoothset/cli.hpp"
#include "smoothset/connections.hpp"
#include "smoothset/errors.hpp"
#include "smoothset/homology.hpp"
#include "smoothset/io.hpp"
#include "smoothset/report.hpp"

namespace py = pybind11;
using namespace smoothset;

namespace {

py::object to_python(const Integer& z) { return py::int_(py::str(z.get_str())); }
py::object to_python(const Rational& q) { return py::module_::import("fractions").attr("Fraction")(q.get_str()); }

py::dict homology_of(const std::string& path, const std::string& ring) {
    if (ring != "int" && ring != "rat") throw py::value_error("ring must be 'int' or 'rat'");
    const auto x = load_simplicial_set(path);
    const auto h = homology(chain_complex(x, ring == "int" ? Ring::integers : Ring::rationals));
    py::list torsion;
    for (const auto& degree : h.torsion) {
        py::list divisors;
        for (const auto& d : degree) divisors.append(to_python(d));
        torsion.append(divisors);
    }
    py::dict out;
    out["betti"] = h.betti;
    out["torsion"] = torsion;
    return out;
}

py::dict chern_of(const std::string& path) {
    const auto r = u1_chern_number(parse_u1_bundle(read_file(path)));
    py::dict out;
    out["degree"] = to_python(r.degree);
    out["winding_total"] = to_python(r.winding_total);
    out["integral"] = r.integral;
    return out;
}

py::tuple run_command(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = 0;
    {
        py::gil_scoped_release release;
        code = run(args, out, err);
    }
    return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact computations on finite simplicial sets";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<IncompatibilityError>(m, "IncompatibilityError", PyExc_ValueError);

    m.def("run", &run_command, py::arg("args"), "Run one command line; returns (exit_code, stdout, stderr).");
    m.def("homology", &homology_of, py::arg("path"), py::arg("ring") = "int",
          "Betti numbers and torsion of a simplicial set file.");
    m.def("chern_number", &chern_of, py::arg("path"), "Degree of a U(1) bundle datum file.");
    m.def("bump_factor", &bump_factor, py::arg("t0"));
    m.def("strip_timing", &strip_timing, py::arg("report"));
}
