#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "toric_mirror/cli.hpp"
#include "toric_mirror/fan_io.hpp"
#include "toric_mirror/seidel.hpp"

namespace py = pybind11;
using namespace toric;

namespace {

py::object fraction(const Rational& c) {
  static py::object cls = py::module_::import("fractions").attr("Fraction");
  return cls(c.get_str());
}

py::dict to_dict(const Series& s) {
  py::dict d;
  for (const auto& [e, c] : s.terms()) d[py::tuple(py::cast(e))] = fraction(c);
  return d;
}

py::list to_list(const std::vector<Series>& v) {
  py::list out;
  for (const auto& s : v) out.append(to_dict(s));
  return out;
}

struct Handle {
  FanSpec spec;
  ToricManifold x;

  explicit Handle(FanSpec s) : spec(std::move(s)), x(ToricManifold::create(spec.fan, spec.divisor_matrix)) {}

  int order_or(std::optional<int> order) const {
    if (order) return *order;
    if (spec.order) return *spec.order;
    return x.dim() >= 3 ? 6 : 8;
  }
  MirrorData data(std::optional<int> order) const { return MirrorData::compute(x, order_or(order)); }
};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Toric mirror potentials and lifted Seidel elements over exact rationals.";

  py::register_exception<FanGateError>(m, "GateError", PyExc_ValueError);
  py::register_exception<OutOfModel>(m, "OutOfModel", PyExc_ValueError);

  m.def("builtin_names", &builtin_names);

  py::class_<Handle>(m, "Manifold")
      .def_static("load", [](const std::string& source) { return Handle(resolve_fan(source)); },
                  "A built-in name or a path to a fan file.")
      .def_static("from_toml", [](const std::string& text) { return Handle(parse_fan_toml(text)); })
      .def_property_readonly("name", [](const Handle& h) { return h.spec.name; })
      .def_property_readonly("dim", [](const Handle& h) { return h.x.dim(); })
      .def_property_readonly("rank", [](const Handle& h) { return h.x.rank(); })
      .def_property_readonly("ray_count", [](const Handle& h) { return h.x.ray_count(); })
      .def_property_readonly("fano", [](const Handle& h) { return h.x.is_fano(); })
      .def_property_readonly("divisor_matrix", [](const Handle& h) { return h.x.basis().entries(); })
      .def_property_readonly("vertices",
                             [](const Handle& h) {
                               std::vector<std::size_t> v;
                               for (auto i : h.x.polytope_vertices()) v.push_back(i + 1);
                               return v;
                             })
      .def_property_readonly("hash", [](const Handle& h) { return fan_hash(h.x); })
      .def("corrections", [](const Handle& h, std::optional<int> order) { return to_list(h.data(order).potential.f); },
           py::arg("order") = py::none())
      .def("potential", [](const Handle& h, std::optional<int> order) { return to_dict(h.data(order).potential.total); },
           py::arg("order") = py::none())
      .def("open_gw",
           [](const Handle& h, std::size_t i, const IntVector& d, std::optional<int> order) {
             if (i < 1 || i > h.x.ray_count()) throw py::index_error("ray index out of range");
             return fraction(open_gw(h.x, h.data(order).potential.f, i - 1, d));
           },
           py::arg("i"), py::arg("d"), py::arg("order") = py::none())
      .def("lifts",
           [](const Handle& h, std::optional<int> order, const std::string& route) {
             const auto data = h.data(order);
             std::vector<LiftedElement> lifts;
             if (route == "closed") lifts = seidel_lifts_closed(h.x, data);
             else if (route == "jacobi") lifts = seidel_lifts_jacobi(data.jacobi);
             else throw py::value_error("route must be 'closed' or 'jacobi'");
             py::list out;
             for (const auto& l : lifts) out.append(to_list(l));
             return out;
           },
           py::arg("order") = py::none(), py::arg("route") = "closed")
      .def("verify",
           [](const Handle& h, std::optional<int> order) {
             const auto report = verify_all(h.x, h.data(order));
             return py::module_::import("json").attr("loads")(report.to_json().dump());
           },
           py::arg("order") = py::none());

  m.def("run_cli",
        [](const std::vector<std::string>& args, std::optional<std::string> order_env) {
          std::ostringstream out, err;
          const int code = cli::run(args, out, err, order_env);
          return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), py::arg("order_env") = py::none());
}
