#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rdb/report.hpp"

namespace py = pybind11;
using namespace rdb;

namespace {

Natural to_nat(const py::int_& v) { return parse_natural(py::str(v).cast<std::string>()); }

py::int_ to_py(const Natural& n) {
  return py::reinterpret_steal<py::int_>(PyLong_FromString(to_decimal(n).c_str(), nullptr, 10));
}

TypeSeq to_type(const py::object& t) {
  if (py::isinstance<py::str>(t)) return TypeSeq::parse(t.cast<std::string>());
  std::vector<Natural> entries;
  for (const auto& x : t) entries.push_back(to_nat(x.cast<py::int_>()));
  return TypeSeq(std::move(entries));
}

py::list from_type(const TypeSeq& t) {
  py::list out;
  for (const auto& x : t.entries()) out.append(to_py(x));
  return out;
}

py::object from_json(const std::string& text) { return py::module_::import("json").attr("loads")(text); }

EvalOptions options(const std::string& strategy, bool fastpath, std::uint64_t max_steps) {
  EvalOptions o;
  o.strategy = parse_strategy(strategy);
  o.quadric_fastpath = fastpath;
  o.max_steps = max_steps;
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Certified upper bounds on f^l_j(m), Hamilton tables and sharpening";

  static py::exception<Error> error(m, "Error", PyExc_ValueError);
  static py::exception<LevelTooLow> level_too_low(m, "LevelTooLow", error.ptr());
  static py::exception<StepBudgetExceeded> budget(m, "StepBudgetExceeded", error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const LevelTooLow& e) {
      py::set_error(level_too_low, e.what());
    } catch (const StepBudgetExceeded& e) {
      py::set_error(budget, e.what());
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  py::class_<BoundCertificate, std::shared_ptr<BoundCertificate>>(m, "Certificate")
      .def_property_readonly("value", [](const BoundCertificate& c) { return to_py(c.value); })
      .def_property_readonly("level", [](const BoundCertificate& c) { return to_py(c.level.value()); })
      .def_property_readonly("j", [](const BoundCertificate& c) { return to_py(c.j); })
      .def_property_readonly("type", [](const BoundCertificate& c) { return from_type(c.type); })
      .def_property_readonly("elided", [](const BoundCertificate& c) { return c.elided; })
      .def_property_readonly("stats", [](const BoundCertificate& c) { return from_json(stats_to_json(c.stats)); })
      .def("chain", &render_chain)
      .def("to_json", [](const BoundCertificate& c) { return certificate_to_json(c); })
      .def("replay", [](const BoundCertificate& c) { return to_py(replay(c)); })
      .def("__repr__", [](const BoundCertificate& c) { return "<Certificate value=" + to_decimal(c.value) + ">"; });

  m.def("certificate_from_json", [](const std::string& text) {
    return std::make_shared<BoundCertificate>(certificate_from_json(text));
  });

  m.def(
      "bound_f",
      [](const py::int_& level, const py::int_& j, const py::object& type, const std::string& table,
         const std::string& strategy, bool fastpath, std::uint64_t max_steps) {
        const RdBoundFn fn(resolve_table(table));
        return std::make_shared<BoundCertificate>(
            bound_f(Level(to_nat(level)), fn, to_nat(j), to_type(type), options(strategy, fastpath, max_steps)));
      },
      py::arg("level"), py::arg("j"), py::arg("type"), py::arg("table") = "builtin-prior",
      py::arg("strategy") = "paper", py::arg("fastpath") = true, py::arg("max_steps") = 50'000'000);

  m.def(
      "coarse_bound_f",
      [](const py::int_& level, const py::int_& j, const py::object& type, const std::string& table) {
        return to_py(coarse_bound_f(Level(to_nat(level)), RdBoundFn(resolve_table(table)), to_nat(j), to_type(type)));
      },
      py::arg("level"), py::arg("j"), py::arg("type"), py::arg("table") = "builtin-prior");

  m.def(
      "rd", [](const py::int_& n, const std::string& table) { return to_py(RdBoundFn(resolve_table(table)).rd(to_nat(n))); },
      py::arg("n"), py::arg("table") = "builtin-prior");

  m.def(
      "hamilton",
      [](const std::string& table) {
        const HamiltonTable t = resolve_table(table);
        py::dict out;
        for (const auto& [r, e] : t.entries()) out[py::int_(r)] = to_py(e.value);
        return out;
      },
      py::arg("table") = "builtin-prior");

  m.def("endo", [](const py::object& type, const py::int_& j) { return from_type(endo(to_type(type), to_nat(j))); });
  m.def("norm", [](const py::object& type) { return to_py(norm(to_type(type))); });
  m.def("prefix_norm_sum",
        [](const py::object& type, const py::int_& j) { return to_py(prefix_norm_sum(to_type(type), to_nat(j))); });

  m.def(
      "sharpen",
      [](unsigned r, const std::string& table) {
        std::string text;
        {
          py::gil_scoped_release release;
          text = sharpen_report_to_json(sharpen_h(r, resolve_table(table)));
        }
        return from_json(text);
      },
      py::arg("r"), py::arg("table") = "builtin-prior");

  m.def(
      "sharpen_all",
      [](unsigned r_min, unsigned r_max, const std::string& table) {
        std::string text;
        {
          py::gil_scoped_release release;
          text = sweep_to_json(sharpen_all(r_min, r_max, resolve_table(table)));
        }
        return from_json(text);
      },
      py::arg("r_min"), py::arg("r_max"), py::arg("table") = "builtin-prior");

  m.def(
      "sporadic",
      [](const std::string& table) {
        return from_json(verdicts_to_json(verify_all(builtin_groups(), resolve_table(table))));
      },
      py::arg("table") = "builtin-new");
}
