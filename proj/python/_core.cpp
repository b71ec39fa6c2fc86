#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "circot/bracket.hpp"
#include "circot/error.hpp"
#include "circot/oracle.hpp"
#include "circot/plan.hpp"
#include "circot/profile.hpp"
#include "circot/solver.hpp"

namespace py = pybind11;
using namespace circot;

namespace {

// Python callers may pass either a Cost or a bare power exponent.
using CostArg = py::object;

CostFunction to_cost(const CostArg& arg) {
  if (py::isinstance<CostFunction>(arg)) return arg.cast<CostFunction>();
  return CostFunction::power(arg.cast<double>());
}

std::vector<double> to_vector(std::span<const double> s) { return {s.begin(), s.end()}; }

py::tuple bracket_tuple(const SearchBracket& b) {
  return py::make_tuple(b.theta_lo, b.theta_hi, b.lipschitz, std::string(to_string(b.provenance)));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Optimal transport between histograms on the circle";

  static py::exception<Error> error_type(m, "CircotError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      const auto cls = py::reinterpret_borrow<py::object>(error_type.ptr());
      py::object instance = cls(std::string(to_string(e.code())) + ": " + e.what());
      instance.attr("code") = std::string(to_string(e.code()));
      instance.attr("detail") = std::string(e.what());
      PyErr_SetObject(error_type.ptr(), instance.ptr());
    }
  });

  py::class_<CircularHistogram>(m, "Histogram")
      .def(py::init([](const std::vector<double>& positions, const std::vector<double>& masses,
                       std::optional<std::int64_t> denominator) {
             return CircularHistogram::create(positions, masses, denominator);
           }),
           py::arg("positions"), py::arg("masses"), py::arg("denominator") = py::none())
      .def_static(
          "from_counts",
          [](const std::vector<double>& positions, const std::vector<std::int64_t>& counts,
             std::int64_t denominator) {
            return CircularHistogram::from_counts(positions, counts, denominator);
          },
          py::arg("positions"), py::arg("counts"), py::arg("denominator"))
      .def_property_readonly("positions",
                             [](const CircularHistogram& h) { return to_vector(h.positions()); })
      .def_property_readonly("masses",
                             [](const CircularHistogram& h) { return to_vector(h.masses()); })
      .def_property_readonly("denominator", &CircularHistogram::denominator)
      .def_property_readonly("counts",
                             [](const CircularHistogram& h) {
                               return std::vector<std::int64_t>(h.counts().begin(), h.counts().end());
                             })
      .def("__len__", &CircularHistogram::size)
      .def("cdf", [](const CircularHistogram& h, double x) { return PeriodicCdf(h).eval(x); })
      .def("inverse_cdf",
           [](const CircularHistogram& h, double v) { return PeriodicCdf(h).inverse(v); });

  py::class_<CostFunction>(m, "Cost")
      .def_static("power", &CostFunction::power, py::arg("exponent"))
      .def_static(
          "convex_plus_periodic",
          [](std::function<double(double)> convex, std::function<double(double)> source_periodic,
             std::function<double(double)> target_periodic, bool symmetric) {
            return CostFunction::convex_plus_periodic(std::move(convex), std::move(source_periodic),
                                                      std::move(target_periodic), symmetric);
          },
          py::arg("convex"), py::arg("source_periodic") = nullptr,
          py::arg("target_periodic") = nullptr, py::arg("symmetric") = false)
      .def("__call__", &CostFunction::operator(), py::arg("x"), py::arg("y"))
      .def_property_readonly("exponent", &CostFunction::power_exponent)
      .def("bracket", [](const CostFunction& c, bool tight) {
        BracketOptions o;
        o.tight_symmetric = tight;
        return bracket_tuple(bracket_for(c, o));
      }, py::arg("tight") = false);

  py::class_<SolveResult>(m, "SolveResult")
      .def_readonly("theta_star", &SolveResult::theta_star)
      .def_readonly("cost", &SolveResult::cost)
      .def_readonly("exact", &SolveResult::exact)
      .def_readonly("iterations", &SolveResult::iterations)
      .def_readonly("epsilon_used", &SolveResult::epsilon_used)
      .def_readonly("theta_tolerance", &SolveResult::theta_tolerance)
      .def_readonly("cost_evaluations", &SolveResult::cost_evaluations)
      .def_readonly("left_derivative", &SolveResult::left_derivative)
      .def_readonly("right_derivative", &SolveResult::right_derivative)
      .def_readonly("denominator", &SolveResult::denominator)
      .def_readonly("flat_interval", &SolveResult::flat_interval)
      .def_property_readonly("termination",
                             [](const SolveResult& r) {
                               return r.termination == Termination::SignTest ? "sign-test"
                                                                             : "width-test";
                             })
      .def_property_readonly("bracket", [](const SolveResult& r) { return bracket_tuple(r.bracket); })
      .def("__repr__", [](const SolveResult& r) {
        return "SolveResult(theta_star=" + std::to_string(r.theta_star) +
               ", cost=" + std::to_string(r.cost) + ", exact=" + (r.exact ? "True" : "False") + ")";
      });

  py::class_<Assignment>(m, "Assignment")
      .def_readonly("source_atom", &Assignment::source_atom)
      .def_readonly("target_atom", &Assignment::target_atom)
      .def_readonly("source_position", &Assignment::source_position)
      .def_readonly("target_position_lifted", &Assignment::target_position_lifted)
      .def_readonly("target_position", &Assignment::target_position)
      .def_readonly("mass", &Assignment::mass);

  py::class_<TransportPlan>(m, "TransportPlan")
      .def_property_readonly("theta", [](const TransportPlan& p) { return p.theta.value(); })
      .def_readonly("assignments", &TransportPlan::assignments)
      .def_readonly("total_cost", &TransportPlan::total_cost);

  m.def(
      "minimize",
      [](const CircularHistogram& h0, const CircularHistogram& h1, const CostArg& cost,
         std::optional<double> epsilon, bool tight_bracket, int max_iterations) {
        SolveOptions o;
        o.epsilon = epsilon;
        o.tight_bracket = tight_bracket;
        o.max_iterations = max_iterations;
        return minimize(h0, h1, to_cost(cost), o);
      },
      py::arg("h0"), py::arg("h1"), py::arg("cost") = py::float_(2.0), py::arg("epsilon") = py::none(),
      py::arg("tight_bracket") = false, py::arg("max_iterations") = kMaxIterations);

  m.def("mk_distance", &mk_distance, py::arg("h0"), py::arg("h1"), py::arg("lam") = 2.0,
        py::arg("epsilon") = py::none());

  m.def(
      "avg_cost",
      [](const CircularHistogram& h0, const CircularHistogram& h1, const CostArg& cost,
         double theta) {
        const auto e = avg_cost_derivatives(PeriodicCdf(h0), PeriodicCdf(h1), to_cost(cost), theta);
        py::dict out;
        out["value"] = e.value;
        out["left_derivative"] = e.left_derivative;
        out["right_derivative"] = e.right_derivative;
        out["exceptional"] = e.exceptional;
        return out;
      },
      py::arg("h0"), py::arg("h1"), py::arg("cost"), py::arg("theta"));

  m.def(
      "extract_plan",
      [](const CircularHistogram& h0, const CircularHistogram& h1, const CostArg& cost,
         std::optional<double> theta) {
        const auto c = to_cost(cost);
        const Shift t = theta ? Shift(*theta) : minimize(h0, h1, c).theta;
        return extract_plan(h0, h1, c, t);
      },
      py::arg("h0"), py::arg("h1"), py::arg("cost") = py::float_(2.0), py::arg("theta") = py::none());

  m.def(
      "oracle_breakpoints",
      [](const CircularHistogram& h0, const CircularHistogram& h1, const CostArg& cost) {
        const auto c = to_cost(cost);
        const auto r = oracle::oracle_breakpoints(h0, h1, c, bracket_for(c));
        return py::make_tuple(r.theta_star, r.cost);
      },
      py::arg("h0"), py::arg("h1"), py::arg("cost") = py::float_(2.0));

  m.def(
      "oracle_rotations",
      [](const CircularHistogram& h0, const CircularHistogram& h1, const CostArg& cost) {
        const auto r = oracle::oracle_rotations(h0, h1, to_cost(cost));
        return py::make_tuple(r.theta_star, r.cost);
      },
      py::arg("h0"), py::arg("h1"), py::arg("cost") = py::float_(2.0));
}
