#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fuzzylip/cli/commands.hpp"
#include "fuzzylip/errors.hpp"
#include "fuzzylip/extension.hpp"
#include "fuzzylip/fuzzy_metric.hpp"
#include "fuzzylip/monotone.hpp"
#include "fuzzylip/tnorm.hpp"

namespace py = pybind11;
using namespace fuzzylip;

namespace {

ExtendedNonNegative extended(double v) { return ExtendedNonNegative(v); }

std::vector<std::vector<double>> to_rows(const DistanceMatrix& m) {
  std::vector<std::vector<double>> rows(m.size(), std::vector<double>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) rows[i][j] = m(i, j).value();
  return rows;
}

FiniteFuzzyMetricSpace space_from_json(const std::string& text) {
  cli::json document = {{"space", cli::json::parse(text)}};
  return cli::build_space(cli::parse_config(document));
}

py::tuple run_command(const std::string& command, const std::string& config_text,
                      const std::string& base_dir, double tolerance, std::uint64_t seed) {
  const cli::RunConfig config = cli::parse_config(cli::json::parse(config_text), base_dir);
  cli::CommandOptions options{tolerance, seed};
  const cli::CommandOutcome outcome =
      command == "validate" ? cli::cmd_validate(config, options) : cli::cmd_extend(config, options);
  return py::make_tuple(outcome.exit_code, outcome.report.dump(), outcome.csv.value_or(""));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "McShane-Whitney extension of fuzzy Lipschitz maps";

  static py::exception<Error> base(m, "FuzzylipError");
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<NumericError>(m, "NumericError", base.ptr());
  py::register_exception<InvalidMetricError>(m, "InvalidMetricError", base.ptr());
  py::register_exception<ConstructionError>(m, "ConstructionError", base.ptr());
  py::register_exception<InfeasibleError>(m, "InfeasibleError", base.ptr());
  py::register_exception<HypothesisError>(m, "HypothesisError", base.ptr());
  py::register_exception<ExtensionUndefinedError>(m, "ExtensionUndefinedError", base.ptr());
  py::register_exception<cli::ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<cli::IoError>(m, "IoError", base.ptr());

  py::class_<TNorm>(m, "TNorm")
      .def_static("minimum", &TNorm::minimum)
      .def_static("product", &TNorm::product)
      .def_static("lukasiewicz", &TNorm::lukasiewicz)
      .def_static("from_tag", &TNorm::from_tag, py::arg("tag"))
      .def_property_readonly("tag", [](const TNorm& t) { return std::string(t.tag()); })
      .def_property_readonly("name", [](const TNorm& t) { return std::string(t.name()); })
      .def("__call__", &TNorm::apply, py::arg("a"), py::arg("b"))
      .def("__eq__", [](const TNorm& a, const TNorm& b) { return a == b; })
      .def("__repr__", [](const TNorm& t) { return "TNorm('" + std::string(t.tag()) + "')"; });

  py::class_<MonotoneFunction>(m, "MonotoneFunction")
      .def_static("clamp", &MonotoneFunction::clamp, py::arg("scale"), py::arg("cap"))
      .def_static("linear", &MonotoneFunction::linear, py::arg("slope"))
      .def_static(
          "piecewise_linear",
          [](const std::vector<std::pair<double, double>>& knots) {
            std::vector<Knot> converted;
            for (const auto& [x, y] : knots) converted.push_back({x, y});
            return MonotoneFunction::piecewise_linear(std::move(converted));
          },
          py::arg("breakpoints"))
      .def_static("rational_saturating", &MonotoneFunction::rational_saturating)
      .def_static(
          "custom",
          [](std::function<double(double)> fn, double sup_value, bool left_continuous) {
            return MonotoneFunction::custom(std::move(fn), sup_value, left_continuous);
          },
          py::arg("fn"), py::arg("sup_value"), py::arg("left_continuous") = false)
      .def("__call__", [](const MonotoneFunction& phi, double x) { return phi(x); })
      .def_property_readonly("sup_value", [](const MonotoneFunction& phi) { return phi.sup_value().value(); })
      .def_property_readonly("is_left_continuous", &MonotoneFunction::is_left_continuous)
      .def_property_readonly("kind", [](const MonotoneFunction& phi) { return std::string(phi.kind_name()); })
      .def("to_json", [](const MonotoneFunction& phi) { return cli::to_json(phi).dump(); })
      .def_static("from_json", [](const std::string& text) {
        return cli::monotone_from_json(cli::json::parse(text));
      });

  m.def(
      "right_adjoint",
      [](const MonotoneFunction& phi, double y) { return right_adjoint_eval(phi, extended(y)).value(); },
      py::arg("phi"), py::arg("y"), "phi*(y) = sup{x : phi(x) <= y}; +inf above the range of phi.");
  m.def("left_continuous_envelope", &left_continuous_envelope, py::arg("phi"));
  m.def(
      "check_galois",
      [](const MonotoneFunction& phi, const std::vector<double>& grid, double tolerance) {
        return cli::to_json(check_galois(phi, grid, tolerance)).dump();
      },
      py::arg("phi"), py::arg("grid"), py::arg("tolerance") = 1e-9);
  m.def("log_grid", &log_grid, py::arg("lo"), py::arg("hi"), py::arg("n"));

  py::class_<EuclideanFuzzyMetric>(m, "EuclideanFuzzyMetric")
      .def_static("standard", &EuclideanFuzzyMetric::standard)
      .def_static("from_json", [](const std::string& text) {
        return cli::euclidean_metric_from_json(cli::json::parse(text));
      })
      .def("to_json", [](const EuclideanFuzzyMetric& e) { return cli::to_json(e).dump(); })
      .def("membership", &EuclideanFuzzyMetric::membership, py::arg("x"), py::arg("y"), py::arg("t"))
      .def("gap", &EuclideanFuzzyMetric::gap, py::arg("x"), py::arg("y"), py::arg("t"))
      .def_property_readonly("phi", &EuclideanFuzzyMetric::phi)
      .def_property_readonly("tnorm", &EuclideanFuzzyMetric::tnorm);

  m.def(
      "validate_codomain_conditions",
      [](const EuclideanFuzzyMetric& efm, const std::vector<double>& x_grid,
         const std::vector<double>& t_grid, double tolerance) {
        return cli::to_json(validate_codomain_conditions(efm, x_grid, t_grid, tolerance)).dump();
      },
      py::arg("efm"), py::arg("x_grid"), py::arg("t_grid"), py::arg("tolerance") = 1e-9);

  py::class_<FiniteFuzzyMetricSpace>(m, "FiniteFuzzyMetricSpace")
      .def_static("from_json", &space_from_json, py::arg("space_json"))
      .def("__len__", &FiniteFuzzyMetricSpace::size)
      .def("membership", &FiniteFuzzyMetricSpace::membership, py::arg("i"), py::arg("j"), py::arg("t"))
      .def("gap", &FiniteFuzzyMetricSpace::gap, py::arg("i"), py::arg("j"), py::arg("t"))
      .def_property_readonly("tnorm", &FiniteFuzzyMetricSpace::tnorm);

  m.def(
      "validate_fuzzy_metric",
      [](const FiniteFuzzyMetricSpace& space, const std::vector<double>& t_grid,
         const std::vector<double>& s_grid, double tolerance) {
        return cli::to_json(validate_fuzzy_metric(space, t_grid, s_grid, tolerance)).dump();
      },
      py::arg("space"), py::arg("t_grid"), py::arg("s_grid"), py::arg("tolerance") = 1e-9);

  m.def(
      "chain_pseudometric",
      [](const FiniteFuzzyMetricSpace& space, const EuclideanFuzzyMetric& codomain, double k, double t) {
        return to_rows(chain_pseudometric(space, codomain, DilationFunction::constant(k), t));
      },
      py::arg("space"), py::arg("codomain"), py::arg("k"), py::arg("t"));
  m.def(
      "rho_matrix",
      [](const FiniteFuzzyMetricSpace& space, const EuclideanFuzzyMetric& codomain, double k, double t) {
        return to_rows(rho_matrix(space, codomain, DilationFunction::constant(k), t));
      },
      py::arg("space"), py::arg("codomain"), py::arg("k"), py::arg("t"));

  m.def("_run_command", &run_command, py::arg("command"), py::arg("config_json"),
        py::arg("base_dir"), py::arg("tolerance"), py::arg("seed"));
}
