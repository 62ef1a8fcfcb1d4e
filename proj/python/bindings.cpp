#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "kcover/errors.hpp"
#include "kcover/exact_solver.hpp"
#include "kcover/greedy_solver.hpp"
#include "kcover/harness.hpp"
#include "kcover/report.hpp"
#include "kcover/scenario.hpp"

namespace py = pybind11;
using namespace kcover;

namespace {

Assignment to_assignment(const std::vector<std::optional<std::uint32_t>>& choices) {
  Assignment a(choices.size());
  for (std::size_t i = 0; i < choices.size(); ++i)
    if (choices[i]) a.set(i, PanIndex{*choices[i]});
  return a;
}

std::vector<std::optional<std::uint32_t>> from_assignment(const Assignment& a) {
  std::vector<std::optional<std::uint32_t>> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i]) out[i] = a[i]->value;
  return out;
}

py::dict report_dict(const SolutionReport& r) {
  py::dict d;
  d["k"] = r.coverage.k;
  d["raw_coverage"] = r.coverage.raw;
  d["capped_coverage"] = r.coverage.capped;
  d["active_sensors"] = r.active_sensor_count;
  d["total_coverage"] = r.total_coverage();
  d["fairness_index"] = r.fairness_index;
  d["balancing_index"] = r.balancing_index;
  d["objective_value"] = r.objective.value;
  d["histogram"] = r.histogram;
  return d;
}

SearchBudget budget_of(std::optional<std::uint64_t> node_limit, std::optional<std::int64_t> time_limit_ms) {
  SearchBudget b;
  b.max_nodes = node_limit;
  if (time_limit_ms) b.max_time = std::chrono::milliseconds(*time_limit_ms);
  return b;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Balanced k-coverage for pan-only directional sensor networks";

  static py::exception<Error> base(m, "Error", PyExc_RuntimeError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  py::class_<Point2D>(m, "Point2D")
      .def(py::init<double, double>(), py::arg("x"), py::arg("y"))
      .def_readwrite("x", &Point2D::x)
      .def_readwrite("y", &Point2D::y)
      .def("__repr__", [](const Point2D& p) {
        return "Point2D(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ")";
      });

  py::class_<CameraModel>(m, "CameraModel")
      .def(py::init<double, std::uint32_t>(), py::arg("sensing_range") = 25.0, py::arg("pan_count") = 8)
      .def_property_readonly("sensing_range", &CameraModel::sensing_range)
      .def_property_readonly("aov", &CameraModel::aov)
      .def_property_readonly("pan_count", &CameraModel::pan_count);

  m.def("target_in_sector",
        [](const Point2D& s, std::uint32_t pan, const CameraModel& cam, const Point2D& t) {
          return target_in_sector(s, PanIndex{pan}, cam, t);
        },
        py::arg("sensor"), py::arg("pan"), py::arg("camera"), py::arg("target"));

  py::class_<GridSize>(m, "GridSize")
      .def(py::init<double, double>(), py::arg("width") = 125.0, py::arg("height") = 125.0)
      .def_readwrite("width", &GridSize::width)
      .def_readwrite("height", &GridSize::height);

  py::class_<Scenario>(m, "Scenario")
      .def(py::init([](std::vector<Point2D> sensors, std::vector<Point2D> targets, CameraModel camera,
                       GridSize grid) {
             Scenario s{std::move(sensors), std::move(targets), camera, grid, 0};
             s.validate();
             return s;
           }),
           py::arg("sensors"), py::arg("targets"), py::arg("camera") = CameraModel(),
           py::arg("grid") = GridSize{})
      .def_readonly("sensors", &Scenario::sensors)
      .def_readonly("targets", &Scenario::targets)
      .def_readonly("camera", &Scenario::camera)
      .def_readonly("grid", &Scenario::grid)
      .def_readonly("seed", &Scenario::seed)
      .def("save", [](const Scenario& s, const std::filesystem::path& p) { save(s, p); })
      .def("to_text", [](const Scenario& s) {
        std::ostringstream out;
        write_scenario(out, s);
        return out.str();
      })
      .def(py::self == py::self);

  m.def("generate",
        [](std::uint64_t seed, std::size_t n, std::size_t m_, const CameraModel& cam, GridSize grid) {
          return generate(seed, n, m_, cam, grid).master;
        },
        py::arg("seed"), py::arg("n"), py::arg("m"), py::arg("camera") = CameraModel(),
        py::arg("grid") = GridSize{}, "Random scenario; smaller (n, m) give prefixes of larger ones.");
  m.def("load_scenario", [](const std::filesystem::path& p) { return load(p); });
  m.def("parse_scenario", [](const std::string& text) {
    std::istringstream in(text);
    return read_scenario(in);
  });

  py::class_<CoverageMatrix>(m, "CoverageMatrix")
      .def(py::init([](const Scenario& s) { return build_coverage_matrix(s); }))
      .def_property_readonly("sensor_count", &CoverageMatrix::sensor_count)
      .def_property_readonly("pan_count", &CoverageMatrix::pan_count)
      .def_property_readonly("target_count", &CoverageMatrix::target_count)
      .def("covers", [](const CoverageMatrix& c, std::size_t i, std::uint32_t pan,
                        std::size_t t) { return c.covers(i, PanIndex{pan}, t); })
      .def("targets_of", [](const CoverageMatrix& c, std::size_t i, std::uint32_t pan) {
        const auto span = c.targets_of(i, PanIndex{pan});
        return std::vector<std::uint32_t>(span.begin(), span.end());
      });

  m.def("fairness_index",
        [](std::vector<std::uint32_t> raw, std::uint32_t k) {
          return fairness_index(make_coverage(std::move(raw), k));
        },
        py::arg("raw_counts"), py::arg("k"));
  m.def("balancing_index",
        [](std::vector<std::uint32_t> raw, std::uint32_t k) {
          return balancing_index(make_coverage(std::move(raw), k));
        },
        py::arg("raw_counts"), py::arg("k"));
  m.def("default_rho", [](std::size_t n) { return default_rho(n, 8); }, py::arg("n"));

  m.def("evaluate",
        [](const CoverageMatrix& c, const std::vector<std::optional<std::uint32_t>>& choices,
           const std::string& objective, std::uint32_t k, std::optional<double> rho) {
          const ObjectiveSpec spec{parse_objective_kind(objective), k,
                                   rho.value_or(default_rho(c.sensor_count(), c.pan_count()))};
          return report_dict(report(c, to_assignment(choices), spec));
        },
        py::arg("matrix"), py::arg("assignment"), py::arg("objective") = "INLP", py::arg("k") = 2,
        py::arg("rho") = py::none(),
        "Metrics of an assignment given as a list of pan indices or None (Off).");

  m.def("solve",
        [](const CoverageMatrix& c, const std::string& solver, std::uint32_t k, std::optional<double> rho,
           std::optional<std::uint64_t> node_limit, std::optional<std::int64_t> time_limit_ms) {
          const auto kind = parse_solver_kind(solver);
          const double r = rho.value_or(default_rho(c.sensor_count(), c.pan_count()));
          SolveOutcome out;
          {
            py::gil_scoped_release release;
            out = run_solver(kind, c, k, r, budget_of(node_limit, time_limit_ms));
          }
          py::dict d = report_dict(out.report);
          d["solver"] = std::string(to_string(kind));
          d["assignment"] = from_assignment(out.assignment);
          d["optimal"] = out.optimal;
          return d;
        },
        py::arg("matrix"), py::arg("solver"), py::arg("k") = 2, py::arg("rho") = py::none(),
        py::arg("node_limit") = py::none(), py::arg("time_limit_ms") = py::none());

  m.def("greedy_trace",
        [](const CoverageMatrix& c, std::uint32_t k, bool quadratic) {
          GreedyOptions opts;
          opts.record_trace = true;
          const auto r = solve_greedy(c, k, quadratic ? BenefitMode::Quadratic : BenefitMode::Linear, opts);
          py::list steps;
          for (const auto& s : r.trace)
            steps.append(py::make_tuple(s.chosen.sensor, s.chosen.pan.value, s.incentive, s.histogram));
          return steps;
        },
        py::arg("matrix"), py::arg("k"), py::arg("quadratic") = true,
        "List of (sensor, pan, incentive, histogram) activations.");

  m.def("brute_force",
        [](const CoverageMatrix& c, const std::string& objective, std::uint32_t k, std::optional<double> rho) {
          const ObjectiveSpec spec{parse_objective_kind(objective), k,
                                   rho.value_or(default_rho(c.sensor_count(), c.pan_count()))};
          const auto r = brute_force_optimum(c, spec);
          return py::make_tuple(from_assignment(r.assignment), r.value.value);
        },
        py::arg("matrix"), py::arg("objective"), py::arg("k") = 2, py::arg("rho") = py::none());

  m.def("sweep",
        [](const std::string& config_text) {
          std::istringstream in(config_text);
          const auto config = read_config(in);
          std::vector<ResultRow> rows;
          {
            py::gil_scoped_release release;
            rows = run_sweep(config);
          }
          std::ostringstream out;
          write_csv(out, rows);
          return out.str();
        },
        py::arg("config"), "Run a sweep from key=value config text; returns CSV.");
}
