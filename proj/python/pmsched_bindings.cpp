#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pmsched/bounds.hpp"
#include "pmsched/error.hpp"
#include "pmsched/flowgraph.hpp"
#include "pmsched/heuristic.hpp"
#include "pmsched/milp.hpp"
#include "pmsched/oracle.hpp"

namespace py = pybind11;
using namespace pmsched;

namespace {

using Machines = std::vector<std::vector<JobId>>;

Instance make_instance(int m, const std::vector<std::pair<Time, Weight>>& jobs) {
  return Instance(m, jobs);
}

std::vector<std::pair<Time, Weight>> job_pairs(const Instance& inst) {
  std::vector<std::pair<Time, Weight>> out;
  for (const auto& j : inst.jobs()) out.emplace_back(j.p, j.w);
  return out;
}

FlowGraph graph_for(const Instance& inst, const std::string& kind, bool strict_figure) {
  if (kind == "af") return build_af_graph(inst, horizon_T(inst), AfOptions{strict_figure});
  if (kind == "eaf") {
    EafOptions opts;
    opts.strict_figure = strict_figure;
    return build_eaf_graph(inst, opts);
  }
  throw ArgumentError("unknown graph kind '" + kind + "' (expected af or eaf)");
}

MilpModel model_for(const Instance& inst, const std::string& form) {
  const Time T = horizon_T(inst);
  if (form == "ti") return build_ti(inst, T);
  if (form == "ciqp") return build_ciqp(inst);
  if (form == "pti") return build_pti(inst, T);
  if (form == "af") return build_af_model(build_af_graph(inst, T), inst);
  if (form == "eaf") return build_eaf_model(build_eaf_graph(inst), group_job_types(inst));
  throw ArgumentError("unknown model form '" + form + "'");
}

py::dict check_schedule(const Instance& inst, const Machines& machines, const std::string& form) {
  const Schedule sched{machines};
  validate_schedule(inst, sched);
  const Time T = horizon_T(inst);
  std::optional<MilpModel> model;
  Valuation val;
  if (form == "ti") {
    model = build_ti(inst, T);
    val = schedule_to_assignment(inst, sched, T);
  } else if (form == "af" || form == "eaf") {
    const FlowGraph g = graph_for(inst, form, false);
    model = form == "af" ? build_af_model(g, inst) : build_eaf_model(g, group_job_types(inst));
    val = schedule_to_assignment(g, inst, sched);
  } else {
    throw ArgumentError("unknown model form '" + form + "' (expected ti, af or eaf)");
  }
  const FeasibilityReport r = check_feasible(*model, val);
  py::dict d;
  d["feasible"] = r.feasible;
  d["violated"] = r.violated;
  d["objective"] = format_decimal(r.objective);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Arc-flow models, bounds and heuristics for P||sum wjCj";

  static py::exception<Error> error(m, "PmschedError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  py::class_<Instance>(m, "Instance")
      .def(py::init(&make_instance), py::arg("m"), py::arg("jobs"))
      .def_property_readonly("n", &Instance::n)
      .def_property_readonly("m", &Instance::m)
      .def_property_readonly("jobs", &job_pairs)
      .def("__eq__", [](const Instance& a, const Instance& b) { return a == b; })
      .def("__repr__", [](const Instance& i) {
        return "Instance(n=" + std::to_string(i.n()) + ", m=" + std::to_string(i.m()) + ")";
      });

  m.def("parse_instance", [](const std::string& s) { return parse_instance_string(s); });
  m.def("write_instance", &write_instance_string);
  m.def("generate_instance", &generate_instance, py::arg("n"), py::arg("m"), py::arg("p_max"),
        py::arg("w_max") = 20, py::arg("seed") = 1);
  m.def("wspt_order", &wspt_order);
  m.def("job_types", [](const Instance& inst) {
    py::list out;
    for (const auto& t : group_job_types(inst)) {
      py::dict d;
      d["p"] = t.p;
      d["w"] = t.w;
      d["d"] = t.d;
      d["members"] = t.members;
      out.append(d);
    }
    return out;
  });
  m.def("evaluate_schedule", [](const Instance& inst, const Machines& machines) {
    return evaluate_schedule(inst, Schedule{machines});
  });

  m.def("horizon", [](const Instance& inst) {
    const Horizon h = compute_horizon(inst);
    py::dict d;
    d["T"] = h.T;
    d["T_prime"] = h.T_prime;
    d["H_min"] = format_decimal(h.h_min);
    d["H_max"] = format_decimal(h.h_max);
    return d;
  });
  m.def("time_windows", [](const Instance& inst) {
    std::vector<std::pair<Time, Time>> out;
    for (const auto& w : time_windows(inst, horizon_T(inst))) out.emplace_back(w.a, w.b);
    return out;
  });

  m.def("normal_patterns", [](const std::vector<std::pair<Time, int>>& items, Time T) {
    return normal_patterns(items, T);
  });
  m.def(
      "graph_stats",
      [](const Instance& inst, const std::string& kind, bool strict_figure) {
        const GraphStats s = graph_stats(graph_for(inst, kind, strict_figure));
        py::dict d;
        d["nodes"] = s.node_count;
        d["job_arcs"] = s.job_arc_count;
        d["loss_arcs"] = s.loss_arc_count;
        d["variables"] = s.variable_count;
        return d;
      },
      py::arg("inst"), py::arg("kind") = "af", py::arg("strict_figure") = false);
  m.def(
      "to_dot",
      [](const Instance& inst, const std::string& kind) { return to_dot(graph_for(inst, kind, false)); },
      py::arg("inst"), py::arg("kind") = "af");

  m.def(
      "emit_model",
      [](const Instance& inst, const std::string& form, const std::string& format) {
        const MilpModel model = model_for(inst, form);
        if (format == "lp") return emit_lp_string(model);
        if (format == "mps") return emit_mps_string(model);
        throw ArgumentError("unknown model format '" + format + "' (expected lp or mps)");
      },
      py::arg("inst"), py::arg("form"), py::arg("format") = "lp");
  m.def("check_schedule", &check_schedule, py::arg("inst"), py::arg("machines"), py::arg("form"));

  m.def(
      "solve_heuristic",
      [](const Instance& inst, std::uint64_t seed, int iterations, double alpha, int strength) {
        IlsConfig cfg;
        cfg.seed = seed;
        cfg.max_iterations = iterations;
        cfg.alpha = alpha;
        cfg.perturbation_strength = strength;
        IlsResult r;
        {
          py::gil_scoped_release release;
          r = ils(inst, cfg);
        }
        return py::make_tuple(r.value, r.schedule.machines, r.iterations);
      },
      py::arg("inst"), py::arg("seed") = 1, py::arg("iterations") = 1000, py::arg("alpha") = 0.3,
      py::arg("strength") = 2);
  m.def(
      "solve_exact",
      [](const Instance& inst, double guard) {
        OracleResult r;
        {
          py::gil_scoped_release release;
          r = brute_force_optimal(inst, false, guard);
        }
        return py::make_tuple(r.optimum, r.schedule.machines);
      },
      py::arg("inst"), py::arg("guard") = kDefaultOracleGuard);
}
