#include "pmsched/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

#include "CLI11.hpp"
#include "pmsched/bounds.hpp"
#include "pmsched/error.hpp"
#include "pmsched/flowgraph.hpp"
#include "pmsched/heuristic.hpp"
#include "pmsched/milp.hpp"
#include "pmsched/oracle.hpp"

namespace pmsched::cli {

namespace fs = std::filesystem;

void RunReport::print(std::ostream& out) const {
  out << "command: " << command << '\n';
  if (!digest.empty()) out << "instance: " << digest << '\n';
  for (const auto& [phase, ms] : timings_ms) {
    out << "time." << phase << "_ms: " << std::fixed << std::setprecision(3) << ms << '\n';
    out.unsetf(std::ios::floatfield);
  }
  for (const auto& path : outputs) out << "output: " << path << '\n';
  for (const auto& [k, v] : results) out << k << ": " << v << '\n';
}

const std::string* RunReport::result(const std::string& key) const {
  for (const auto& [k, v] : results) {
    if (k == key) return &v;
  }
  return nullptr;
}

std::string instance_digest(const Instance& inst) {
  return "n=" + std::to_string(inst.n()) + " m=" + std::to_string(inst.m()) +
         " sum_p=" + std::to_string(inst.total_p()) + " p_max=" + std::to_string(inst.p_max());
}

namespace {

class Stopwatch {
 public:
  double lap_ms() {
    const auto now = std::chrono::steady_clock::now();
    const double ms = std::chrono::duration<double, std::milli>(now - last_).count();
    last_ = now;
    return ms;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

Instance read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read instance file '" + path + "'");
  try {
    return parse_instance(in);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), path + ": " + std::string(e.what()));
  }
}

Schedule read_schedule_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read schedule file '" + path + "'");
  return parse_schedule(in);
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  out << text;
  if (!out) throw ValidationError("failed writing '" + path + "'");
}

// Flags shared by every command that builds an enhanced graph.
struct ReductionFlags {
  bool no_windows = false;
  bool no_types = false;
  bool no_tprime = false;
  bool strict_figure = false;
  std::string window_order = "wspt";

  void attach(CLI::App* app) {
    app->add_option("--window-order", window_order,
                    "Order behind the dominance sets of the time windows: wspt or input")
        ->check(CLI::IsMember({"wspt", "input"}));
    app->add_flag("--no-windows", no_windows, "Do not restrict starts to time windows (EAF)");
    app->add_flag("--no-types", no_types, "Do not merge identical jobs into types (EAF)");
    app->add_flag("--no-tprime", no_tprime, "Allow loss arcs below T' (EAF)");
    app->add_flag("--strict-figure", strict_figure,
                  "Drop the loss arc leaving node 0 (textbook arc counts)");
  }

  WindowOrder order() const {
    return window_order == "input" ? WindowOrder::input_id : WindowOrder::wspt_rank;
  }
  EafOptions eaf() const { return EafOptions{!no_windows, !no_tprime, strict_figure, order()}; }
  AfOptions af() const { return AfOptions{strict_figure}; }
};

struct BuiltGraph {
  FlowGraph graph;
  JobTypeTable types;
};

BuiltGraph make_graph(const Instance& inst, const std::string& kind, const ReductionFlags& f) {
  const Horizon h = compute_horizon(inst);
  if (kind == "af") return {build_af_graph(inst, h.T, f.af()), {}};
  JobTypeTable types = f.no_types ? singleton_job_types(inst) : group_job_types(inst);
  std::vector<Window> windows;
  if (!f.no_windows) windows = type_time_windows(types, time_windows(inst, h.T, f.order()));
  FlowGraph g = build_eaf_graph(inst, h, windows, types, f.eaf());
  return {std::move(g), std::move(types)};
}

void add_stats(RunReport& rep, const GraphStats& s) {
  rep.results.emplace_back("graph.nodes", std::to_string(s.node_count));
  rep.results.emplace_back("graph.job_arcs", std::to_string(s.job_arc_count));
  rep.results.emplace_back("graph.loss_arcs", std::to_string(s.loss_arc_count));
  rep.results.emplace_back("graph.variables", std::to_string(s.variable_count));
}

std::string join_args(const std::vector<std::string>& args) {
  std::string s = "pmsched";
  for (const auto& a : args) s += " " + a;
  return s;
}

std::string fixed(double v, int digits) {
  std::ostringstream o;
  o << std::fixed << std::setprecision(digits) << v;
  return o.str();
}

int shell_exit_status(int raw) {
  if (raw == -1) return -1;
  if (WIFEXITED(raw)) return WEXITSTATUS(raw);
  return 128 + (WIFSIGNALED(raw) ? WTERMSIG(raw) : 0);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path fresh_workdir() {
  static int counter = 0;
  const fs::path base = fs::temp_directory_path();
  for (;;) {
    fs::path p = base / ("pmsched-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    if (fs::create_directory(p)) return p;
  }
}

std::string replace_all(std::string s, const std::string& from, const std::string& to) {
  for (std::size_t pos = 0; (pos = s.find(from, pos)) != std::string::npos; pos += to.size()) {
    s.replace(pos, from.size(), to);
  }
  return s;
}

struct CompareRow {
  std::uint64_t seed = 0;
  Time T = 0;
  Time T_prime = 0;
  std::int64_t ti = 0, af = 0, eaf = 0;
};

CompareRow compare_one(int n, int m, Time pmax, Weight wmax, std::uint64_t seed,
                       const ReductionFlags& f) {
  const Instance inst = generate_instance(n, m, pmax, wmax, seed);
  const Horizon h = compute_horizon(inst);
  CompareRow row;
  row.seed = seed;
  row.T = h.T;
  row.T_prime = h.T_prime;
  row.ti = ti_variable_count(inst, h.T);
  row.af = graph_stats(build_af_graph(inst, h.T, f.af())).variable_count;
  row.eaf = graph_stats(make_graph(inst, "eaf", f).graph).variable_count;
  return row;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        RunReport* report_out) {
  CLI::App app{"Arc-flow, time-indexed and heuristic tools for P||sum wjCj"};
  app.name("pmsched");
  app.require_subcommand(1);

  RunReport rep;
  rep.command = join_args(args);
  Stopwatch clock;
  std::function<int()> action;

  // gen ----------------------------------------------------------------------
  struct {
    int n = 0, m = 0;
    Time pmax = 0;
    Weight wmax = 20;
    std::uint64_t seed = 1;
    std::string out;
  } gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random instance (p ~ U[1,pmax], w ~ U[1,wmax])");
  gen_cmd->add_option("--n", gen.n, "Job count")->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--m", gen.m, "Machine count")->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--pmax", gen.pmax, "Largest processing time")->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--wmax", gen.wmax, "Largest weight")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", gen.seed, "64-bit seed");
  gen_cmd->add_option("--out", gen.out, "Instance file to write")->required();
  gen_cmd->callback([&] {
    action = [&] {
      const Instance inst = generate_instance(gen.n, gen.m, gen.pmax, gen.wmax, gen.seed);
      rep.timings_ms.emplace_back("generate", clock.lap_ms());
      write_text_file(gen.out, write_instance_string(inst));
      rep.digest = instance_digest(inst);
      rep.outputs.push_back(gen.out);
      return kOk;
    };
  });

  // bounds -------------------------------------------------------------------
  std::string bounds_in, bounds_order = "wspt";
  auto* bounds_cmd = app.add_subcommand("bounds", "Print horizon bounds and time windows");
  bounds_cmd->add_option("--in", bounds_in, "Instance file")->required();
  bounds_cmd->add_option("--window-order", bounds_order, "wspt or input")
      ->check(CLI::IsMember({"wspt", "input"}));
  bounds_cmd->callback([&] {
    action = [&] {
      const Instance inst = read_instance_file(bounds_in);
      rep.digest = instance_digest(inst);
      const Horizon h = compute_horizon(inst);
      const TimeWindows tw = time_windows(
          inst, h.T, bounds_order == "input" ? WindowOrder::input_id : WindowOrder::wspt_rank);
      rep.timings_ms.emplace_back("bounds", clock.lap_ms());
      rep.results.emplace_back("H_min", format_decimal(h.h_min));
      rep.results.emplace_back("H_max", format_decimal(h.h_max));
      rep.results.emplace_back("T", std::to_string(h.T));
      rep.results.emplace_back("T_prime", std::to_string(h.T_prime));
      for (const auto& j : inst.jobs()) {
        const Window& w = tw[static_cast<std::size_t>(j.id - 1)];
        rep.results.emplace_back("window." + std::to_string(j.id),
                                 "[" + std::to_string(w.a) + ", " + std::to_string(w.b) + "]");
      }
      return kOk;
    };
  });

  // graph --------------------------------------------------------------------
  struct {
    std::string in, kind = "af", dot, stats = "text";
    ReductionFlags red;
  } graph;
  auto* graph_cmd = app.add_subcommand("graph", "Build an AF or EAF network; print stats, write DOT");
  graph_cmd->add_option("--in", graph.in, "Instance file")->required();
  graph_cmd->add_option("--kind", graph.kind, "af or eaf")->check(CLI::IsMember({"af", "eaf"}));
  graph_cmd->add_option("--dot", graph.dot, "Write Graphviz DOT here");
  graph_cmd->add_option("--stats", graph.stats, "text or csv")->check(CLI::IsMember({"text", "csv"}));
  graph.red.attach(graph_cmd);
  graph_cmd->callback([&] {
    action = [&] {
      const Instance inst = read_instance_file(graph.in);
      rep.digest = instance_digest(inst);
      const auto built = make_graph(inst, graph.kind, graph.red);
      rep.timings_ms.emplace_back("graph", clock.lap_ms());
      const GraphStats s = graph_stats(built.graph);
      if (!graph.dot.empty()) {
        write_text_file(graph.dot, to_dot(built.graph));
        rep.outputs.push_back(graph.dot);
      }
      if (graph.stats == "csv") {
        out << "kind,nodes,job_arcs,loss_arcs,variables\n"
            << graph.kind << ',' << s.node_count << ',' << s.job_arc_count << ','
            << s.loss_arc_count << ',' << s.variable_count << '\n';
      }
      add_stats(rep, s);
      return kOk;
    };
  });

  // model --------------------------------------------------------------------
  struct {
    std::string in, form, format = "lp", out;
    ReductionFlags red;
  } model;
  auto* model_cmd = app.add_subcommand("model", "Emit a MILP model as LP or MPS");
  model_cmd->add_option("--in", model.in, "Instance file")->required();
  model_cmd->add_option("--form", model.form, "ti, ciqp, pti, af or eaf")
      ->required()
      ->check(CLI::IsMember({"ti", "ciqp", "pti", "af", "eaf"}));
  model_cmd->add_option("--format", model.format, "lp or mps")->check(CLI::IsMember({"lp", "mps"}));
  model_cmd->add_option("--out", model.out, "Model file to write")->required();
  model.red.attach(model_cmd);
  model_cmd->callback([&] {
    action = [&] {
      const Instance inst = read_instance_file(model.in);
      rep.digest = instance_digest(inst);
      const Time T = horizon_T(inst);
      std::optional<MilpModel> mdl;
      if (model.form == "ti") {
        mdl = build_ti(inst, T);
      } else if (model.form == "ciqp") {
        mdl = build_ciqp(inst);
      } else if (model.form == "pti") {
        mdl = build_pti(inst, T);
      } else {
        const auto built = make_graph(inst, model.form, model.red);
        add_stats(rep, graph_stats(built.graph));
        mdl = model.form == "af" ? build_af_model(built.graph, inst)
                                 : build_eaf_model(built.graph, built.types);
      }
      rep.timings_ms.emplace_back("build", clock.lap_ms());
      const std::string text = model.format == "lp" ? emit_lp_string(*mdl) : emit_mps_string(*mdl);
      write_text_file(model.out, text);
      rep.timings_ms.emplace_back("emit", clock.lap_ms());
      rep.outputs.push_back(model.out);
      rep.results.emplace_back("model.variables", std::to_string(mdl->variables().size()));
      rep.results.emplace_back("model.binaries", std::to_string(mdl->count(VarType::binary)));
      rep.results.emplace_back("model.integers", std::to_string(mdl->count(VarType::integer)));
      rep.results.emplace_back("model.continuous", std::to_string(mdl->count(VarType::continuous)));
      rep.results.emplace_back("model.constraints", std::to_string(mdl->constraints().size()));
      rep.results.emplace_back("model.quadratic_terms", std::to_string(mdl->quadratic().size()));
      return kOk;
    };
  });

  // compare ------------------------------------------------------------------
  struct {
    int n = 0, m = 0, seeds = 10, jobs = 1;
    Time pmax = 20;
    Weight wmax = 20;
    std::uint64_t seed0 = 1;
    std::string out = "-";
    ReductionFlags red;
  } cmp;
  auto* cmp_cmd = app.add_subcommand("compare", "Variable counts of TI, AF and EAF over seeded instances (CSV)");
  cmp_cmd->add_option("--n", cmp.n, "Job count")->required()->check(CLI::PositiveNumber);
  cmp_cmd->add_option("--m", cmp.m, "Machine count")->required()->check(CLI::PositiveNumber);
  cmp_cmd->add_option("--pmax", cmp.pmax, "Largest processing time")->check(CLI::PositiveNumber);
  cmp_cmd->add_option("--wmax", cmp.wmax, "Largest weight")->check(CLI::PositiveNumber);
  cmp_cmd->add_option("--seeds", cmp.seeds, "Number of instances")->check(CLI::PositiveNumber);
  cmp_cmd->add_option("--seed0", cmp.seed0, "Seed of the first instance; the i-th uses seed0 + i");
  cmp_cmd->add_option("--jobs", cmp.jobs, "Worker threads")->check(CLI::PositiveNumber);
  cmp_cmd->add_option("--out", cmp.out, "CSV file, '-' for stdout");
  cmp.red.attach(cmp_cmd);
  cmp_cmd->callback([&] {
    action = [&] {
      std::vector<CompareRow> rows(static_cast<std::size_t>(cmp.seeds));
      const auto workers = static_cast<std::size_t>(std::min(cmp.jobs, cmp.seeds));
      std::vector<std::future<void>> pool;
      for (std::size_t w = 0; w < workers; ++w) {
        pool.push_back(std::async(std::launch::async, [&, w] {
          for (std::size_t i = w; i < rows.size(); i += workers) {
            rows[i] = compare_one(cmp.n, cmp.m, cmp.pmax, cmp.wmax, cmp.seed0 + i, cmp.red);
          }
        }));
      }
      for (auto& f : pool) f.get();
      rep.timings_ms.emplace_back("compare", clock.lap_ms());

      std::ostringstream csv;
      csv << "# pmsched-compare v1\n";
      csv << "seed,n,m,pmax,wmax,T,T_prime,ti_vars,af_vars,eaf_vars,red_af_vs_ti,red_eaf_vs_af\n";
      double ti = 0, af = 0, eaf = 0;
      for (const auto& r : rows) {
        csv << r.seed << ',' << cmp.n << ',' << cmp.m << ',' << cmp.pmax << ',' << cmp.wmax << ','
            << r.T << ',' << r.T_prime << ',' << r.ti << ',' << r.af << ',' << r.eaf << ','
            << fixed(reduction_percent(double(r.ti), double(r.af)), 2) << ','
            << fixed(reduction_percent(double(r.af), double(r.eaf)), 2) << '\n';
        ti += double(r.ti);
        af += double(r.af);
        eaf += double(r.eaf);
      }
      const double k = double(rows.size());
      ti /= k, af /= k, eaf /= k;
      csv << "mean," << cmp.n << ',' << cmp.m << ',' << cmp.pmax << ',' << cmp.wmax << ",,,"
          << fixed(ti, 1) << ',' << fixed(af, 1) << ',' << fixed(eaf, 1) << ','
          << fixed(reduction_percent(ti, af), 2) << ',' << fixed(reduction_percent(af, eaf), 2)
          << '\n';
      if (cmp.out == "-") {
        out << csv.str();
      } else {
        write_text_file(cmp.out, csv.str());
        rep.outputs.push_back(cmp.out);
      }
      rep.results.emplace_back("mean.ti_vars", fixed(ti, 1));
      rep.results.emplace_back("mean.af_vars", fixed(af, 1));
      rep.results.emplace_back("mean.eaf_vars", fixed(eaf, 1));
      rep.results.emplace_back("red.af_vs_ti", fixed(reduction_percent(ti, af), 2));
      rep.results.emplace_back("red.eaf_vs_af", fixed(reduction_percent(af, eaf), 2));
      return kOk;
    };
  });

  // solve-heur ---------------------------------------------------------------
  struct {
    std::string in, out;
    IlsConfig cfg;
    std::optional<double> time;
    bool size_budget = false;
  } heur;
  auto* heur_cmd = app.add_subcommand("solve-heur", "Iterated local search upper bound");
  heur_cmd->add_option("--in", heur.in, "Instance file")->required();
  heur_cmd->add_option("--seed", heur.cfg.seed, "64-bit seed");
  heur_cmd->add_option("--iters", heur.cfg.max_iterations, "Iteration budget")->check(CLI::PositiveNumber);
  heur_cmd->add_option("--time", heur.time,
                       "Wall-clock budget in seconds")
      ->check(CLI::PositiveNumber);
  heur_cmd->add_flag("--size-budget", heur.size_budget,
                     "Budget 100 s when 100 < n < 400 and 300 s when n >= 400, unless --time is given");
  heur_cmd->add_option("--alpha", heur.cfg.alpha, "GRASP candidate-list width")->check(CLI::Range(0.0, 1.0));
  heur_cmd->add_option("--strength", heur.cfg.perturbation_strength, "Moves per perturbation")
      ->check(CLI::PositiveNumber);
  heur_cmd->add_option("--out", heur.out, "Schedule file to write");
  heur_cmd->callback([&] {
    action = [&] {
      const Instance inst = read_instance_file(heur.in);
      rep.digest = instance_digest(inst);
      IlsConfig cfg = heur.cfg;
      if (!heur.time && heur.size_budget) {
        if (inst.n() >= 400) {
          heur.time = 300.0;
        } else if (inst.n() > 100) {
          heur.time = 100.0;
        }
      }
      if (heur.time) {
        cfg.time_limit_seconds = heur.time;
        if (heur_cmd->count("--iters") == 0) cfg.max_iterations = std::numeric_limits<int>::max();
      }
      const IlsResult res = ils(inst, cfg);
      rep.timings_ms.emplace_back("ils", clock.lap_ms());
      if (!heur.out.empty()) {
        write_text_file(heur.out, write_schedule_string(inst, res.schedule));
        rep.outputs.push_back(heur.out);
      }
      rep.results.emplace_back("objective", std::to_string(res.value));
      rep.results.emplace_back("iterations", std::to_string(res.iterations));
      rep.results.emplace_back("deterministic", res.deterministic ? "yes" : "no");
      return kOk;
    };
  });

  // solve-exact --------------------------------------------------------------
  struct {
    std::string in, out;
    bool all = false;
    double guard = kDefaultOracleGuard;
  } exact;
  auto* exact_cmd = app.add_subcommand("solve-exact", "Brute-force optimum for tiny instances");
  exact_cmd->add_option("--in", exact.in, "Instance file")->required();
  exact_cmd->add_option("--out", exact.out, "Schedule file to write");
  exact_cmd->add_flag("--all-optima", exact.all, "Count every optimal job partition");
  exact_cmd->add_option("--guard", exact.guard, "Refuse when m^n exceeds this")->check(CLI::PositiveNumber);
  exact_cmd->callback([&] {
    action = [&] {
      const Instance inst = read_instance_file(exact.in);
      rep.digest = instance_digest(inst);
      const OracleResult res = brute_force_optimal(inst, exact.all, exact.guard);
      rep.timings_ms.emplace_back("enumerate", clock.lap_ms());
      if (!exact.out.empty()) {
        write_text_file(exact.out, write_schedule_string(inst, res.schedule));
        rep.outputs.push_back(exact.out);
      }
      rep.results.emplace_back("objective", std::to_string(res.optimum));
      if (exact.all) rep.results.emplace_back("optima", std::to_string(res.optima.size()));
      return kOk;
    };
  });

  // check --------------------------------------------------------------------
  struct {
    std::string in, sched, form;
    ReductionFlags red;
  } chk;
  auto* check_cmd = app.add_subcommand("check", "Map a schedule into a model and verify it");
  check_cmd->add_option("--in", chk.in, "Instance file")->required();
  check_cmd->add_option("--sched", chk.sched, "Schedule file")->required();
  check_cmd->add_option("--form", chk.form, "ti, af or eaf")->required()->check(CLI::IsMember({"ti", "af", "eaf"}));
  chk.red.attach(check_cmd);
  check_cmd->callback([&] {
    action = [&] {
      const Instance inst = read_instance_file(chk.in);
      rep.digest = instance_digest(inst);
      const Schedule sched = read_schedule_file(chk.sched);
      validate_schedule(inst, sched);
      const Time T = horizon_T(inst);
      std::optional<MilpModel> mdl;
      Valuation val;
      try {
        if (chk.form == "ti") {
          mdl = build_ti(inst, T);
          val = schedule_to_assignment(inst, sched, T);
        } else {
          const auto built = make_graph(inst, chk.form, chk.red);
          mdl = chk.form == "af" ? build_af_model(built.graph, inst)
                                 : build_eaf_model(built.graph, built.types);
          val = schedule_to_assignment(built.graph, inst, sched);
        }
      } catch (const MappingError& e) {
        rep.results.emplace_back("feasible", "no");
        rep.results.emplace_back("mapping_error", e.what());
        return kInput;
      }
      const FeasibilityReport fr = check_feasible(*mdl, val);
      rep.timings_ms.emplace_back("check", clock.lap_ms());
      rep.results.emplace_back("feasible", fr.feasible ? "yes" : "no");
      rep.results.emplace_back("objective", format_decimal(fr.objective));
      rep.results.emplace_back("schedule_objective", std::to_string(evaluate_schedule(inst, sched)));
      if (!fr.feasible) {
        std::string v;
        for (const auto& name : fr.violated) v += (v.empty() ? "" : " ") + name;
        rep.results.emplace_back("violated", v);
        return kInput;
      }
      return kOk;
    };
  });

  // solve-external -----------------------------------------------------------
  struct {
    std::string in, form = "eaf", solver, out, workdir;
    ReductionFlags red;
  } ext;
  auto* ext_cmd = app.add_subcommand("solve-external", "Solve a model with an external MILP solver");
  ext_cmd->add_option("--in", ext.in, "Instance file")->required();
  ext_cmd->add_option("--form", ext.form, "ti, af or eaf")->check(CLI::IsMember({"ti", "af", "eaf"}));
  ext_cmd->add_option("--solver-cmd", ext.solver,
                      std::string("Command template with {model} and {solution}; default $") + kSolverEnv);
  ext_cmd->add_option("--out", ext.out, "Schedule file to write");
  ext_cmd->add_option("--workdir", ext.workdir, "Directory for the model and solution files");
  ext.red.attach(ext_cmd);
  ext_cmd->callback([&] {
    action = [&] {
      if (ext.solver.empty()) {
        if (const char* env = std::getenv(kSolverEnv)) ext.solver = env;
      }
      if (ext.solver.empty()) {
        throw ExternalSolverError(std::string("no solver configured: pass --solver-cmd or set ") +
                                  kSolverEnv);
      }
      const Instance inst = read_instance_file(ext.in);
      rep.digest = instance_digest(inst);
      const Time T = horizon_T(inst);
      std::optional<BuiltGraph> built;
      std::optional<MilpModel> mdl;
      if (ext.form == "ti") {
        mdl = build_ti(inst, T);
      } else {
        built = make_graph(inst, ext.form, ext.red);
        add_stats(rep, graph_stats(built->graph));
        mdl = ext.form == "af" ? build_af_model(built->graph, inst)
                               : build_eaf_model(built->graph, built->types);
      }
      const fs::path dir = ext.workdir.empty() ? fresh_workdir() : fs::path(ext.workdir);
      fs::create_directories(dir);
      const fs::path model_path = dir / "model.lp";
      const fs::path sol_path = dir / "solution.txt";
      const fs::path err_path = dir / "solver.stderr";
      fs::remove(sol_path);
      write_text_file(model_path.string(), emit_lp_string(*mdl));
      rep.outputs.push_back(model_path.string());
      rep.timings_ms.emplace_back("build", clock.lap_ms());

      std::string cmd = replace_all(ext.solver, "{model}", model_path.string());
      cmd = replace_all(cmd, "{solution}", sol_path.string());
      const int status = shell_exit_status(std::system((cmd + " 2> '" + err_path.string() + "'").c_str()));
      rep.timings_ms.emplace_back("solve", clock.lap_ms());
      const std::string captured = slurp(err_path);
      const std::string sol_text = fs::exists(sol_path) ? slurp(sol_path) : std::string();
      if (sol_text.find("# status") != std::string::npos &&
          sol_text.find("nfeasible") != std::string::npos) {
        throw ExternalSolverError(
            "solver reported the model infeasible; with T from the H_max bound every model is "
            "feasible, so this is a bug in the model generator");
      }
      if (status == 127) {
        throw ExternalSolverError("solver command not found: " + cmd + "\n" + captured);
      }
      if (status != 0) {
        throw ExternalSolverError("solver exited with status " + std::to_string(status) + "\n" +
                                  captured);
      }
      if (!fs::exists(sol_path)) {
        throw ExternalSolverError("solver wrote no solution file at " + sol_path.string() + "\n" +
                                  captured);
      }
      Valuation raw;
      try {
        raw = parse_solution_string(sol_text);
      } catch (const ParseError& e) {
        throw ExternalSolverError(std::string("unparsable solver output: ") + e.what());
      }
      raw.erase("ONE");
      Valuation val;
      try {
        val = round_integral(*mdl, raw);
      } catch (const ValidationError& e) {
        throw ExternalSolverError(std::string("solver output rejected: ") + e.what());
      }
      const FeasibilityReport fr = check_feasible(*mdl, val);
      if (!fr.feasible) {
        throw ExternalSolverError("solver solution violates " + fr.violated.front());
      }
      Schedule sched;
      if (ext.form == "ti") {
        sched = ti_valuation_to_schedule(inst, val, T);
      } else {
        sched = decompose_flow(built->graph, valuation_to_flow(built->graph, val), inst.m());
      }
      rep.timings_ms.emplace_back("decode", clock.lap_ms());
      if (!ext.out.empty()) {
        write_text_file(ext.out, write_schedule_string(inst, sched));
        rep.outputs.push_back(ext.out);
      }
      rep.outputs.push_back(sol_path.string());
      rep.results.emplace_back("model_objective", format_decimal(fr.objective));
      rep.results.emplace_back("objective", std::to_string(evaluate_schedule(inst, sched)));
      return kOk;
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  int code = kOk;
  try {
    code = action();
  } catch (const SizeGuardError& e) {
    err << "error: " << e.what() << '\n';
    return kSizeGuard;
  } catch (const ExternalSolverError& e) {
    err << "error: " << e.what() << '\n';
    return kExternal;
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInput;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kInput;
  }
  rep.print(out);
  if (report_out) *report_out = rep;
  return code;
}

}  // namespace pmsched::cli
