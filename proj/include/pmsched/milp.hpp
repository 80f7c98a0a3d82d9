#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pmsched/flowgraph.hpp"
#include "pmsched/instance.hpp"
#include "pmsched/rational.hpp"

namespace pmsched {

enum class VarType { binary, integer, continuous };
enum class RowSense { le, eq, ge };

struct Variable {
  std::string name;
  Rational lower = 0;
  std::optional<Rational> upper;  // nullopt: +inf
  VarType type = VarType::continuous;
  Rational objective = 0;
};

struct LinearTerm {
  int var = 0;
  Rational coef = 0;
};

// coef * x_a * x_b
struct QuadraticTerm {
  int a = 0;
  int b = 0;
  Rational coef = 0;
};

struct Constraint {
  std::string name;
  RowSense sense = RowSense::le;
  Rational rhs = 0;
  std::vector<LinearTerm> terms;
};

// Solver-agnostic minimization model. The objective constant is kept apart;
// writers realize it through an auxiliary variable ONE fixed to 1.
class MilpModel {
 public:
  explicit MilpModel(std::string name) : name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }

  // Throws ArgumentError on duplicate names or lower > upper.
  int add_variable(std::string name, VarType type, Rational lower,
                   std::optional<Rational> upper, Rational objective = 0);
  // Throws ArgumentError when a term references an undeclared variable.
  void add_constraint(std::string name, RowSense sense, Rational rhs,
                      std::vector<LinearTerm> terms);
  void add_quadratic(int a, int b, Rational coef);
  void set_objective_constant(Rational c) { constant_ = std::move(c); }

  const std::vector<Variable>& variables() const noexcept { return vars_; }
  const std::vector<Constraint>& constraints() const noexcept { return rows_; }
  const std::vector<QuadraticTerm>& quadratic() const noexcept { return quad_; }
  const Rational& objective_constant() const noexcept { return constant_; }

  // -1 when absent.
  int find(std::string_view name) const;

  std::size_t count(VarType t) const;

 private:
  std::string name_;
  std::vector<Variable> vars_;
  std::vector<Constraint> rows_;
  std::vector<QuadraticTerm> quad_;
  Rational constant_ = 0;
  std::unordered_map<std::string, int> index_;
};

// Variable name -> value. Absent names read as 0.
using Valuation = std::map<std::string, Rational>;

// Time-indexed model: x_j_t = 1 iff job j starts at t, t in 0..T-p_j.
MilpModel build_ti(const Instance& inst, Time T);

// Σ_j (T - p_j + 1): the column count of build_ti without building it.
std::int64_t ti_variable_count(const Instance& inst, Time T);

// Assignment model with a quadratic objective: x_j_k = 1 iff job j runs on
// machine k; jobs on a machine follow WSPT order.
MilpModel build_ciqp(const Instance& inst);

// Preemptive time-indexed model: x_j_k_t is the share of job j processed on
// machine k in slot t (1..T); y_j_k ties all shares of j to one machine.
MilpModel build_pti(const Instance& inst, Time T);

// Flow models over an AF / EAF graph. Arc variables are named by
// arc_variable_name; rows are flow_<q> (conservation), cover_<j> (AF) and
// demand_t<j> (EAF).
MilpModel build_af_model(const FlowGraph& g, const Instance& inst);
MilpModel build_eaf_model(const FlowGraph& g, const JobTypeTable& types);

// x_<q>_<r>_<j> (AF), x_<q>_<r>_t<j> (EAF), L_<q> (loss arcs).
std::string arc_variable_name(const FlowGraph& g, const Arc& a);

// CPLEX LP text. Deterministic: variables in declaration order.
void emit_lp(std::ostream& out, const MilpModel& model);
std::string emit_lp_string(const MilpModel& model);

// Fixed-form MPS (columns aligned; names longer than 8 characters spill over
// their field and are then only readable as free MPS). Throws
// UnsupportedFormatError for models with quadratic terms.
void emit_mps(std::ostream& out, const MilpModel& model);
std::string emit_mps_string(const MilpModel& model);

enum class ModelKind { ti, af, eaf };

Valuation ti_valuation(const Instance& inst, const Schedule& sched, Time T);
Valuation flow_valuation(const FlowGraph& g, std::span<const std::int64_t> flow);

// Maps a schedule onto the variables of the matching model: TI uses start
// times, AF/EAF a unit of flow along each machine path. Throws MappingError
// when a start has no variable.
Valuation schedule_to_assignment(const Instance& inst, const Schedule& sched, Time T);
Valuation schedule_to_assignment(const FlowGraph& g, const Instance& inst, const Schedule& sched);

struct FeasibilityReport {
  bool feasible = true;
  std::vector<std::string> violated;  // constraint names, "bound:<var>", "integrality:<var>"
  Rational objective = 0;              // includes the constant
};

// Exact evaluation. Throws ValidationError on unknown variable names.
FeasibilityReport check_feasible(const MilpModel& model, const Valuation& v);

// "name value" lines, '#' comments, blank lines ignored.
Valuation parse_solution(std::istream& in);
Valuation parse_solution_string(std::string_view text);

// Rounds integer/binary variables that sit within tol of an integer. Throws
// ValidationError for unknown names or values that are not near-integral.
Valuation round_integral(const MilpModel& model, const Valuation& v, double tol = 1e-6);

// Per-arc flow read back from a valuation of build_af_model/build_eaf_model.
std::vector<std::int64_t> valuation_to_flow(const FlowGraph& g, const Valuation& v);

// Schedule from a TI valuation: jobs by start time, each on the lowest-index
// machine free at its start.
Schedule ti_valuation_to_schedule(const Instance& inst, const Valuation& v, Time T);

}  // namespace pmsched
