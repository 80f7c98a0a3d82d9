#include "pmsched/milp.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <sstream>

#include "pmsched/error.hpp"

namespace pmsched {

int MilpModel::add_variable(std::string name, VarType type, Rational lower,
                            std::optional<Rational> upper, Rational objective) {
  if (index_.count(name)) throw ArgumentError("duplicate variable name '" + name + "'");
  if (upper && lower > *upper) throw ArgumentError("variable '" + name + "' has lower > upper");
  const int idx = static_cast<int>(vars_.size());
  index_.emplace(name, idx);
  vars_.push_back(Variable{std::move(name), std::move(lower), std::move(upper), type,
                           std::move(objective)});
  return idx;
}

void MilpModel::add_constraint(std::string name, RowSense sense, Rational rhs,
                               std::vector<LinearTerm> terms) {
  for (const auto& t : terms) {
    if (t.var < 0 || t.var >= static_cast<int>(vars_.size())) {
      throw ArgumentError("constraint '" + name + "' references an undeclared variable");
    }
  }
  rows_.push_back(Constraint{std::move(name), sense, std::move(rhs), std::move(terms)});
}

void MilpModel::add_quadratic(int a, int b, Rational coef) {
  const int n = static_cast<int>(vars_.size());
  if (a < 0 || a >= n || b < 0 || b >= n) {
    throw ArgumentError("quadratic term references an undeclared variable");
  }
  quad_.push_back(QuadraticTerm{a, b, std::move(coef)});
}

int MilpModel::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  return it == index_.end() ? -1 : it->second;
}

std::size_t MilpModel::count(VarType t) const {
  return static_cast<std::size_t>(
      std::count_if(vars_.begin(), vars_.end(), [t](const Variable& v) { return v.type == t; }));
}

namespace {

std::string ti_name(JobId j, Time t) {
  return "x_" + std::to_string(j) + "_" + std::to_string(t);
}

void require_horizon(const Instance& inst, Time T) {
  if (T < inst.p_max()) {
    throw InfeasibleHorizonError("horizon " + std::to_string(T) +
                                 " is shorter than the longest job (" +
                                 std::to_string(inst.p_max()) + ")");
  }
}

Rational weighted_p_sum(const Instance& inst) {
  std::int64_t s = 0;
  for (const auto& j : inst.jobs()) s += j.w * j.p;
  return s;
}

}  // namespace

MilpModel build_ti(const Instance& inst, Time T) {
  require_horizon(inst, T);
  MilpModel model("ti");
  // first[j-1] is the index of x_j_0; x_j_t follows contiguously.
  std::vector<int> first;
  for (const auto& j : inst.jobs()) {
    first.push_back(static_cast<int>(model.variables().size()));
    for (Time t = 0; t <= T - j.p; ++t) {
      model.add_variable(ti_name(j.id, t), VarType::binary, 0, Rational(1), Rational(j.w * t));
    }
  }
  model.set_objective_constant(weighted_p_sum(inst));

  for (const auto& j : inst.jobs()) {
    std::vector<LinearTerm> terms;
    for (Time t = 0; t <= T - j.p; ++t) {
      terms.push_back({first[static_cast<std::size_t>(j.id - 1)] + static_cast<int>(t), 1});
    }
    model.add_constraint("assign_" + std::to_string(j.id), RowSense::eq, 1, std::move(terms));
  }
  for (Time t = 0; t < T; ++t) {
    std::vector<LinearTerm> terms;
    for (const auto& j : inst.jobs()) {
      const Time lo = std::max<Time>(0, t + 1 - j.p);
      const Time hi = std::min<Time>(t, T - j.p);
      for (Time s = lo; s <= hi; ++s) {
        terms.push_back({first[static_cast<std::size_t>(j.id - 1)] + static_cast<int>(s), 1});
      }
    }
    model.add_constraint("cap_" + std::to_string(t), RowSense::le, inst.m(), std::move(terms));
  }
  return model;
}

std::int64_t ti_variable_count(const Instance& inst, Time T) {
  std::int64_t n = 0;
  for (const auto& j : inst.jobs()) n += std::max<Time>(0, T - j.p + 1);
  return n;
}

MilpModel build_ciqp(const Instance& inst) {
  MilpModel model("ciqp");
  const int m = inst.m();
  auto var = [m](JobId j, int k) { return (j - 1) * m + (k - 1); };
  for (const auto& j : inst.jobs()) {
    for (int k = 1; k <= m; ++k) {
      model.add_variable("x_" + std::to_string(j.id) + "_" + std::to_string(k), VarType::binary,
                         0, Rational(1), Rational(j.w * j.p));
    }
  }
  for (const auto& j : inst.jobs()) {
    std::vector<LinearTerm> terms;
    for (int k = 1; k <= m; ++k) terms.push_back({var(j.id, k), 1});
    model.add_constraint("assign_" + std::to_string(j.id), RowSense::eq, 1, std::move(terms));
  }
  // Job j waits for every i ahead of it in WSPT order on the same machine.
  const auto order = wspt_order(inst);
  for (int k = 1; k <= m; ++k) {
    for (std::size_t pj = 0; pj < order.size(); ++pj) {
      const Job& j = inst.job(order[pj]);
      for (std::size_t pi = 0; pi < pj; ++pi) {
        const Job& i = inst.job(order[pi]);
        model.add_quadratic(var(i.id, k), var(j.id, k), Rational(j.w * i.p));
      }
    }
  }
  return model;
}

MilpModel build_pti(const Instance& inst, Time T) {
  require_horizon(inst, T);
  MilpModel model("pti");
  const int m = inst.m();
  auto x_index = [&](JobId j, int k, Time t) {
    return static_cast<int>(((j - 1) * m + (k - 1)) * T + (t - 1));
  };
  for (const auto& j : inst.jobs()) {
    for (int k = 1; k <= m; ++k) {
      for (Time t = 1; t <= T; ++t) {
        const Rational coef = Rational(j.w, j.p) * (Rational(t) + Rational(j.p - 1, 2));
        model.add_variable("x_" + std::to_string(j.id) + "_" + std::to_string(k) + "_" +
                               std::to_string(t),
                           VarType::continuous, 0, std::nullopt, coef);
      }
    }
  }
  const int y0 = static_cast<int>(model.variables().size());
  auto y_index = [&](JobId j, int k) { return y0 + (j - 1) * m + (k - 1); };
  for (const auto& j : inst.jobs()) {
    for (int k = 1; k <= m; ++k) {
      model.add_variable("y_" + std::to_string(j.id) + "_" + std::to_string(k), VarType::binary,
                         0, Rational(1));
    }
  }
  for (const auto& j : inst.jobs()) {
    for (int k = 1; k <= m; ++k) {
      std::vector<LinearTerm> terms;
      for (Time t = 1; t <= T; ++t) terms.push_back({x_index(j.id, k, t), 1});
      terms.push_back({y_index(j.id, k), Rational(-j.p)});
      model.add_constraint("split_" + std::to_string(j.id) + "_" + std::to_string(k),
                           RowSense::eq, 0, std::move(terms));
    }
  }
  for (int k = 1; k <= m; ++k) {
    for (Time t = 1; t <= T; ++t) {
      std::vector<LinearTerm> terms;
      for (const auto& j : inst.jobs()) terms.push_back({x_index(j.id, k, t), 1});
      model.add_constraint("unit_" + std::to_string(k) + "_" + std::to_string(t), RowSense::le,
                           1, std::move(terms));
    }
  }
  for (const auto& j : inst.jobs()) {
    std::vector<LinearTerm> terms;
    for (int k = 1; k <= m; ++k) terms.push_back({y_index(j.id, k), 1});
    model.add_constraint("assign_" + std::to_string(j.id), RowSense::eq, 1, std::move(terms));
  }
  return model;
}

std::string arc_variable_name(const FlowGraph& g, const Arc& a) {
  if (a.kind == ArcKind::loss) return "L_" + std::to_string(a.tail);
  return "x_" + std::to_string(a.tail) + "_" + std::to_string(a.head) + "_" +
         (g.kind == GraphKind::eaf ? "t" : "") + std::to_string(a.label);
}

namespace {

struct LabelData {
  Weight w;
  std::int64_t demand;
};

MilpModel build_flow_model(const FlowGraph& g, const std::vector<LabelData>& labels,
                           Rational constant, const char* name) {
  MilpModel model(name);
  const bool eaf = g.kind == GraphKind::eaf;
  for (const auto& a : g.arcs) {
    if (a.kind == ArcKind::loss) {
      model.add_variable(arc_variable_name(g, a), VarType::integer, 0, Rational(g.machines));
    } else {
      const auto& lab = labels.at(static_cast<std::size_t>(a.label - 1));
      model.add_variable(arc_variable_name(g, a), eaf ? VarType::integer : VarType::binary, 0,
                         Rational(a.capacity), Rational(lab.w * a.tail));
    }
  }
  model.set_objective_constant(std::move(constant));

  std::vector<std::vector<LinearTerm>> node_terms(static_cast<std::size_t>(g.horizon) + 1);
  std::vector<std::vector<LinearTerm>> label_terms(labels.size());
  for (std::size_t i = 0; i < g.arcs.size(); ++i) {
    const Arc& a = g.arcs[i];
    const int var = static_cast<int>(i);
    node_terms[static_cast<std::size_t>(a.tail)].push_back({var, 1});
    node_terms[static_cast<std::size_t>(a.head)].push_back({var, -1});
    if (a.kind == ArcKind::job) label_terms[static_cast<std::size_t>(a.label - 1)].push_back({var, 1});
  }
  for (Time q : g.nodes) {
    const std::int64_t rhs = q == 0 ? g.machines : (q == g.horizon ? -g.machines : 0);
    auto& terms = node_terms[static_cast<std::size_t>(q)];
    std::stable_sort(terms.begin(), terms.end(),
                     [](const LinearTerm& x, const LinearTerm& y) { return x.var < y.var; });
    model.add_constraint("flow_" + std::to_string(q), RowSense::eq, rhs, std::move(terms));
  }
  for (std::size_t l = 0; l < labels.size(); ++l) {
    const std::string row = eaf ? "demand_t" + std::to_string(l + 1) : "cover_" + std::to_string(l + 1);
    model.add_constraint(row, RowSense::ge, labels[l].demand, std::move(label_terms[l]));
  }
  return model;
}

}  // namespace

MilpModel build_af_model(const FlowGraph& g, const Instance& inst) {
  if (g.kind != GraphKind::af) throw ArgumentError("build_af_model needs an AF graph");
  std::vector<LabelData> labels;
  for (const auto& j : inst.jobs()) labels.push_back({j.w, 1});
  return build_flow_model(g, labels, weighted_p_sum(inst), "af");
}

MilpModel build_eaf_model(const FlowGraph& g, const JobTypeTable& types) {
  if (g.kind != GraphKind::eaf) throw ArgumentError("build_eaf_model needs an EAF graph");
  std::vector<LabelData> labels;
  std::int64_t constant = 0;
  for (const auto& t : types) {
    labels.push_back({t.w, t.d});
    constant += t.d * t.w * t.p;
  }
  return build_flow_model(g, labels, constant, "eaf");
}

// ---------------------------------------------------------------------------
// Writers

namespace {

constexpr std::size_t kLpLineWidth = 200;

class LpLine {
 public:
  LpLine(std::ostream& out, std::string head) : out_(out), line_(std::move(head)) {}

  void term(const Rational& coef, const std::string& name) {
    std::string piece;
    const bool neg = coef < 0;
    const Rational mag = neg ? Rational(-coef) : coef;
    if (first_) {
      piece = neg ? "- " : "";
    } else {
      piece = neg ? " - " : " + ";
    }
    if (mag != 1) piece += format_decimal(mag) + " ";
    piece += name;
    append(piece);
    first_ = false;
  }

  void raw(const std::string& piece) {
    append(piece);
    first_ = false;
  }

  bool empty() const noexcept { return first_; }

  void finish(const std::string& tail) {
    append(tail);
    out_ << line_ << '\n';
  }

 private:
  void append(const std::string& piece) {
    if (line_.size() + piece.size() > kLpLineWidth) {
      out_ << line_ << '\n';
      line_ = "   ";
    }
    line_ += piece;
  }

  std::ostream& out_;
  std::string line_;
  bool first_ = true;
};

const char* sense_text(RowSense s) {
  switch (s) {
    case RowSense::le: return "<=";
    case RowSense::eq: return "=";
    case RowSense::ge: return ">=";
  }
  return "=";
}

}  // namespace

void emit_lp(std::ostream& out, const MilpModel& model) {
  const auto& vars = model.variables();
  const bool has_one = model.objective_constant() != 0;

  out << "\\ Problem: " << model.name() << '\n';
  out << "Minimize\n";
  LpLine obj(out, " obj: ");
  for (const auto& v : vars) {
    if (v.objective != 0) obj.term(v.objective, v.name);
  }
  if (has_one) obj.term(model.objective_constant(), "ONE");
  if (!model.quadratic().empty()) {
    obj.raw(obj.empty() ? "[ " : " + [ ");
    bool first = true;
    for (const auto& q : model.quadratic()) {
      const Rational c = q.coef * 2;
      std::string piece = first ? (c < 0 ? "- " : "") : (c < 0 ? " - " : " + ");
      const Rational mag = c < 0 ? Rational(-c) : c;
      piece += format_decimal(mag) + " ";
      piece += q.a == q.b ? vars[static_cast<std::size_t>(q.a)].name + " ^ 2"
                          : vars[static_cast<std::size_t>(q.a)].name + " * " +
                                vars[static_cast<std::size_t>(q.b)].name;
      obj.raw(piece);
      first = false;
    }
    obj.raw(" ] / 2");
  }
  if (obj.empty() && !vars.empty()) obj.raw("0 " + vars.front().name);
  obj.finish("");

  out << "Subject To\n";
  for (const auto& row : model.constraints()) {
    LpLine line(out, " " + row.name + ": ");
    for (const auto& t : row.terms) line.term(t.coef, vars[static_cast<std::size_t>(t.var)].name);
    if (line.empty()) line.raw("0 " + (vars.empty() ? std::string("ONE") : vars.front().name));
    line.finish(std::string(" ") + sense_text(row.sense) + " " + format_decimal(row.rhs));
  }

  out << "Bounds\n";
  for (const auto& v : vars) {
    if (v.type == VarType::binary && v.lower == 0 && v.upper && *v.upper == 1) continue;
    if (v.upper && v.lower == *v.upper) {
      out << ' ' << v.name << " = " << format_decimal(v.lower) << '\n';
    } else if (v.upper) {
      out << ' ' << format_decimal(v.lower) << " <= " << v.name << " <= " << format_decimal(*v.upper)
          << '\n';
    } else if (v.lower != 0) {
      out << ' ' << v.name << " >= " << format_decimal(v.lower) << '\n';
    }
  }
  if (has_one) out << " ONE = 1\n";

  bool any_bin = false, any_int = false;
  for (const auto& v : vars) {
    any_bin |= v.type == VarType::binary;
    any_int |= v.type == VarType::integer;
  }
  if (any_bin) {
    out << "Binaries\n";
    for (const auto& v : vars) if (v.type == VarType::binary) out << ' ' << v.name << '\n';
  }
  if (any_int) {
    out << "Generals\n";
    for (const auto& v : vars) if (v.type == VarType::integer) out << ' ' << v.name << '\n';
  }
  out << "End\n";
}

std::string emit_lp_string(const MilpModel& model) {
  std::ostringstream out;
  emit_lp(out, model);
  return out.str();
}

namespace {

void mps_entry(std::ostream& out, const std::string& col, const std::string& row,
               const std::string& value) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "    %-8s  %-8s  %s\n", col.c_str(), row.c_str(), value.c_str());
  out << buf;
}

void mps_bound(std::ostream& out, const char* type, const std::string& col,
               const std::string& value) {
  char buf[512];
  if (value.empty()) {
    std::snprintf(buf, sizeof buf, " %-2s BND       %s\n", type, col.c_str());
  } else {
    std::snprintf(buf, sizeof buf, " %-2s BND       %-8s  %s\n", type, col.c_str(), value.c_str());
  }
  out << buf;
}

}  // namespace

void emit_mps(std::ostream& out, const MilpModel& model) {
  if (!model.quadratic().empty()) {
    throw UnsupportedFormatError("model '" + model.name() +
                                 "' has quadratic objective terms; MPS output is linear only");
  }
  const auto& vars = model.variables();
  const auto& rows = model.constraints();
  const bool has_one = model.objective_constant() != 0;

  std::vector<std::vector<std::pair<std::size_t, const Rational*>>> col_rows(vars.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (const auto& t : rows[r].terms) col_rows[static_cast<std::size_t>(t.var)].push_back({r, &t.coef});
  }

  out << "NAME          " << model.name() << '\n';
  out << "ROWS\n";
  out << " N  obj\n";
  for (const auto& row : rows) {
    const char* s = row.sense == RowSense::le ? "L" : row.sense == RowSense::ge ? "G" : "E";
    out << ' ' << s << "  " << row.name << '\n';
  }
  out << "COLUMNS\n";
  bool in_int = false;
  int marker = 0;
  for (std::size_t c = 0; c < vars.size(); ++c) {
    const auto& v = vars[c];
    const bool is_int = v.type != VarType::continuous;
    if (is_int != in_int) {
      char buf[128];
      std::snprintf(buf, sizeof buf, "    MARKER%-4d              'MARKER'                 '%s'\n",
                    marker++, is_int ? "INTORG" : "INTEND");
      out << buf;
      in_int = is_int;
    }
    bool wrote = false;
    if (v.objective != 0) {
      mps_entry(out, v.name, "obj", format_decimal(v.objective));
      wrote = true;
    }
    for (const auto& [r, coef] : col_rows[c]) {
      mps_entry(out, v.name, rows[r].name, format_decimal(*coef));
      wrote = true;
    }
    if (!wrote) mps_entry(out, v.name, "obj", "0");
  }
  if (in_int) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "    MARKER%-4d              'MARKER'                 'INTEND'\n",
                  marker++);
    out << buf;
  }
  if (has_one) mps_entry(out, "ONE", "obj", format_decimal(model.objective_constant()));

  out << "RHS\n";
  for (const auto& row : rows) {
    if (row.rhs != 0) mps_entry(out, "RHS", row.name, format_decimal(row.rhs));
  }

  out << "BOUNDS\n";
  for (const auto& v : vars) {
    if (v.upper && v.lower == *v.upper) {
      mps_bound(out, "FX", v.name, format_decimal(v.lower));
      continue;
    }
    if (v.lower != 0) mps_bound(out, "LO", v.name, format_decimal(v.lower));
    if (v.upper) {
      mps_bound(out, "UP", v.name, format_decimal(*v.upper));
    } else if (v.type != VarType::continuous) {
      mps_bound(out, "PL", v.name, "");
    }
  }
  if (has_one) mps_bound(out, "FX", "ONE", "1");
  out << "ENDATA\n";
}

std::string emit_mps_string(const MilpModel& model) {
  std::ostringstream out;
  emit_mps(out, model);
  return out.str();
}

// ---------------------------------------------------------------------------
// Valuations

Valuation ti_valuation(const Instance& inst, const Schedule& sched, Time T) {
  validate_schedule(inst, sched);
  Valuation v;
  for (const auto& seq : sched.machines) {
    Time t = 0;
    for (JobId id : seq) {
      const Job& j = inst.job(id);
      if (t > T - j.p) {
        throw MappingError("job " + std::to_string(id) + " starts at " + std::to_string(t) +
                           ", after its last start " + std::to_string(T - j.p) +
                           " in the time-indexed model");
      }
      v[ti_name(id, t)] = 1;
      t += j.p;
    }
  }
  return v;
}

Valuation flow_valuation(const FlowGraph& g, std::span<const std::int64_t> flow) {
  Valuation v;
  for (std::size_t i = 0; i < g.arcs.size(); ++i) {
    if (flow[i] != 0) v[arc_variable_name(g, g.arcs[i])] = flow[i];
  }
  return v;
}

Valuation schedule_to_assignment(const Instance& inst, const Schedule& sched, Time T) {
  return ti_valuation(inst, sched, T);
}

Valuation schedule_to_assignment(const FlowGraph& g, const Instance& inst, const Schedule& sched) {
  return flow_valuation(g, schedule_to_flow(g, inst, sched));
}

FeasibilityReport check_feasible(const MilpModel& model, const Valuation& v) {
  const auto& vars = model.variables();
  std::vector<Rational> val(vars.size(), Rational(0));
  for (const auto& [name, x] : v) {
    const int idx = model.find(name);
    if (idx < 0) throw ValidationError("unknown variable '" + name + "' for model " + model.name());
    val[static_cast<std::size_t>(idx)] = x;
  }

  FeasibilityReport rep;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    const auto& var = vars[i];
    const auto& x = val[i];
    if (x < var.lower || (var.upper && x > *var.upper)) rep.violated.push_back("bound:" + var.name);
    if (var.type != VarType::continuous && boost::multiprecision::denominator(x) != 1) {
      rep.violated.push_back("integrality:" + var.name);
    }
    rep.objective += var.objective * x;
  }
  for (const auto& q : model.quadratic()) {
    rep.objective += q.coef * val[static_cast<std::size_t>(q.a)] * val[static_cast<std::size_t>(q.b)];
  }
  rep.objective += model.objective_constant();

  for (const auto& row : model.constraints()) {
    Rational lhs = 0;
    for (const auto& t : row.terms) lhs += t.coef * val[static_cast<std::size_t>(t.var)];
    const bool ok = row.sense == RowSense::le   ? lhs <= row.rhs
                    : row.sense == RowSense::ge ? lhs >= row.rhs
                                                : lhs == row.rhs;
    if (!ok) rep.violated.push_back(row.name);
  }
  rep.feasible = rep.violated.empty();
  return rep;
}

Valuation parse_solution(std::istream& in) {
  Valuation v;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '#') continue;
    std::istringstream ls(line);
    std::string name, value, extra;
    ls >> name >> value;
    if (name.empty() || value.empty() || (ls >> extra)) {
      throw ParseError(line_no, "expected 'name value'");
    }
    try {
      v[name] = parse_decimal(value);
    } catch (const ParseError& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return v;
}

Valuation parse_solution_string(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_solution(in);
}

Valuation round_integral(const MilpModel& model, const Valuation& v, double tol) {
  Valuation out;
  for (const auto& [name, x] : v) {
    const int idx = model.find(name);
    if (idx < 0) throw ValidationError("unknown variable '" + name + "' for model " + model.name());
    const auto& var = model.variables()[static_cast<std::size_t>(idx)];
    if (var.type == VarType::continuous) {
      out[name] = x;
      continue;
    }
    const double d = x.convert_to<double>();
    const double r = std::round(d);
    if (std::abs(d - r) > tol) {
      throw ValidationError("integer variable '" + name + "' has fractional value " +
                            format_decimal(x));
    }
    out[name] = Rational(static_cast<long long>(r));
  }
  return out;
}

std::vector<std::int64_t> valuation_to_flow(const FlowGraph& g, const Valuation& v) {
  std::vector<std::int64_t> flow(g.arcs.size(), 0);
  for (std::size_t i = 0; i < g.arcs.size(); ++i) {
    auto it = v.find(arc_variable_name(g, g.arcs[i]));
    if (it == v.end()) continue;
    if (boost::multiprecision::denominator(it->second) != 1) {
      throw ValidationError("arc variable '" + it->first + "' is not integral");
    }
    flow[i] = boost::multiprecision::numerator(it->second).convert_to<std::int64_t>();
  }
  return flow;
}

Schedule ti_valuation_to_schedule(const Instance& inst, const Valuation& v, Time T) {
  std::vector<std::pair<Time, JobId>> starts;
  for (const auto& j : inst.jobs()) {
    int found = 0;
    Time start = 0;
    for (Time t = 0; t <= T - j.p; ++t) {
      auto it = v.find(ti_name(j.id, t));
      if (it == v.end() || it->second == 0) continue;
      if (it->second != 1) {
        throw ValidationError("variable '" + it->first + "' is neither 0 nor 1");
      }
      ++found;
      start = t;
    }
    if (found != 1) {
      throw ValidationError("job " + std::to_string(j.id) + " has " + std::to_string(found) +
                            " start times in the valuation");
    }
    starts.emplace_back(start, j.id);
  }
  std::sort(starts.begin(), starts.end());
  Schedule sched;
  sched.machines.resize(static_cast<std::size_t>(inst.m()));
  std::vector<Time> free_at(static_cast<std::size_t>(inst.m()), 0);
  for (const auto& [s, id] : starts) {
    auto it = std::find_if(free_at.begin(), free_at.end(), [s = s](Time f) { return f <= s; });
    if (it == free_at.end()) {
      throw ValidationError("more than m jobs in process at time " + std::to_string(s));
    }
    const auto k = static_cast<std::size_t>(it - free_at.begin());
    sched.machines[k].push_back(id);
    *it = s + inst.job(id).p;
  }
  return sched;
}

}  // namespace pmsched
