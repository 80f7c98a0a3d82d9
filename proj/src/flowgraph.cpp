#include "pmsched/flowgraph.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "pmsched/error.hpp"

namespace pmsched {

namespace {

void sort_arcs(std::vector<Arc>& arcs) {
  std::stable_sort(arcs.begin(), arcs.end(), [](const Arc& x, const Arc& y) {
    if (x.kind != y.kind) return x.kind == ArcKind::job;
    if (x.label != y.label) return x.label < y.label;
    return x.tail < y.tail;
  });
}

std::vector<Time> collect_nodes(const std::vector<char>& reach, Time T) {
  std::vector<Time> nodes;
  for (Time t = 0; t <= T; ++t) {
    if (reach[static_cast<std::size_t>(t)]) nodes.push_back(t);
  }
  if (nodes.empty() || nodes.back() != T) nodes.push_back(T);
  return nodes;
}

void add_loss_arcs(FlowGraph& g, const std::vector<char>& reach, Time from, bool keep_zero) {
  const Time T = g.horizon;
  if (keep_zero && from > 0) g.arcs.push_back(Arc{0, T, 0, ArcKind::loss, g.machines});
  for (Time t = from; t < T; ++t) {
    if (reach[static_cast<std::size_t>(t)]) {
      g.arcs.push_back(Arc{t, T, 0, ArcKind::loss, g.machines});
    }
  }
}

}  // namespace

std::vector<Time> normal_patterns(std::span<const std::pair<Time, int>> items, Time T) {
  if (T < 0) return {};
  std::vector<char> reach(static_cast<std::size_t>(T) + 1, 0);
  reach[0] = 1;
  for (const auto& [p, mult] : items) {
    // Descending t: marks land above t, so reach[t] still reflects the
    // previous items when it is read.
    for (Time t = T - p; t >= 0; --t) {
      if (!reach[static_cast<std::size_t>(t)]) continue;
      for (int q = 1; q <= mult && t + q * p <= T; ++q) {
        reach[static_cast<std::size_t>(t + q * p)] = 1;
      }
    }
  }
  std::vector<Time> out;
  for (Time t = 0; t <= T; ++t) {
    if (reach[static_cast<std::size_t>(t)]) out.push_back(t);
  }
  return out;
}

FlowGraph build_af_graph(const Instance& inst, Time T, AfOptions opts) {
  if (T < inst.p_max()) {
    throw InfeasibleHorizonError("horizon " + std::to_string(T) +
                                 " is shorter than the longest job (" +
                                 std::to_string(inst.p_max()) + ")");
  }
  FlowGraph g;
  g.kind = GraphKind::af;
  g.horizon = T;
  g.machines = inst.m();
  for (const auto& j : inst.jobs()) {
    g.label_members.push_back({j.id});
    g.label_p.push_back(j.p);
  }

  std::vector<char> reach(static_cast<std::size_t>(T) + 1, 0);
  reach[0] = 1;
  for (JobId id : wspt_order(inst)) {
    const Time p = inst.job(id).p;
    for (Time t = T - p; t >= 0; --t) {
      if (reach[static_cast<std::size_t>(t)]) {
        reach[static_cast<std::size_t>(t + p)] = 1;
        g.arcs.push_back(Arc{t, t + p, id, ArcKind::job, 1});
      }
    }
  }
  g.nodes = collect_nodes(reach, T);
  add_loss_arcs(g, reach, opts.strict_figure ? 1 : 0, false);
  sort_arcs(g.arcs);
  return g;
}

FlowGraph build_eaf_graph(const Instance& inst, const Horizon& horizon,
                          std::span<const Window> windows, const JobTypeTable& types,
                          EafOptions opts) {
  const Time T = horizon.T;
  if (T < inst.p_max()) {
    throw InfeasibleHorizonError("horizon " + std::to_string(T) +
                                 " is shorter than the longest job (" +
                                 std::to_string(inst.p_max()) + ")");
  }
  if (opts.use_windows && windows.size() != types.size()) {
    throw ArgumentError("expected one window per job type");
  }
  FlowGraph g;
  g.kind = GraphKind::eaf;
  g.horizon = T;
  g.machines = inst.m();

  std::vector<char> reach(static_cast<std::size_t>(T) + 1, 0);
  std::vector<char> start(static_cast<std::size_t>(T) + 1, 0);
  reach[0] = 1;
  for (std::size_t k = 0; k < types.size(); ++k) {
    const JobType& type = types[k];
    const int label = static_cast<int>(k) + 1;
    g.label_members.push_back(type.members);
    g.label_p.push_back(type.p);

    const Time p = type.p;
    Time lo = 0;
    Time hi = T - p;
    if (opts.use_windows) {
      lo = std::max(lo, windows[k].a);
      hi = std::min(hi, windows[k].b);
    }
    std::fill(start.begin(), start.end(), 0);
    for (Time t = hi; t >= lo; --t) {
      if (!reach[static_cast<std::size_t>(t)]) continue;
      for (int q = 1; q <= type.d; ++q) {
        const Time s = t + (q - 1) * p;
        if (s > hi) break;
        start[static_cast<std::size_t>(s)] = 1;
        reach[static_cast<std::size_t>(s + p)] = 1;
      }
    }
    bool any = false;
    for (Time s = lo; s <= hi; ++s) {
      if (start[static_cast<std::size_t>(s)]) {
        g.arcs.push_back(Arc{s, s + p, label, ArcKind::job, type.d});
        any = true;
      }
    }
    if (!any) {
      throw InfeasibleWindowError(type.members.front(),
                                  "job type of job " + std::to_string(type.members.front()) +
                                      " has no reachable start in its time window");
    }
  }
  g.nodes = collect_nodes(reach, T);
  const Time from = opts.use_tprime ? std::max<Time>(horizon.T_prime, 0) : 0;
  add_loss_arcs(g, reach, opts.strict_figure ? std::max<Time>(from, 1) : from,
                !opts.strict_figure);
  sort_arcs(g.arcs);
  return g;
}

FlowGraph build_eaf_graph(const Instance& inst, EafOptions opts, bool merge_types) {
  const Horizon horizon = compute_horizon(inst);
  const JobTypeTable types = merge_types ? group_job_types(inst) : singleton_job_types(inst);
  std::vector<Window> windows;
  if (opts.use_windows) {
    windows = type_time_windows(types, time_windows(inst, horizon.T, opts.window_order));
  }
  return build_eaf_graph(inst, horizon, windows, types, opts);
}

GraphStats graph_stats(const FlowGraph& g) {
  GraphStats s;
  s.node_count = static_cast<std::int64_t>(g.nodes.size());
  for (const auto& a : g.arcs) {
    (a.kind == ArcKind::job ? s.job_arc_count : s.loss_arc_count) += 1;
  }
  s.variable_count = s.job_arc_count + s.loss_arc_count;
  return s;
}

double reduction_percent(double original, double reduced) {
  return 100.0 * (1.0 - reduced / original);
}

std::string to_dot(const FlowGraph& g) {
  std::ostringstream out;
  const char prefix = g.kind == GraphKind::af ? 'j' : 't';
  out << "digraph " << (g.kind == GraphKind::af ? "AF" : "EAF") << " {\n";
  out << "  rankdir=LR;\n";
  for (Time t : g.nodes) out << "  " << t << ";\n";
  for (const auto& a : g.arcs) {
    out << "  " << a.tail << " -> " << a.head;
    if (a.kind == ArcKind::job) {
      out << " [label=\"" << prefix << a.label << "\"";
      if (a.capacity != 1) out << ", capacity=" << a.capacity;
      out << "];\n";
    } else {
      out << " [label=\"loss\", style=dashed];\n";
    }
  }
  out << "}\n";
  return out.str();
}

int find_arc(const FlowGraph& g, Time tail, Time head, int label) {
  for (std::size_t i = 0; i < g.arcs.size(); ++i) {
    const Arc& a = g.arcs[i];
    if (a.tail == tail && a.head == head && a.label == label) return static_cast<int>(i);
  }
  return -1;
}

Schedule decompose_flow(const FlowGraph& g, std::span<const std::int64_t> flow, int m) {
  if (flow.size() != g.arcs.size()) {
    throw ValidationError("flow has " + std::to_string(flow.size()) + " values for " +
                          std::to_string(g.arcs.size()) + " arcs");
  }
  const Time T = g.horizon;
  std::vector<std::int64_t> divergence(static_cast<std::size_t>(T) + 1, 0);
  std::vector<std::vector<std::size_t>> out_arcs(static_cast<std::size_t>(T) + 1);
  for (std::size_t i = 0; i < g.arcs.size(); ++i) {
    const Arc& a = g.arcs[i];
    if (flow[i] < 0 || flow[i] > a.capacity) {
      throw ValidationError("flow " + std::to_string(flow[i]) + " on arc (" +
                            std::to_string(a.tail) + "," + std::to_string(a.head) + "," +
                            std::to_string(a.label) + ") violates its capacity " +
                            std::to_string(a.capacity));
    }
    divergence[static_cast<std::size_t>(a.tail)] += flow[i];
    divergence[static_cast<std::size_t>(a.head)] -= flow[i];
    out_arcs[static_cast<std::size_t>(a.tail)].push_back(i);
  }
  for (Time t = 0; t <= T; ++t) {
    const std::int64_t want = t == 0 ? m : (t == T ? -m : 0);
    if (divergence[static_cast<std::size_t>(t)] != want) {
      throw ValidationError("flow is not conserved at node " + std::to_string(t) +
                            " (divergence " +
                            std::to_string(divergence[static_cast<std::size_t>(t)]) +
                            ", expected " + std::to_string(want) + ")");
    }
  }

  std::vector<std::int64_t> left(flow.begin(), flow.end());
  std::vector<std::size_t> next_member(g.label_members.size(), 0);
  Schedule sched;
  sched.machines.resize(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    Time t = 0;
    while (t != T) {
      const auto& cands = out_arcs[static_cast<std::size_t>(t)];
      auto it = std::find_if(cands.begin(), cands.end(), [&](std::size_t i) { return left[i] > 0; });
      if (it == cands.end()) {
        throw ValidationError("flow path stalls at node " + std::to_string(t));
      }
      const Arc& a = g.arcs[*it];
      --left[*it];
      if (a.kind == ArcKind::job) {
        const auto li = static_cast<std::size_t>(a.label - 1);
        if (next_member[li] >= g.label_members[li].size()) {
          throw ValidationError("label " + std::to_string(a.label) + " carries more flow than it has jobs");
        }
        sched.machines[static_cast<std::size_t>(k)].push_back(g.label_members[li][next_member[li]++]);
      }
      t = a.head;
    }
  }
  return sched;
}

std::vector<std::int64_t> schedule_to_flow(const FlowGraph& g, const Instance& inst,
                                           const Schedule& sched) {
  validate_schedule(inst, sched);
  std::vector<int> job_label(static_cast<std::size_t>(inst.n()) + 1, 0);
  for (std::size_t li = 0; li < g.label_members.size(); ++li) {
    for (JobId id : g.label_members[li]) {
      job_label.at(static_cast<std::size_t>(id)) = static_cast<int>(li) + 1;
    }
  }
  std::map<std::pair<Time, int>, std::size_t> by_tail_label;
  for (std::size_t i = 0; i < g.arcs.size(); ++i) {
    by_tail_label.emplace(std::pair{g.arcs[i].tail, g.arcs[i].label}, i);
  }

  const Time T = g.horizon;
  std::vector<std::int64_t> flow(g.arcs.size(), 0);
  for (int k = 0; k < g.machines; ++k) {
    Time t = 0;
    if (k < static_cast<int>(sched.machines.size())) {
      for (JobId id : sched.machines[static_cast<std::size_t>(k)]) {
        const int label = job_label[static_cast<std::size_t>(id)];
        auto it = by_tail_label.find({t, label});
        if (label == 0 || it == by_tail_label.end()) {
          throw MappingError("machine " + std::to_string(k + 1) + ": no arc for job " +
                             std::to_string(id) + " starting at " + std::to_string(t));
        }
        ++flow[it->second];
        t += inst.job(id).p;
      }
    }
    if (t > T) {
      throw MappingError("machine " + std::to_string(k + 1) + " completes at " +
                         std::to_string(t) + ", beyond the horizon " + std::to_string(T));
    }
    if (t < T) {
      auto it = by_tail_label.find({t, 0});
      if (it == by_tail_label.end()) {
        throw MappingError("machine " + std::to_string(k + 1) + ": no loss arc leaving " +
                           std::to_string(t));
      }
      ++flow[it->second];
    }
  }
  return flow;
}

}  // namespace pmsched
