#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pmsched/bounds.hpp"
#include "pmsched/instance.hpp"

namespace pmsched {

enum class ArcKind { job, loss };

// Job arcs carry label >= 1 (a job id in the straight network, a type id in
// the enhanced one); loss arcs carry label 0 and always end at T.
struct Arc {
  Time tail = 0;
  Time head = 0;
  int label = 0;
  ArcKind kind = ArcKind::job;
  std::int64_t capacity = 1;

  friend bool operator==(const Arc&, const Arc&) = default;
};

enum class GraphKind { af, eaf };

struct FlowGraph {
  GraphKind kind = GraphKind::af;
  Time horizon = 0;
  int machines = 1;  // capacity of loss arcs
  std::vector<Time> nodes;  // sorted, contains 0 and horizon
  std::vector<Arc> arcs;    // job arcs (by label, then tail), then loss arcs (by tail)
  // label - 1 -> job ids represented by that label, ascending.
  std::vector<std::vector<JobId>> label_members;
  std::vector<Time> label_p;

  int label_count() const noexcept { return static_cast<int>(label_members.size()); }
};

struct GraphStats {
  std::int64_t node_count = 0;
  std::int64_t job_arc_count = 0;
  std::int64_t loss_arc_count = 0;
  std::int64_t variable_count = 0;

  friend bool operator==(const GraphStats&, const GraphStats&) = default;
};

// Every t in [0, T] expressible as Σ q_i p_i with 0 <= q_i <= mult_i.
// Items are (p, multiplicity). Forward boolean DP; the result contains 0.
std::vector<Time> normal_patterns(std::span<const std::pair<Time, int>> items, Time T);

struct AfOptions {
  // Drop the loss arc leaving node 0, reproducing the 7-loss-arc count of the
  // textbook example. Such a graph cannot represent an idle machine.
  bool strict_figure = false;
};

// Straight arc-flow network. Jobs are visited in WSPT order; a job may start
// at t only if t is a sum of processing times of jobs visited before it.
// Throws InfeasibleHorizonError if T < p_max.
FlowGraph build_af_graph(const Instance& inst, Time T, AfOptions opts = {});

struct EafOptions {
  bool use_windows = true;  // restrict starts to the type windows
  bool use_tprime = true;   // loss arcs only from t >= T'
  bool strict_figure = false;  // drop the (0, T) loss arc
  WindowOrder window_order = WindowOrder::wspt_rank;
};

// Enhanced network over job types. For each type j (in WSPT order) and every
// node t in [a_j, b_j] reachable before j, copies q = 1..d_j are chained from
// t as long as the q-th copy starts no later than b_j; each chained start s
// yields a unit arc (s, s + p_j) with capacity d_j. Loss arcs leave reachable
// t with T' <= t < T, plus (0, T) unless strict_figure.
//
// `windows` holds one window per type (type_time_windows). When
// opts.use_windows is false they are ignored.
FlowGraph build_eaf_graph(const Instance& inst, const Horizon& horizon,
                          std::span<const Window> windows, const JobTypeTable& types,
                          EafOptions opts = {});

// Runs the whole enhanced pipeline: horizon, windows, type grouping (or
// singleton types when merge_types is false).
FlowGraph build_eaf_graph(const Instance& inst, EafOptions opts = {}, bool merge_types = true);

GraphStats graph_stats(const FlowGraph& g);

// 100 * (1 - reduced / original).
double reduction_percent(double original, double reduced);

// Graphviz digraph. Job arcs are labelled "j<id>" (AF) or "t<id>" (EAF), loss
// arcs "loss" and dashed.
std::string to_dot(const FlowGraph& g);

// Index of the arc (tail, head, label) or -1.
int find_arc(const FlowGraph& g, Time tail, Time head, int label);

// Splits an integral flow (one value per arc, same order as g.arcs) into m
// source-to-sink paths. Job arcs along path k form machine k's sequence; a
// unit on a type arc takes the smallest unused member id of that type.
// Throws ValidationError on capacity or conservation violations. Jobs that
// carry no flow are simply absent from the result.
Schedule decompose_flow(const FlowGraph& g, std::span<const std::int64_t> flow, int m);

// Inverse of decompose_flow: one unit along every machine path, ending with
// the loss arc at the machine's completion time (none if it completes at T).
// Throws MappingError when some needed arc is absent.
std::vector<std::int64_t> schedule_to_flow(const FlowGraph& g, const Instance& inst,
                                           const Schedule& sched);

}  // namespace pmsched
