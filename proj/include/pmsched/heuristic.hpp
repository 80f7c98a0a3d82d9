#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "pmsched/instance.hpp"
#include "pmsched/rng.hpp"

namespace pmsched {

// Iterated local search tuned for P||ΣwjCj: every schedule it produces keeps
// each machine in WSPT order, so only the job-to-machine assignment is
// searched.

struct IlsConfig {
  std::uint64_t seed = 1;
  int max_iterations = 1000;                 // perturbation rounds
  std::optional<double> time_limit_seconds;  // wall clock; breaks determinism
  double alpha = 0.3;                        // GRASP candidate-list width, in [0, 1]
  int perturbation_strength = 2;             // random moves per perturbation
  int restart_after = 50;                    // non-improving rounds before a fresh GRASP start

  // Throws ArgumentError for out-of-range values.
  void validate() const;
};

// Jobs in WSPT order go to a machine picked uniformly from those whose load is
// within alpha * (max - min) of the least loaded one; alpha = 0 always takes
// the lowest-index least loaded machine and draws nothing from rng.
Schedule grasp_construct(const Instance& inst, Rng& rng, double alpha);

enum class Neighborhood { shift, swap11, swap21 };

// Best neighbour of `sched` in `nb` after WSPT re-sorting of the touched
// machines. Returns false when no neighbour strictly improves.
bool best_improvement(const Instance& inst, Schedule& sched, Neighborhood nb);

// Randomized variable neighbourhood descent over {shift, swap(1,1),
// swap(2,1)}. Output cost <= input cost; output is a local optimum for all
// three neighbourhoods.
Schedule rvnd(const Instance& inst, Schedule sched, Rng& rng);

// `strength` moves of a random job to a random other machine, then WSPT
// re-sort. Identity when m = 1.
Schedule perturb(const Instance& inst, Schedule sched, Rng& rng, int strength);

struct IlsResult {
  Schedule schedule;
  std::int64_t value = 0;
  int iterations = 0;
  bool deterministic = true;  // false when the time limit was set
};

// Called after every iteration with (iteration, best value so far).
using IlsMonitor = std::function<void(int, std::int64_t)>;

IlsResult ils(const Instance& inst, const IlsConfig& cfg, const IlsMonitor& monitor = {});

}  // namespace pmsched
