#pragma once

#include <cstdint>
#include <vector>

#include "pmsched/instance.hpp"

namespace pmsched {

inline constexpr double kDefaultOracleGuard = 1e6;

struct OracleResult {
  std::int64_t optimum = 0;
  Schedule schedule;
  // Filled when requested: every optimal job partition, each machine in WSPT
  // order, machines ordered by their first job id (empty machines last).
  std::vector<Schedule> optima;
};

// Exact optimum by enumerating job-to-machine assignments up to machine
// relabelling, sequencing each machine by WSPT. Jobs are placed in WSPT order,
// so a partial assignment's cost is final for the jobs already placed and is
// used to prune. Refuses with SizeGuardError when m^n exceeds `guard`.
OracleResult brute_force_optimal(const Instance& inst, bool enumerate_all = false,
                                 double guard = kDefaultOracleGuard);

// Puts a schedule in the canonical form described for OracleResult::optima.
Schedule canonical_schedule(const Instance& inst, Schedule sched);

}  // namespace pmsched
