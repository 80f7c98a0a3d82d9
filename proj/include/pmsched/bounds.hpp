#pragma once

#include <vector>

#include "pmsched/instance.hpp"
#include "pmsched/rational.hpp"

namespace pmsched {

// Interval in which the last job of every machine completes in some optimal
// schedule: Σp/m ∓ (m-1)/m · p_max.
struct HBounds {
  Rational h_min;
  Rational h_max;
};

HBounds h_bounds(const Instance& inst);

// floor(H_max): the planning horizon of every time-expanded model.
Time horizon_T(const Instance& inst);

// ceil((Σp - Σ_{k<m} p̄_k) / m) with p̄ sorted non-increasing: no machine of
// an optimal schedule finishes before it. The subtracted prefix is capped at
// n - 1 terms, so T' >= 1 also when m >= n.
Time horizon_Tprime(const Instance& inst);

struct Horizon {
  Time T = 0;
  Time T_prime = 0;
  Rational h_min;
  Rational h_max;
};

Horizon compute_horizon(const Instance& inst);

// Start-time window [a, b].
struct Window {
  Time a = 0;
  Time b = 0;

  friend bool operator==(const Window&, const Window&) = default;
};

// How "k < j" is read in P_j and L_j below. wspt_rank compares positions in
// the WSPT order (ties by id); input_id compares the ids as given.
enum class WindowOrder { wspt_rank, input_id };

// Per-job windows, indexed by id - 1.
//
// With P_j = {k < j : w_k >= w_j, p_k <= p_j} and L_j = {k > j : w_k <= w_j,
// p_k >= p_j}:
//   a_j = 0                                   if |P_j| < m
//       = ceil(rho_j / m)                     otherwise, rho_j being the sum
//                                             of the |P_j| - m + 1 smallest
//                                             processing times in P_j
//   b_j = T - ceil((Σ_{L_j} p + p_j) / m)     if L_j is non-empty
//       = ceil((Σp - p_j) / m)                otherwise
// and b_j is finally clamped to T - p_j.
//
// Throws InfeasibleWindowError when some a_j > b_j.
using TimeWindows = std::vector<Window>;

TimeWindows time_windows(const Instance& inst, Time T,
                         WindowOrder order = WindowOrder::wspt_rank);

// Windows that leave every start in [0, T - p_j] open.
TimeWindows trivial_time_windows(const Instance& inst, Time T);

// Per type (same order as `types`): min of members' a, max of members' b.
std::vector<Window> type_time_windows(const JobTypeTable& types, const TimeWindows& tw);

// Integer ceil/floor for a >= 0 or arbitrary sign, b > 0.
constexpr Time floor_div(Time a, Time b) noexcept {
  return a >= 0 ? a / b : -((-a + b - 1) / b);
}
constexpr Time ceil_div(Time a, Time b) noexcept {
  return a >= 0 ? (a + b - 1) / b : -((-a) / b);
}

}  // namespace pmsched
