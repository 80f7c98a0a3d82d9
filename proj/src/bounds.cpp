#include "pmsched/bounds.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "pmsched/error.hpp"

namespace pmsched {

HBounds h_bounds(const Instance& inst) {
  const Rational m = inst.m();
  const Rational mean = Rational(inst.total_p()) / m;
  const Rational spread = Rational(inst.m() - 1) / m * inst.p_max();
  return HBounds{mean - spread, mean + spread};
}

Time horizon_T(const Instance& inst) {
  const Time m = inst.m();
  return floor_div(inst.total_p() + (m - 1) * inst.p_max(), m);
}

Time horizon_Tprime(const Instance& inst) {
  std::vector<Time> p;
  p.reserve(inst.jobs().size());
  for (const auto& j : inst.jobs()) p.push_back(j.p);
  std::sort(p.begin(), p.end(), std::greater<>());
  const auto terms = static_cast<std::size_t>(std::min(inst.m() - 1, inst.n() - 1));
  Time largest = 0;
  for (std::size_t k = 0; k < terms; ++k) largest += p[k];
  return ceil_div(inst.total_p() - largest, inst.m());
}

Horizon compute_horizon(const Instance& inst) {
  const auto hb = h_bounds(inst);
  return Horizon{horizon_T(inst), horizon_Tprime(inst), hb.h_min, hb.h_max};
}

TimeWindows time_windows(const Instance& inst, Time T, WindowOrder order) {
  const auto& jobs = inst.jobs();
  const Time m = inst.m();
  TimeWindows tw(jobs.size());
  std::vector<std::size_t> rank(jobs.size());
  if (order == WindowOrder::wspt_rank) {
    const auto ord = wspt_order(inst);
    for (std::size_t i = 0; i < ord.size(); ++i) rank[static_cast<std::size_t>(ord[i] - 1)] = i;
  } else {
    for (std::size_t i = 0; i < rank.size(); ++i) rank[i] = i;
  }
  std::vector<Time> pred_p;
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    const Job& job = jobs[j];
    pred_p.clear();
    Time succ_sum = 0;
    bool has_succ = false;
    for (std::size_t k = 0; k < jobs.size(); ++k) {
      const Job& other = jobs[k];
      if (rank[k] < rank[j] && other.w >= job.w && other.p <= job.p) pred_p.push_back(other.p);
      if (rank[k] > rank[j] && other.w <= job.w && other.p >= job.p) {
        succ_sum += other.p;
        has_succ = true;
      }
    }

    Time a = 0;
    if (static_cast<Time>(pred_p.size()) >= m) {
      const auto take = pred_p.size() - static_cast<std::size_t>(m) + 1;
      std::nth_element(pred_p.begin(), pred_p.begin() + static_cast<std::ptrdiff_t>(take) - 1,
                       pred_p.end());
      Time rho = 0;
      for (std::size_t i = 0; i < take; ++i) rho += pred_p[i];
      a = ceil_div(rho, m);
    }

    Time b = has_succ ? T - ceil_div(succ_sum + job.p, m)
                      : ceil_div(inst.total_p() - job.p, m);
    b = std::min(b, T - job.p);

    if (a > b) {
      throw InfeasibleWindowError(job.id, "job " + std::to_string(job.id) +
                                              ": empty time window [" + std::to_string(a) +
                                              ", " + std::to_string(b) + "]");
    }
    tw[j] = Window{a, b};
  }
  return tw;
}

TimeWindows trivial_time_windows(const Instance& inst, Time T) {
  TimeWindows tw;
  tw.reserve(inst.jobs().size());
  for (const auto& j : inst.jobs()) tw.push_back(Window{0, T - j.p});
  return tw;
}

std::vector<Window> type_time_windows(const JobTypeTable& types, const TimeWindows& tw) {
  std::vector<Window> out;
  out.reserve(types.size());
  for (const auto& type : types) {
    Window w{tw.at(static_cast<std::size_t>(type.members.front() - 1))};
    for (JobId id : type.members) {
      const Window& x = tw.at(static_cast<std::size_t>(id - 1));
      w.a = std::min(w.a, x.a);
      w.b = std::max(w.b, x.b);
    }
    out.push_back(w);
  }
  return out;
}

}  // namespace pmsched
