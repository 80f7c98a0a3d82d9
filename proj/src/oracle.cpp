#include "pmsched/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "pmsched/error.hpp"

namespace pmsched {

namespace {

class Enumerator {
 public:
  Enumerator(const Instance& inst, bool enumerate_all)
      : inst_(inst),
        all_(enumerate_all),
        order_(wspt_order(inst)),
        load_(static_cast<std::size_t>(inst.m()), 0),
        machine_of_(order_.size(), 0),
        tail_bound_(order_.size() + 1, 0) {
    // Every unplaced job contributes at least w * p.
    for (std::size_t i = order_.size(); i-- > 0;) {
      const Job& j = inst.job(order_[i]);
      tail_bound_[i] = tail_bound_[i + 1] + j.w * j.p;
    }
  }

  void run() { place(0, 0, 0); }

  std::int64_t best() const { return best_; }
  const std::vector<std::vector<int>>& optimal_assignments() const { return optimal_; }
  const std::vector<JobId>& order() const { return order_; }

 private:
  void place(std::size_t pos, int used, std::int64_t cost) {
    if (pos == order_.size()) {
      if (cost < best_) {
        best_ = cost;
        optimal_.clear();
      }
      if (cost == best_ && (all_ || optimal_.empty())) optimal_.push_back(machine_of_);
      return;
    }
    const Job& j = inst_.job(order_[pos]);
    // Machines are opened in order: a new machine is only the next unused one.
    const int limit = std::min(used + 1, inst_.m());
    for (int k = 0; k < limit; ++k) {
      const auto kk = static_cast<std::size_t>(k);
      const std::int64_t next = cost + j.w * (load_[kk] + j.p);
      const std::int64_t bound = next + tail_bound_[pos + 1];
      if (all_ ? bound > best_ : bound >= best_) continue;
      load_[kk] += j.p;
      machine_of_[pos] = k;
      place(pos + 1, std::max(used, k + 1), next);
      load_[kk] -= j.p;
    }
  }

  const Instance& inst_;
  bool all_;
  std::vector<JobId> order_;
  std::vector<Time> load_;
  std::vector<int> machine_of_;
  std::vector<std::int64_t> tail_bound_;
  std::int64_t best_ = std::numeric_limits<std::int64_t>::max();
  std::vector<std::vector<int>> optimal_;
};

}  // namespace

Schedule canonical_schedule(const Instance& inst, Schedule sched) {
  sched.machines.resize(std::max<std::size_t>(sched.machines.size(),
                                              static_cast<std::size_t>(inst.m())));
  wspt_sort_machines(inst, sched);
  auto first_id = [](const std::vector<JobId>& seq) {
    return seq.empty() ? std::numeric_limits<JobId>::max()
                       : *std::min_element(seq.begin(), seq.end());
  };
  std::stable_sort(sched.machines.begin(), sched.machines.end(),
                   [&](const auto& x, const auto& y) { return first_id(x) < first_id(y); });
  return sched;
}

OracleResult brute_force_optimal(const Instance& inst, bool enumerate_all, double guard) {
  const double size = std::pow(static_cast<double>(inst.m()), static_cast<double>(inst.n()));
  if (size > guard) {
    std::ostringstream msg;
    msg << "exact enumeration refused: m^n = " << inst.m() << "^" << inst.n() << " ~ " << size
        << " exceeds the guard of " << guard;
    throw SizeGuardError(msg.str());
  }
  Enumerator e(inst, enumerate_all);
  e.run();

  OracleResult res;
  res.optimum = e.best();
  for (const auto& assignment : e.optimal_assignments()) {
    Schedule s;
    s.machines.resize(static_cast<std::size_t>(inst.m()));
    for (std::size_t pos = 0; pos < assignment.size(); ++pos) {
      s.machines[static_cast<std::size_t>(assignment[pos])].push_back(e.order()[pos]);
    }
    s = canonical_schedule(inst, std::move(s));
    if (res.schedule.machines.empty()) res.schedule = s;
    if (enumerate_all) res.optima.push_back(std::move(s));
  }
  return res;
}

}  // namespace pmsched
