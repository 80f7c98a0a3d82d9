#include "pmsched/heuristic.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <limits>

#include "pmsched/error.hpp"

namespace pmsched {

void IlsConfig::validate() const {
  if (max_iterations < 1) throw ArgumentError("iteration budget must be >= 1");
  if (time_limit_seconds && !(*time_limit_seconds > 0)) {
    throw ArgumentError("time budget must be positive");
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ArgumentError("alpha must lie in [0, 1]");
  if (perturbation_strength < 1) throw ArgumentError("perturbation strength must be >= 1");
  if (restart_after < 1) throw ArgumentError("restart threshold must be >= 1");
}

namespace {

// Cost of `seq` with the jobs in `removed` dropped and the WSPT-sorted jobs in
// `added` merged in at their WSPT positions. `seq` must be WSPT-sorted.
std::int64_t merged_cost(const Instance& inst, const std::vector<JobId>& seq,
                         std::span<const JobId> removed, std::span<const JobId> added) {
  std::int64_t cost = 0;
  Time t = 0;
  std::size_t ai = 0;
  auto take = [&](JobId id) {
    const Job& j = inst.job(id);
    t += j.p;
    cost += j.w * t;
  };
  for (JobId id : seq) {
    if (std::find(removed.begin(), removed.end(), id) != removed.end()) continue;
    while (ai < added.size() && wspt_before(inst.job(added[ai]), inst.job(id))) take(added[ai++]);
    take(id);
  }
  while (ai < added.size()) take(added[ai++]);
  return cost;
}

void sort_wspt(const Instance& inst, std::vector<JobId>& seq) {
  std::sort(seq.begin(), seq.end(),
            [&](JobId a, JobId b) { return wspt_before(inst.job(a), inst.job(b)); });
}

void replace_jobs(const Instance& inst, std::vector<JobId>& seq, std::span<const JobId> removed,
                  std::span<const JobId> added) {
  std::erase_if(seq, [&](JobId id) {
    return std::find(removed.begin(), removed.end(), id) != removed.end();
  });
  seq.insert(seq.end(), added.begin(), added.end());
  sort_wspt(inst, seq);
}

struct Move {
  std::int64_t delta = 0;
  std::size_t from = 0, to = 0;
  std::array<JobId, 2> out{};  // jobs leaving `from`
  int out_count = 0;
  JobId back = 0;              // job leaving `to` (0: none)
};

}  // namespace

Schedule grasp_construct(const Instance& inst, Rng& rng, double alpha) {
  const auto m = static_cast<std::size_t>(inst.m());
  Schedule sched;
  sched.machines.resize(m);
  std::vector<Time> load(m, 0);
  std::vector<std::size_t> rcl;
  for (JobId id : wspt_order(inst)) {
    const auto [lo_it, hi_it] = std::minmax_element(load.begin(), load.end());
    const Time lo = *lo_it;
    std::size_t pick = static_cast<std::size_t>(lo_it - load.begin());
    if (alpha > 0.0) {
      const double limit = static_cast<double>(lo) + alpha * static_cast<double>(*hi_it - lo);
      rcl.clear();
      for (std::size_t k = 0; k < m; ++k) {
        if (static_cast<double>(load[k]) <= limit) rcl.push_back(k);
      }
      pick = rcl[rng.below(rcl.size())];
    }
    sched.machines[pick].push_back(id);
    load[pick] += inst.job(id).p;
  }
  wspt_sort_machines(inst, sched);
  return sched;
}

bool best_improvement(const Instance& inst, Schedule& sched, Neighborhood nb) {
  auto& ms = sched.machines;
  const std::size_t m = ms.size();
  std::vector<std::int64_t> cost(m);
  for (std::size_t k = 0; k < m; ++k) cost[k] = sequence_cost(inst, ms[k]);

  Move best;
  bool found = false;
  auto consider = [&](const Move& mv) {
    if (mv.delta < 0 && (!found || mv.delta < best.delta)) {
      best = mv;
      found = true;
    }
  };

  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      if (a == b) continue;
      const auto& A = ms[a];
      const auto& B = ms[b];
      const std::int64_t base = cost[a] + cost[b];
      switch (nb) {
        case Neighborhood::shift:
          for (JobId x : A) {
            const JobId one[1] = {x};
            Move mv{merged_cost(inst, A, one, {}) + merged_cost(inst, B, {}, one) - base, a, b,
                    {x, 0}, 1, 0};
            consider(mv);
          }
          break;
        case Neighborhood::swap11:
          if (b < a) break;  // symmetric
          for (JobId x : A) {
            for (JobId y : B) {
              const JobId xs[1] = {x};
              const JobId ys[1] = {y};
              Move mv{merged_cost(inst, A, xs, ys) + merged_cost(inst, B, ys, xs) - base, a, b,
                      {x, 0}, 1, y};
              consider(mv);
            }
          }
          break;
        case Neighborhood::swap21:
          for (std::size_t i1 = 0; i1 < A.size(); ++i1) {
            for (std::size_t i2 = i1 + 1; i2 < A.size(); ++i2) {
              const JobId xs[2] = {A[i1], A[i2]};  // already WSPT-sorted
              for (JobId y : B) {
                const JobId ys[1] = {y};
                Move mv{merged_cost(inst, A, xs, ys) + merged_cost(inst, B, ys, xs) - base, a, b,
                        {xs[0], xs[1]}, 2, y};
                consider(mv);
              }
            }
          }
          break;
      }
    }
  }
  if (!found) return false;

  const std::span<const JobId> out(best.out.data(), static_cast<std::size_t>(best.out_count));
  std::vector<JobId> back;
  if (best.back != 0) back.push_back(best.back);
  replace_jobs(inst, ms[best.from], out, back);
  replace_jobs(inst, ms[best.to], back, out);
  return true;
}

Schedule rvnd(const Instance& inst, Schedule sched, Rng& rng) {
  constexpr std::array<Neighborhood, 3> all{Neighborhood::shift, Neighborhood::swap11,
                                            Neighborhood::swap21};
  std::vector<Neighborhood> list(all.begin(), all.end());
  wspt_sort_machines(inst, sched);
  while (!list.empty()) {
    const auto i = static_cast<std::size_t>(rng.below(list.size()));
    if (best_improvement(inst, sched, list[i])) {
      list.assign(all.begin(), all.end());
    } else {
      list.erase(list.begin() + static_cast<std::ptrdiff_t>(i));
    }
  }
  return sched;
}

Schedule perturb(const Instance& inst, Schedule sched, Rng& rng, int strength) {
  const auto m = sched.machines.size();
  if (m <= 1) return sched;
  std::vector<std::size_t> where(static_cast<std::size_t>(inst.n()) + 1, 0);
  for (std::size_t k = 0; k < m; ++k) {
    for (JobId id : sched.machines[k]) where[static_cast<std::size_t>(id)] = k;
  }
  for (int s = 0; s < strength; ++s) {
    const auto id = static_cast<JobId>(1 + rng.below(static_cast<std::uint64_t>(inst.n())));
    const std::size_t from = where[static_cast<std::size_t>(id)];
    auto to = static_cast<std::size_t>(rng.below(m - 1));
    if (to >= from) ++to;
    std::erase(sched.machines[from], id);
    sched.machines[to].push_back(id);
    where[static_cast<std::size_t>(id)] = to;
  }
  wspt_sort_machines(inst, sched);
  return sched;
}

IlsResult ils(const Instance& inst, const IlsConfig& cfg, const IlsMonitor& monitor) {
  cfg.validate();
  using Clock = std::chrono::steady_clock;
  const auto started = Clock::now();
  auto out_of_time = [&] {
    if (!cfg.time_limit_seconds) return false;
    const std::chrono::duration<double> spent = Clock::now() - started;
    return spent.count() >= *cfg.time_limit_seconds;
  };

  Rng rng(cfg.seed);
  Schedule current = rvnd(inst, grasp_construct(inst, rng, cfg.alpha), rng);
  std::int64_t current_value = evaluate_schedule(inst, current);
  IlsResult res{current, current_value, 0, !cfg.time_limit_seconds.has_value()};

  int stale = 0;
  while (res.iterations < cfg.max_iterations && !out_of_time()) {
    ++res.iterations;
    if (stale >= cfg.restart_after) {
      current = rvnd(inst, grasp_construct(inst, rng, cfg.alpha), rng);
      current_value = evaluate_schedule(inst, current);
      stale = 0;
    } else {
      Schedule cand = rvnd(inst, perturb(inst, current, rng, cfg.perturbation_strength), rng);
      const std::int64_t v = evaluate_schedule(inst, cand);
      if (v < current_value) {
        current = std::move(cand);
        current_value = v;
        stale = 0;
      } else {
        ++stale;
      }
    }
    if (current_value < res.value) {
      res.schedule = current;
      res.value = current_value;
    }
    if (monitor) monitor(res.iterations, res.value);
  }
  return res;
}

}  // namespace pmsched
