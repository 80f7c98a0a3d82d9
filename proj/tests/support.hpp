#pragma once

// Reference implementations used as independent oracles by the tests. They
// trade speed for obviousness and share no code with the library beyond the
// Instance/Schedule records.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <set>
#include <vector>

#include "pmsched/instance.hpp"

namespace testsupport {

using pmsched::Instance;
using pmsched::JobId;
using pmsched::Schedule;
using pmsched::Time;

inline Instance example_instance() { return Instance(2, {{2, 4}, {5, 7}, {1, 1}, {4, 3}}); }

inline Schedule example_schedule() { return Schedule{{{1, 3, 4}, {2}}}; }

// Σ w C of one machine sequence, straight from the definition.
inline std::int64_t naive_sequence_cost(const Instance& inst, const std::vector<JobId>& seq) {
  std::int64_t t = 0, sum = 0;
  for (JobId j : seq) {
    t += inst.job(j).p;
    sum += inst.job(j).w * t;
  }
  return sum;
}

// Best sequence of a job set by trying every permutation.
inline std::int64_t best_permutation_cost(const Instance& inst, std::vector<JobId> jobs) {
  std::sort(jobs.begin(), jobs.end());
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  do {
    best = std::min(best, naive_sequence_cost(inst, jobs));
  } while (std::next_permutation(jobs.begin(), jobs.end()));
  return jobs.empty() ? 0 : best;
}

// Optimum over all m^n labelled assignments, each machine sequenced by full
// permutation search. No WSPT assumption; keep n small.
inline std::int64_t naive_optimum(const Instance& inst) {
  const int n = inst.n(), m = inst.m();
  std::vector<int> label(static_cast<std::size_t>(n), 0);
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (;;) {
    std::vector<std::vector<JobId>> mach(static_cast<std::size_t>(m));
    for (int j = 0; j < n; ++j) mach[static_cast<std::size_t>(label[j])].push_back(j + 1);
    std::int64_t total = 0;
    for (const auto& seq : mach) total += best_permutation_cost(inst, seq);
    best = std::min(best, total);
    int i = 0;
    while (i < n && ++label[static_cast<std::size_t>(i)] == m) label[static_cast<std::size_t>(i++)] = 0;
    if (i == n) break;
  }
  return best;
}

// Every subset sum of `ps` up to T, by enumerating all 2^n subsets.
inline std::vector<Time> subset_sums(const std::vector<Time>& ps, Time T) {
  std::set<Time> out;
  const std::size_t n = ps.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    Time s = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1) s += ps[i];
    }
    if (s <= T) out.insert(s);
  }
  return {out.begin(), out.end()};
}

// Start time of every job, indexed by id - 1.
inline std::vector<Time> start_times(const Instance& inst, const Schedule& s) {
  std::vector<Time> st(static_cast<std::size_t>(inst.n()), 0);
  for (const auto& mach : s.machines) {
    Time t = 0;
    for (JobId j : mach) {
      st[static_cast<std::size_t>(j - 1)] = t;
      t += inst.job(j).p;
    }
  }
  return st;
}

// Machine completion times, one per machine (0 for empty ones), padded to m.
inline std::vector<Time> machine_loads(const Instance& inst, const Schedule& s) {
  std::vector<Time> loads;
  for (const auto& mach : s.machines) {
    Time t = 0;
    for (JobId j : mach) t += inst.job(j).p;
    loads.push_back(t);
  }
  loads.resize(static_cast<std::size_t>(inst.m()), 0);
  return loads;
}

// Deterministic small-instance family for property tests, independent of the
// library generator.
inline Instance lcg_instance(std::uint64_t seed, int n, int m, Time pmax, std::int64_t wmax) {
  std::uint64_t x = seed * 6364136223846793005ULL + 1442695040888963407ULL;
  auto draw = [&](std::int64_t k) {
    x = x * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<std::int64_t>((x >> 33) % static_cast<std::uint64_t>(k)) + 1;
  };
  std::vector<std::pair<Time, std::int64_t>> jobs;
  for (int j = 0; j < n; ++j) {
    const Time p = draw(pmax);
    jobs.emplace_back(p, draw(wmax));
  }
  return Instance(m, jobs);
}

}  // namespace testsupport
