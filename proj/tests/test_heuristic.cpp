#include <algorithm>
#include <limits>

#include "doctest.h"
#include "pmsched/error.hpp"
#include "pmsched/heuristic.hpp"
#include "pmsched/oracle.hpp"
#include "support.hpp"

using namespace pmsched;
using testsupport::example_instance;
using testsupport::example_schedule;

namespace {

bool wspt_sorted(const Instance& inst, const Schedule& s) {
  for (const auto& m : s.machines) {
    for (std::size_t i = 0; i + 1 < m.size(); ++i) {
      if (!wspt_before(inst.job(m[i]), inst.job(m[i + 1]))) return false;
    }
  }
  return true;
}

void check_valid(const Instance& inst, const Schedule& s) {
  CHECK_NOTHROW(validate_schedule(inst, s));
  CHECK(s.machines.size() == static_cast<std::size_t>(inst.m()));
  CHECK(wspt_sorted(inst, s));
}

Schedule sorted(const Instance& inst, Schedule s) {
  wspt_sort_machines(inst, s);
  return s;
}

// Best value reachable by one shift move, by trying them all.
std::int64_t best_shift_value(const Instance& inst, const Schedule& s) {
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (std::size_t a = 0; a < s.machines.size(); ++a) {
    for (std::size_t i = 0; i < s.machines[a].size(); ++i) {
      for (std::size_t b = 0; b < s.machines.size(); ++b) {
        if (a == b) continue;
        Schedule t = s;
        const JobId j = t.machines[a][i];
        t.machines[a].erase(t.machines[a].begin() + static_cast<std::ptrdiff_t>(i));
        t.machines[b].push_back(j);
        best = std::min(best, evaluate_schedule(inst, sorted(inst, t)));
      }
    }
  }
  return best;
}

// Same for swap(1,1).
std::int64_t best_swap11_value(const Instance& inst, const Schedule& s) {
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (std::size_t a = 0; a < s.machines.size(); ++a) {
    for (std::size_t b = a + 1; b < s.machines.size(); ++b) {
      for (std::size_t i = 0; i < s.machines[a].size(); ++i) {
        for (std::size_t k = 0; k < s.machines[b].size(); ++k) {
          Schedule t = s;
          std::swap(t.machines[a][i], t.machines[b][k]);
          best = std::min(best, evaluate_schedule(inst, sorted(inst, t)));
        }
      }
    }
  }
  return best;
}

// Same for swap(2,1): two jobs of one machine against one of another.
std::int64_t best_swap21_value(const Instance& inst, const Schedule& s) {
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (std::size_t a = 0; a < s.machines.size(); ++a) {
    for (std::size_t b = 0; b < s.machines.size(); ++b) {
      if (a == b) continue;
      const auto& A = s.machines[a];
      for (std::size_t i = 0; i < A.size(); ++i) {
        for (std::size_t i2 = i + 1; i2 < A.size(); ++i2) {
          for (std::size_t k = 0; k < s.machines[b].size(); ++k) {
            Schedule t = s;
            const JobId x = A[i], y = A[i2], z = s.machines[b][k];
            auto& ta = t.machines[a];
            ta.erase(std::remove_if(ta.begin(), ta.end(), [&](JobId q) { return q == x || q == y; }), ta.end());
            ta.push_back(z);
            auto& tb = t.machines[b];
            tb.erase(std::find(tb.begin(), tb.end(), z));
            tb.push_back(x);
            tb.push_back(y);
            best = std::min(best, evaluate_schedule(inst, sorted(inst, t)));
          }
        }
      }
    }
  }
  return best;
}

}  // namespace

TEST_CASE("GRASP with alpha 0 is the greedy least-loaded rule") {
  Rng rng(1);
  Rng untouched(1);
  const Schedule s = grasp_construct(example_instance(), rng, 0.0);
  CHECK(s == example_schedule());
  CHECK(evaluate_schedule(example_instance(), s) == 67);
  CHECK(rng.next() == untouched.next());

  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Rng a(seed), b(seed + 100);
    const Instance inst = generate_instance(20, 3, 20, 20, seed);
    CHECK(grasp_construct(inst, a, 0.0) == grasp_construct(inst, b, 0.0));
  }
}

TEST_CASE("GRASP output is valid and WSPT sorted") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const Instance inst = generate_instance(1 + static_cast<int>(seed % 25), 1 + static_cast<int>(seed % 5), 20, 20, seed);
    Rng rng(seed);
    for (double alpha : {0.0, 0.3, 1.0}) check_valid(inst, grasp_construct(inst, rng, alpha));
  }
}

TEST_CASE("best_improvement finds the best neighbour") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const Instance inst = generate_instance(9, 3, 20, 20, seed);
    Rng rng(seed);
    const Schedule start = perturb(inst, grasp_construct(inst, rng, 1.0), rng, 4);
    const std::int64_t v0 = evaluate_schedule(inst, start);
    const std::pair<Neighborhood, std::int64_t> cases[] = {
        {Neighborhood::shift, best_shift_value(inst, start)},
        {Neighborhood::swap11, best_swap11_value(inst, start)},
        {Neighborhood::swap21, best_swap21_value(inst, start)},
    };
    for (const auto& [nb, best] : cases) {
      Schedule s = start;
      const bool improved = best_improvement(inst, s, nb);
      CHECK(improved == (best < v0));
      CHECK(evaluate_schedule(inst, s) == (improved ? best : v0));
      check_valid(inst, s);
    }
  }
}

TEST_CASE("RVND reaches the optimum from the textbook start") {
  Rng rng(5);
  const Schedule s = rvnd(example_instance(), Schedule{{{1, 2}, {3, 4}}}, rng);
  CHECK(evaluate_schedule(example_instance(), s) == 67);
  check_valid(example_instance(), s);
}

TEST_CASE("RVND never worsens and ends in a local optimum") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const Instance inst = generate_instance(5 + static_cast<int>(seed % 10), 2 + static_cast<int>(seed % 3), 20, 20, seed);
    Rng rng(seed);
    const Schedule start = perturb(inst, grasp_construct(inst, rng, 1.0), rng, 3);
    const Schedule out = rvnd(inst, start, rng);
    check_valid(inst, out);
    CHECK(evaluate_schedule(inst, out) <= evaluate_schedule(inst, start));
    for (Neighborhood nb : {Neighborhood::shift, Neighborhood::swap11, Neighborhood::swap21}) {
      Schedule copy = out;
      CHECK_FALSE(best_improvement(inst, copy, nb));
    }
    Rng again(seed * 7);
    CHECK(evaluate_schedule(inst, rvnd(inst, out, again)) == evaluate_schedule(inst, out));
  }
}

TEST_CASE("RVND keeps optimal schedules optimal") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Instance inst = generate_instance(4 + static_cast<int>(seed % 5), 2 + static_cast<int>(seed % 2), 20, 20, seed);
    const OracleResult o = brute_force_optimal(inst);
    Rng rng(seed);
    Schedule s = o.schedule;
    s.machines.resize(static_cast<std::size_t>(inst.m()));
    CHECK(evaluate_schedule(inst, rvnd(inst, s, rng)) == o.optimum);
  }
}

TEST_CASE("perturb") {
  const Instance one(1, {{2, 1}, {3, 4}, {1, 1}});
  Rng rng(3);
  const Schedule s{{{2, 1, 3}}};
  CHECK(perturb(one, s, rng, 5) == s);

  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    Rng a(seed), b(seed);
    const Schedule pa = perturb(example_instance(), example_schedule(), a, 1);
    const Schedule pb = perturb(example_instance(), example_schedule(), b, 1);
    CHECK(pa == pb);
    check_valid(example_instance(), pa);
    CHECK(evaluate_schedule(example_instance(), pa) >= 67);
  }
}

TEST_CASE("ILS on the textbook example") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    IlsConfig cfg;
    cfg.seed = seed;
    cfg.max_iterations = 100;
    const IlsResult r = ils(example_instance(), cfg);
    CHECK(r.value == 67);
    CHECK(r.iterations == 100);
    CHECK(r.deterministic);
    CHECK(evaluate_schedule(example_instance(), r.schedule) == 67);
    check_valid(example_instance(), r.schedule);
  }
}

TEST_CASE("ILS on one machine returns the WSPT sequence value") {
  const Instance inst = generate_instance(12, 1, 20, 20, 4);
  IlsConfig cfg;
  cfg.max_iterations = 1;
  const IlsResult r = ils(inst, cfg);
  CHECK(r.value == evaluate_schedule(inst, Schedule{{wspt_order(inst)}}));
}

TEST_CASE("ILS is deterministic, monotone and bounded by the oracle") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const Instance inst = generate_instance(6 + static_cast<int>(seed % 5), 2 + static_cast<int>(seed % 2), 20, 20, seed);
    IlsConfig cfg;
    cfg.seed = seed;
    cfg.max_iterations = 200;
    std::int64_t last = std::numeric_limits<std::int64_t>::max();
    int calls = 0;
    const IlsResult r = ils(inst, cfg, [&](int, std::int64_t best) {
      CHECK(best <= last);
      last = best;
      ++calls;
    });
    CHECK(calls == r.iterations);
    CHECK(last == r.value);
    const IlsResult again = ils(inst, cfg);
    CHECK(again.value == r.value);
    CHECK(again.schedule == r.schedule);
    CHECK(r.value >= brute_force_optimal(inst).optimum);
    check_valid(inst, r.schedule);
  }
}

TEST_CASE("ILS time budget marks the run non-deterministic") {
  IlsConfig cfg;
  cfg.time_limit_seconds = 0.05;
  cfg.max_iterations = std::numeric_limits<int>::max();
  const IlsResult r = ils(generate_instance(30, 3, 20, 20, 1), cfg);
  CHECK_FALSE(r.deterministic);
  CHECK(r.iterations >= 1);
}

TEST_CASE("IlsConfig validation") {
  auto bad = [](auto mutate) {
    IlsConfig c;
    mutate(c);
    return c;
  };
  CHECK_THROWS_AS(bad([](IlsConfig& c) { c.max_iterations = 0; }).validate(), ArgumentError);
  CHECK_THROWS_AS(bad([](IlsConfig& c) { c.alpha = -0.1; }).validate(), ArgumentError);
  CHECK_THROWS_AS(bad([](IlsConfig& c) { c.alpha = 1.5; }).validate(), ArgumentError);
  CHECK_THROWS_AS(bad([](IlsConfig& c) { c.perturbation_strength = 0; }).validate(), ArgumentError);
  CHECK_THROWS_AS(bad([](IlsConfig& c) { c.time_limit_seconds = 0.0; }).validate(), ArgumentError);
  CHECK_NOTHROW(IlsConfig{}.validate());
  CHECK_THROWS_AS(ils(example_instance(), bad([](IlsConfig& c) { c.alpha = 2; })), ArgumentError);
}
