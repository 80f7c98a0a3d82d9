#include <algorithm>
#include <random>

#include "doctest.h"
#include "pmsched/error.hpp"
#include "pmsched/heuristic.hpp"
#include "pmsched/oracle.hpp"
#include "support.hpp"

using namespace pmsched;
using testsupport::example_instance;
using testsupport::example_schedule;

TEST_CASE("oracle textbook optimum") {
  const OracleResult r = brute_force_optimal(example_instance(), true);
  CHECK(r.optimum == 67);
  CHECK(evaluate_schedule(example_instance(), r.schedule) == 67);
  CHECK(std::find(r.optima.begin(), r.optima.end(), example_schedule()) != r.optima.end());
  for (const Schedule& s : r.optima) {
    CHECK(evaluate_schedule(example_instance(), s) == 67);
    CHECK(canonical_schedule(example_instance(), s) == s);
  }
}

TEST_CASE("oracle trivial cases") {
  CHECK(brute_force_optimal(Instance(3, {{4, 5}})).optimum == 20);
  CHECK(brute_force_optimal(Instance(2, {{4, 5}, {3, 2}})).optimum == 4 * 5 + 3 * 2);
}

TEST_CASE("oracle matches exhaustive assignment and permutation search") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const int n = 2 + static_cast<int>(seed % 6);  // up to 7
    const int m = 1 + static_cast<int>(seed % 3);
    const Instance inst = testsupport::lcg_instance(seed, n, m, 9, 9);
    CHECK(brute_force_optimal(inst).optimum == testsupport::naive_optimum(inst));
  }
}

TEST_CASE("oracle optimum bounds random schedules") {
  std::mt19937_64 gen(17);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Instance inst = generate_instance(8, 3, 20, 20, seed);
    const std::int64_t opt = brute_force_optimal(inst).optimum;
    for (int r = 0; r < 200; ++r) {
      Schedule s{std::vector<std::vector<JobId>>(3)};
      for (int j = 1; j <= 8; ++j) s.machines[gen() % 3].push_back(j);
      for (auto& m : s.machines) std::shuffle(m.begin(), m.end(), gen);
      CHECK(evaluate_schedule(inst, s) >= opt);
    }
  }
}

TEST_CASE("oracle is invariant under job reindexing") {
  std::mt19937_64 gen(5);
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    const Instance inst = generate_instance(8, 2 + static_cast<int>(seed % 2), 20, 20, seed);
    std::vector<std::pair<Time, Weight>> rows;
    for (const Job& j : inst.jobs()) rows.emplace_back(j.p, j.w);
    std::shuffle(rows.begin(), rows.end(), gen);
    CHECK(brute_force_optimal(Instance(inst.m(), rows)).optimum == brute_force_optimal(inst).optimum);
  }
}

TEST_CASE("enumerate_all returns distinct canonical optima") {
  // Four identical jobs on two machines: the only optimal partition splits
  // them 2/2, and there are C(4,2)/2 = 3 such partitions.
  const Instance inst(2, {{1, 1}, {1, 1}, {1, 1}, {1, 1}});
  const OracleResult r = brute_force_optimal(inst, true);
  CHECK(r.optimum == 6);
  CHECK(r.optima.size() == 3);
  for (std::size_t i = 0; i < r.optima.size(); ++i) {
    for (std::size_t k = i + 1; k < r.optima.size(); ++k) CHECK_FALSE(r.optima[i] == r.optima[k]);
  }
}

TEST_CASE("canonical_schedule orders machines by first job") {
  const Schedule c = canonical_schedule(example_instance(), Schedule{{{}, {2}, {4, 1, 3}}});
  CHECK(c == Schedule{{{1, 3, 4}, {2}, {}}});
}

TEST_CASE("oracle size guard") {
  std::vector<std::pair<Time, Weight>> jobs(14, {3, 2});
  try {
    brute_force_optimal(Instance(3, jobs));
    FAIL("expected SizeGuardError");
  } catch (const SizeGuardError& e) {
    CHECK(std::string(e.what()).find("m^n") != std::string::npos);
  }
  CHECK_NOTHROW(brute_force_optimal(Instance(2, std::vector<std::pair<Time, Weight>>(12, {3, 2}))));
  CHECK_THROWS_AS(brute_force_optimal(example_instance(), false, 10.0), SizeGuardError);
}
