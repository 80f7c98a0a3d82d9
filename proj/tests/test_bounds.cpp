#include <algorithm>

#include "doctest.h"
#include "pmsched/bounds.hpp"
#include "pmsched/error.hpp"
#include "pmsched/oracle.hpp"
#include "support.hpp"

using namespace pmsched;
using testsupport::example_instance;

namespace {

Time cdiv(Time a, Time b) { return a >= 0 ? (a + b - 1) / b : -((-a) / b); }

// Windows recomputed from the definitions. `pos[j]` is the position of job
// j + 1 in the order that defines "k < j".
TimeWindows reference_windows(const Instance& inst, Time T, const std::vector<std::size_t>& pos) {
  const Time m = inst.m();
  TimeWindows out;
  for (const Job& j : inst.jobs()) {
    std::vector<Time> P;
    std::vector<Time> L;
    for (const Job& k : inst.jobs()) {
      const auto pk = pos[static_cast<std::size_t>(k.id - 1)];
      const auto pj = pos[static_cast<std::size_t>(j.id - 1)];
      if (pk < pj && k.w >= j.w && k.p <= j.p) P.push_back(k.p);
      if (pk > pj && k.w <= j.w && k.p >= j.p) L.push_back(k.p);
    }
    Time a = 0;
    if (static_cast<Time>(P.size()) >= m) {
      std::sort(P.begin(), P.end());
      Time rho = 0;
      for (std::size_t i = 0; i < P.size() - static_cast<std::size_t>(m) + 1; ++i) rho += P[i];
      a = cdiv(rho, m);
    }
    Time sumL = 0;
    for (Time p : L) sumL += p;
    Time b = L.empty() ? cdiv(inst.total_p() - j.p, m) : T - cdiv(sumL + j.p, m);
    b = std::min(b, T - j.p);
    out.push_back(Window{a, b});
  }
  return out;
}

std::vector<std::size_t> identity_positions(const Instance& inst) {
  std::vector<std::size_t> pos(static_cast<std::size_t>(inst.n()));
  for (std::size_t i = 0; i < pos.size(); ++i) pos[i] = i;
  return pos;
}

std::vector<std::size_t> wspt_positions(const Instance& inst) {
  std::vector<std::size_t> pos(static_cast<std::size_t>(inst.n()));
  const auto ord = wspt_order(inst);
  for (std::size_t i = 0; i < ord.size(); ++i) pos[static_cast<std::size_t>(ord[i] - 1)] = i;
  return pos;
}

}  // namespace

TEST_CASE("h_bounds examples") {
  const HBounds f = h_bounds(example_instance());
  CHECK(f.h_min == Rational(7, 2));
  CHECK(f.h_max == Rational(17, 2));
  const HBounds one = h_bounds(Instance(1, {{2, 1}, {5, 1}}));
  CHECK(one.h_min == 7);
  CHECK(one.h_max == 7);
  const HBounds three = h_bounds(Instance(2, {{3, 1}, {3, 1}, {3, 1}}));
  CHECK(three.h_min == 3);
  CHECK(three.h_max == 6);
}

TEST_CASE("horizon_T examples") {
  CHECK(horizon_T(example_instance()) == 8);
  CHECK(horizon_T(Instance(1, {{2, 1}, {5, 1}})) == 7);
  CHECK(horizon_T(Instance(2, {{3, 1}, {3, 1}, {3, 1}})) == 6);
}

TEST_CASE("horizon_Tprime examples") {
  CHECK(horizon_Tprime(example_instance()) == 4);
  CHECK(horizon_Tprime(Instance(1, {{2, 1}, {5, 1}})) == 7);
  CHECK(horizon_Tprime(Instance(2, {{3, 1}, {3, 1}, {3, 1}})) == 3);
}

TEST_CASE("horizon_Tprime with more machines than jobs stays positive") {
  // Only n - 1 of the largest jobs can be removed, so the smallest job
  // remains: ceil(p_min / m).
  CHECK(horizon_Tprime(Instance(5, {{4, 1}, {6, 1}})) == 1);
  CHECK(horizon_Tprime(Instance(3, {{7, 1}})) == 3);
  CHECK(horizon_Tprime(Instance(3, {{7, 1}, {2, 1}, {9, 1}})) == 1);
}

TEST_CASE("compute_horizon bundles the bounds") {
  const Horizon h = compute_horizon(example_instance());
  CHECK(h.T == 8);
  CHECK(h.T_prime == 4);
  CHECK(h.h_min == Rational(7, 2));
  CHECK(h.h_max == Rational(17, 2));
}

TEST_CASE("horizon properties over 1000 generated instances") {
  for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
    const int n = 1 + static_cast<int>(seed % 50);
    const int m = 1 + static_cast<int>(seed % 9);
    const Instance inst = generate_instance(n, m, 20, 20, seed);
    const Horizon h = compute_horizon(inst);
    CHECK(0 < h.T_prime);
    CHECK(h.T_prime <= h.T);
    CHECK(h.h_min <= h.h_max);
    // T = floor(H_max), T' >= ceil(H_min), checked by integer bracketing.
    CHECK(Rational(h.T) <= h.h_max);
    CHECK(h.h_max < Rational(h.T + 1));
    CHECK(Rational(h.T_prime) >= h.h_min);
    CHECK(h.T >= inst.p_max());

    std::vector<std::pair<Time, Weight>> more;
    for (const Job& j : inst.jobs()) more.emplace_back(j.p, j.w);
    more.emplace_back(1 + static_cast<Time>(seed % 20), 1);
    CHECK(horizon_T(Instance(m, more)) >= h.T);
  }
}

TEST_CASE("time_windows textbook example") {
  const TimeWindows tw = time_windows(example_instance(), 8);
  REQUIRE(tw.size() == 4);
  // Job 1: P empty, L = {4}: b = 8 - ceil((4 + 2) / 2) = 5.
  CHECK(tw[0] == Window{0, 5});
  // Job 2: L empty, b = ceil((12 - 5) / 2) = 4, clamped to T - p = 3.
  CHECK(tw[1] == Window{0, 3});
  CHECK(tw[2] == Window{0, 6});
  CHECK(tw[3] == Window{0, 4});
  // The example's input is already in WSPT order, so both readings agree.
  CHECK(time_windows(example_instance(), 8, WindowOrder::input_id) == tw);
}

TEST_CASE("time_windows identical jobs on one machine") {
  const Instance inst(1, {{2, 5}, {2, 5}, {2, 5}});
  const TimeWindows tw = time_windows(inst, horizon_T(inst));
  CHECK(tw[0].a == 0);
  CHECK(tw[1].a == 2);
  CHECK(tw[2].a == 4);
  CHECK(tw[2].b == 4);
}

TEST_CASE("time_windows rejects empty windows") {
  // With T = 5 job 1 gets b = 5 - ceil((2 + 2 + 2) / 1) = -1 < a = 0, the
  // first of several empty windows.
  const Instance inst(1, {{2, 5}, {2, 5}, {2, 5}});
  try {
    time_windows(inst, 5);
    FAIL("expected InfeasibleWindowError");
  } catch (const InfeasibleWindowError& e) {
    CHECK(e.job() == 1);
  }
}

TEST_CASE("time_windows matches the reference computation") {
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    const int n = 2 + static_cast<int>(seed % 40);
    const int m = 1 + static_cast<int>(seed % 5);
    const Instance inst = generate_instance(n, m, 1 + static_cast<Time>(seed % 20), 1 + static_cast<Weight>(seed % 7), seed);
    const Time T = horizon_T(inst);
    const TimeWindows ref_w = reference_windows(inst, T, wspt_positions(inst));
    const TimeWindows ref_i = reference_windows(inst, T, identity_positions(inst));
    auto feasible = [](const TimeWindows& tw) {
      return std::all_of(tw.begin(), tw.end(), [](const Window& w) { return w.a <= w.b; });
    };
    if (feasible(ref_w)) {
      CHECK(time_windows(inst, T) == ref_w);
    } else {
      CHECK_THROWS_AS(time_windows(inst, T), InfeasibleWindowError);
    }
    if (feasible(ref_i)) {
      CHECK(time_windows(inst, T, WindowOrder::input_id) == ref_i);
    } else {
      CHECK_THROWS_AS(time_windows(inst, T, WindowOrder::input_id), InfeasibleWindowError);
    }
  }
}

TEST_CASE("time_windows invariants") {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const Instance inst = generate_instance(30, 1 + static_cast<int>(seed % 6), 20, 20, seed);
    const Time T = horizon_T(inst);
    const TimeWindows tw = time_windows(inst, T);
    for (const Job& j : inst.jobs()) {
      const Window& w = tw[static_cast<std::size_t>(j.id - 1)];
      CHECK(0 <= w.a);
      CHECK(w.a <= w.b);
      CHECK(w.b + j.p <= T);
    }
  }
}

TEST_CASE("type_time_windows takes min a and max b") {
  const Instance inst(2, {{2, 4}, {2, 4}, {5, 7}});
  const auto types = group_job_types(inst);
  const TimeWindows tw{{0, 5}, {4, 6}, {1, 2}};
  const auto out = type_time_windows(types, tw);
  REQUIRE(out.size() == 2);
  CHECK(out[0] == Window{0, 6});
  CHECK(out[1] == Window{1, 2});

  const Instance same(2, {{3, 3}, {3, 3}});
  CHECK(type_time_windows(group_job_types(same), TimeWindows{{1, 4}, {1, 4}}) ==
        std::vector<Window>{{1, 4}});

  const TimeWindows ex = time_windows(example_instance(), 8);
  CHECK(type_time_windows(group_job_types(example_instance()), ex) == ex);
}

TEST_CASE("trivial_time_windows opens every start") {
  const TimeWindows tw = trivial_time_windows(example_instance(), 8);
  CHECK(tw == TimeWindows{{0, 6}, {0, 3}, {0, 7}, {0, 4}});
}

TEST_CASE("window safety against the oracle") {
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 120; ++seed) {
    const int n = 4 + static_cast<int>(seed % 6);  // 4..9
    const int m = 2 + static_cast<int>(seed % 2);  // 2..3
    const Instance inst = generate_instance(n, m, 1 + static_cast<Time>(seed % 20), 1 + static_cast<Weight>(seed % 5), seed);
    const Horizon h = compute_horizon(inst);
    const OracleResult res = brute_force_optimal(inst, true);
    for (WindowOrder order : {WindowOrder::wspt_rank, WindowOrder::input_id}) {
      const TimeWindows tw = time_windows(inst, h.T, order);
      bool found = false;
      for (const Schedule& s : res.optima) {
        const auto st = testsupport::start_times(inst, s);
        bool ok = true;
        for (int j = 0; j < n && ok; ++j) {
          const auto k = static_cast<std::size_t>(j);
          ok = tw[k].a <= st[k] && st[k] <= tw[k].b;
        }
        for (Time load : testsupport::machine_loads(inst, s)) ok = ok && h.T_prime <= load && load <= h.T;
        found = found || ok;
      }
      CHECK_MESSAGE(found, "seed " << seed << (order == WindowOrder::input_id ? " input order" : " wspt order"));
      ++checked;
    }
  }
  CHECK(checked == 240);
}
