#include "pmsched/instance.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

#include "pmsched/error.hpp"
#include "pmsched/rng.hpp"

namespace pmsched {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

bool is_comment_or_blank(std::string_view line) {
  const auto pos = line.find_first_not_of(" \t\r\n");
  return pos == std::string_view::npos || line[pos] == '#';
}

std::int64_t to_int(std::string_view tok, int line) {
  std::int64_t v = 0;
  const auto* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, v);
  if (ec != std::errc{} || ptr != end) {
    throw ParseError(line, "expected an integer, got '" + std::string(tok) + "'");
  }
  return v;
}

}  // namespace

Instance::Instance(int machines, std::span<const std::pair<Time, Weight>> jobs)
    : machines_(machines) {
  if (machines < 1) throw ArgumentError("machine count must be >= 1");
  if (jobs.empty()) throw ArgumentError("instance needs at least one job");
  jobs_.reserve(jobs.size());
  JobId id = 1;
  for (const auto& [p, w] : jobs) {
    if (p < 1) throw ArgumentError("job " + std::to_string(id) + ": processing time must be >= 1");
    if (w < 1) throw ArgumentError("job " + std::to_string(id) + ": weight must be >= 1");
    jobs_.push_back(Job{id++, p, w});
    total_p_ += p;
    p_max_ = std::max(p_max_, p);
  }
}

Instance::Instance(int machines, std::initializer_list<std::pair<Time, Weight>> jobs)
    : Instance(machines, std::span<const std::pair<Time, Weight>>(jobs.begin(), jobs.size())) {}

Instance parse_instance(std::istream& in) {
  std::string line;
  int line_no = 0;
  long long n = -1;
  int m = 0;
  int header_line = 0;
  std::vector<std::pair<Time, Weight>> rows;

  while (std::getline(in, line)) {
    ++line_no;
    if (is_comment_or_blank(line)) continue;
    const auto toks = split_ws(line);
    if (toks.size() != 2) {
      throw ParseError(line_no, n < 0 ? "header must be 'n m'" : "job line must be 'p w'");
    }
    const auto a = to_int(toks[0], line_no);
    const auto b = to_int(toks[1], line_no);
    if (n < 0) {
      if (a < 1) throw ParseError(line_no, "job count must be >= 1");
      if (b < 1 || b > std::numeric_limits<int>::max()) {
        throw ParseError(line_no, "machine count must be >= 1");
      }
      n = a;
      m = static_cast<int>(b);
      header_line = line_no;
      continue;
    }
    if (static_cast<long long>(rows.size()) == n) {
      throw ParseError(line_no, "more job lines than the declared n = " + std::to_string(n));
    }
    if (a < 1) throw ParseError(line_no, "processing time must be >= 1");
    if (b < 1) throw ParseError(line_no, "weight must be >= 1");
    rows.emplace_back(a, b);
  }
  if (n < 0) throw ParseError(line_no, "missing header 'n m'");
  if (static_cast<long long>(rows.size()) != n) {
    throw ParseError(line_no, "expected " + std::to_string(n) + " job lines after header on line " +
                                  std::to_string(header_line) + ", found " +
                                  std::to_string(rows.size()));
  }
  return Instance(m, rows);
}

Instance parse_instance_string(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_instance(in);
}

void write_instance(std::ostream& out, const Instance& inst) {
  out << inst.n() << ' ' << inst.m() << '\n';
  for (const auto& j : inst.jobs()) out << j.p << ' ' << j.w << '\n';
}

std::string write_instance_string(const Instance& inst) {
  std::ostringstream out;
  write_instance(out, inst);
  return out.str();
}

Instance generate_instance(int n, int m, Time p_max, Weight w_max, std::uint64_t seed) {
  if (n < 1) throw ArgumentError("n must be >= 1");
  if (m < 1) throw ArgumentError("m must be >= 1");
  if (p_max < 1) throw ArgumentError("p_max must be >= 1");
  if (w_max < 1) throw ArgumentError("w_max must be >= 1");
  Rng rng(seed);
  std::vector<std::pair<Time, Weight>> rows;
  rows.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const Time p = rng.between(1, p_max);
    const Weight w = rng.between(1, w_max);
    rows.emplace_back(p, w);
  }
  return Instance(m, rows);
}

bool wspt_before(const Job& a, const Job& b) noexcept {
  const auto lhs = a.w * b.p;
  const auto rhs = b.w * a.p;
  if (lhs != rhs) return lhs > rhs;
  return a.id < b.id;
}

std::vector<JobId> wspt_order(const Instance& inst) {
  std::vector<JobId> order(static_cast<std::size_t>(inst.n()));
  std::iota(order.begin(), order.end(), 1);
  std::sort(order.begin(), order.end(),
            [&](JobId a, JobId b) { return wspt_before(inst.job(a), inst.job(b)); });
  return order;
}

JobTypeTable group_job_types(const Instance& inst) {
  JobTypeTable types;
  // WSPT order visits each (p, w) class contiguously: equal ratio and equal
  // (p, w) means identical keys, and ids only break ties inside a ratio class.
  for (JobId id : wspt_order(inst)) {
    const Job& j = inst.job(id);
    auto it = std::find_if(types.begin(), types.end(),
                           [&](const JobType& t) { return t.p == j.p && t.w == j.w; });
    if (it == types.end()) {
      types.push_back(JobType{j.p, j.w, 0, {}});
      it = std::prev(types.end());
    }
    ++it->d;
    it->members.push_back(id);
  }
  for (auto& t : types) std::sort(t.members.begin(), t.members.end());
  return types;
}

JobTypeTable singleton_job_types(const Instance& inst) {
  JobTypeTable types;
  for (JobId id : wspt_order(inst)) {
    const Job& j = inst.job(id);
    types.push_back(JobType{j.p, j.w, 1, {id}});
  }
  return types;
}

void validate_schedule(const Instance& inst, const Schedule& sched) {
  if (static_cast<int>(sched.machines.size()) > inst.m()) {
    throw ValidationError("schedule uses " + std::to_string(sched.machines.size()) +
                          " machines, instance has " + std::to_string(inst.m()));
  }
  std::vector<int> seen(static_cast<std::size_t>(inst.n()) + 1, 0);
  for (const auto& seq : sched.machines) {
    for (JobId id : seq) {
      if (id < 1 || id > inst.n()) {
        throw ValidationError("unknown job id " + std::to_string(id));
      }
      if (seen[static_cast<std::size_t>(id)]++) {
        throw ValidationError("job " + std::to_string(id) + " scheduled more than once");
      }
    }
  }
  for (JobId id = 1; id <= inst.n(); ++id) {
    if (!seen[static_cast<std::size_t>(id)]) {
      throw ValidationError("job " + std::to_string(id) + " is not scheduled");
    }
  }
}

std::vector<Time> completion_times(const Instance& inst, const Schedule& sched) {
  validate_schedule(inst, sched);
  std::vector<Time> c(static_cast<std::size_t>(inst.n()), 0);
  for (const auto& seq : sched.machines) {
    Time t = 0;
    for (JobId id : seq) {
      t += inst.job(id).p;
      c[static_cast<std::size_t>(id - 1)] = t;
    }
  }
  return c;
}

std::int64_t sequence_cost(const Instance& inst, std::span<const JobId> seq) {
  std::int64_t cost = 0;
  Time t = 0;
  for (JobId id : seq) {
    const Job& j = inst.job(id);
    t += j.p;
    cost += j.w * t;
  }
  return cost;
}

std::int64_t evaluate_schedule(const Instance& inst, const Schedule& sched) {
  validate_schedule(inst, sched);
  std::int64_t total = 0;
  for (const auto& seq : sched.machines) total += sequence_cost(inst, seq);
  return total;
}

void wspt_sort_machines(const Instance& inst, Schedule& sched) {
  for (auto& seq : sched.machines) {
    std::sort(seq.begin(), seq.end(),
              [&](JobId a, JobId b) { return wspt_before(inst.job(a), inst.job(b)); });
  }
}

void write_schedule(std::ostream& out, const Instance& inst, const Schedule& sched) {
  out << "objective " << evaluate_schedule(inst, sched) << '\n';
  for (int k = 0; k < inst.m(); ++k) {
    out << "machine " << (k + 1) << ':';
    if (k < static_cast<int>(sched.machines.size())) {
      for (JobId id : sched.machines[static_cast<std::size_t>(k)]) out << ' ' << id;
    }
    out << '\n';
  }
}

std::string write_schedule_string(const Instance& inst, const Schedule& sched) {
  std::ostringstream out;
  write_schedule(out, inst, sched);
  return out.str();
}

Schedule parse_schedule(std::istream& in) {
  Schedule sched;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_comment_or_blank(line)) continue;
    auto toks = split_ws(line);
    if (toks.front() == "objective") {
      if (toks.size() != 2) throw ParseError(line_no, "expected 'objective V'");
      to_int(toks[1], line_no);
      continue;
    }
    if (toks.front() != "machine" || toks.size() < 2 || toks[1].empty() ||
        toks[1].back() != ':') {
      throw ParseError(line_no, "expected 'machine k: j1 j2 ...'");
    }
    const auto k = to_int(toks[1].substr(0, toks[1].size() - 1), line_no);
    if (k != static_cast<std::int64_t>(sched.machines.size()) + 1) {
      throw ParseError(line_no, "machines must be listed as 1, 2, ... in order");
    }
    std::vector<JobId> seq;
    for (std::size_t i = 2; i < toks.size(); ++i) {
      seq.push_back(static_cast<JobId>(to_int(toks[i], line_no)));
    }
    sched.machines.push_back(std::move(seq));
  }
  if (sched.machines.empty()) throw ParseError(line_no, "no machine lines");
  return sched;
}

Schedule parse_schedule_string(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_schedule(in);
}

}  // namespace pmsched
