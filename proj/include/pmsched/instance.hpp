#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pmsched {

using Time = std::int64_t;
using Weight = std::int64_t;
using JobId = int;  // 1-based

struct Job {
  JobId id = 0;
  Time p = 0;
  Weight w = 0;

  friend bool operator==(const Job&, const Job&) = default;
};

// n jobs on m identical machines. Job ids are 1..n in list order.
class Instance {
 public:
  // Throws ArgumentError when machines < 1, the job list is empty or some
  // p/w is non-positive.
  Instance(int machines, std::span<const std::pair<Time, Weight>> jobs);
  Instance(int machines, std::initializer_list<std::pair<Time, Weight>> jobs);

  int n() const noexcept { return static_cast<int>(jobs_.size()); }
  int m() const noexcept { return machines_; }
  const std::vector<Job>& jobs() const noexcept { return jobs_; }
  const Job& job(JobId id) const { return jobs_.at(static_cast<std::size_t>(id - 1)); }

  Time total_p() const noexcept { return total_p_; }
  Time p_max() const noexcept { return p_max_; }

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  int machines_;
  std::vector<Job> jobs_;
  Time total_p_ = 0;
  Time p_max_ = 0;
};

Instance parse_instance(std::istream& in);
Instance parse_instance_string(std::string_view text);
void write_instance(std::ostream& out, const Instance& inst);
std::string write_instance_string(const Instance& inst);

// p ~ U{1..p_max}, w ~ U{1..w_max}, drawn job by job (p first, then w) from
// std::mt19937_64 seeded with `seed`. See rng.hpp for the bounded draw.
Instance generate_instance(int n, int m, Time p_max, Weight w_max, std::uint64_t seed);

// True when job a precedes job b in WSPT order: w_a/p_a > w_b/p_b, ties
// broken by smaller id. Cross-multiplied, no floating point.
bool wspt_before(const Job& a, const Job& b) noexcept;

std::vector<JobId> wspt_order(const Instance& inst);

// Jobs sharing (p, w). Types are listed in WSPT order of (p, w); the type id
// used by the graph and model layers is position + 1.
struct JobType {
  Time p = 0;
  Weight w = 0;
  int d = 0;
  std::vector<JobId> members;  // ascending

  friend bool operator==(const JobType&, const JobType&) = default;
};

using JobTypeTable = std::vector<JobType>;

JobTypeTable group_job_types(const Instance& inst);

// One type per job, in WSPT order. Used when type merging is disabled.
JobTypeTable singleton_job_types(const Instance& inst);

// m job lists, in processing order. No idle time precedes a job.
struct Schedule {
  std::vector<std::vector<JobId>> machines;

  friend bool operator==(const Schedule&, const Schedule&) = default;
};

// Throws ValidationError unless the machine lists partition 1..n and there are
// at most m of them.
void validate_schedule(const Instance& inst, const Schedule& sched);

// C_j indexed by id - 1.
std::vector<Time> completion_times(const Instance& inst, const Schedule& sched);

std::int64_t evaluate_schedule(const Instance& inst, const Schedule& sched);

// Σ w_j C_j of one machine sequence; no validation.
std::int64_t sequence_cost(const Instance& inst, std::span<const JobId> seq);

// Sorts every machine list by WSPT.
void wspt_sort_machines(const Instance& inst, Schedule& sched);

// Schedule file: "objective V" then m lines "machine k: j1 j2 ...".
void write_schedule(std::ostream& out, const Instance& inst, const Schedule& sched);
std::string write_schedule_string(const Instance& inst, const Schedule& sched);
Schedule parse_schedule(std::istream& in);
Schedule parse_schedule_string(std::string_view text);

}  // namespace pmsched
