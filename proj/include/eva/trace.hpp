#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "eva/core.hpp"
#include "eva/delays.hpp"

namespace eva {

// One trace row; tasks within a job are identical copies.
struct TraceJob {
  std::string job_id;
  double arrival_time_s = 0.0;
  int num_tasks = 1;
  double work_hours = 0.0;
  std::string workload_id;
  ResourceVector demand;
};

std::vector<TraceJob> parse_trace(const std::string& csv_text);
std::vector<TraceJob> load_trace(const std::string& path);
void save_trace(const std::vector<TraceJob>& trace, const std::string& path);

// Expands trace rows into Jobs with per-task ids "<job>-t<k>".
std::vector<Job> expand_jobs(const std::vector<TraceJob>& trace);

enum class DurationModel { UniformRange, GavelLogUniform };

struct TraceGenParams {
  int num_jobs = 32;
  double mean_interarrival_s = 1200.0;
  DurationModel duration_model = DurationModel::UniformRange;
  double uniform_min_hours = 0.5;
  double uniform_max_hours = 3.0;
  std::vector<WorkloadSpec> workloads;  // empty -> default_workloads()
  double multi_task_fraction = 0.0;
  std::vector<int> multi_task_counts = {2, 4};  // cycled 1:1
  std::uint64_t seed = 0;
};

// Poisson arrivals, workloads sampled uniformly, durations per the chosen
// model; multi-task jobs duplicate their single task. Deterministic per seed.
std::vector<TraceJob> generate_trace(const TraceGenParams& params);

}  // namespace eva
