#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eva/colocation_table.hpp"
#include "eva/core.hpp"
#include "eva/delays.hpp"
#include "eva/interference.hpp"
#include "eva/trace.hpp"

namespace eva {

enum class SchedulerKind {
  Eva,             // TNRP + full/partial ensemble
  EvaRp,           // ensemble, throughput ignored in pricing
  EvaSingle,       // TNRP, multi-task jobs priced as independent tasks
  EvaFullOnly,     // always adopt Full Reconfiguration
  EvaPartialOnly,  // always adopt Partial Reconfiguration
  NoPacking,       // one instance per task
  Oracle,          // exact small-instance optimizer each period
};

SchedulerKind parse_scheduler_kind(const std::string& name);
std::string to_string(SchedulerKind kind);

struct SimParams {
  double period_s = 300.0;
  double default_pairwise = 0.95;
  double lambda_window_hours = 24.0;
  std::uint64_t seed = 0;
  std::size_t oracle_task_cap = 16;
  double oracle_budget_s = 60.0;
  // Optional warm start for the co-location table.
  std::optional<CoLocationTable> warm_table;
  // When set, receives the learned co-location table after the run.
  CoLocationTable* learned_table_out = nullptr;
};

struct JobRecord {
  std::string job_id;
  double arrival_s = 0.0;
  double jct_hours = 0.0;
  double idle_hours = 0.0;
};

struct InstanceLogEntry {
  std::string id;
  std::string type_id;
  double hourly_cost = 0.0;
  double launch_s = 0.0;
  double terminate_s = 0.0;
};

struct SimReport {
  int schema_version = 1;
  std::string scheduler;
  std::uint64_t seed = 0;
  double total_cost = 0.0;
  double mean_jct_hours = 0.0;
  double mean_idle_hours = 0.0;
  double alloc_gpu = 0.0;
  double alloc_cpu = 0.0;
  double alloc_ram = 0.0;
  double avg_tasks_per_instance = 0.0;
  double migrations_per_task = 0.0;
  std::uint64_t instances_launched = 0;
  double full_adoption_fraction = 0.0;
  std::uint64_t skipped_infeasible_jobs = 0;
  std::vector<JobRecord> jobs;
  std::vector<InstanceLogEntry> instance_log;
};

// Per-resource allocation ratio of a running configuration: summed assigned
// demand over summed capacity. Empty when no non-ghost instance runs.
struct AllocationSample {
  double gpu = 0.0;
  double cpu = 0.0;
  double ram = 0.0;
  bool has_instances = false;
};
AllocationSample measure_allocation(const ClusterConfiguration& config);

// Deterministic discrete-event simulation of the cloud-based cluster.
// Infeasible jobs are skipped (counted in the report).
SimReport run_simulation(const std::vector<TraceJob>& trace,
                         const std::vector<InstanceType>& catalog,
                         const GroundTruthInterference& interference,
                         const DelayModel& delays, SchedulerKind scheduler,
                         const SimParams& params);

}  // namespace eva
