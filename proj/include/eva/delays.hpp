#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "eva/core.hpp"

namespace eva {

// Reconfiguration delay parameters. Instance delays are cluster-wide;
// checkpoint/launch delays are per workload with a fallback to the
// cluster-wide averages. `migration_scale` multiplies the job-migration
// delays (checkpoint and launch) for delay-sweep experiments.
struct DelayModel {
  double acquisition_s = 19.0;
  double setup_s = 190.0;
  double default_checkpoint_s = 8.0;
  double default_launch_s = 47.0;
  std::unordered_map<std::string, double> checkpoint_by_workload_s;
  std::unordered_map<std::string, double> launch_by_workload_s;
  double migration_scale = 1.0;

  double checkpoint_s(const std::string& workload_id) const;
  double launch_s(const std::string& workload_id) const;
  double boot_s() const { return acquisition_s + setup_s; }
};

// One row of the evaluated-workloads catalog: per-task demand plus the
// measured migration delays.
struct WorkloadSpec {
  std::string id;
  ResourceVector demand;
  double checkpoint_s = 0.0;
  double launch_s = 0.0;
  int tasks_per_job = 1;
};

// The ten profiled batch workloads used throughout the experiments.
const std::vector<WorkloadSpec>& default_workloads();

// An 11-type AWS-style catalog (P3 / C7i / R7i families) on which every
// default workload is feasible.
std::vector<InstanceType> default_catalog();

DelayModel delay_model_for(const std::vector<WorkloadSpec>& workloads);
DelayModel default_delay_model();

}  // namespace eva
