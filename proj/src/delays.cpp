#include "eva/delays.hpp"

namespace eva {

double DelayModel::checkpoint_s(const std::string& workload_id) const {
  auto it = checkpoint_by_workload_s.find(workload_id);
  double base = it != checkpoint_by_workload_s.end() ? it->second
                                                     : default_checkpoint_s;
  return base * migration_scale;
}

double DelayModel::launch_s(const std::string& workload_id) const {
  auto it = launch_by_workload_s.find(workload_id);
  double base = it != launch_by_workload_s.end() ? it->second : default_launch_s;
  return base * migration_scale;
}

const std::vector<WorkloadSpec>& default_workloads() {
  static const std::vector<WorkloadSpec> workloads = {
      {"resnet18-2task", {1, 4, 24.0}, 2.0, 80.0, 2},
      {"resnet18-4task", {1, 4, 24.0}, 2.0, 80.0, 4},
      {"vit", {2, 8, 60.0}, 3.0, 143.0, 1},
      {"cyclegan", {1, 4, 10.0}, 7.0, 2.0, 1},
      {"gpt2", {4, 4, 10.0}, 30.0, 15.0, 1},
      {"graphsage", {1, 8, 50.0}, 2.0, 160.0, 1},
      {"gcn", {0, 12, 40.0}, 2.0, 28.0, 1},
      {"a3c", {0, 10, 8.0}, 2.0, 10.0, 1},
      {"diamond", {0, 14, 16.0}, 8.0, 12.0, 1},
      {"openfoam", {0, 8, 8.0}, 21.0, 1.0, 1},
  };
  return workloads;
}

std::vector<InstanceType> default_catalog() {
  return {
      {"p3.2xlarge", {1, 8, 61.0}, 3.06},
      {"p3.8xlarge", {4, 32, 244.0}, 12.24},
      {"p3.16xlarge", {8, 64, 488.0}, 24.48},
      {"c7i.xlarge", {0, 4, 8.0}, 0.1785},
      {"c7i.2xlarge", {0, 8, 16.0}, 0.357},
      {"c7i.4xlarge", {0, 16, 32.0}, 0.714},
      {"c7i.8xlarge", {0, 32, 64.0}, 1.428},
      {"r7i.xlarge", {0, 4, 32.0}, 0.2645},
      {"r7i.2xlarge", {0, 8, 64.0}, 0.529},
      {"r7i.4xlarge", {0, 16, 128.0}, 1.058},
      {"r7i.8xlarge", {0, 32, 256.0}, 2.116},
  };
}

DelayModel delay_model_for(const std::vector<WorkloadSpec>& workloads) {
  DelayModel delays;
  for (const WorkloadSpec& w : workloads) {
    delays.checkpoint_by_workload_s[w.id] = w.checkpoint_s;
    delays.launch_by_workload_s[w.id] = w.launch_s;
  }
  return delays;
}

DelayModel default_delay_model() { return delay_model_for(default_workloads()); }

}  // namespace eva
