#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace eva {

struct EvaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : EvaError {
  using EvaError::EvaError;
};

// Thrown when no non-ghost instance type can host a task.
struct InfeasibleTaskError : EvaError {
  using EvaError::EvaError;
};

// Multi-dimensional demand/capacity. GPU and CPU are integral counts,
// RAM may be fractional.
struct ResourceVector {
  int gpu = 0;
  int cpu = 0;
  double ram_gb = 0.0;

  bool operator==(const ResourceVector& other) const = default;
};

ResourceVector operator+(const ResourceVector& a, const ResourceVector& b);
ResourceVector operator-(const ResourceVector& a, const ResourceVector& b);

// Component-wise partial order: true iff demand <= capacity in every
// dimension.
bool fits(const ResourceVector& demand, const ResourceVector& capacity);

struct InstanceType {
  std::string id;
  ResourceVector capacity;
  double hourly_cost = 0.0;

  bool is_ghost() const {
    return capacity == ResourceVector{} && hourly_cost == 0.0;
  }
};

// The zero-cost, zero-capacity type standing in for an unprovisioned slot.
InstanceType ghost_type();

struct Task {
  std::string id;
  std::string job_id;
  std::string workload_id;
  ResourceVector demand;
};

struct Job {
  std::string id;
  std::vector<Task> tasks;
  double arrival_time_s = 0.0;
  double work_hours = 0.0;  // duration at normalized throughput 1.0
};

// One instance (running or planned) together with its assigned tasks.
struct AssignedInstance {
  std::string id;  // empty for a planned instance not yet provisioned
  InstanceType type;
  std::vector<Task> tasks;
};

struct ClusterConfiguration {
  std::vector<AssignedInstance> instances;
};

ResourceVector demand_sum(const std::vector<Task>& tasks);

// Capacity left on an instance type after hosting `tasks`.
// Throws EvaError if the tasks do not collectively fit.
ResourceVector remaining_capacity(const InstanceType& type,
                                  const std::vector<Task>& tasks);

// Sum of hourly cost over non-ghost instances.
double configuration_hourly_cost(const ClusterConfiguration& config);

// Checks the two configuration invariants: every task appears exactly once
// and every instance's summed demand fits its capacity.
bool validate_configuration(const ClusterConfiguration& config,
                            std::string* error = nullptr);

// Catalog file: CSV with header `type_id,gpu,cpu,ram_gb,hourly_cost`.
// The ghost type never appears in files.
std::vector<InstanceType> load_catalog(const std::string& path);
std::vector<InstanceType> parse_catalog(const std::string& csv_text);
void save_catalog(const std::vector<InstanceType>& catalog,
                  const std::string& path);

}  // namespace eva
