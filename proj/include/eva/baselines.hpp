#pragma once

#include "eva/core.hpp"
#include "eva/pricing.hpp"

namespace eva {

// One instance per task, each of the task's reservation-price type.
ClusterConfiguration no_packing_schedule(const std::vector<Task>& tasks,
                                         const std::vector<InstanceType>& catalog);

// Small-scale exact formulation: |slots| = |tasks|, ghost type appended
// internally so unused slots cost nothing.
struct IlpInstance {
  std::vector<Task> tasks;
  std::vector<InstanceType> catalog;
  std::size_t task_cap = 16;  // guard against factorial blowup
};

struct OracleResult {
  ClusterConfiguration config;
  double hourly_cost = 0.0;
  bool proven_optimal = false;
};

// Branch-and-bound over task partitions (slots are interchangeable, so the
// search is canonicalized as restricted growth). Each group is priced at the
// cheapest type fitting its summed demand. Interference is not modeled;
// throughputs are 1. Returns the best configuration found within the budget
// and whether optimality was proven.
OracleResult exact_min_cost(const IlpInstance& instance,
                            double budget_seconds = 60.0,
                            bool override_cap = false);

// Checks the assignment, type, and capacity constraint families plus ghost
// semantics, against exactly the task set of `instance`.
bool validate_ilp_solution(const ClusterConfiguration& config,
                           const IlpInstance& instance,
                           std::string* error = nullptr);

}  // namespace eva
