#pragma once

#include <unordered_map>

#include "eva/core.hpp"

namespace eva {

struct PricedTask {
  Task task;
  double reservation_price = 0.0;  // cached at submission
};

// Hourly cost of the cheapest non-ghost type whose capacity fits the task.
// Throws InfeasibleTaskError if no type fits.
double reservation_price(const Task& task,
                         const std::vector<InstanceType>& catalog);

double rp_sum(const std::vector<PricedTask>& tasks);

// RP scaled by the task's normalized throughput. tput must be in (0, 1].
double tnrp_single(const PricedTask& task, double tput);

// RP(tau) minus the job-wide degradation charge, summed over every task of
// the job including tau itself. May be negative; callers do not clamp.
double tnrp_multitask(const PricedTask& task,
                      const std::vector<PricedTask>& job_tasks, double tput);

// Shared lookup context for TNRP evaluation: cached reservation prices and
// job membership.
struct PricingContext {
  std::unordered_map<std::string, double> rp_by_task;     // task id -> RP
  std::unordered_map<std::string, std::vector<PricedTask>> job_tasks;

  void add(const PricedTask& pt);
  const std::vector<PricedTask>& tasks_of_job(const std::string& job_id) const;
  double rp_of(const std::string& task_id) const;
  bool is_multi_task(const std::string& job_id) const;
};

PricingContext make_pricing_context(const std::vector<Task>& tasks,
                                    const std::vector<InstanceType>& catalog);

// Sum of per-task TNRP over a set; multi-task jobs use the job-wide form.
// `throughputs` maps task id to normalized throughput.
double tnrp_set(const std::vector<PricedTask>& tasks,
                const std::unordered_map<std::string, double>& throughputs,
                const PricingContext& ctx);

// TNRP(T) >= hourly cost, per Algorithm 1's acceptance check.
bool is_cost_efficient(const std::vector<PricedTask>& tasks,
                       const InstanceType& type,
                       const std::unordered_map<std::string, double>& throughputs,
                       const PricingContext& ctx);

}  // namespace eva
