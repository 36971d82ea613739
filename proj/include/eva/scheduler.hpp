#pragma once

#include <deque>

#include "eva/colocation_table.hpp"
#include "eva/core.hpp"
#include "eva/delays.hpp"
#include "eva/pricing.hpp"

namespace eva {

// TNRP of a hypothetical tasks-to-instance assignment, with each task's
// throughput taken from the table for its co-location set.
double assignment_tnrp(const std::vector<Task>& tasks,
                       const CoLocationTable& table, const PricingContext& ctx);

// Algorithm: iterate instance types by descending cost; per instance,
// greedily add the unassigned fitting task maximizing TNRP of the set,
// stopping when TNRP would decrease; keep the instance iff TNRP >= cost,
// else fall through to the next cheaper type. Returned instances have
// empty ids (planned, not provisioned).
ClusterConfiguration full_reconfiguration(const std::vector<Task>& tasks,
                                          const std::vector<InstanceType>& catalog,
                                          const CoLocationTable& table,
                                          const PricingContext& ctx);

// Reconfigures only the unassigned tasks plus tasks on instances whose
// assignment is no longer cost-efficient; the rest of `current` is kept
// verbatim. Instances emptied by the extraction are dropped (terminated by
// the resulting plan).
ClusterConfiguration partial_reconfiguration(const ClusterConfiguration& current,
                                             const std::vector<Task>& unassigned,
                                             const std::vector<InstanceType>& catalog,
                                             const CoLocationTable& table,
                                             const PricingContext& ctx);

struct Migration {
  std::string task_id;
  std::string from_instance;
  std::string to_instance;  // empty when the destination is a new launch
};

struct ReconfigurationPlan {
  ClusterConfiguration config;  // matched instances carry existing ids
  double saving_per_hour = 0.0;       // sum of TNRP(T_i) - C_i
  double migration_cost_dollars = 0.0;
  std::vector<Migration> migrations;
  std::vector<InstanceType> launches;
  std::vector<std::string> terminations;  // existing instance ids
};

// Matches planned instances to existing ones of the same type by greedy
// maximum task overlap, then prices the resulting migrations and launches.
ReconfigurationPlan plan_from_config(const ClusterConfiguration& new_config,
                                     const ClusterConfiguration& current,
                                     const DelayModel& delays,
                                     const CoLocationTable& table,
                                     const PricingContext& ctx);

// Empirical estimate of the Poisson event rate and full-adoption trigger
// probability behind the mean-time-to-reconfiguration formula.
struct ReconfigurationDecisionModel {
  double window_hours = 24.0;
  double start_time_s = 0.0;
  double now_s = 0.0;
  std::deque<double> window_event_times_s;
  std::uint64_t total_events = 0;
  std::uint64_t full_adoptions = 0;

  bool cold() const;
  double lambda_hat() const;  // events per hour over the sliding window
  double p_hat() const;       // add-one smoothed trigger probability
};

void update_decision_model(ReconfigurationDecisionModel& model,
                           const std::vector<double>& new_event_times_s,
                           double now_s);
void record_adoption(ReconfigurationDecisionModel& model, bool adopted_full);

// Mean time to the next Full Reconfiguration, -1 / (lambda * ln(1 - p)).
double mean_time_to_full_reconfiguration(double lambda_per_hour, double p);

// Throws EvaError("cold model") when the model cannot supply lambda/p yet.
double estimate_mean_duration(const ReconfigurationDecisionModel& model);

// The ensemble criterion: Full iff S_F * D - M_F > S_P * D - M_P with
// D estimated from the model; a cold model always yields Partial.
bool choose_full_configuration(const ReconfigurationPlan& full_plan,
                               const ReconfigurationPlan& partial_plan,
                               const ReconfigurationDecisionModel& model);

}  // namespace eva
