#include "eva/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace eva {

double assignment_tnrp(const std::vector<Task>& tasks,
                       const CoLocationTable& table, const PricingContext& ctx) {
  double total = 0.0;
  // With an empty table every lookup is t^|companions|; skip building the
  // companion lists in that case (hot path when packing thousands of tasks).
  bool empty_table = table.entries().empty();
  double default_product = 1.0;
  if (empty_table) {
    for (std::size_t i = 1; i < tasks.size(); ++i) {
      default_product *= table.default_pairwise();
    }
  }
  std::vector<std::string> companions;
  companions.reserve(tasks.size());
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    double tput;
    if (empty_table) {
      tput = default_product;
    } else {
      companions.clear();
      for (std::size_t j = 0; j < tasks.size(); ++j) {
        if (j != i) companions.push_back(tasks[j].workload_id);
      }
      tput = table.lookup(tasks[i].workload_id, companions);
    }
    double rp = ctx.rp_of(tasks[i].id);
    if (ctx.is_multi_task(tasks[i].job_id)) {
      double degradation = 0.0;
      for (const PricedTask& other : ctx.tasks_of_job(tasks[i].job_id)) {
        degradation += (1.0 - tput) * other.reservation_price;
      }
      total += rp - degradation;
    } else {
      total += tput * rp;
    }
  }
  return total;
}

ClusterConfiguration full_reconfiguration(const std::vector<Task>& tasks,
                                          const std::vector<InstanceType>& catalog,
                                          const CoLocationTable& table,
                                          const PricingContext& ctx) {
  std::vector<InstanceType> types;
  for (const InstanceType& t : catalog) {
    if (!t.is_ghost()) types.push_back(t);
  }
  std::sort(types.begin(), types.end(),
            [](const InstanceType& a, const InstanceType& b) {
              if (a.hourly_cost != b.hourly_cost) {
                return a.hourly_cost > b.hourly_cost;
              }
              return a.id < b.id;
            });

  std::vector<Task> unassigned = tasks;
  std::sort(unassigned.begin(), unassigned.end(),
            [](const Task& a, const Task& b) { return a.id < b.id; });

  ClusterConfiguration config;
  for (const InstanceType& type : types) {
    while (true) {
      std::vector<Task> assigned;
      ResourceVector remaining = type.capacity;
      double current_tnrp = 0.0;
      while (true) {
        // Pick the unassigned fitting task maximizing TNRP of the grown set;
        // ties go to the lowest task id (unassigned is id-sorted).
        bool found = false;
        std::size_t best_index = 0;
        double best_tnrp = 0.0;
        for (std::size_t i = 0; i < unassigned.size(); ++i) {
          if (!fits(unassigned[i].demand, remaining)) continue;
          assigned.push_back(unassigned[i]);
          double candidate = assignment_tnrp(assigned, table, ctx);
          assigned.pop_back();
          if (!found || candidate > best_tnrp) {
            found = true;
            best_index = i;
            best_tnrp = candidate;
          }
        }
        if (!found) break;
        if (best_tnrp < current_tnrp) break;
        assigned.push_back(unassigned[best_index]);
        remaining = remaining - unassigned[best_index].demand;
        current_tnrp = best_tnrp;
        unassigned.erase(unassigned.begin() +
                         static_cast<std::ptrdiff_t>(best_index));
      }
      if (!assigned.empty() && current_tnrp >= type.hourly_cost) {
        config.instances.push_back(AssignedInstance{"", type, std::move(assigned)});
      } else {
        // Not cost-efficient on this type; return the tentative tasks to the
        // pool and move on to the next cheaper type.
        if (!assigned.empty()) {
          unassigned.insert(unassigned.end(), assigned.begin(), assigned.end());
          std::sort(unassigned.begin(), unassigned.end(),
                    [](const Task& a, const Task& b) { return a.id < b.id; });
        }
        break;
      }
    }
  }
  if (!unassigned.empty()) {
    throw InfeasibleTaskError("task " + unassigned.front().id +
                              " could not be assigned to any instance type");
  }
  return config;
}

ClusterConfiguration partial_reconfiguration(const ClusterConfiguration& current,
                                             const std::vector<Task>& unassigned,
                                             const std::vector<InstanceType>& catalog,
                                             const CoLocationTable& table,
                                             const PricingContext& ctx) {
  std::vector<Task> subset = unassigned;
  ClusterConfiguration kept;
  for (const AssignedInstance& inst : current.instances) {
    double tnrp = assignment_tnrp(inst.tasks, table, ctx);
    if (tnrp < inst.type.hourly_cost || inst.tasks.empty()) {
      subset.insert(subset.end(), inst.tasks.begin(), inst.tasks.end());
    } else {
      kept.instances.push_back(inst);
    }
  }
  if (subset.empty()) return current;
  ClusterConfiguration updated = full_reconfiguration(subset, catalog, table, ctx);
  kept.instances.insert(kept.instances.end(), updated.instances.begin(),
                        updated.instances.end());
  return kept;
}

namespace {

std::size_t task_overlap(const AssignedInstance& a, const AssignedInstance& b) {
  std::unordered_set<std::string> ids;
  for (const Task& t : a.tasks) ids.insert(t.id);
  std::size_t count = 0;
  for (const Task& t : b.tasks) count += ids.count(t.id);
  return count;
}

}  // namespace

ReconfigurationPlan plan_from_config(const ClusterConfiguration& new_config,
                                     const ClusterConfiguration& current,
                                     const DelayModel& delays,
                                     const CoLocationTable& table,
                                     const PricingContext& ctx) {
  ReconfigurationPlan plan;
  plan.config = new_config;

  std::unordered_map<std::string, const AssignedInstance*> current_by_id;
  std::unordered_map<std::string, std::string> current_instance_of_task;
  for (const AssignedInstance& inst : current.instances) {
    current_by_id[inst.id] = &inst;
    for (const Task& t : inst.tasks) current_instance_of_task[t.id] = inst.id;
  }

  // Instances carried over verbatim (partial reconfiguration) keep their ids.
  std::unordered_set<std::string> used_existing;
  std::vector<std::size_t> open;  // planned instances still needing a match
  for (std::size_t i = 0; i < plan.config.instances.size(); ++i) {
    if (plan.config.instances[i].id.empty()) {
      open.push_back(i);
    } else {
      used_existing.insert(plan.config.instances[i].id);
    }
  }

  // Greedy max-overlap matching within each instance type.
  struct Pair {
    std::size_t overlap;
    std::string existing_id;
    std::size_t planned_index;
  };
  std::vector<Pair> pairs;
  for (std::size_t i : open) {
    const AssignedInstance& planned = plan.config.instances[i];
    for (const AssignedInstance& existing : current.instances) {
      if (existing.type.id != planned.type.id) continue;
      if (used_existing.count(existing.id)) continue;
      pairs.push_back({task_overlap(existing, planned), existing.id, i});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    if (a.overlap != b.overlap) return a.overlap > b.overlap;
    if (a.existing_id != b.existing_id) return a.existing_id < b.existing_id;
    return a.planned_index < b.planned_index;
  });
  std::unordered_set<std::size_t> matched_planned;
  for (const Pair& p : pairs) {
    if (matched_planned.count(p.planned_index)) continue;
    if (used_existing.count(p.existing_id)) continue;
    // Zero-overlap pairs still reuse a same-type instance instead of paying
    // for a launch plus a termination.
    plan.config.instances[p.planned_index].id = p.existing_id;
    matched_planned.insert(p.planned_index);
    used_existing.insert(p.existing_id);
  }

  for (std::size_t i : open) {
    if (!matched_planned.count(i) && plan.config.instances[i].id.empty()) {
      plan.launches.push_back(plan.config.instances[i].type);
      plan.migration_cost_dollars += delays.boot_s() / 3600.0 *
                                     plan.config.instances[i].type.hourly_cost;
    }
  }
  for (const AssignedInstance& existing : current.instances) {
    if (!used_existing.count(existing.id)) {
      plan.terminations.push_back(existing.id);
    }
  }
  std::sort(plan.terminations.begin(), plan.terminations.end());

  for (const AssignedInstance& planned : plan.config.instances) {
    plan.saving_per_hour +=
        assignment_tnrp(planned.tasks, table, ctx) - planned.type.hourly_cost;
    for (const Task& t : planned.tasks) {
      auto prev = current_instance_of_task.find(t.id);
      if (prev == current_instance_of_task.end()) continue;  // fresh placement
      if (!planned.id.empty() && prev->second == planned.id) continue;
      plan.migrations.push_back(Migration{t.id, prev->second, planned.id});
      double delay_s =
          delays.checkpoint_s(t.workload_id) + delays.launch_s(t.workload_id);
      plan.migration_cost_dollars +=
          delay_s / 3600.0 * planned.type.hourly_cost;
    }
  }
  return plan;
}

bool ReconfigurationDecisionModel::cold() const {
  double elapsed_h = (now_s - start_time_s) / 3600.0;
  return elapsed_h < 1.0 || window_event_times_s.empty();
}

double ReconfigurationDecisionModel::lambda_hat() const {
  if (window_event_times_s.empty()) return 0.0;
  double elapsed_h = (now_s - start_time_s) / 3600.0;
  double span_h = std::min(elapsed_h, window_hours);
  if (span_h <= 0.0) return 0.0;
  return static_cast<double>(window_event_times_s.size()) / span_h;
}

double ReconfigurationDecisionModel::p_hat() const {
  return (static_cast<double>(full_adoptions) + 1.0) /
         (static_cast<double>(total_events) + 2.0);
}

void update_decision_model(ReconfigurationDecisionModel& model,
                           const std::vector<double>& new_event_times_s,
                           double now_s) {
  model.now_s = now_s;
  for (double t : new_event_times_s) {
    model.window_event_times_s.push_back(t);
    ++model.total_events;
  }
  double horizon_s = now_s - model.window_hours * 3600.0;
  while (!model.window_event_times_s.empty() &&
         model.window_event_times_s.front() < horizon_s) {
    model.window_event_times_s.pop_front();
  }
}

void record_adoption(ReconfigurationDecisionModel& model, bool adopted_full) {
  if (adopted_full) ++model.full_adoptions;
}

double mean_time_to_full_reconfiguration(double lambda_per_hour, double p) {
  if (!(lambda_per_hour > 0.0)) throw EvaError("lambda must be positive");
  if (!(p > 0.0 && p < 1.0)) throw EvaError("p must be in (0,1)");
  return -1.0 / (lambda_per_hour * std::log(1.0 - p));
}

double estimate_mean_duration(const ReconfigurationDecisionModel& model) {
  if (model.cold()) throw EvaError("cold model");
  return mean_time_to_full_reconfiguration(model.lambda_hat(), model.p_hat());
}

bool choose_full_configuration(const ReconfigurationPlan& full_plan,
                               const ReconfigurationPlan& partial_plan,
                               const ReconfigurationDecisionModel& model) {
  if (model.cold()) return false;
  double duration_h = estimate_mean_duration(model);
  double full_value = full_plan.saving_per_hour * duration_h -
                      full_plan.migration_cost_dollars;
  double partial_value = partial_plan.saving_per_hour * duration_h -
                         partial_plan.migration_cost_dollars;
  // Partial wins ties: less disruption.
  return full_value > partial_value;
}

}  // namespace eva
