#include "eva/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <unordered_map>
#include <unordered_set>

#include "eva/baselines.hpp"
#include "eva/pricing.hpp"
#include "eva/scheduler.hpp"

namespace eva {

SchedulerKind parse_scheduler_kind(const std::string& name) {
  if (name == "eva") return SchedulerKind::Eva;
  if (name == "eva-rp") return SchedulerKind::EvaRp;
  if (name == "eva-single") return SchedulerKind::EvaSingle;
  if (name == "eva-full-only") return SchedulerKind::EvaFullOnly;
  if (name == "eva-partial-only") return SchedulerKind::EvaPartialOnly;
  if (name == "no-packing") return SchedulerKind::NoPacking;
  if (name == "oracle") return SchedulerKind::Oracle;
  throw EvaError("unknown scheduler: " + name);
}

std::string to_string(SchedulerKind kind) {
  switch (kind) {
    case SchedulerKind::Eva: return "eva";
    case SchedulerKind::EvaRp: return "eva-rp";
    case SchedulerKind::EvaSingle: return "eva-single";
    case SchedulerKind::EvaFullOnly: return "eva-full-only";
    case SchedulerKind::EvaPartialOnly: return "eva-partial-only";
    case SchedulerKind::NoPacking: return "no-packing";
    case SchedulerKind::Oracle: return "oracle";
  }
  return "unknown";
}

AllocationSample measure_allocation(const ClusterConfiguration& config) {
  AllocationSample sample;
  ResourceVector demand, capacity;
  for (const AssignedInstance& inst : config.instances) {
    if (inst.type.is_ghost()) continue;
    sample.has_instances = true;
    capacity = capacity + inst.type.capacity;
    demand = demand + demand_sum(inst.tasks);
  }
  if (!sample.has_instances) return sample;
  sample.gpu = capacity.gpu > 0 ? static_cast<double>(demand.gpu) / capacity.gpu
                                : 0.0;
  sample.cpu = capacity.cpu > 0 ? static_cast<double>(demand.cpu) / capacity.cpu
                                : 0.0;
  sample.ram = capacity.ram_gb > 0 ? demand.ram_gb / capacity.ram_gb : 0.0;
  return sample;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTimeEps = 1e-6;  // seconds

struct SimTask {
  Task task;
  bool assigned = false;
  std::string instance_id;
  double run_from = kInf;  // absolute seconds; running iff now >= run_from
};

struct SimJob {
  Job job;
  bool arrived = false;
  bool done = false;
  double progress_h = 0.0;
  double idle_h = 0.0;
  double completion_s = 0.0;
};

struct SimInstance {
  std::string id;
  InstanceType type;
  double launch_s = 0.0;
  double ready_s = 0.0;
  std::vector<std::string> task_ids;
};

class Simulation {
 public:
  Simulation(const std::vector<TraceJob>& trace,
             const std::vector<InstanceType>& catalog,
             const GroundTruthInterference& interference,
             const DelayModel& delays, SchedulerKind kind,
             const SimParams& params)
      : catalog_(catalog),
        gt_(interference),
        delays_(delays),
        kind_(kind),
        params_(params),
        table_(params.warm_table ? *params.warm_table
                                 : CoLocationTable(params.default_pairwise)),
        rp_table_(1.0) {
    model_.window_hours = params.lambda_window_hours;
    for (const Job& job : expand_jobs(trace)) {
      bool feasible = true;
      for (const Task& t : job.tasks) {
        bool fits_any = false;
        for (const InstanceType& type : catalog_) {
          if (!type.is_ghost() && fits(t.demand, type.capacity)) {
            fits_any = true;
            break;
          }
        }
        if (!fits_any) feasible = false;
      }
      if (!feasible) {
        std::cerr << "warning: skipping infeasible job " << job.id << "\n";
        ++skipped_;
        continue;
      }
      jobs_.push_back(SimJob{job});
      total_tasks_ += job.tasks.size();
    }
    std::sort(jobs_.begin(), jobs_.end(), [](const SimJob& a, const SimJob& b) {
      if (a.job.arrival_time_s != b.job.arrival_time_s) {
        return a.job.arrival_time_s < b.job.arrival_time_s;
      }
      return a.job.id < b.job.id;
    });
    for (SimJob& j : jobs_) {
      for (const Task& t : j.job.tasks) {
        SimTask st;
        st.task = t;
        tasks_[t.id] = st;
      }
    }
    if (kind_ == SchedulerKind::Oracle &&
        total_tasks_ > params_.oracle_task_cap) {
      throw EvaError("oracle scheduler refused: trace has " +
                     std::to_string(total_tasks_) + " tasks, cap is " +
                     std::to_string(params_.oracle_task_cap));
    }
  }

  SimReport run();

 private:
  double job_rate(const SimJob& j) const;
  std::vector<std::string> running_companions(const SimTask& st) const;
  void observe_throughputs();
  void schedule(double now);
  void apply_configuration(const ClusterConfiguration& adopted, double now);
  void terminate_instance(std::size_t index, double when);
  ClusterConfiguration current_configuration() const;
  SimInstance* find_instance(const std::string& id);

  const std::vector<InstanceType>& catalog_;
  const GroundTruthInterference& gt_;
  const DelayModel& delays_;
  SchedulerKind kind_;
  SimParams params_;

  std::vector<SimJob> jobs_;
  std::unordered_map<std::string, SimTask> tasks_;
  std::vector<SimInstance> instances_;
  CoLocationTable table_;
  CoLocationTable rp_table_;  // fixed all-ones table for Eva-RP
  ReconfigurationDecisionModel model_;
  std::vector<double> pending_events_;  // arrival/completion times since tick

  double now_ = 0.0;
  std::uint64_t instance_counter_ = 0;
  std::uint64_t skipped_ = 0;
  std::size_t total_tasks_ = 0;
  std::uint64_t migrations_ = 0;
  std::uint64_t launches_ = 0;
  std::uint64_t decision_ticks_ = 0;
  std::uint64_t full_adoptions_ = 0;
  double alloc_gpu_sum_ = 0.0, alloc_cpu_sum_ = 0.0, alloc_ram_sum_ = 0.0;
  std::uint64_t alloc_samples_ = 0;
  double tasks_per_instance_sum_ = 0.0;
  std::uint64_t tpi_samples_ = 0;
  std::vector<InstanceLogEntry> instance_log_;
};

SimInstance* Simulation::find_instance(const std::string& id) {
  for (SimInstance& inst : instances_) {
    if (inst.id == id) return &inst;
  }
  return nullptr;
}

std::vector<std::string> Simulation::running_companions(
    const SimTask& st) const {
  std::vector<std::string> companions;
  if (!st.assigned) return companions;
  for (const SimInstance& inst : instances_) {
    if (inst.id != st.instance_id) continue;
    for (const std::string& other_id : inst.task_ids) {
      if (other_id == st.task.id) continue;
      const SimTask& other = tasks_.at(other_id);
      if (now_ >= other.run_from - kTimeEps) {
        companions.push_back(other.task.workload_id);
      }
    }
    break;
  }
  return companions;
}

double Simulation::job_rate(const SimJob& j) const {
  double rate = 1.0;
  for (const Task& t : j.job.tasks) {
    const SimTask& st = tasks_.at(t.id);
    if (!st.assigned || now_ < st.run_from - kTimeEps) return 0.0;
    rate = std::min(rate, gt_.throughput(t.workload_id, running_companions(st)));
  }
  return rate;
}

ClusterConfiguration Simulation::current_configuration() const {
  ClusterConfiguration config;
  for (const SimInstance& inst : instances_) {
    AssignedInstance ai;
    ai.id = inst.id;
    ai.type = inst.type;
    for (const std::string& tid : inst.task_ids) {
      ai.tasks.push_back(tasks_.at(tid).task);
    }
    config.instances.push_back(std::move(ai));
  }
  return config;
}

void Simulation::terminate_instance(std::size_t index, double when) {
  const SimInstance& inst = instances_[index];
  instance_log_.push_back(InstanceLogEntry{inst.id, inst.type.id,
                                           inst.type.hourly_cost,
                                           inst.launch_s, when});
  instances_.erase(instances_.begin() + static_cast<std::ptrdiff_t>(index));
}

void Simulation::observe_throughputs() {
  bool multi_aware = kind_ == SchedulerKind::Eva ||
                     kind_ == SchedulerKind::EvaFullOnly ||
                     kind_ == SchedulerKind::EvaPartialOnly;
  bool single_naive = kind_ == SchedulerKind::EvaSingle;
  if (!multi_aware && !single_naive) return;
  for (const SimJob& j : jobs_) {
    if (!j.arrived || j.done) continue;
    bool all_running = true;
    for (const Task& t : j.job.tasks) {
      const SimTask& st = tasks_.at(t.id);
      if (!st.assigned || now_ < st.run_from - kTimeEps) {
        all_running = false;
        break;
      }
    }
    if (!all_running) continue;
    std::vector<TaskPlacement> placements;
    double rate = 1.0;
    for (const Task& t : j.job.tasks) {
      std::vector<std::string> companions =
          running_companions(tasks_.at(t.id));
      rate = std::min(rate, gt_.throughput(t.workload_id, companions));
      placements.push_back(TaskPlacement{t, std::move(companions)});
    }
    if (rate <= 0.0) continue;
    if (single_naive || j.job.tasks.size() == 1) {
      // Per-task attribution: the observed job rate is charged to every
      // placement with companions.
      for (const TaskPlacement& p : placements) {
        table_.record_single_task(p.task, p.companion_workloads, rate);
      }
    } else if (multi_aware) {
      table_.record_multi_task(placements, rate);
    }
  }
}

void Simulation::schedule(double now) {
  std::vector<Task> active;
  std::vector<Task> unassigned;
  for (const SimJob& j : jobs_) {
    if (!j.arrived || j.done) continue;
    for (const Task& t : j.job.tasks) {
      Task copy = t;
      // Eva-Single prices every task as its own single-task job.
      if (kind_ == SchedulerKind::EvaSingle) copy.job_id = "solo-" + t.id;
      active.push_back(copy);
      if (!tasks_.at(t.id).assigned) unassigned.push_back(copy);
    }
  }
  if (active.empty()) return;

  const CoLocationTable& sched_table =
      kind_ == SchedulerKind::EvaRp ? rp_table_ : table_;
  PricingContext ctx = make_pricing_context(active, catalog_);
  ClusterConfiguration current = current_configuration();
  if (kind_ == SchedulerKind::EvaSingle) {
    for (AssignedInstance& inst : current.instances) {
      for (Task& t : inst.tasks) t.job_id = "solo-" + t.id;
    }
  }

  ClusterConfiguration adopted;
  bool adopted_full = false;
  bool ensemble = kind_ == SchedulerKind::Eva || kind_ == SchedulerKind::EvaRp ||
                  kind_ == SchedulerKind::EvaSingle;
  switch (kind_) {
    case SchedulerKind::NoPacking: {
      adopted = current;
      ClusterConfiguration fresh = no_packing_schedule(unassigned, catalog_);
      adopted.instances.insert(adopted.instances.end(),
                               fresh.instances.begin(), fresh.instances.end());
      break;
    }
    case SchedulerKind::Oracle: {
      IlpInstance ilp{active, catalog_, params_.oracle_task_cap};
      adopted = exact_min_cost(ilp, params_.oracle_budget_s).config;
      break;
    }
    case SchedulerKind::EvaFullOnly: {
      adopted = full_reconfiguration(active, catalog_, sched_table, ctx);
      adopted_full = true;
      break;
    }
    case SchedulerKind::EvaPartialOnly: {
      adopted = partial_reconfiguration(current, unassigned, catalog_,
                                        sched_table, ctx);
      break;
    }
    default: {  // ensemble variants
      ClusterConfiguration full_cfg =
          full_reconfiguration(active, catalog_, sched_table, ctx);
      ClusterConfiguration partial_cfg = partial_reconfiguration(
          current, unassigned, catalog_, sched_table, ctx);
      ReconfigurationPlan full_plan =
          plan_from_config(full_cfg, current, delays_, sched_table, ctx);
      ReconfigurationPlan partial_plan =
          plan_from_config(partial_cfg, current, delays_, sched_table, ctx);
      update_decision_model(model_, pending_events_, now);
      pending_events_.clear();
      adopted_full =
          choose_full_configuration(full_plan, partial_plan, model_);
      record_adoption(model_, adopted_full);
      adopted = adopted_full ? full_cfg : partial_cfg;
      ++decision_ticks_;
      if (adopted_full) ++full_adoptions_;
      break;
    }
  }
  if (!ensemble && (kind_ == SchedulerKind::EvaFullOnly ||
                    kind_ == SchedulerKind::EvaPartialOnly)) {
    ++decision_ticks_;
    if (adopted_full) ++full_adoptions_;
  }
  apply_configuration(adopted, now);
}

void Simulation::apply_configuration(const ClusterConfiguration& adopted,
                                     double now) {
  // Match planned instances to existing ones; plan_from_config performs the
  // greedy overlap matching and leaves launches with empty ids.
  std::unordered_map<std::string, std::string> old_assignment;
  for (const SimInstance& inst : instances_) {
    for (const std::string& tid : inst.task_ids) old_assignment[tid] = inst.id;
  }
  ClusterConfiguration current = current_configuration();
  CoLocationTable ones(1.0);
  PricingContext pricing;
  for (const AssignedInstance& inst : adopted.instances) {
    for (const Task& t : inst.tasks) {
      if (!pricing.rp_by_task.count(t.id)) {
        pricing.add(PricedTask{t, 0.0});
      }
    }
  }
  ReconfigurationPlan plan =
      plan_from_config(adopted, current, delays_, ones, pricing);

  // Resolve launches to concrete instances.
  ClusterConfiguration resolved = plan.config;
  for (AssignedInstance& inst : resolved.instances) {
    if (inst.id.empty()) {
      inst.id = "i-" + std::to_string(instance_counter_++);
      SimInstance fresh;
      fresh.id = inst.id;
      fresh.type = inst.type;
      fresh.launch_s = now;
      fresh.ready_s = now + delays_.boot_s();
      instances_.push_back(std::move(fresh));
      ++launches_;
    }
  }

  // Rebuild task lists and compute per-task restart times.
  std::unordered_map<std::string, double> checkpoint_done;  // old instance id
  for (SimInstance& inst : instances_) inst.task_ids.clear();
  for (const AssignedInstance& planned : resolved.instances) {
    SimInstance* inst = find_instance(planned.id);
    for (const Task& t : planned.tasks) {
      SimTask& st = tasks_.at(t.id);
      inst->task_ids.push_back(t.id);
      auto prev = old_assignment.find(t.id);
      if (prev == old_assignment.end()) {
        // First placement: wait for boot, then the workload launch delay.
        st.assigned = true;
        st.instance_id = inst->id;
        st.run_from = std::max(inst->ready_s, now) +
                      delays_.launch_s(t.workload_id);
      } else if (prev->second != inst->id) {
        // Migration: remaining boot, checkpoint off the source, relaunch.
        double wait = std::max(inst->ready_s - now, 0.0);
        double cp_done = now + wait + delays_.checkpoint_s(t.workload_id);
        st.run_from = cp_done + delays_.launch_s(t.workload_id);
        st.instance_id = inst->id;
        auto& slot = checkpoint_done[prev->second];
        slot = std::max(slot, cp_done);
        ++migrations_;
      }
      // Unchanged placements keep their run_from.
    }
  }

  // Terminated instances bill until their last departing task is
  // checkpointed off.
  std::unordered_set<std::string> surviving;
  for (const AssignedInstance& planned : resolved.instances) {
    surviving.insert(planned.id);
  }
  for (std::size_t i = instances_.size(); i-- > 0;) {
    if (!surviving.count(instances_[i].id)) {
      auto it = checkpoint_done.find(instances_[i].id);
      double when = it != checkpoint_done.end() ? std::max(now, it->second)
                                                : now;
      terminate_instance(i, when);
    }
  }
}

SimReport Simulation::run() {
  double next_tick = 0.0;
  std::size_t next_arrival = 0;
  std::size_t done_count = 0;

  while (done_count < jobs_.size()) {
    // Piecewise-constant rates: find the next boundary.
    std::vector<double> rates(jobs_.size(), 0.0);
    double t_next = kInf;
    if (next_arrival < jobs_.size()) {
      t_next = std::min(t_next, jobs_[next_arrival].job.arrival_time_s);
    }
    t_next = std::min(t_next, next_tick);
    for (const auto& [tid, st] : tasks_) {
      if (st.assigned && st.run_from > now_ + kTimeEps) {
        t_next = std::min(t_next, st.run_from);
      }
    }
    for (std::size_t i = 0; i < jobs_.size(); ++i) {
      SimJob& j = jobs_[i];
      if (!j.arrived || j.done) continue;
      rates[i] = job_rate(j);
      if (rates[i] > 0.0) {
        double remaining_h = j.job.work_hours - j.progress_h;
        t_next = std::min(t_next, now_ + remaining_h * 3600.0 / rates[i]);
      }
    }
    if (t_next == kInf) {
      throw EvaError("simulation stalled at t=" + std::to_string(now_));
    }
    double dt_h = (t_next - now_) / 3600.0;
    if (dt_h > 0.0) {
      for (std::size_t i = 0; i < jobs_.size(); ++i) {
        SimJob& j = jobs_[i];
        if (!j.arrived || j.done) continue;
        j.progress_h += rates[i] * dt_h;
        if (rates[i] <= 0.0) j.idle_h += dt_h;
      }
    }
    now_ = t_next;

    // Arrivals first, then completions, then the scheduling tick.
    while (next_arrival < jobs_.size() &&
           jobs_[next_arrival].job.arrival_time_s <= now_ + kTimeEps) {
      jobs_[next_arrival].arrived = true;
      pending_events_.push_back(jobs_[next_arrival].job.arrival_time_s);
      ++next_arrival;
    }
    for (SimJob& j : jobs_) {
      if (!j.arrived || j.done) continue;
      if (j.progress_h >= j.job.work_hours - 1e-9) {
        j.done = true;
        j.completion_s = now_;
        ++done_count;
        pending_events_.push_back(now_);
        for (const Task& t : j.job.tasks) {
          SimTask& st = tasks_.at(t.id);
          if (!st.assigned) continue;
          SimInstance* inst = find_instance(st.instance_id);
          auto& ids = inst->task_ids;
          ids.erase(std::remove(ids.begin(), ids.end(), t.id), ids.end());
          st.assigned = false;
        }
        // Instances emptied by a completion are released right away.
        for (std::size_t i = instances_.size(); i-- > 0;) {
          if (instances_[i].task_ids.empty()) terminate_instance(i, now_);
        }
      }
    }
    if (done_count == jobs_.size()) break;
    if (now_ >= next_tick - kTimeEps) {
      observe_throughputs();
      schedule(now_);
      ClusterConfiguration config = current_configuration();
      AllocationSample alloc = measure_allocation(config);
      if (alloc.has_instances) {
        alloc_gpu_sum_ += alloc.gpu;
        alloc_cpu_sum_ += alloc.cpu;
        alloc_ram_sum_ += alloc.ram;
        ++alloc_samples_;
        std::size_t assigned = 0;
        for (const SimInstance& inst : instances_) {
          assigned += inst.task_ids.size();
        }
        tasks_per_instance_sum_ +=
            static_cast<double>(assigned) / instances_.size();
        ++tpi_samples_;
      }
      next_tick += params_.period_s;
    }
  }

  for (std::size_t i = instances_.size(); i-- > 0;) {
    terminate_instance(i, now_);
  }

  SimReport report;
  report.scheduler = to_string(kind_);
  report.seed = params_.seed;
  report.skipped_infeasible_jobs = skipped_;
  report.instances_launched = launches_;
  double jct_sum = 0.0, idle_sum = 0.0;
  for (const SimJob& j : jobs_) {
    JobRecord rec;
    rec.job_id = j.job.id;
    rec.arrival_s = j.job.arrival_time_s;
    rec.jct_hours = (j.completion_s - j.job.arrival_time_s) / 3600.0;
    rec.idle_hours = j.idle_h;
    jct_sum += rec.jct_hours;
    idle_sum += rec.idle_hours;
    report.jobs.push_back(std::move(rec));
  }
  if (!jobs_.empty()) {
    report.mean_jct_hours = jct_sum / static_cast<double>(jobs_.size());
    report.mean_idle_hours = idle_sum / static_cast<double>(jobs_.size());
  }
  for (const InstanceLogEntry& e : instance_log_) {
    report.total_cost += (e.terminate_s - e.launch_s) / 3600.0 * e.hourly_cost;
  }
  report.instance_log = instance_log_;
  if (alloc_samples_ > 0) {
    report.alloc_gpu = alloc_gpu_sum_ / static_cast<double>(alloc_samples_);
    report.alloc_cpu = alloc_cpu_sum_ / static_cast<double>(alloc_samples_);
    report.alloc_ram = alloc_ram_sum_ / static_cast<double>(alloc_samples_);
  }
  if (tpi_samples_ > 0) {
    report.avg_tasks_per_instance =
        tasks_per_instance_sum_ / static_cast<double>(tpi_samples_);
  }
  if (total_tasks_ > 0) {
    report.migrations_per_task =
        static_cast<double>(migrations_) / static_cast<double>(total_tasks_);
  }
  if (decision_ticks_ > 0) {
    report.full_adoption_fraction =
        static_cast<double>(full_adoptions_) /
        static_cast<double>(decision_ticks_);
  }
  if (params_.learned_table_out) *params_.learned_table_out = table_;
  return report;
}

}  // namespace

SimReport run_simulation(const std::vector<TraceJob>& trace,
                         const std::vector<InstanceType>& catalog,
                         const GroundTruthInterference& interference,
                         const DelayModel& delays, SchedulerKind scheduler,
                         const SimParams& params) {
  Simulation sim(trace, catalog, interference, delays, scheduler, params);
  return sim.run();
}

}  // namespace eva
