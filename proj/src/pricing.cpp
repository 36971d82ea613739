#include "eva/pricing.hpp"

#include <limits>

namespace eva {

double reservation_price(const Task& task,
                         const std::vector<InstanceType>& catalog) {
  double best = std::numeric_limits<double>::infinity();
  for (const InstanceType& type : catalog) {
    if (type.is_ghost()) continue;
    if (fits(task.demand, type.capacity) && type.hourly_cost < best) {
      best = type.hourly_cost;
    }
  }
  if (best == std::numeric_limits<double>::infinity()) {
    throw InfeasibleTaskError("infeasible task " + task.id +
                              ": no instance type fits its demand");
  }
  return best;
}

double rp_sum(const std::vector<PricedTask>& tasks) {
  double total = 0.0;
  for (const PricedTask& pt : tasks) total += pt.reservation_price;
  return total;
}

double tnrp_single(const PricedTask& task, double tput) {
  if (!(tput > 0.0 && tput <= 1.0)) {
    throw EvaError("throughput out of (0,1]: " + std::to_string(tput));
  }
  return tput * task.reservation_price;
}

double tnrp_multitask(const PricedTask& task,
                      const std::vector<PricedTask>& job_tasks, double tput) {
  if (!(tput > 0.0 && tput <= 1.0)) {
    throw EvaError("throughput out of (0,1]: " + std::to_string(tput));
  }
  double degradation = 0.0;
  for (const PricedTask& other : job_tasks) {
    degradation += (1.0 - tput) * other.reservation_price;
  }
  return task.reservation_price - degradation;
}

void PricingContext::add(const PricedTask& pt) {
  rp_by_task[pt.task.id] = pt.reservation_price;
  job_tasks[pt.task.job_id].push_back(pt);
}

const std::vector<PricedTask>& PricingContext::tasks_of_job(
    const std::string& job_id) const {
  auto it = job_tasks.find(job_id);
  if (it == job_tasks.end()) throw EvaError("unknown job " + job_id);
  return it->second;
}

double PricingContext::rp_of(const std::string& task_id) const {
  auto it = rp_by_task.find(task_id);
  if (it == rp_by_task.end()) throw EvaError("unknown task " + task_id);
  return it->second;
}

bool PricingContext::is_multi_task(const std::string& job_id) const {
  auto it = job_tasks.find(job_id);
  return it != job_tasks.end() && it->second.size() > 1;
}

PricingContext make_pricing_context(const std::vector<Task>& tasks,
                                    const std::vector<InstanceType>& catalog) {
  PricingContext ctx;
  for (const Task& t : tasks) {
    ctx.add(PricedTask{t, reservation_price(t, catalog)});
  }
  return ctx;
}

double tnrp_set(const std::vector<PricedTask>& tasks,
                const std::unordered_map<std::string, double>& throughputs,
                const PricingContext& ctx) {
  double total = 0.0;
  for (const PricedTask& pt : tasks) {
    auto it = throughputs.find(pt.task.id);
    if (it == throughputs.end()) {
      throw EvaError("missing throughput entry for task " + pt.task.id);
    }
    if (ctx.is_multi_task(pt.task.job_id)) {
      total += tnrp_multitask(pt, ctx.tasks_of_job(pt.task.job_id), it->second);
    } else {
      total += tnrp_single(pt, it->second);
    }
  }
  return total;
}

bool is_cost_efficient(const std::vector<PricedTask>& tasks,
                       const InstanceType& type,
                       const std::unordered_map<std::string, double>& throughputs,
                       const PricingContext& ctx) {
  return tnrp_set(tasks, throughputs, ctx) >= type.hourly_cost;
}

}  // namespace eva
