#include "eva/baselines.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <unordered_set>

#include "eva/colocation_table.hpp"
#include "eva/scheduler.hpp"

namespace eva {

ClusterConfiguration no_packing_schedule(const std::vector<Task>& tasks,
                                         const std::vector<InstanceType>& catalog) {
  ClusterConfiguration config;
  for (const Task& task : tasks) {
    const InstanceType* best = nullptr;
    for (const InstanceType& type : catalog) {
      if (type.is_ghost() || !fits(task.demand, type.capacity)) continue;
      if (!best || type.hourly_cost < best->hourly_cost) best = &type;
    }
    if (!best) {
      throw InfeasibleTaskError("infeasible task " + task.id);
    }
    config.instances.push_back(AssignedInstance{"", *best, {task}});
  }
  return config;
}

namespace {

struct Group {
  std::vector<Task> tasks;
  ResourceVector demand;
  double cost = 0.0;  // cheapest fitting type
  std::size_t type_index = 0;
};

struct SearchState {
  const std::vector<Task>* tasks;
  const std::vector<InstanceType>* types;  // non-ghost
  std::vector<Group> groups;
  double current_cost = 0.0;
  double best_cost = std::numeric_limits<double>::infinity();
  std::vector<Group> best_groups;
  // max over resources of remaining-demand suffix * cheapest cost per unit
  std::vector<double> suffix_gpu, suffix_cpu, suffix_ram;
  double cpu_per_gpu = 0.0, cpu_per_cpu = 0.0, cpu_per_ram = 0.0;
  std::chrono::steady_clock::time_point deadline;
  std::uint64_t nodes = 0;
  bool timed_out = false;
};

// Cheapest non-ghost type fitting the demand; -1 if none.
int cheapest_fitting(const std::vector<InstanceType>& types,
                     const ResourceVector& demand) {
  int best = -1;
  for (std::size_t k = 0; k < types.size(); ++k) {
    if (!fits(demand, types[k].capacity)) continue;
    if (best < 0 || types[k].hourly_cost < types[best].hourly_cost) {
      best = static_cast<int>(k);
    }
  }
  return best;
}

double fractional_bound(const SearchState& s, std::size_t next) {
  ResourceVector open;
  for (const Group& g : s.groups) open = open + g.demand;
  double gpu = (open.gpu + s.suffix_gpu[next]) * s.cpu_per_gpu;
  double cpu = (open.cpu + s.suffix_cpu[next]) * s.cpu_per_cpu;
  double ram = (open.ram_gb + s.suffix_ram[next]) * s.cpu_per_ram;
  return std::max({gpu, cpu, ram});
}

void search(SearchState& s, std::size_t index) {
  if (s.timed_out) return;
  if ((++s.nodes & 0xfff) == 0 &&
      std::chrono::steady_clock::now() > s.deadline) {
    s.timed_out = true;
    return;
  }
  if (index == s.tasks->size()) {
    if (s.current_cost < s.best_cost - 1e-12) {
      s.best_cost = s.current_cost;
      s.best_groups = s.groups;
    }
    return;
  }
  double bound = std::max(s.current_cost, fractional_bound(s, index));
  if (bound >= s.best_cost - 1e-12) return;

  const Task& task = (*s.tasks)[index];
  // Try joining each open group, then opening a fresh one. Restricted growth
  // (a new group per level, appended last) removes slot symmetry.
  for (std::size_t g = 0; g <= s.groups.size(); ++g) {
    if (g == s.groups.size()) {
      int type_index = cheapest_fitting(*s.types, task.demand);
      if (type_index < 0) return;  // infeasible task, caught earlier anyway
      Group fresh;
      fresh.tasks = {task};
      fresh.demand = task.demand;
      fresh.type_index = static_cast<std::size_t>(type_index);
      fresh.cost = (*s.types)[fresh.type_index].hourly_cost;
      s.groups.push_back(std::move(fresh));
      s.current_cost += s.groups.back().cost;
      search(s, index + 1);
      s.current_cost -= s.groups.back().cost;
      s.groups.pop_back();
    } else {
      ResourceVector combined = s.groups[g].demand + task.demand;
      int type_index = cheapest_fitting(*s.types, combined);
      if (type_index < 0) continue;
      double new_cost = (*s.types)[type_index].hourly_cost;
      Group saved = s.groups[g];
      s.groups[g].tasks.push_back(task);
      s.groups[g].demand = combined;
      s.groups[g].type_index = static_cast<std::size_t>(type_index);
      s.current_cost += new_cost - s.groups[g].cost;
      s.groups[g].cost = new_cost;
      search(s, index + 1);
      s.current_cost += saved.cost - new_cost;
      s.groups[g] = std::move(saved);
    }
  }
}

}  // namespace

OracleResult exact_min_cost(const IlpInstance& instance, double budget_seconds,
                            bool override_cap) {
  if (instance.tasks.size() > instance.task_cap && !override_cap) {
    throw EvaError("exact oracle refused: " +
                   std::to_string(instance.tasks.size()) +
                   " tasks exceed the cap of " +
                   std::to_string(instance.task_cap));
  }
  std::vector<InstanceType> types;
  for (const InstanceType& t : instance.catalog) {
    if (!t.is_ghost()) types.push_back(t);
  }
  if (types.empty()) throw EvaError("empty catalog");

  // Descending reservation price gives tight groups early, which feeds the
  // incumbent-driven pruning.
  std::vector<Task> tasks = instance.tasks;
  std::sort(tasks.begin(), tasks.end(), [&](const Task& a, const Task& b) {
    double ra = reservation_price(a, types);
    double rb = reservation_price(b, types);
    if (ra != rb) return ra > rb;
    return a.id < b.id;
  });

  SearchState s;
  s.tasks = &tasks;
  s.types = &types;
  s.deadline =
      std::chrono::steady_clock::now() +
      std::chrono::duration_cast<std::chrono::steady_clock::duration>(
          std::chrono::duration<double>(budget_seconds));

  double cpg = std::numeric_limits<double>::infinity();
  double cpc = std::numeric_limits<double>::infinity();
  double cpr = std::numeric_limits<double>::infinity();
  for (const InstanceType& t : types) {
    if (t.capacity.gpu > 0) cpg = std::min(cpg, t.hourly_cost / t.capacity.gpu);
    if (t.capacity.cpu > 0) cpc = std::min(cpc, t.hourly_cost / t.capacity.cpu);
    if (t.capacity.ram_gb > 0) {
      cpr = std::min(cpr, t.hourly_cost / t.capacity.ram_gb);
    }
  }
  s.cpu_per_gpu = std::isfinite(cpg) ? cpg : 0.0;
  s.cpu_per_cpu = std::isfinite(cpc) ? cpc : 0.0;
  s.cpu_per_ram = std::isfinite(cpr) ? cpr : 0.0;
  s.suffix_gpu.assign(tasks.size() + 1, 0.0);
  s.suffix_cpu.assign(tasks.size() + 1, 0.0);
  s.suffix_ram.assign(tasks.size() + 1, 0.0);
  for (std::size_t i = tasks.size(); i-- > 0;) {
    s.suffix_gpu[i] = s.suffix_gpu[i + 1] + tasks[i].demand.gpu;
    s.suffix_cpu[i] = s.suffix_cpu[i + 1] + tasks[i].demand.cpu;
    s.suffix_ram[i] = s.suffix_ram[i + 1] + tasks[i].demand.ram_gb;
  }

  // Seed the incumbent with the packing heuristic (throughputs 1.0).
  {
    CoLocationTable ones(1.0);
    PricingContext ctx = make_pricing_context(tasks, types);
    ClusterConfiguration heuristic =
        full_reconfiguration(tasks, types, ones, ctx);
    s.best_cost = configuration_hourly_cost(heuristic);
    for (const AssignedInstance& inst : heuristic.instances) {
      Group g;
      g.tasks = inst.tasks;
      g.demand = demand_sum(inst.tasks);
      int type_index = cheapest_fitting(types, g.demand);
      g.type_index = static_cast<std::size_t>(type_index);
      g.cost = types[g.type_index].hourly_cost;
      s.best_groups.push_back(std::move(g));
    }
  }

  if (!tasks.empty()) search(s, 0);

  OracleResult result;
  result.hourly_cost = tasks.empty() ? 0.0 : s.best_cost;
  result.proven_optimal = !s.timed_out;
  for (const Group& g : s.best_groups) {
    result.config.instances.push_back(
        AssignedInstance{"", types[g.type_index], g.tasks});
  }
  return result;
}

bool validate_ilp_solution(const ClusterConfiguration& config,
                           const IlpInstance& instance, std::string* error) {
  if (!validate_configuration(config, error)) return false;
  std::unordered_set<std::string> assigned;
  for (const AssignedInstance& inst : config.instances) {
    for (const Task& t : inst.tasks) assigned.insert(t.id);
  }
  for (const Task& t : instance.tasks) {
    if (!assigned.count(t.id)) {
      if (error) *error = "task " + t.id + " unassigned";
      return false;
    }
  }
  if (assigned.size() != instance.tasks.size()) {
    if (error) *error = "configuration contains foreign tasks";
    return false;
  }
  return true;
}

}  // namespace eva
