#include <chrono>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "eva/baselines.hpp"
#include "eva/delays.hpp"
#include "eva/interference.hpp"
#include "eva/report.hpp"
#include "eva/rng.hpp"
#include "eva/scheduler.hpp"
#include "eva/simulator.hpp"
#include "eva/trace.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

std::vector<eva::InstanceType> load_catalog_or_default(
    const std::string& path) {
  if (path.empty()) return eva::default_catalog();
  return eva::load_catalog(path);
}

int cmd_simulate(const std::string& trace_path,
                 const std::string& catalog_path,
                 const std::string& interference_path, double uniform_tput,
                 const std::string& scheduler_name, std::uint64_t seed,
                 double period_s, double default_tput, double delay_scale,
                 double lambda_window_hours, const std::string& table_in,
                 const std::string& table_out, const std::string& out_path) {
  std::vector<eva::TraceJob> trace = eva::load_trace(trace_path);
  std::vector<eva::InstanceType> catalog = load_catalog_or_default(catalog_path);

  eva::GroundTruthInterference gt;
  if (!interference_path.empty()) {
    gt = eva::GroundTruthInterference::load_csv(interference_path);
  } else if (uniform_tput < 1.0) {
    std::set<std::string> workloads;
    for (const eva::TraceJob& j : trace) workloads.insert(j.workload_id);
    gt = eva::GroundTruthInterference::uniform(
        {workloads.begin(), workloads.end()}, uniform_tput);
  }

  eva::DelayModel delays = eva::default_delay_model();
  delays.migration_scale = delay_scale;

  eva::SimParams params;
  params.period_s = period_s;
  params.default_pairwise = default_tput;
  params.lambda_window_hours = lambda_window_hours;
  params.seed = seed;
  if (!table_in.empty()) {
    eva::CoLocationTable warm(default_tput);
    warm.load_csv(table_in);
    params.warm_table = warm;
  }

  eva::SchedulerKind kind = eva::parse_scheduler_kind(scheduler_name);
  if (kind == eva::SchedulerKind::Oracle) {
    std::size_t total_tasks = 0;
    for (const eva::TraceJob& j : trace) {
      total_tasks += static_cast<std::size_t>(j.num_tasks);
    }
    if (total_tasks > params.oracle_task_cap) {
      throw eva::ParseError("oracle scheduler refused: trace has " +
                            std::to_string(total_tasks) +
                            " tasks, cap is " +
                            std::to_string(params.oracle_task_cap));
    }
  }
  eva::CoLocationTable learned(default_tput);
  if (!table_out.empty()) params.learned_table_out = &learned;
  eva::SimReport report =
      eva::run_simulation(trace, catalog, gt, delays, kind, params);

  if (out_path.empty()) {
    std::cout << eva::report_to_json(report) << "\n";
  } else {
    eva::save_report(out_path, report);
  }
  if (!table_out.empty()) learned.dump_csv(table_out);
  return kExitOk;
}

int cmd_gen_trace(std::uint64_t seed, std::uint64_t num_jobs,
                  double mean_interarrival_s, const std::string& duration_model,
                  double min_hours, double max_hours,
                  double multi_task_fraction,
                  const std::vector<int>& task_counts,
                  const std::string& out_path) {
  if (multi_task_fraction < 0.0 || multi_task_fraction > 1.0) {
    throw eva::ParseError("--multi-task-fraction must lie in [0,1]");
  }
  eva::TraceGenParams params;
  params.seed = seed;
  params.num_jobs = static_cast<int>(num_jobs);
  params.mean_interarrival_s = mean_interarrival_s;
  params.multi_task_fraction = multi_task_fraction;
  if (!task_counts.empty()) params.multi_task_counts = task_counts;
  if (duration_model == "uniform") {
    params.duration_model = eva::DurationModel::UniformRange;
    params.uniform_min_hours = min_hours;
    params.uniform_max_hours = max_hours;
  } else if (duration_model == "gavel") {
    params.duration_model = eva::DurationModel::GavelLogUniform;
  } else {
    throw eva::ParseError("unknown duration model: " + duration_model);
  }
  std::vector<eva::TraceJob> trace = eva::generate_trace(params);
  eva::save_trace(trace, out_path);
  return kExitOk;
}

int cmd_provision_bench(std::uint64_t trials, std::size_t tasks_per_trial,
                        std::uint64_t seed, const std::string& catalog_path,
                        double oracle_budget_s, const std::string& out_path) {
  std::vector<eva::InstanceType> catalog = load_catalog_or_default(catalog_path);
  std::vector<eva::WorkloadSpec> workloads = eva::default_workloads();
  if (tasks_per_trial > 16) {
    throw eva::ParseError(
        "tasks-per-trial exceeds the oracle cap of 16 tasks");
  }
  eva::Rng rng(seed);
  eva::CoLocationTable ones(1.0);

  nlohmann::json out;
  out["schema_version"] = 1;
  out["seed"] = seed;
  out["trials"] = nlohmann::json::array();
  double sum_np = 0.0, sum_full = 0.0;
  double rt_np = 0.0, rt_full = 0.0, rt_oracle = 0.0;
  std::uint64_t optimal_count = 0;

  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    std::vector<eva::Task> tasks;
    for (std::size_t i = 0; i < tasks_per_trial; ++i) {
      const eva::WorkloadSpec& wl = workloads[rng.below(workloads.size())];
      eva::Task t;
      t.id = "b" + std::to_string(trial) + "-" + std::to_string(i);
      t.job_id = t.id;
      t.workload_id = wl.id;
      t.demand = wl.demand;
      tasks.push_back(std::move(t));
    }
    using clock = std::chrono::steady_clock;

    auto t0 = clock::now();
    eva::ClusterConfiguration np = eva::no_packing_schedule(tasks, catalog);
    auto t1 = clock::now();
    eva::PricingContext ctx = eva::make_pricing_context(tasks, catalog);
    eva::ClusterConfiguration full =
        eva::full_reconfiguration(tasks, catalog, ones, ctx);
    auto t2 = clock::now();
    eva::OracleResult oracle =
        eva::exact_min_cost({tasks, catalog, 16}, oracle_budget_s);
    auto t3 = clock::now();

    double np_cost = eva::configuration_hourly_cost(np);
    double full_cost = eva::configuration_hourly_cost(full);
    double oracle_cost = oracle.hourly_cost;
    sum_np += np_cost / oracle_cost;
    sum_full += full_cost / oracle_cost;
    rt_np += std::chrono::duration<double>(t1 - t0).count();
    rt_full += std::chrono::duration<double>(t2 - t1).count();
    rt_oracle += std::chrono::duration<double>(t3 - t2).count();
    if (oracle.proven_optimal) ++optimal_count;

    out["trials"].push_back(
        {{"no_packing_cost", np_cost},
         {"full_reconfiguration_cost", full_cost},
         {"oracle_cost", oracle_cost},
         {"oracle_proven_optimal", oracle.proven_optimal}});
  }
  double n = trials > 0 ? static_cast<double>(trials) : 1.0;
  out["mean_normalized_cost"] = {{"no_packing", sum_np / n},
                                 {"full_reconfiguration", sum_full / n},
                                 {"oracle", 1.0}};
  out["mean_runtime_s"] = {{"no_packing", rt_np / n},
                           {"full_reconfiguration", rt_full / n},
                           {"oracle", rt_oracle / n}};
  out["oracle_proven_optimal_trials"] = optimal_count;

  if (out_path.empty()) {
    std::cout << out.dump(2) << "\n";
  } else {
    std::ofstream f(out_path);
    if (!f) throw eva::EvaError("cannot open " + out_path);
    f << out.dump(2) << "\n";
  }
  return kExitOk;
}

int cmd_gen_catalog(const std::string& out_path) {
  eva::save_catalog(eva::default_catalog(), out_path);
  return kExitOk;
}

int cmd_gen_interference(double tput, const std::string& out_path) {
  std::vector<std::string> ids;
  for (const eva::WorkloadSpec& wl : eva::default_workloads()) {
    ids.push_back(wl.id);
  }
  eva::GroundTruthInterference gt =
      eva::GroundTruthInterference::uniform(ids, tput);
  gt.save_csv(out_path);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cloud cluster scheduling simulator and provisioning tools"};
  app.require_subcommand(1);

  // simulate
  std::string trace_path, catalog_path, interference_path;
  std::string scheduler_name = "eva";
  std::string table_in, table_out, sim_out;
  std::uint64_t sim_seed = 0;
  double period_s = 300.0, default_tput = 0.95, delay_scale = 1.0;
  double lambda_window = 24.0, uniform_tput = 1.0;
  CLI::App* sim = app.add_subcommand("simulate", "Run one simulation");
  sim->add_option("--trace", trace_path, "Trace CSV")->required();
  sim->add_option("--catalog", catalog_path, "Catalog CSV (default built-in)");
  sim->add_option("--interference", interference_path,
                  "Ground-truth pairwise interference CSV");
  sim->add_option("--uniform-interference", uniform_tput,
                  "Uniform pairwise ground-truth throughput in (0,1]");
  sim->add_option("--scheduler", scheduler_name,
                  "eva | eva-rp | eva-single | eva-full-only | "
                  "eva-partial-only | no-packing | oracle");
  sim->add_option("--seed", sim_seed, "RNG seed");
  sim->add_option("--period", period_s, "Scheduling period seconds");
  sim->add_option("--default-tput", default_tput,
                  "Default pairwise throughput t for the co-location table");
  sim->add_option("--delay-scale", delay_scale,
                  "Scale factor on checkpoint/launch migration delays");
  sim->add_option("--lambda-window", lambda_window,
                  "Event-rate estimation window in hours");
  sim->add_option("--table-in", table_in, "Warm-start co-location table CSV");
  sim->add_option("--table-out", table_out, "Dump co-location table CSV");
  sim->add_option("-o,--output", sim_out, "Report JSON path (default stdout)");

  // gen-trace
  std::string gt_out = "trace.csv";
  std::string duration_model = "uniform";
  std::uint64_t gt_seed = 0, gt_jobs = 32;
  double gt_interarrival = 1200.0, gt_min_h = 0.5, gt_max_h = 3.0;
  double gt_multi_fraction = 0.0;
  std::vector<int> gt_task_counts;
  CLI::App* gen = app.add_subcommand("gen-trace", "Generate a synthetic trace");
  gen->add_option("--seed", gt_seed, "RNG seed");
  gen->add_option("--jobs", gt_jobs, "Number of jobs");
  gen->add_option("--mean-interarrival", gt_interarrival,
                  "Mean interarrival seconds (Poisson arrivals)");
  gen->add_option("--duration-model", duration_model, "uniform | gavel");
  gen->add_option("--min-hours", gt_min_h, "Uniform model: min work hours");
  gen->add_option("--max-hours", gt_max_h, "Uniform model: max work hours");
  gen->add_option("--multi-task-fraction", gt_multi_fraction,
                  "Fraction of jobs with multiple tasks");
  gen->add_option("--task-counts", gt_task_counts,
                  "Cycled task counts for multi-task jobs (e.g. 2 4)");
  gen->add_option("-o,--output", gt_out, "Trace CSV path");

  // provision-bench
  std::uint64_t pb_trials = 30, pb_seed = 0;
  std::size_t pb_tasks = 12;
  double pb_budget = 60.0;
  std::string pb_catalog, pb_out;
  CLI::App* bench = app.add_subcommand(
      "provision-bench", "Provisioning micro-benchmark vs. the exact oracle");
  bench->add_option("--trials", pb_trials, "Number of independent trials");
  bench->add_option("--tasks", pb_tasks, "Tasks per trial (max 16)");
  bench->add_option("--seed", pb_seed, "RNG seed");
  bench->add_option("--catalog", pb_catalog, "Catalog CSV (default built-in)");
  bench->add_option("--oracle-budget", pb_budget, "Oracle budget seconds");
  bench->add_option("-o,--output", pb_out, "Summary JSON path (default stdout)");

  // gen-catalog / gen-interference
  std::string cat_out = "catalog.csv";
  CLI::App* gcat =
      app.add_subcommand("gen-catalog", "Write the built-in catalog CSV");
  gcat->add_option("-o,--output", cat_out, "Catalog CSV path");
  std::string intf_out = "interference.csv";
  double intf_tput = 1.0;
  CLI::App* gintf = app.add_subcommand(
      "gen-interference", "Write a uniform pairwise interference CSV");
  gintf->add_option("--tput", intf_tput, "Uniform pairwise throughput");
  gintf->add_option("-o,--output", intf_out, "Interference CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (sim->parsed()) {
      return cmd_simulate(trace_path, catalog_path, interference_path,
                          uniform_tput, scheduler_name, sim_seed, period_s,
                          default_tput, delay_scale, lambda_window, table_in,
                          table_out, sim_out);
    }
    if (gen->parsed()) {
      return cmd_gen_trace(gt_seed, gt_jobs, gt_interarrival, duration_model,
                           gt_min_h, gt_max_h, gt_multi_fraction,
                           gt_task_counts, gt_out);
    }
    if (bench->parsed()) {
      return cmd_provision_bench(pb_trials, pb_tasks, pb_seed, pb_catalog,
                                 pb_budget, pb_out);
    }
    if (gcat->parsed()) return cmd_gen_catalog(cat_out);
    if (gintf->parsed()) return cmd_gen_interference(intf_tput, intf_out);
  } catch (const eva::ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const eva::InfeasibleTaskError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const eva::EvaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
