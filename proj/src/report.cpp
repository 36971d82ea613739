#include "eva/report.hpp"

#include <fstream>
#include <set>

#include "json.hpp"

namespace eva {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (!allowed.count(key)) {
      throw ParseError("unknown field '" + key + "' in " + where);
    }
  }
}

}  // namespace

std::string report_to_json(const SimReport& report) {
  json j;
  j["schema_version"] = report.schema_version;
  j["scheduler"] = report.scheduler;
  j["seed"] = report.seed;
  j["total_cost"] = report.total_cost;
  j["mean_jct_hours"] = report.mean_jct_hours;
  j["mean_idle_hours"] = report.mean_idle_hours;
  j["alloc_gpu"] = report.alloc_gpu;
  j["alloc_cpu"] = report.alloc_cpu;
  j["alloc_ram"] = report.alloc_ram;
  j["avg_tasks_per_instance"] = report.avg_tasks_per_instance;
  j["migrations_per_task"] = report.migrations_per_task;
  j["instances_launched"] = report.instances_launched;
  j["full_adoption_fraction"] = report.full_adoption_fraction;
  j["skipped_infeasible_jobs"] = report.skipped_infeasible_jobs;
  j["jobs"] = json::array();
  for (const JobRecord& rec : report.jobs) {
    j["jobs"].push_back({{"job_id", rec.job_id},
                         {"arrival_s", rec.arrival_s},
                         {"jct_hours", rec.jct_hours},
                         {"idle_hours", rec.idle_hours}});
  }
  j["instance_log"] = json::array();
  for (const InstanceLogEntry& e : report.instance_log) {
    j["instance_log"].push_back({{"id", e.id},
                                 {"type_id", e.type_id},
                                 {"hourly_cost", e.hourly_cost},
                                 {"launch_s", e.launch_s},
                                 {"terminate_s", e.terminate_s}});
  }
  return j.dump(2);
}

SimReport report_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid report JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("report JSON must be an object");
  reject_unknown(j,
                 {"schema_version", "scheduler", "seed", "total_cost",
                  "mean_jct_hours", "mean_idle_hours", "alloc_gpu",
                  "alloc_cpu", "alloc_ram", "avg_tasks_per_instance",
                  "migrations_per_task", "instances_launched",
                  "full_adoption_fraction", "skipped_infeasible_jobs", "jobs",
                  "instance_log"},
                 "report");
  SimReport report;
  try {
    report.schema_version = j.at("schema_version").get<int>();
    if (report.schema_version != 1) {
      throw ParseError("unsupported report schema_version " +
                       std::to_string(report.schema_version));
    }
    report.scheduler = j.at("scheduler").get<std::string>();
    report.seed = j.at("seed").get<std::uint64_t>();
    report.total_cost = j.at("total_cost").get<double>();
    report.mean_jct_hours = j.at("mean_jct_hours").get<double>();
    report.mean_idle_hours = j.at("mean_idle_hours").get<double>();
    report.alloc_gpu = j.at("alloc_gpu").get<double>();
    report.alloc_cpu = j.at("alloc_cpu").get<double>();
    report.alloc_ram = j.at("alloc_ram").get<double>();
    report.avg_tasks_per_instance =
        j.at("avg_tasks_per_instance").get<double>();
    report.migrations_per_task = j.at("migrations_per_task").get<double>();
    report.instances_launched = j.at("instances_launched").get<std::uint64_t>();
    report.full_adoption_fraction =
        j.at("full_adoption_fraction").get<double>();
    report.skipped_infeasible_jobs =
        j.at("skipped_infeasible_jobs").get<std::uint64_t>();
    for (const json& rec : j.at("jobs")) {
      reject_unknown(rec, {"job_id", "arrival_s", "jct_hours", "idle_hours"},
                     "jobs entry");
      report.jobs.push_back(JobRecord{rec.at("job_id").get<std::string>(),
                                      rec.at("arrival_s").get<double>(),
                                      rec.at("jct_hours").get<double>(),
                                      rec.at("idle_hours").get<double>()});
    }
    for (const json& e : j.at("instance_log")) {
      reject_unknown(
          e, {"id", "type_id", "hourly_cost", "launch_s", "terminate_s"},
          "instance_log entry");
      report.instance_log.push_back(
          InstanceLogEntry{e.at("id").get<std::string>(),
                           e.at("type_id").get<std::string>(),
                           e.at("hourly_cost").get<double>(),
                           e.at("launch_s").get<double>(),
                           e.at("terminate_s").get<double>()});
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed report JSON: ") + e.what());
  }
  return report;
}

void save_report(const std::string& path, const SimReport& report) {
  std::ofstream out(path);
  if (!out) throw EvaError("cannot open " + path + " for writing");
  out << report_to_json(report) << "\n";
}

SimReport load_report(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw EvaError("cannot open " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return report_from_json(text);
}

}  // namespace eva
