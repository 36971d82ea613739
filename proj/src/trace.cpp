#include "eva/trace.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "eva/rng.hpp"

namespace eva {

namespace {
const char* kHeader =
    "job_id,arrival_time_s,num_tasks,work_hours,workload_id,gpu,cpu,ram_gb";
}

std::vector<TraceJob> parse_trace(const std::string& csv_text) {
  std::istringstream in(csv_text);
  std::string line;
  if (!std::getline(in, line) || line != kHeader) {
    throw ParseError("bad trace header");
  }
  std::vector<TraceJob> trace;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string f[8];
    for (int i = 0; i < 8; ++i) {
      if (!std::getline(ss, f[i], ',')) {
        throw ParseError("trace line " + std::to_string(lineno) +
                         ": expected 8 fields");
      }
    }
    TraceJob job;
    try {
      job.job_id = f[0];
      job.arrival_time_s = std::stod(f[1]);
      job.num_tasks = std::stoi(f[2]);
      job.work_hours = std::stod(f[3]);
      job.workload_id = f[4];
      job.demand.gpu = std::stoi(f[5]);
      job.demand.cpu = std::stoi(f[6]);
      job.demand.ram_gb = std::stod(f[7]);
    } catch (const std::exception&) {
      throw ParseError("trace line " + std::to_string(lineno) + ": bad number");
    }
    if (job.num_tasks < 1 || job.work_hours <= 0 || job.arrival_time_s < 0) {
      throw ParseError("trace line " + std::to_string(lineno) +
                       ": invalid job parameters");
    }
    trace.push_back(job);
  }
  return trace;
}

std::vector<TraceJob> load_trace(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open trace file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_trace(ss.str());
}

namespace {

std::string format_double(double v) {
  std::ostringstream ss;
  ss.precision(17);
  ss << v;
  return ss.str();
}

}  // namespace

void save_trace(const std::vector<TraceJob>& trace, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw EvaError("cannot write trace file: " + path);
  f << kHeader << '\n';
  for (const TraceJob& job : trace) {
    f << job.job_id << ',' << format_double(job.arrival_time_s) << ','
      << job.num_tasks << ',' << format_double(job.work_hours) << ','
      << job.workload_id << ',' << job.demand.gpu << ',' << job.demand.cpu
      << ',' << format_double(job.demand.ram_gb) << '\n';
  }
}

std::vector<Job> expand_jobs(const std::vector<TraceJob>& trace) {
  std::vector<Job> jobs;
  jobs.reserve(trace.size());
  for (const TraceJob& row : trace) {
    Job job;
    job.id = row.job_id;
    job.arrival_time_s = row.arrival_time_s;
    job.work_hours = row.work_hours;
    for (int k = 0; k < row.num_tasks; ++k) {
      Task task;
      task.id = row.job_id + "-t" + std::to_string(k);
      task.job_id = row.job_id;
      task.workload_id = row.workload_id;
      task.demand = row.demand;
      job.tasks.push_back(std::move(task));
    }
    jobs.push_back(std::move(job));
  }
  return jobs;
}

std::vector<TraceJob> generate_trace(const TraceGenParams& params) {
  if (params.num_jobs < 0 || params.mean_interarrival_s <= 0 ||
      params.multi_task_fraction < 0 || params.multi_task_fraction > 1) {
    throw EvaError("invalid trace generation parameters");
  }
  const std::vector<WorkloadSpec>& workloads =
      params.workloads.empty() ? default_workloads() : params.workloads;
  if (workloads.empty()) throw EvaError("no workloads to sample from");

  Rng rng(params.seed);
  std::vector<TraceJob> trace;
  double t = 0.0;
  int multi_cursor = 0;
  for (int i = 0; i < params.num_jobs; ++i) {
    t += rng.exponential(params.mean_interarrival_s);
    const WorkloadSpec& w = workloads[rng.below(workloads.size())];
    TraceJob job;
    job.job_id = "job-" + std::to_string(i);
    job.arrival_time_s = t;
    job.workload_id = w.id;
    job.demand = w.demand;
    if (params.duration_model == DurationModel::UniformRange) {
      job.work_hours =
          rng.uniform(params.uniform_min_hours, params.uniform_max_hours);
    } else {
      // 10^x minutes: x ~ U[1.5,3] with probability 0.8, else U[3,4].
      double x = rng.uniform() < 0.8 ? rng.uniform(1.5, 3.0)
                                     : rng.uniform(3.0, 4.0);
      job.work_hours = std::pow(10.0, x) / 60.0;
    }
    job.num_tasks = 1;
    if (!params.multi_task_counts.empty() &&
        rng.uniform() < params.multi_task_fraction) {
      job.num_tasks = params.multi_task_counts[multi_cursor++ %
                                               params.multi_task_counts.size()];
    }
    trace.push_back(std::move(job));
  }
  return trace;
}

}  // namespace eva
