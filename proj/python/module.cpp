#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "eva/baselines.hpp"
#include "eva/delays.hpp"
#include "eva/interference.hpp"
#include "eva/pricing.hpp"
#include "eva/report.hpp"
#include "eva/scheduler.hpp"
#include "eva/simulator.hpp"
#include "eva/trace.hpp"

namespace py = pybind11;
using namespace eva;

PYBIND11_MODULE(_pyeva, m) {
  m.doc() = "Cloud cluster scheduling engine bindings";

  py::register_exception<EvaError>(m, "EvaError");

  py::class_<ResourceVector>(m, "ResourceVector")
      .def(py::init<>())
      .def(py::init([](int gpu, int cpu, double ram_gb) {
             return ResourceVector{gpu, cpu, ram_gb};
           }),
           py::arg("gpu"), py::arg("cpu"), py::arg("ram_gb"))
      .def_readwrite("gpu", &ResourceVector::gpu)
      .def_readwrite("cpu", &ResourceVector::cpu)
      .def_readwrite("ram_gb", &ResourceVector::ram_gb)
      .def("__repr__", [](const ResourceVector& r) {
        return "ResourceVector(gpu=" + std::to_string(r.gpu) +
               ", cpu=" + std::to_string(r.cpu) +
               ", ram_gb=" + std::to_string(r.ram_gb) + ")";
      });

  py::class_<InstanceType>(m, "InstanceType")
      .def(py::init<>())
      .def(py::init([](const std::string& id, ResourceVector capacity,
                       double hourly_cost) {
             return InstanceType{id, capacity, hourly_cost};
           }),
           py::arg("id"), py::arg("capacity"), py::arg("hourly_cost"))
      .def_readwrite("id", &InstanceType::id)
      .def_readwrite("capacity", &InstanceType::capacity)
      .def_readwrite("hourly_cost", &InstanceType::hourly_cost)
      .def("is_ghost", &InstanceType::is_ghost);

  py::class_<Task>(m, "Task")
      .def(py::init<>())
      .def(py::init([](const std::string& id, const std::string& job_id,
                       const std::string& workload_id, ResourceVector demand) {
             return Task{id, job_id, workload_id, demand};
           }),
           py::arg("id"), py::arg("job_id"), py::arg("workload_id"),
           py::arg("demand"))
      .def_readwrite("id", &Task::id)
      .def_readwrite("job_id", &Task::job_id)
      .def_readwrite("workload_id", &Task::workload_id)
      .def_readwrite("demand", &Task::demand);

  py::class_<AssignedInstance>(m, "AssignedInstance")
      .def(py::init<>())
      .def_readwrite("id", &AssignedInstance::id)
      .def_readwrite("type", &AssignedInstance::type)
      .def_readwrite("tasks", &AssignedInstance::tasks);

  py::class_<ClusterConfiguration>(m, "ClusterConfiguration")
      .def(py::init<>())
      .def_readwrite("instances", &ClusterConfiguration::instances)
      .def("hourly_cost", [](const ClusterConfiguration& c) {
        return configuration_hourly_cost(c);
      });

  py::class_<CoLocationTable>(m, "CoLocationTable")
      .def(py::init<double>(), py::arg("default_pairwise") = 0.95)
      .def("lookup", &CoLocationTable::lookup, py::arg("workload_id"),
           py::arg("companions"))
      .def(
          "set_entry",
          [](CoLocationTable& t, const std::string& workload,
             const std::vector<std::string>& companions, double value) {
            t.set_entry(make_key(workload, companions), value);
          },
          py::arg("workload_id"), py::arg("companions"), py::arg("throughput"))
      .def("dump_csv", &CoLocationTable::dump_csv, py::arg("path"))
      .def_static("load_csv", &CoLocationTable::load_csv, py::arg("path"),
                  py::arg("default_pairwise") = 0.95);

  m.def("default_catalog", &default_catalog);
  m.def("load_catalog", &load_catalog, py::arg("path"));
  m.def(
      "reservation_price",
      [](const Task& task, const std::vector<InstanceType>& catalog) {
        return reservation_price(task, catalog);
      },
      py::arg("task"), py::arg("catalog"));
  m.def(
      "full_reconfiguration",
      [](const std::vector<Task>& tasks,
         const std::vector<InstanceType>& catalog,
         const CoLocationTable& table) {
        PricingContext ctx = make_pricing_context(tasks, catalog);
        return full_reconfiguration(tasks, catalog, table, ctx);
      },
      py::arg("tasks"), py::arg("catalog"),
      py::arg("table") = CoLocationTable(1.0));
  m.def(
      "no_packing_schedule",
      [](const std::vector<Task>& tasks,
         const std::vector<InstanceType>& catalog) {
        return no_packing_schedule(tasks, catalog);
      },
      py::arg("tasks"), py::arg("catalog"));
  m.def(
      "exact_min_cost",
      [](const std::vector<Task>& tasks,
         const std::vector<InstanceType>& catalog, double budget_seconds) {
        OracleResult r = exact_min_cost({tasks, catalog, 16}, budget_seconds);
        return py::make_tuple(r.config, r.hourly_cost, r.proven_optimal);
      },
      py::arg("tasks"), py::arg("catalog"), py::arg("budget_seconds") = 60.0);

  m.def(
      "generate_trace",
      [](int num_jobs, double mean_interarrival_s, double multi_task_fraction,
         std::uint64_t seed, const std::string& path) {
        TraceGenParams params;
        params.num_jobs = num_jobs;
        params.mean_interarrival_s = mean_interarrival_s;
        params.multi_task_fraction = multi_task_fraction;
        params.seed = seed;
        std::vector<TraceJob> trace = generate_trace(params);
        if (!path.empty()) save_trace(trace, path);
        return trace.size();
      },
      py::arg("num_jobs") = 32, py::arg("mean_interarrival_s") = 1200.0,
      py::arg("multi_task_fraction") = 0.0, py::arg("seed") = 0,
      py::arg("path") = "");

  m.def(
      "simulate",
      [](const std::string& trace_path, const std::string& scheduler,
         std::uint64_t seed, double period_s, double uniform_interference,
         double default_tput) {
        std::vector<TraceJob> trace = load_trace(trace_path);
        GroundTruthInterference gt;
        if (uniform_interference < 1.0) {
          std::vector<std::string> ids;
          for (const WorkloadSpec& wl : default_workloads())
            ids.push_back(wl.id);
          gt = GroundTruthInterference::uniform(ids, uniform_interference);
        }
        SimParams params;
        params.period_s = period_s;
        params.seed = seed;
        params.default_pairwise = default_tput;
        SimReport report =
            run_simulation(trace, default_catalog(), gt, default_delay_model(),
                           parse_scheduler_kind(scheduler), params);
        return report_to_json(report);
      },
      py::arg("trace_path"), py::arg("scheduler") = "eva", py::arg("seed") = 0,
      py::arg("period_s") = 300.0, py::arg("uniform_interference") = 1.0,
      py::arg("default_tput") = 0.95,
      "Run a simulation and return the report as a JSON string.");
}
