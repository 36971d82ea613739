#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "eva/core.hpp"

namespace eva {

// Key into the co-location throughput table: a workload observed alongside a
// multiset of companion workloads. Companions are kept sorted so multiset
// equality is plain equality.
struct CoLocationKey {
  std::string subject;
  std::vector<std::string> companions;  // sorted

  bool operator==(const CoLocationKey& other) const = default;
};

CoLocationKey make_key(const std::string& subject_workload,
                       std::vector<std::string> companion_workloads);

struct CoLocationKeyHash {
  std::size_t operator()(const CoLocationKey& key) const;
};

// Where each task of a multi-task job sits and who it shares the instance
// with, for interference attribution.
struct TaskPlacement {
  Task task;
  std::vector<std::string> companion_workloads;
};

// Online record of normalized co-location throughputs, keyed per workload.
class CoLocationTable {
 public:
  explicit CoLocationTable(double default_pairwise = 0.95);

  double default_pairwise() const { return default_pairwise_; }

  // Exact entry if present, else the product of pairwise entries with
  // unrecorded pairs defaulting to t. Empty companions -> 1.0.
  double lookup(const std::string& subject_workload,
                const std::vector<std::string>& companion_workloads) const;

  // Unambiguous single-task-job attribution: store the observation under the
  // exact key. Latest observation wins. Standalone observations are no-ops.
  void record_single_task(const Task& subject,
                          const std::vector<std::string>& companion_workloads,
                          double observed);

  // Straggler attribution for a multi-task job: updates at most one entry,
  // chosen by the three deduction rules.
  void record_multi_task(const std::vector<TaskPlacement>& placements,
                         double observed_job_tput);

  const std::unordered_map<CoLocationKey, double, CoLocationKeyHash>& entries()
      const {
    return entries_;
  }

  void set_entry(const CoLocationKey& key, double value);
  std::size_t size() const { return entries_.size(); }

  // CSV: subject_workload,companions_sorted_semicolon_list,throughput
  void dump_csv(const std::string& path) const;
  static CoLocationTable load_csv(const std::string& path,
                                  double default_pairwise = 0.95);

 private:
  double default_pairwise_;
  std::unordered_map<CoLocationKey, double, CoLocationKeyHash> entries_;
};

}  // namespace eva
