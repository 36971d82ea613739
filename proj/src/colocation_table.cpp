#include "eva/colocation_table.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace eva {

CoLocationKey make_key(const std::string& subject_workload,
                       std::vector<std::string> companion_workloads) {
  std::sort(companion_workloads.begin(), companion_workloads.end());
  return CoLocationKey{subject_workload, std::move(companion_workloads)};
}

std::size_t CoLocationKeyHash::operator()(const CoLocationKey& key) const {
  std::size_t h = std::hash<std::string>{}(key.subject);
  for (const std::string& c : key.companions) {
    h = h * 1000003u ^ std::hash<std::string>{}(c);
  }
  return h;
}

CoLocationTable::CoLocationTable(double default_pairwise)
    : default_pairwise_(default_pairwise) {
  if (!(default_pairwise > 0.0 && default_pairwise <= 1.0)) {
    throw EvaError("default pairwise throughput out of (0,1]");
  }
}

double CoLocationTable::lookup(
    const std::string& subject_workload,
    const std::vector<std::string>& companion_workloads) const {
  if (companion_workloads.empty()) return 1.0;
  if (entries_.empty()) {
    double product = 1.0;
    for (std::size_t i = 0; i < companion_workloads.size(); ++i) {
      product *= default_pairwise_;
    }
    return product;
  }
  CoLocationKey key = make_key(subject_workload, companion_workloads);
  auto exact = entries_.find(key);
  if (exact != entries_.end()) return exact->second;
  double product = 1.0;
  for (const std::string& companion : key.companions) {
    auto pair = entries_.find(CoLocationKey{subject_workload, {companion}});
    product *= pair != entries_.end() ? pair->second : default_pairwise_;
  }
  return product;
}

void CoLocationTable::set_entry(const CoLocationKey& key, double value) {
  if (!(value > 0.0 && value <= 1.0)) {
    throw EvaError("observed throughput out of (0,1]");
  }
  entries_[key] = value;
}

void CoLocationTable::record_single_task(
    const Task& subject, const std::vector<std::string>& companion_workloads,
    double observed) {
  if (!(observed > 0.0 && observed <= 1.0)) {
    throw EvaError("observed throughput out of (0,1]");
  }
  // Standalone throughput is the normalization baseline, nothing to record.
  if (companion_workloads.empty()) return;
  entries_[make_key(subject.workload_id, companion_workloads)] = observed;
}

void CoLocationTable::record_multi_task(
    const std::vector<TaskPlacement>& placements, double observed_job_tput) {
  if (!(observed_job_tput > 0.0 && observed_job_tput <= 1.0)) {
    throw EvaError("observed throughput out of (0,1]");
  }
  // Only placements with companions can be blamed for interference.
  struct Candidate {
    const TaskPlacement* placement;
    CoLocationKey key;
    bool recorded;
    double recorded_value;
  };
  std::vector<Candidate> candidates;
  for (const TaskPlacement& p : placements) {
    if (p.companion_workloads.empty()) continue;
    CoLocationKey key = make_key(p.task.workload_id, p.companion_workloads);
    auto it = entries_.find(key);
    bool recorded = it != entries_.end();
    candidates.push_back(
        {&p, std::move(key), recorded, recorded ? it->second : 0.0});
  }
  if (candidates.empty()) return;

  auto most_companions = [](const Candidate* a, const Candidate* b) {
    if (a->key.companions.size() != b->key.companions.size()) {
      return a->key.companions.size() > b->key.companions.size();
    }
    return a->placement->task.id < b->placement->task.id;
  };

  const Candidate* lowest_recorded = nullptr;
  const Candidate* biggest_unrecorded = nullptr;
  bool any_recorded_below = false;
  for (const Candidate& c : candidates) {
    if (c.recorded) {
      if (c.recorded_value < observed_job_tput) any_recorded_below = true;
      if (!lowest_recorded || c.recorded_value < lowest_recorded->recorded_value ||
          (c.recorded_value == lowest_recorded->recorded_value &&
           c.placement->task.id < lowest_recorded->placement->task.id)) {
        lowest_recorded = &c;
      }
    } else if (!biggest_unrecorded || most_companions(&c, biggest_unrecorded)) {
      biggest_unrecorded = &c;
    }
  }

  if (!lowest_recorded) {
    // Rule 1: no previous observations.
    entries_[biggest_unrecorded->key] = observed_job_tput;
  } else if (any_recorded_below) {
    // Rule 2: some previous observation is below the current one.
    entries_[lowest_recorded->key] = observed_job_tput;
  } else if (biggest_unrecorded) {
    // Rule 3: all recorded values are higher; blame the unrecorded placement
    // with the most companions.
    entries_[biggest_unrecorded->key] = observed_job_tput;
  }
  // Every placement recorded and none below the observation: no update.
}

void CoLocationTable::dump_csv(const std::string& path) const {
  std::ofstream f(path);
  if (!f) throw EvaError("cannot write table file: " + path);
  f << "subject_workload,companions_sorted_semicolon_list,throughput\n";
  std::vector<const CoLocationKey*> keys;
  for (const auto& [key, value] : entries_) keys.push_back(&key);
  std::sort(keys.begin(), keys.end(),
            [](const CoLocationKey* a, const CoLocationKey* b) {
              if (a->subject != b->subject) return a->subject < b->subject;
              return a->companions < b->companions;
            });
  for (const CoLocationKey* key : keys) {
    f << key->subject << ',';
    for (std::size_t i = 0; i < key->companions.size(); ++i) {
      if (i) f << ';';
      f << key->companions[i];
    }
    f << ',' << entries_.at(*key) << '\n';
  }
}

CoLocationTable CoLocationTable::load_csv(const std::string& path,
                                          double default_pairwise) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open table file: " + path);
  CoLocationTable table(default_pairwise);
  std::string line;
  if (!std::getline(f, line) ||
      line != "subject_workload,companions_sorted_semicolon_list,throughput") {
    throw ParseError("bad table header in " + path);
  }
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string subject, companions_field, value_field;
    if (!std::getline(ss, subject, ',') ||
        !std::getline(ss, companions_field, ',') ||
        !std::getline(ss, value_field)) {
      throw ParseError("bad table line: " + line);
    }
    std::vector<std::string> companions;
    std::istringstream cs(companions_field);
    std::string c;
    while (std::getline(cs, c, ';')) companions.push_back(c);
    table.set_entry(make_key(subject, std::move(companions)),
                    std::stod(value_field));
  }
  return table;
}

}  // namespace eva
