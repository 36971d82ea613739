#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "eva/core.hpp"

namespace eva {

// Ground-truth pairwise co-location throughput, keyed by ordered workload
// pair: value is the normalized throughput of the first workload when
// co-located with the second. Unlisted pairs default to 1.0.
class GroundTruthInterference {
 public:
  void set_pairwise(const std::string& subject, const std::string& companion,
                    double tput);
  double pairwise(const std::string& subject,
                  const std::string& companion) const;

  // >2-way ground truth is the product of pairwise values, mirroring the
  // table's own estimation formula.
  double throughput(const std::string& subject,
                    const std::vector<std::string>& companions) const;

  static GroundTruthInterference uniform(
      const std::vector<std::string>& workload_ids, double g);

  // CSV: workload_a,workload_b,tput_a_given_b (asymmetric entries allowed)
  static GroundTruthInterference load_csv(const std::string& path);
  void save_csv(const std::string& path) const;

  bool empty() const { return pairwise_.empty(); }
  const std::unordered_map<std::string, double>& entries() const {
    return pairwise_;
  }

 private:
  std::unordered_map<std::string, double> pairwise_;  // "a\x1fb" -> tput
};

}  // namespace eva
