#include "eva/interference.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace eva {

namespace {
std::string pair_key(const std::string& a, const std::string& b) {
  return a + '\x1f' + b;
}
}  // namespace

void GroundTruthInterference::set_pairwise(const std::string& subject,
                                           const std::string& companion,
                                           double tput) {
  if (!(tput > 0.0 && tput <= 1.0)) {
    throw EvaError("pairwise throughput out of (0,1]");
  }
  pairwise_[pair_key(subject, companion)] = tput;
}

double GroundTruthInterference::pairwise(const std::string& subject,
                                         const std::string& companion) const {
  auto it = pairwise_.find(pair_key(subject, companion));
  return it != pairwise_.end() ? it->second : 1.0;
}

double GroundTruthInterference::throughput(
    const std::string& subject,
    const std::vector<std::string>& companions) const {
  double product = 1.0;
  for (const std::string& c : companions) product *= pairwise(subject, c);
  return product;
}

GroundTruthInterference GroundTruthInterference::uniform(
    const std::vector<std::string>& workload_ids, double g) {
  GroundTruthInterference gt;
  for (const std::string& a : workload_ids) {
    for (const std::string& b : workload_ids) {
      gt.set_pairwise(a, b, g);
    }
  }
  return gt;
}

GroundTruthInterference GroundTruthInterference::load_csv(
    const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open interference file: " + path);
  std::string line;
  if (!std::getline(f, line) ||
      line != "workload_a,workload_b,tput_a_given_b") {
    throw ParseError("bad interference header in " + path);
  }
  GroundTruthInterference gt;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string a, b, v;
    if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') ||
        !std::getline(ss, v)) {
      throw ParseError("bad interference line: " + line);
    }
    gt.set_pairwise(a, b, std::stod(v));
  }
  return gt;
}

void GroundTruthInterference::save_csv(const std::string& path) const {
  std::ofstream f(path);
  if (!f) throw EvaError("cannot write interference file: " + path);
  f << "workload_a,workload_b,tput_a_given_b\n";
  std::vector<std::pair<std::string, double>> rows(pairwise_.begin(),
                                                   pairwise_.end());
  std::sort(rows.begin(), rows.end());
  for (const auto& [key, value] : rows) {
    auto sep = key.find('\x1f');
    f << key.substr(0, sep) << ',' << key.substr(sep + 1) << ',' << value
      << '\n';
  }
}

}  // namespace eva
