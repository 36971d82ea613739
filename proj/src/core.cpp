#include "eva/core.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

namespace eva {

ResourceVector operator+(const ResourceVector& a, const ResourceVector& b) {
  return {a.gpu + b.gpu, a.cpu + b.cpu, a.ram_gb + b.ram_gb};
}

ResourceVector operator-(const ResourceVector& a, const ResourceVector& b) {
  return {a.gpu - b.gpu, a.cpu - b.cpu, a.ram_gb - b.ram_gb};
}

bool fits(const ResourceVector& demand, const ResourceVector& capacity) {
  return demand.gpu <= capacity.gpu && demand.cpu <= capacity.cpu &&
         demand.ram_gb <= capacity.ram_gb;
}

InstanceType ghost_type() { return InstanceType{"ghost", {}, 0.0}; }

ResourceVector demand_sum(const std::vector<Task>& tasks) {
  ResourceVector total;
  for (const Task& t : tasks) total = total + t.demand;
  return total;
}

ResourceVector remaining_capacity(const InstanceType& type,
                                  const std::vector<Task>& tasks) {
  ResourceVector used = demand_sum(tasks);
  if (!fits(used, type.capacity)) {
    throw EvaError("tasks do not fit instance type " + type.id);
  }
  return type.capacity - used;
}

double configuration_hourly_cost(const ClusterConfiguration& config) {
  double total = 0.0;
  for (const AssignedInstance& inst : config.instances) {
    if (!inst.type.is_ghost()) total += inst.type.hourly_cost;
  }
  return total;
}

bool validate_configuration(const ClusterConfiguration& config,
                            std::string* error) {
  std::unordered_set<std::string> seen;
  for (const AssignedInstance& inst : config.instances) {
    for (const Task& t : inst.tasks) {
      if (!seen.insert(t.id).second) {
        if (error) *error = "task " + t.id + " assigned more than once";
        return false;
      }
    }
    if (!fits(demand_sum(inst.tasks), inst.type.capacity)) {
      if (error) {
        *error = "demand exceeds capacity on instance of type " + inst.type.id;
      }
      return false;
    }
    if (inst.type.is_ghost() && !inst.tasks.empty()) {
      if (error) *error = "ghost instance carries tasks";
      return false;
    }
  }
  return true;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

}  // namespace

std::vector<InstanceType> parse_catalog(const std::string& csv_text) {
  std::istringstream in(csv_text);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty catalog");
  if (split_csv_line(line) !=
      std::vector<std::string>{"type_id", "gpu", "cpu", "ram_gb",
                               "hourly_cost"}) {
    throw ParseError("bad catalog header: " + line);
  }
  std::vector<InstanceType> catalog;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    if (fields.size() != 5) {
      throw ParseError("catalog line " + std::to_string(lineno) +
                       ": expected 5 fields");
    }
    InstanceType type;
    try {
      type.id = fields[0];
      type.capacity.gpu = std::stoi(fields[1]);
      type.capacity.cpu = std::stoi(fields[2]);
      type.capacity.ram_gb = std::stod(fields[3]);
      type.hourly_cost = std::stod(fields[4]);
    } catch (const std::exception&) {
      throw ParseError("catalog line " + std::to_string(lineno) +
                       ": bad number");
    }
    if (type.hourly_cost < 0 || type.capacity.gpu < 0 ||
        type.capacity.cpu < 0 || type.capacity.ram_gb < 0) {
      throw ParseError("catalog line " + std::to_string(lineno) +
                       ": negative value");
    }
    if (type.is_ghost()) {
      throw ParseError("catalog line " + std::to_string(lineno) +
                       ": ghost-like entry not allowed in files");
    }
    catalog.push_back(type);
  }
  return catalog;
}

std::vector<InstanceType> load_catalog(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open catalog file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_catalog(ss.str());
}

void save_catalog(const std::vector<InstanceType>& catalog,
                  const std::string& path) {
  std::ofstream f(path);
  if (!f) throw EvaError("cannot write catalog file: " + path);
  f << "type_id,gpu,cpu,ram_gb,hourly_cost\n";
  for (const InstanceType& t : catalog) {
    f << t.id << ',' << t.capacity.gpu << ',' << t.capacity.cpu << ','
      << t.capacity.ram_gb << ',' << t.hourly_cost << '\n';
  }
}

}  // namespace eva
