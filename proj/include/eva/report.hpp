#pragma once

#include <string>

#include "eva/simulator.hpp"

namespace eva {

// Versioned JSON serialization of simulation reports. Reading rejects
// unknown fields and unsupported schema versions.
std::string report_to_json(const SimReport& report);
SimReport report_from_json(const std::string& text);

void save_report(const std::string& path, const SimReport& report);
SimReport load_report(const std::string& path);

}  // namespace eva
