#pragma once

#include <string>
#include <utility>
#include <vector>

#include "temax/report_io.hpp"

namespace temax {

struct RunOutput {
  json report;
  std::vector<std::pair<std::string, CsvTable>> tables;  // file name, contents
  bool failed = false;  // a computed negative result (not an input error)
};

/// Runs one batch command on a config of the form
///   {"media": {...}, "grid": {...}, "tol": x, "threads": n, "options": {...}}
/// Every key except "media" is optional. Throws temax::Error on bad input or numerical refusal.
RunOutput run_pipeline(const std::string& command, const json& config);

const std::vector<std::string>& pipeline_commands();

}  // namespace temax
