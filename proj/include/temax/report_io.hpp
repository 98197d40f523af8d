#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "temax/media.hpp"

namespace temax {

using json = nlohmann::json;

/// Shortest round-trip-safe rendering (17 significant digits).
std::string format_double(double x);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  void add_row(std::vector<std::string> row);
  const std::vector<std::string>& header() const { return header_; }
  std::size_t rows() const { return rows_.size(); }
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

std::uint64_t fnv1a64(std::string_view bytes);
/// FNV-1a of the canonical (key-sorted, compact) dump, as 16 hex digits.
std::string config_hash(const json& config);

/// {"eps", "mu", "eps_hat", "mu_hat"} plus optional "alpha2", "lambda", "lambda1".
MediaQuad media_quad_from_json(const json& j);
/// Constant descriptor as above, or {"type": "radial", "eps": [...], "mu": [...], "eps_hat": [...],
/// "mu_hat": [...], "s0", "lambda", "lambda1"} with samples on a uniform grid over [0, 1].
RadialMedia radial_media_from_json(const json& j);
bool is_radial_descriptor(const json& j);

json to_json(const MediaQuad& m);
json complex_json(cplx z);

}  // namespace temax
