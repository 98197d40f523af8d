#include "temax/report_io.hpp"

#include <cstdio>
#include <sstream>

#include "temax/error.hpp"

namespace temax {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x == 0.0 ? 0.0 : x);
  return buf;
}

void CsvTable::add_row(std::vector<std::string> row) {
  if (row.size() != header_.size()) throw Error(ErrorCode::invalid_argument, "csv row width does not match header");
  rows_.push_back(std::move(row));
}

std::string CsvTable::str() const {
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << '\n';
  };
  line(header_);
  for (const auto& r : rows_) line(r);
  return os.str();
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string config_hash(const json& config) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(config.dump())));
  return buf;
}

namespace {

double number(const json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorCode::invalid_media, std::string("media descriptor lacks \"") + key + "\"");
  if (!j[key].is_number()) throw Error(ErrorCode::invalid_media, std::string("media field \"") + key + "\" must be a number");
  return j[key].get<double>();
}

double number_or(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number()) throw Error(ErrorCode::invalid_media, std::string("media field \"") + key + "\" must be a number");
  return j[key].get<double>();
}

}  // namespace

bool is_radial_descriptor(const json& j) { return j.is_object() && j.value("type", std::string("constant")) == "radial"; }

MediaQuad media_quad_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::invalid_media, "media descriptor must be a JSON object");
  if (is_radial_descriptor(j)) return radial_media_from_json(j).boundary();
  MediaQuad m;
  m.eps = number(j, "eps");
  m.mu = number(j, "mu");
  m.eps_hat = number(j, "eps_hat");
  m.mu_hat = number(j, "mu_hat");
  m.alpha2 = static_cast<int>(number_or(j, "alpha2", 1.0));
  m.lambda_cap = number_or(j, "lambda", m.lambda_cap);
  m.lambda_margin = number_or(j, "lambda1", m.lambda_margin);
  m.validate();
  return m;
}

RadialMedia radial_media_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::invalid_media, "media descriptor must be a JSON object");
  if (!is_radial_descriptor(j)) {
    const MediaQuad m = media_quad_from_json(j);
    return RadialMedia::constant(m, RadialMedia::default_grid, number_or(j, "s0", 0.25));
  }
  std::array<std::vector<double>, 4> s;
  const char* keys[4] = {"eps", "mu", "eps_hat", "mu_hat"};
  for (int i = 0; i < 4; ++i) {
    if (!j.contains(keys[i]) || !j[keys[i]].is_array())
      throw Error(ErrorCode::invalid_media, std::string("radial media needs a sample array \"") + keys[i] + "\"");
    for (const auto& v : j[keys[i]]) {
      if (!v.is_number()) throw Error(ErrorCode::invalid_media, "radial samples must be numbers");
      s[i].push_back(v.get<double>());
    }
  }
  RadialMedia rm(std::move(s), number_or(j, "s0", 0.25), number_or(j, "lambda", 10.0), number_or(j, "lambda1", 0.1));
  rm.validate();
  return rm;
}

json to_json(const MediaQuad& m) {
  return json{{"eps", m.eps},     {"mu", m.mu},          {"eps_hat", m.eps_hat},      {"mu_hat", m.mu_hat},
              {"alpha2", m.alpha2}, {"lambda", m.lambda_cap}, {"lambda1", m.lambda_margin}};
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

}  // namespace temax
