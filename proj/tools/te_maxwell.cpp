// Batch front end: builds a JSON config from flags and files, runs it through the C API
// and writes <out>/<command>.json plus one CSV per table.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "temax.h"

namespace {

using nlohmann::json;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json read_json(const std::string& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw InputError(std::string("cannot read ") + what + " file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed JSON in ") + what + " file '" + path + "': " + e.what());
  }
}

struct Common {
  std::string media, out = ".", grid;
  double tol = 0.0;
  int threads = 1;
};

void add_common(CLI::App* sub, Common& c, bool media_required = true) {
  auto* m = sub->add_option("--media", c.media, "media descriptor (JSON)");
  if (media_required) m->required();
  sub->add_option("--out", c.out, "output directory");
  sub->add_option("--grid", c.grid, "grid settings (JSON)");
  sub->add_option("--tol", c.tol, "tolerance")->check(CLI::PositiveNumber);
  sub->add_option("--threads", c.threads, "worker threads")->check(CLI::PositiveNumber);
}

int env_threads(int fallback) {
  const char* v = std::getenv("TE_MAXWELL_THREADS");
  if (!v || !*v) return fallback;
  char* end = nullptr;
  const long n = std::strtol(v, &end, 10);
  if (*end != '\0' || n < 1) throw InputError("TE_MAXWELL_THREADS must be a positive integer");
  return static_cast<int>(n);
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  if (!f || !(f << text)) throw std::runtime_error("cannot write '" + p.string() + "'");
}

struct StrGuard {
  char* p = nullptr;
  ~StrGuard() { te_string_free(p); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Transmission-eigenvalue toolkit for Maxwell's equations"};
  app.require_subcommand(1);

  Common common;
  json options = json::object();

  auto* cert = app.add_subcommand("certify", "symbol lower bounds for the boundary complementing condition");
  add_common(cert, common);
  double wedge = 0.5;
  cert->add_option("--wedge", wedge, "wedge gamma");

  auto* half = app.add_subcommand("halfspace", "half-space Cauchy problem at one tangential frequency");
  add_common(half, common);
  std::string trace;
  half->add_option("--trace", trace, "trace data (JSON: xi, k, fe, fm)");

  auto* ball = app.add_subcommand("ball-eigs", "transmission eigenvalues of the unit ball");
  add_common(ball, common);
  double radius = 30.0;
  int n_max = 12;
  ball->add_option("--radius", radius, "largest |omega|");
  ball->add_option("--n-max", n_max, "largest spherical degree");

  auto* wedge_cmd = app.add_subcommand("wedge-scan", "winding-number scan of the wedge");
  add_common(wedge_cmd, common);
  std::vector<double> omega0;
  wedge_cmd->add_option("--wedge", wedge, "wedge gamma");
  wedge_cmd->add_option("--omega0", omega0, "ladder of omega0 values");
  wedge_cmd->add_option("--n-max", n_max, "largest spherical degree");

  auto* op = app.add_subcommand("operator-spec", "spectrum of the radial solution operator");
  add_common(op, common);
  double k_abs = 10.0, k_arg = 0.7853981633974483, omega_max = 8.0;
  std::vector<int> sectors{1, 2};
  std::string pol = "both";
  std::vector<double> threshold_k;
  op->add_option("--k-abs", k_abs, "|k|");
  op->add_option("--k-arg", k_arg, "arg k");
  op->add_option("--sectors", sectors, "spherical degrees");
  op->add_option("--polarization", pol, "TE, TM or both")->check(CLI::IsMember({"TE", "TM", "both"}));
  op->add_option("--omega-max", omega_max, "largest |omega| reported");
  op->add_option("--threshold-k", threshold_k, "|k| values for the limiting-absorption threshold scan");

  auto* dec = app.add_subcommand("decay", "interior decay fit on the slab");
  add_common(dec, common, false);
  double s = 0.2;
  bool real_omega = false;
  std::vector<double> decay_k{10, 20, 40};
  dec->add_option("--s", s, "collar width");
  dec->add_flag("--real-omega", real_omega, "probe real omega (outside the wedge)");
  dec->add_option("--k-abs", decay_k, "|k| values");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "te_maxwell: " << e.what() << "\n";
    return 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  json config;
  try {
    config["threads"] = env_threads(common.threads);
    config["media"] = common.media.empty() ? json::object() : read_json(common.media, "media");
    if (!common.grid.empty()) config["grid"] = read_json(common.grid, "grid");
    if (common.tol > 0) config["tol"] = common.tol;
    if (command == "certify") {
      options["gamma"] = wedge;
    } else if (command == "halfspace") {
      if (!trace.empty()) options["trace"] = read_json(trace, "trace");
    } else if (command == "ball-eigs") {
      options["radius"] = radius;
      options["n_max"] = n_max;
    } else if (command == "wedge-scan") {
      options["gamma"] = wedge;
      options["n_max"] = n_max;
      if (!omega0.empty()) options["omega0"] = omega0;
    } else if (command == "operator-spec") {
      options["k_abs"] = k_abs;
      options["k_arg"] = k_arg;
      options["sectors"] = sectors;
      options["polarization"] = pol;
      options["omega_max"] = omega_max;
      if (!threshold_k.empty()) options["threshold_k_abs"] = threshold_k;
    } else if (command == "decay") {
      options["s"] = s;
      options["real_omega"] = real_omega;
      options["k_abs"] = decay_k;
    }
    config["options"] = options;
  } catch (const InputError& e) {
    std::cerr << "te_maxwell: " << e.what() << "\n";
    return 2;
  }

  te_run* raw = nullptr;
  const te_status st = te_run_create(command.c_str(), config.dump().c_str(), &raw);
  if (st != TE_OK) {
    std::cerr << "te_maxwell: " << te_last_error() << "\n";
    return te_status_is_input_error(st) ? 2 : 1;
  }
  std::unique_ptr<te_run, void (*)(te_run*)> run(raw, te_run_free);

  try {
    const std::filesystem::path dir(common.out);
    std::filesystem::create_directories(dir);
    StrGuard report;
    if (te_run_report(run.get(), &report.p) != TE_OK) throw std::runtime_error(te_last_error());
    write_file(dir / (command + ".json"), report.p);
    for (size_t i = 0; i < te_run_table_count(run.get()); ++i) {
      StrGuard name, csv;
      if (te_run_table(run.get(), i, &name.p, &csv.p) != TE_OK) throw std::runtime_error(te_last_error());
      write_file(dir / name.p, csv.p);
    }
  } catch (const std::exception& e) {
    std::cerr << "te_maxwell: " << e.what() << "\n";
    return 2;
  }
  if (te_run_failed(run.get())) {
    std::cerr << "te_maxwell: " << command << " completed with a failing result\n";
    return 1;
  }
  return 0;
}
