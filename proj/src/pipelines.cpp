#include "temax/pipelines.hpp"

#include <cmath>

#include "temax/ball_oracle.hpp"
#include "temax/certifier.hpp"
#include "temax/decay_slab.hpp"
#include "temax/error.hpp"
#include "temax/halfspace.hpp"
#include "temax/radial_operator.hpp"

namespace temax {

namespace {

const json& section(const json& cfg, const char* key) {
  static const json empty = json::object();
  if (!cfg.contains(key)) return empty;
  if (!cfg[key].is_object()) throw Error(ErrorCode::invalid_argument, std::string("\"") + key + "\" must be an object");
  return cfg[key];
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j[key].get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorCode::invalid_argument, std::string("config field \"") + key + "\" has the wrong type");
  }
}

double positive_tol(const json& cfg, double fallback) {
  const double t = get_or(cfg, "tol", fallback);
  if (!(t > 0)) throw Error(ErrorCode::invalid_argument, "tolerance must be positive");
  return t;
}

int threads_of(const json& cfg) {
  const int t = get_or(cfg, "threads", 1);
  if (t < 1) throw Error(ErrorCode::invalid_argument, "threads must be at least 1");
  return t;
}

const json& media_of(const json& cfg) {
  if (!cfg.contains("media")) throw Error(ErrorCode::invalid_argument, "config has no media descriptor");
  return cfg["media"];
}

cplx complex_of(const json& j, const char* what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) return {j[0].get<double>(), j[1].get<double>()};
  throw Error(ErrorCode::invalid_argument, std::string(what) + " must be a number or a [re, im] pair");
}

cvec2 cvec2_of(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2) throw Error(ErrorCode::invalid_argument, std::string(what) + " must have two entries");
  return {complex_of(j[0], what), complex_of(j[1], what)};
}

std::vector<double> list_or(const json& j, const char* key, std::vector<double> fallback) {
  if (!j.contains(key)) return fallback;
  if (j[key].is_number()) return {j[key].get<double>()};
  return get_or(j, key, fallback);
}

std::string f(double x) { return format_double(x); }

json header(const std::string& cmd, const json& cfg) { return json{{"command", cmd}, {"config_hash", config_hash(cfg)}}; }

RunOutput run_certify(const json& cfg) {
  const MediaQuad m = media_quad_from_json(media_of(cfg));
  const json& g = section(cfg, "grid");
  const json& o = section(cfg, "options");
  ScanGrid grid;
  grid.xi_count = get_or(g, "xi_count", grid.xi_count);
  grid.xi_min = get_or(g, "xi_min", grid.xi_min);
  grid.xi_max = get_or(g, "xi_max", grid.xi_max);
  grid.angle_count = get_or(g, "angle_count", grid.angle_count);
  grid.k_count = get_or(g, "k_count", grid.k_count);
  grid.k_min = get_or(g, "k_min", grid.k_min);
  grid.k_max = get_or(g, "k_max", grid.k_max);
  grid.threads = threads_of(cfg);
  WedgeSpec w;
  w.gamma = get_or(o, "gamma", w.gamma);
  const Certificate c = certify(m, w, grid, positive_tol(cfg, 1e-3));

  RunOutput out;
  out.report = header("certify", cfg);
  out.report["media"] = to_json(m);
  out.report["gamma"] = w.gamma;
  out.report["certified"] = c.certified;
  out.report["admissible"] = c.admissibility.ok;
  out.report["margins"] = c.admissibility.margins;
  out.report["threshold"] = c.threshold;
  out.report["min_ratio_A"] = c.scan.min_ratio_A;
  out.report["min_ratio_B"] = c.scan.min_ratio_B;
  out.report["points"] = c.scan.points;
  CsvTable t({"denominator", "ratio", "xi", "k_re", "k_im"});
  const std::pair<const char*, std::pair<double, SymbolArgmin>> rows[2] = {
      {"A", {c.scan.min_ratio_A, c.scan.argmin_A}}, {"B", {c.scan.min_ratio_B, c.scan.argmin_B}}};
  for (const auto& [name, v] : rows) {
    out.report[std::string("argmin_") + name] = json{{"xi", v.second.xi}, {"k", complex_json(v.second.k)}};
    t.add_row({name, f(v.first), f(v.second.xi), f(v.second.k.real()), f(v.second.k.imag())});
  }
  out.tables.emplace_back("certify_argmin.csv", std::move(t));
  out.failed = !c.certified;
  return out;
}

RunOutput run_halfspace(const json& cfg) {
  const MediaQuad m = media_quad_from_json(media_of(cfg));
  const json& o = section(cfg, "options");
  const json& g = section(cfg, "grid");
  const json tr = o.contains("trace") ? o["trace"] : json::object();
  if (!tr.is_object()) throw Error(ErrorCode::invalid_argument, "trace must be an object");
  TangentialMode xi{1.0, 0.5};
  if (tr.contains("xi")) {
    const auto v = get_or(tr, "xi", std::vector<double>{});
    if (v.size() != 2) throw Error(ErrorCode::invalid_argument, "xi must have two entries");
    xi = {v[0], v[1]};
  }
  Wavenumber k{std::polar(10.0, M_PI / 4), get_or(tr, "gamma", 0.5)};
  if (tr.contains("k")) k.k = complex_of(tr["k"], "k");
  TraceDatum d;
  d.fe = tr.contains("fe") ? cvec2_of(tr["fe"], "fe") : cvec2{cplx(1.0), cplx(0.0, 0.5)};
  d.fm = tr.contains("fm") ? cvec2_of(tr["fm"], "fm") : cvec2{cplx(0.2), cplx(-0.3)};
  const double x3_max = get_or(g, "x3_max", 2.0);
  const int points = get_or(g, "points", 41);
  if (!(x3_max > 0) || points < 2) throw Error(ErrorCode::invalid_argument, "x3 grid needs x3_max > 0 and points >= 2");

  const ModeAmplitudes a = solve_amplitudes(xi, k, m, d);
  std::vector<double> xs;
  for (int i = 0; i < points; ++i) xs.push_back(x3_max * i / (points - 1));
  const CauchyResidual res = cauchy_residual(a, xs.size() >= 8 ? xs : std::vector<double>{0, .25, .5, .75, 1, 1.25, 1.5, 2});
  const double tol = positive_tol(cfg, 1e-9);

  RunOutput out;
  out.report = header("halfspace", cfg);
  out.report["media"] = to_json(m);
  out.report["xi"] = {xi.xi1, xi.xi2};
  out.report["k"] = complex_json(k.k);
  out.report["a"] = {complex_json(a.a[0]), complex_json(a.a[1])};
  out.report["a_hat"] = {complex_json(a.a_hat[0]), complex_json(a.a_hat[1])};
  out.report["lambda"] = complex_json(a.lambda);
  out.report["lambda_hat"] = complex_json(a.lambda_hat);
  out.report["maxwell_res"] = res.maxwell_res;
  out.report["bc_res"] = res.bc_res;
  out.report["stability_ratio"] = d.norm() > 0 ? json(stability_ratio(a)) : json(nullptr);
  out.report["tol"] = tol;

  std::vector<std::string> head{"x3"};
  for (const char* fld : {"E", "H", "Ehat", "Hhat"})
    for (int c = 1; c <= 3; ++c)
      for (const char* part : {"Re", "Im"}) head.push_back(std::string(fld) + std::to_string(c) + "_" + part);
  CsvTable t(head);
  for (double x : xs) {
    const FieldSample s = evaluate_fields(a, x);
    std::vector<std::string> row{f(x)};
    for (const cvec3* v : {&s.E, &s.H, &s.E_hat, &s.H_hat})
      for (const cplx& z : *v) row.push_back(f(z.real())), row.push_back(f(z.imag()));
    t.add_row(std::move(row));
  }
  out.tables.emplace_back("halfspace_fields.csv", std::move(t));
  out.failed = !(res.maxwell_res <= tol && res.bc_res <= tol);
  return out;
}

RunOutput run_ball_eigs(const json& cfg) {
  const MediaQuad m = media_quad_from_json(media_of(cfg));
  const json& o = section(cfg, "options");
  const double R = get_or(o, "radius", 30.0);
  const int n_max = get_or(o, "n_max", 12);
  if (!(R > 0) || n_max < 1) throw Error(ErrorCode::invalid_argument, "ball-eigs needs radius > 0 and n_max >= 1");
  const double tol = positive_tol(cfg, 1e-8);
  const Census c = spectrum_census(m, n_max, R, threads_of(cfg));

  RunOutput out;
  out.report = header("ball-eigs", cfg);
  out.report["media"] = to_json(m);
  out.report["radius"] = R;
  out.report["n_max"] = n_max;
  out.report["count"] = c.roots.size();
  out.report["min_gap"] = std::isfinite(c.min_gap) ? json(c.min_gap) : json(nullptr);
  out.report["max_residual"] = c.max_residual;
  out.report["tol"] = tol;
  CsvTable t({"omega_Re", "omega_Im", "abs", "n", "polarization", "sectors", "multiplicity", "residual"});
  for (const auto& r : c.roots)
    t.add_row({f(r.omega.real()), f(r.omega.imag()), f(std::abs(r.omega)), std::to_string(r.n), polarization_name(r.pol),
               r.sectors, std::to_string(r.multiplicity), f(r.residual)});
  out.tables.emplace_back("ball_eigs.csv", std::move(t));
  out.failed = !(c.max_residual <= tol);
  return out;
}

RunOutput run_wedge_scan(const json& cfg) {
  const MediaQuad m = media_quad_from_json(media_of(cfg));
  const json& o = section(cfg, "options");
  const double gamma = get_or(o, "gamma", 0.5);
  const int n_max = get_or(o, "n_max", 12);
  const double factor = get_or(o, "factor", 3.0);
  const std::vector<double> ladder = list_or(o, "omega0", {1, 2, 5, 10, 20, 50});
  const WedgeLadder wl = wedge_ladder(m, gamma, n_max, ladder, factor, threads_of(cfg));

  RunOutput out;
  out.report = header("wedge-scan", cfg);
  out.report["media"] = to_json(m);
  out.report["gamma"] = gamma;
  out.report["n_max"] = n_max;
  json rungs = json::array();
  CsvTable t({"omega0", "n", "polarization", "r0", "r1", "phi0", "phi1", "count"});
  for (const auto& r : wl.rungs) {
    rungs.push_back({{"omega0", r.omega0}, {"R", r.R}, {"total_roots", r.total_roots}, {"clean", r.clean}});
    for (const auto& c : r.cells)
      t.add_row({f(r.omega0), std::to_string(c.n), polarization_name(c.pol), f(c.r0), f(c.r1), f(c.phi0), f(c.phi1),
                 std::to_string(c.count)});
  }
  out.report["rungs"] = rungs;
  auto opt = [](double x) { return std::isfinite(x) ? json(x) : json(nullptr); };
  out.report["first_clean_omega0"] = opt(wl.first_clean_omega0);
  out.report["smallest_clean_omega0"] = opt(wl.smallest_clean_omega0);
  out.tables.emplace_back("wedge_cells.csv", std::move(t));
  out.failed = !std::isfinite(wl.smallest_clean_omega0);
  return out;
}

RunOutput run_operator_spec(const json& cfg) {
  const RadialMedia media = radial_media_from_json(media_of(cfg));
  const json& o = section(cfg, "options");
  const json& g = section(cfg, "grid");
  const Wavenumber k{std::polar(get_or(o, "k_abs", 10.0), get_or(o, "k_arg", M_PI / 4)), get_or(o, "gamma", 0.5)};
  const int grid = get_or(g, "radial", 48);
  const double omega_max = get_or(o, "omega_max", 8.0);
  const double tol = positive_tol(cfg, 1e-3);
  std::vector<int> sectors = get_or(o, "sectors", std::vector<int>{1, 2});
  const std::string pol_opt = get_or(o, "polarization", std::string("both"));
  std::vector<Polarization> pols;
  if (pol_opt == "TE" || pol_opt == "both") pols.push_back(Polarization::TE);
  if (pol_opt == "TM" || pol_opt == "both") pols.push_back(Polarization::TM);
  if (pols.empty()) throw Error(ErrorCode::invalid_argument, "polarization must be TE, TM or both");

  RunOutput out;
  out.report = header("operator-spec", cfg);
  out.report["k"] = complex_json(k.k);
  out.report["grid"] = grid;
  json secs = json::array();
  CsvTable t({"n", "polarization", "tau_Re", "tau_Im", "omega_Re", "omega_Im", "movement", "physical"});
  for (int n : sectors)
    for (Polarization p : pols) {
      const OperatorT op = operator_T_matrix(media, k, n, p, grid);
      const Eigen::VectorXd sv = operator_singular_values(op);
      const auto spec = physical_spectrum(media, k, n, p, grid, tol, omega_max);
      int phys = 0;
      for (const auto& e : spec) {
        phys += e.physical;
        t.add_row({std::to_string(n), polarization_name(p), f(e.tau.real()), f(e.tau.imag()), f(e.omega.real()),
                   f(e.omega.imag()), f(e.movement), e.physical ? "1" : "0"});
      }
      secs.push_back({{"n", n},
                      {"polarization", polarization_name(p)},
                      {"sigma_max", sv(0)},
                      {"k_sigma_max", k.abs() * sv(0)},
                      {"physical_count", phys}});
    }
  out.report["sectors"] = secs;
  if (o.contains("threshold_k_abs")) {
    const auto ks = get_or(o, "threshold_k_abs", std::vector<double>{});
    const ThresholdReport th = sweep_threshold(media, sectors.front(), pols.front(), std::arg(k.k), ks, grid);
    json sweeps = json::array();
    for (std::size_t i = 0; i < ks.size(); ++i)
      sweeps.push_back({{"k_abs", ks[i]}, {"ratios", th.sweeps[i].ratios}, {"first_order", th.sweeps[i].first_order}});
    out.report["sweeps"] = sweeps;
    out.report["threshold"] = std::isfinite(th.threshold) ? json(th.threshold) : json(nullptr);
  }
  out.tables.emplace_back("operator_spectrum.csv", std::move(t));
  return out;
}

RunOutput run_decay(const json& cfg) {
  const json& mj = media_of(cfg);
  const json& o = section(cfg, "options");
  SlabProblem p;
  if (!mj.is_object()) throw Error(ErrorCode::invalid_media, "media descriptor must be a JSON object");
  p.eps = get_or(mj, "eps", p.eps);
  p.mu = get_or(mj, "mu", p.mu);
  p.s = get_or(o, "s", p.s);
  if (o.contains("xi")) {
    const auto v = get_or(o, "xi", std::vector<double>{});
    if (v.size() != 2) throw Error(ErrorCode::invalid_argument, "xi must have two entries");
    p.xi = {v[0], v[1]};
  }
  const bool real_omega = get_or(o, "real_omega", false);
  // Real ω means k = iω on the imaginary axis.
  const double arg = real_omega ? M_PI / 2 : get_or(o, "k_arg", M_PI / 4);
  p.enforce_wedge = !real_omega;
  const std::vector<double> K = list_or(o, "k_abs", {10, 20, 40});
  p.k = Wavenumber{std::polar(K.empty() ? 1.0 : K.front(), arg), get_or(o, "gamma", 0.5)};
  const DecayFit fit = fit_decay(p, K, get_or(o, "min_c2", 0.05));

  RunOutput out;
  out.report = header("decay", cfg);
  out.report["c1"] = fit.c1;
  out.report["c2"] = fit.c2;
  out.report["residual"] = fit.residual;
  out.report["K"] = fit.k_abs;
  out.report["s"] = fit.s;
  out.report["real_omega"] = real_omega;
  out.report["violation"] = fit.violation;
  CsvTable t({"k_abs", "ratio", "fitted"});
  for (std::size_t i = 0; i < K.size(); ++i)
    t.add_row({f(K[i]), f(fit.ratios[i]), f(fit.c1 * std::exp(-fit.c2 * K[i]))});
  out.tables.emplace_back("decay_ratios.csv", std::move(t));
  out.failed = fit.violation;
  return out;
}

}  // namespace

const std::vector<std::string>& pipeline_commands() {
  static const std::vector<std::string> c{"certify", "halfspace", "ball-eigs", "wedge-scan", "operator-spec", "decay"};
  return c;
}

RunOutput run_pipeline(const std::string& command, const json& config) {
  if (!config.is_object()) throw Error(ErrorCode::invalid_argument, "config must be a JSON object");
  if (command == "certify") return run_certify(config);
  if (command == "halfspace") return run_halfspace(config);
  if (command == "ball-eigs") return run_ball_eigs(config);
  if (command == "wedge-scan") return run_wedge_scan(config);
  if (command == "operator-spec") return run_operator_spec(config);
  if (command == "decay") return run_decay(config);
  throw Error(ErrorCode::invalid_argument, "unknown subcommand: " + command);
}

}  // namespace temax
