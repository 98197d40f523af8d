#include "temax.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

#include "temax/ball_oracle.hpp"
#include "temax/certifier.hpp"
#include "temax/error.hpp"
#include "temax/halfspace.hpp"
#include "temax/pipelines.hpp"

struct te_media {
  temax::MediaQuad quad;
};

struct te_run {
  temax::RunOutput out;
};

namespace {

thread_local std::string last_error;

te_status fail(te_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

template <class F>
te_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return TE_OK;
  } catch (const temax::Error& e) {
    return fail(static_cast<te_status>(e.code()), e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(TE_PARSE_ERROR, e.what());
  } catch (const std::bad_alloc&) {
    return fail(TE_INTERNAL_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return fail(TE_INTERNAL_ERROR, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

void need(const void* p, const char* what) {
  if (!p) throw temax::Error(temax::ErrorCode::invalid_argument, std::string(what) + " must not be null");
}

temax::cplx c_at(const double* v, int i) { return {v[2 * i], v[2 * i + 1]}; }

}  // namespace

extern "C" {

const char* te_last_error(void) { return last_error.c_str(); }

const char* te_status_name(te_status status) {
  switch (status) {
    case TE_OK: return "ok";
    case TE_PARSE_ERROR: return "parse-error";
    case TE_INTERNAL_ERROR: return "internal-error";
    default: break;
  }
  if (status >= TE_INVALID_ARGUMENT && status <= TE_DECAY_VIOLATION)
    return temax::error_code_name(static_cast<temax::ErrorCode>(status));
  return "unknown";
}

int te_status_is_input_error(te_status status) {
  return status == TE_INVALID_ARGUMENT || status == TE_INVALID_MEDIA || status == TE_PARSE_ERROR;
}

te_status te_media_create(double eps, double mu, double eps_hat, double mu_hat, te_media** out) {
  return guarded([&] {
    need(out, "out");
    *out = nullptr;
    temax::MediaQuad m;
    m.eps = eps, m.mu = mu, m.eps_hat = eps_hat, m.mu_hat = mu_hat;
    m.validate();
    *out = new te_media{m};
  });
}

te_status te_media_from_json(const char* json, te_media** out) {
  return guarded([&] {
    need(out, "out");
    need(json, "json");
    *out = nullptr;
    *out = new te_media{temax::media_quad_from_json(nlohmann::json::parse(json))};
  });
}

void te_media_free(te_media* media) { delete media; }

te_status te_media_admissible(const te_media* media, int* ok, double margins[3]) {
  return guarded([&] {
    need(media, "media");
    const auto r = temax::check_admissible(media->quad);
    if (ok) *ok = r.ok ? 1 : 0;
    if (margins)
      for (int i = 0; i < 3; ++i) margins[i] = r.margins[i];
  });
}

te_status te_halfspace_solve(const te_media* media, double xi1, double xi2, double k_re, double k_im, double gamma,
                             const double fe[4], const double fm[4], double a[4], double a_hat[4],
                             double* maxwell_res, double* bc_res) {
  return guarded([&] {
    need(media, "media");
    need(fe, "fe");
    need(fm, "fm");
    temax::TraceDatum d;
    d.fe = {c_at(fe, 0), c_at(fe, 1)};
    d.fm = {c_at(fm, 0), c_at(fm, 1)};
    const auto amp = temax::solve_amplitudes({xi1, xi2}, temax::Wavenumber{{k_re, k_im}, gamma}, media->quad, d);
    for (int i = 0; i < 2; ++i) {
      if (a) a[2 * i] = amp.a[i].real(), a[2 * i + 1] = amp.a[i].imag();
      if (a_hat) a_hat[2 * i] = amp.a_hat[i].real(), a_hat[2 * i + 1] = amp.a_hat[i].imag();
    }
    if (maxwell_res || bc_res) {
      const auto r = temax::cauchy_residual(amp, {0.0, 0.125, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0});
      if (maxwell_res) *maxwell_res = r.maxwell_res;
      if (bc_res) *bc_res = r.bc_res;
    }
  });
}

te_status te_symbol_scan(const te_media* media, double gamma, int threads, double* min_ratio_a, double* min_ratio_b) {
  return guarded([&] {
    need(media, "media");
    temax::ScanGrid g;
    g.threads = threads;
    temax::WedgeSpec w;
    w.gamma = gamma;
    const auto r = temax::scan_lower_bounds(media->quad, w, g);
    if (min_ratio_a) *min_ratio_a = r.min_ratio_A;
    if (min_ratio_b) *min_ratio_b = r.min_ratio_B;
  });
}

te_status te_ball_determinant(const te_media* media, int n, te_polarization pol, double omega_re, double omega_im,
                              double* f_re, double* f_im) {
  return guarded([&] {
    need(media, "media");
    if (pol != TE_POL_TE && pol != TE_POL_TM) throw temax::Error(temax::ErrorCode::invalid_argument, "bad polarization");
    const auto det = temax::build_determinant(n, pol == TE_POL_TE ? temax::Polarization::TE : temax::Polarization::TM,
                                              media->quad);
    const temax::cplx v = det({omega_re, omega_im});
    if (f_re) *f_re = v.real();
    if (f_im) *f_im = v.imag();
  });
}

te_status te_ball_census(const te_media* media, int n_max, double radius, int threads, size_t* count, double* min_gap,
                         double* max_residual, double* omega, size_t capacity) {
  return guarded([&] {
    need(media, "media");
    const auto c = temax::spectrum_census(media->quad, n_max, radius, threads);
    if (count) *count = c.roots.size();
    if (min_gap) *min_gap = c.min_gap;
    if (max_residual) *max_residual = c.max_residual;
    if (omega)
      for (size_t i = 0; i < c.roots.size() && i < capacity; ++i)
        omega[2 * i] = c.roots[i].omega.real(), omega[2 * i + 1] = c.roots[i].omega.imag();
  });
}

te_status te_run_create(const char* command, const char* config_json, te_run** out) {
  return guarded([&] {
    need(out, "out");
    need(command, "command");
    need(config_json, "config");
    *out = nullptr;
    auto run = std::make_unique<te_run>();
    run->out = temax::run_pipeline(command, nlohmann::json::parse(config_json));
    *out = run.release();
  });
}

void te_run_free(te_run* run) { delete run; }

int te_run_failed(const te_run* run) { return run && run->out.failed ? 1 : 0; }

te_status te_run_report(const te_run* run, char** json_out) {
  return guarded([&] {
    need(run, "run");
    need(json_out, "json_out");
    *json_out = dup_string(run->out.report.dump(2) + "\n");
  });
}

size_t te_run_table_count(const te_run* run) { return run ? run->out.tables.size() : 0; }

te_status te_run_table(const te_run* run, size_t index, char** name_out, char** csv_out) {
  return guarded([&] {
    need(run, "run");
    if (index >= run->out.tables.size()) throw temax::Error(temax::ErrorCode::invalid_argument, "table index out of range");
    const auto& [name, table] = run->out.tables[index];
    if (name_out) *name_out = dup_string(name);
    if (csv_out) *csv_out = dup_string(table.str());
  });
}

void te_string_free(char* s) { std::free(s); }

}  // extern "C"
