/**
 * @file  opalg_capi.cpp
 * @brief C interface implementation: opaque handles over the core types,
 *        thread-local error reporting, and campaign entry points.
 */
#include "opalg.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "opalg/algebra.hpp"
#include "opalg/distances.hpp"
#include "opalg/harness.hpp"
#include "opalg/matrix.hpp"
#include "opalg/order_optim.hpp"

struct opalg_matrix {
  opalg::Mat m;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) return nullptr;
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

opalg_status map_code(const std::string& code) {
  if (code == "io") return OPALG_ERR_IO;
  if (code == "no_convergence" || code == "bracket_failure")
    return OPALG_ERR_NOCONV;
  if (code.rfind("bad_", 0) == 0 || code.rfind("unknown_", 0) == 0 ||
      code == "dim_mismatch")
    return OPALG_ERR_INVALID;
  return OPALG_ERR_DOMAIN;
}

/// Runs `fn`, converting exceptions into status codes + the thread-local
/// message.  Every entry point below goes through here.
template <typename Fn>
opalg_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return OPALG_OK;
  } catch (const opalg::Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return OPALG_ERR_UNKNOWN;
  }
}

opalg_status require(bool ok, const char* message) {
  if (ok) return OPALG_OK;
  g_last_error = message;
  return OPALG_ERR_INVALID;
}

std::map<std::string, std::string> parse_args(const char* kv_text) {
  return opalg::parse_kv_text(kv_text ? kv_text : "");
}

/// Shared body for opalg_verify / opalg_sweep.
template <typename Runner>
opalg_status run_campaign(const char* config_kv, char** out_json,
                          int* out_all_pass, Runner&& runner) {
  if (require(out_json != nullptr, "out_json must not be NULL") != OPALG_OK)
    return OPALG_ERR_INVALID;
  return guarded([&] {
    const opalg::CampaignConfig cfg =
        opalg::config_from_kv(parse_args(config_kv));
    const std::vector<opalg::SuiteReport> reports = runner(cfg);
    std::string json = "[";
    bool all = true;
    for (size_t i = 0; i < reports.size(); ++i) {
      std::string one = opalg::report_to_json(reports[i]);
      while (!one.empty() && one.back() == '\n') one.pop_back();
      if (i) json += ',';
      json += one;
      all = all && reports[i].pass;
    }
    json += "]";
    *out_json = dup_string(json);
    if (out_all_pass) *out_all_pass = all ? 1 : 0;
  });
}

}  // namespace

extern "C" {

const char* opalg_last_error(void) { return g_last_error.c_str(); }

const char* opalg_version(void) { return "1.0.0"; }

void opalg_string_free(char* s) { std::free(s); }

opalg_status opalg_matrix_create(int dim, const double* re, const double* im,
                                 opalg_matrix** out) {
  if (require(out && re, "re and out must not be NULL") != OPALG_OK)
    return OPALG_ERR_INVALID;
  if (require(dim >= 1 && dim <= 64, "dim must lie in [1, 64]") != OPALG_OK)
    return OPALG_ERR_INVALID;
  return guarded([&] {
    const size_t count = static_cast<size_t>(dim) * static_cast<size_t>(dim);
    std::vector<double> rev(re, re + count);
    std::vector<double> imv;
    if (im) imv.assign(im, im + count);
    *out = new opalg_matrix{opalg::Mat::from_parts(dim, rev, imv)};
  });
}

opalg_status opalg_matrix_from_json(const char* json, opalg_matrix** out) {
  if (require(out && json, "json and out must not be NULL") != OPALG_OK)
    return OPALG_ERR_INVALID;
  return guarded([&] {
    *out = new opalg_matrix{opalg::matrix_from_json(json)};
  });
}

opalg_status opalg_matrix_to_json(const opalg_matrix* m, char** out_json) {
  if (require(m && out_json, "m and out_json must not be NULL") != OPALG_OK)
    return OPALG_ERR_INVALID;
  return guarded([&] { *out_json = dup_string(opalg::matrix_to_json(m->m)); });
}

opalg_status opalg_matrix_dim(const opalg_matrix* m, int* out_dim) {
  if (require(m && out_dim, "m and out_dim must not be NULL") != OPALG_OK)
    return OPALG_ERR_INVALID;
  *out_dim = m->m.dim();
  return OPALG_OK;
}

opalg_status opalg_matrix_get(const opalg_matrix* m, int i, int j,
                              double* out_re, double* out_im) {
  if (require(m && out_re && out_im, "all arguments must be non-NULL") !=
      OPALG_OK)
    return OPALG_ERR_INVALID;
  if (require(i >= 0 && j >= 0 && i < m->m.dim() && j < m->m.dim(),
              "matrix index out of range") != OPALG_OK)
    return OPALG_ERR_INVALID;
  const auto z = m->m.at(i, j);
  *out_re = z.real();
  *out_im = z.imag();
  return OPALG_OK;
}

void opalg_matrix_free(opalg_matrix* m) { delete m; }

opalg_status opalg_dist(const char* name, const opalg_matrix* a,
                        const opalg_matrix* b, double* out) {
  if (require(name && a && b && out, "all arguments must be non-NULL") !=
      OPALG_OK)
    return OPALG_ERR_INVALID;
  return guarded([&] {
    const std::string which = name;
    if (which == "e") {
      *out = opalg::dist_e(a->m, b->m);
    } else if (which == "d") {
      *out = opalg::dist_d(a->m, b->m);
    } else if (which == "h") {
      *out = opalg::dist_h(a->m, b->m);
    } else if (which == "f") {
      *out = opalg::dist_f(a->m, b->m);
    } else {
      throw opalg::Error("unknown_distance",
                         "distance name must be e, d, h or f");
    }
  });
}

opalg_status opalg_solve_p(const opalg_matrix* a, const opalg_matrix* b,
                           double* out_value, opalg_matrix** out_witness) {
  if (require(a && b && out_value, "a, b, out_value must be non-NULL") !=
      OPALG_OK)
    return OPALG_ERR_INVALID;
  return guarded([&] {
    const opalg::SolveResult r = opalg::solve_p(a->m, b->m);
    *out_value = r.value;
    if (out_witness) *out_witness = new opalg_matrix{r.witness};
  });
}

opalg_status opalg_solve_n(const opalg_matrix* a, const opalg_matrix* b,
                           double* out_value, opalg_matrix** out_witness) {
  if (require(a && b && out_value, "a, b, out_value must be non-NULL") !=
      OPALG_OK)
    return OPALG_ERR_INVALID;
  return guarded([&] {
    const opalg::SolveResult r =
        opalg::solve_n(opalg::PosContraction(a->m), opalg::PosContraction(b->m));
    *out_value = r.value;
    if (out_witness) *out_witness = new opalg_matrix{r.witness};
  });
}

opalg_status opalg_dominated_approximant(const opalg_matrix* a,
                                         const opalg_matrix* b,
                                         opalg_matrix** out_c) {
  if (require(a && b && out_c, "all arguments must be non-NULL") != OPALG_OK)
    return OPALG_ERR_INVALID;
  return guarded([&] {
    const opalg::ApproximantResult r = opalg::dominated_approximant(
        opalg::PosContraction(a->m), opalg::PosContraction(b->m));
    *out_c = new opalg_matrix{r.c};
  });
}

opalg_status opalg_dominating_approximant(const opalg_matrix* a,
                                          const opalg_matrix* b,
                                          opalg_matrix** out_c) {
  if (require(a && b && out_c, "all arguments must be non-NULL") != OPALG_OK)
    return OPALG_ERR_INVALID;
  return guarded([&] {
    const opalg::ApproximantResult r = opalg::dominating_approximant(
        opalg::PosContraction(a->m), opalg::PosContraction(b->m));
    *out_c = new opalg_matrix{r.c};
  });
}

opalg_status opalg_known_suites(char** out_csv) {
  if (require(out_csv != nullptr, "out_csv must not be NULL") != OPALG_OK)
    return OPALG_ERR_INVALID;
  return guarded([&] {
    std::string joined;
    for (const auto& s : opalg::known_suites()) {
      if (!joined.empty()) joined += ',';
      joined += s;
    }
    *out_csv = dup_string(joined);
  });
}

opalg_status opalg_known_demos(char** out_csv) {
  if (require(out_csv != nullptr, "out_csv must not be NULL") != OPALG_OK)
    return OPALG_ERR_INVALID;
  return guarded([&] {
    std::string joined;
    for (const auto& s : opalg::known_demos()) {
      if (!joined.empty()) joined += ',';
      joined += s;
    }
    *out_csv = dup_string(joined);
  });
}

opalg_status opalg_verify(const char* config_kv, char** out_json,
                          int* out_all_pass) {
  return run_campaign(config_kv, out_json, out_all_pass,
                      [](const opalg::CampaignConfig& cfg) {
                        return opalg::run_verify(cfg);
                      });
}

opalg_status opalg_sweep(const char* config_kv, char** out_json,
                         int* out_all_pass) {
  return run_campaign(config_kv, out_json, out_all_pass,
                      [](const opalg::CampaignConfig& cfg) {
                        return opalg::run_sweep(cfg);
                      });
}

opalg_status opalg_demo(const char* name, const char* args_kv,
                        char** out_text) {
  if (require(name && out_text, "name and out_text must be non-NULL") !=
      OPALG_OK)
    return OPALG_ERR_INVALID;
  return guarded([&] {
    std::map<std::string, std::string> args = parse_args(args_kv);
    std::string out_dir;
    if (auto it = args.find("out"); it != args.end()) {
      out_dir = it->second;
      args.erase(it);
    }
    const opalg::DemoResult result = opalg::run_demo(name, args);
    if (!out_dir.empty())
      opalg::write_demo_files(out_dir, result);
    *out_text = dup_string(result.text);
  });
}

}  // extern "C"
