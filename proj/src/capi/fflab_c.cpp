#include "fflab/fflab.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

#include "json.hpp"

#include "fflab/errors.hpp"
#include "fflab/field.hpp"
#include "fflab/report.hpp"
#include "fflab/sweep.hpp"
#include "fflab/verify.hpp"

struct fflab_field {
  fflab::FieldCtx ctx;
};

struct fflab_cache {
  fflab::SweepCache cache;
};

static_assert(FFLAB_E_NON_ODD_PRIME == int(fflab::ErrorCode::NonOddPrime));
static_assert(FFLAB_E_UNSUPPORTED == int(fflab::ErrorCode::Unsupported));

namespace {

thread_local std::string g_last_error;

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

template <class Fn>
fflab_status guard(Fn&& fn) {
  g_last_error.clear();
  try {
    return fn();
  } catch (const fflab::Error& e) {
    g_last_error = e.what();
    return static_cast<fflab_status>(static_cast<int>(e.code()));
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return FFLAB_E_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return FFLAB_E_INTERNAL;
  }
}

fflab_status need(const void* p, const char* what) {
  if (p) return FFLAB_OK;
  g_last_error = std::string(what) + " is null";
  return FFLAB_E_INVALID_ARGUMENT;
}

}  // namespace

extern "C" {

const char* fflab_version(void) { return "0.1.0"; }

const char* fflab_status_name(fflab_status s) {
  switch (s) {
    case FFLAB_OK: return "Ok";
    case FFLAB_E_VERIFICATION: return "VerificationFailed";
    case FFLAB_E_INTERNAL: return "Internal";
    default: break;
  }
  const int v = static_cast<int>(s);
  if (v >= 1 && v <= static_cast<int>(fflab::ErrorCode::Unsupported))
    return fflab::error_name(static_cast<fflab::ErrorCode>(v));
  return "Unknown";
}

const char* fflab_last_error(void) { return g_last_error.c_str(); }

void fflab_string_free(char* s) { std::free(s); }

fflab_status fflab_field_new(uint32_t q, fflab_field** out) {
  if (auto s = need(out, "out")) return s;
  *out = nullptr;
  return guard([&] {
    *out = new fflab_field{fflab::FieldCtx::from_order(q)};
    return FFLAB_OK;
  });
}

void fflab_field_free(fflab_field* f) { delete f; }

uint32_t fflab_field_order(const fflab_field* f) { return f ? f->ctx.q() : 0; }

fflab_status fflab_cache_open(const char* dir, fflab_cache** out) {
  if (auto s = need(out, "out")) return s;
  *out = nullptr;
  return guard([&] {
    *out = new fflab_cache{dir ? fflab::SweepCache(dir) : fflab::SweepCache::from_env()};
    return FFLAB_OK;
  });
}

void fflab_cache_free(fflab_cache* c) { delete c; }

fflab_status fflab_lfun(const fflab_field* f, const char* D, const char* method, char** json_out) {
  if (auto s = need(f, "field")) return s;
  if (auto s = need(D, "D")) return s;
  if (auto s = need(json_out, "json_out")) return s;
  *json_out = nullptr;
  return guard([&] {
    auto P = fflab::parse_poly(f->ctx, D);
    auto r = fflab::lfun_report(f->ctx, P, method ? method : "auto");
    *json_out = dup(r.json);
    if (!r.verified) {
      g_last_error = "L-function verification failed";
      return FFLAB_E_VERIFICATION;
    }
    return FFLAB_OK;
  });
}

fflab_status fflab_sweep(const fflab_field* f, const fflab_cache* c, int n, int workers, char** json_out) {
  if (auto s = need(f, "field")) return s;
  if (auto s = need(c, "cache")) return s;
  if (auto s = need(json_out, "json_out")) return s;
  *json_out = nullptr;
  return guard([&] {
    bool computed = false;
    auto b = c->cache.ensure(f->ctx, n, workers, &computed);
    nlohmann::json j = {{"q", b.q},
                        {"n", b.n},
                        {"count", b.records.size()},
                        {"digest", b.digest},
                        {"computed", computed},
                        {"path", c->cache.records_path(b.q, b.n).string()}};
    *json_out = dup(j.dump(2));
    return FFLAB_OK;
  });
}

fflab_status fflab_moments_csv(const fflab_field* f, const fflab_cache* c, int n_lo, int n_hi, int r_lo, int r_hi,
                               double tol, int workers, char** csv_out) {
  if (auto s = need(f, "field")) return s;
  if (auto s = need(c, "cache")) return s;
  if (auto s = need(csv_out, "csv_out")) return s;
  *csv_out = nullptr;
  return guard([&] {
    auto rows = fflab::moment_table(f->ctx, c->cache, n_lo, n_hi, r_lo, r_hi, tol, workers);
    *csv_out = dup(fflab::moments_csv(rows));
    return FFLAB_OK;
  });
}

fflab_status fflab_model_csv(uint32_t q, int cutoff, uint64_t seed, uint64_t samples, int r_max, int workers,
                             double y_min, double y_max, int steps, double U, double h, char** moments_csv_out,
                             char** density_csv_out) {
  if (auto s = need(moments_csv_out, "moments_csv_out")) return s;
  *moments_csv_out = nullptr;
  if (density_csv_out) *density_csv_out = nullptr;
  return guard([&] {
    fflab::FieldCtx::from_order(q);  // validates q
    fflab::RandomModel M(q, cutoff, seed);
    auto rows = fflab::model_table(M, r_max, samples, workers);
    std::string dens;
    if (steps > 0 && density_csv_out) dens = fflab::density_csv(fflab::density_cdf(M, y_min, y_max, steps, U, h));
    *moments_csv_out = dup(fflab::model_csv(M, rows, samples));
    if (steps > 0 && density_csv_out) *density_csv_out = dup(dens);
    return FFLAB_OK;
  });
}

fflab_status fflab_discrepancy_csv(const fflab_field* f, const fflab_cache* c, int n_lo, int n_hi, int cutoff,
                                   uint64_t seed, int workers, char** csv_out) {
  if (auto s = need(f, "field")) return s;
  if (auto s = need(c, "cache")) return s;
  if (auto s = need(csv_out, "csv_out")) return s;
  *csv_out = nullptr;
  return guard([&] {
    auto rows = fflab::discrepancy_table(f->ctx, c->cache, n_lo, n_hi, cutoff, seed, workers);
    *csv_out = dup(fflab::discrepancy_csv(rows));
    return FFLAB_OK;
  });
}

fflab_status fflab_histogram_csv(const fflab_field* f, const fflab_cache* c, int n, double bin_width, int workers,
                                 char** csv_out) {
  if (auto s = need(f, "field")) return s;
  if (auto s = need(c, "cache")) return s;
  if (auto s = need(csv_out, "csv_out")) return s;
  *csv_out = nullptr;
  return guard([&] {
    auto e = fflab::empirical_cdf(c->cache.ensure(f->ctx, n, workers));
    *csv_out = dup(fflab::histogram_csv(e, bin_width));
    return FFLAB_OK;
  });
}

fflab_status fflab_omega_csv(const fflab_field* f, const fflab_cache* c, int n, int m, int omega, int workers,
                             char** summary_csv_out, char** members_csv_out) {
  if (auto s = need(f, "field")) return s;
  if (auto s = need(c, "cache")) return s;
  if (auto s = need(summary_csv_out, "summary_csv_out")) return s;
  *summary_csv_out = nullptr;
  if (members_csv_out) *members_csv_out = nullptr;
  return guard([&] {
    auto b = c->cache.ensure(f->ctx, n, workers);
    auto R = fflab::extreme_search(f->ctx, n, m, omega, b, 0.05, workers);
    std::string members = members_csv_out ? fflab::omega_members_csv(f->ctx, R) : std::string();
    *summary_csv_out = dup(fflab::omega_csv(R, n, m));
    if (members_csv_out) *members_csv_out = dup(members);
    return FFLAB_OK;
  });
}

fflab_status fflab_heights_csv(const fflab_field* f, const fflab_cache* c, int n, double eps, int workers,
                               char** csv_out) {
  if (auto s = need(f, "field")) return s;
  if (auto s = need(c, "cache")) return s;
  if (auto s = need(csv_out, "csv_out")) return s;
  *csv_out = nullptr;
  return guard([&] {
    if (n % 2 == 0) throw fflab::Error(fflab::ErrorCode::EvenDegree, "heights need n odd");
    auto rows = fflab::corollary13_table(f->ctx, c->cache.ensure(f->ctx, n, workers), eps);
    *csv_out = dup(fflab::heights_csv(f->ctx, n, rows));
    return FFLAB_OK;
  });
}

fflab_status fflab_verify(const char* level, int workers, char** json_out) {
  if (auto s = need(json_out, "json_out")) return s;
  *json_out = nullptr;
  return guard([&] {
    const std::string lv = level ? level : "fast";
    auto res = fflab::run_verify(lv, workers);
    *json_out = dup(fflab::verify_json(lv, res));
    for (auto& r : res)
      if (!r.ok) {
        g_last_error = "check failed: " + r.name;
        return FFLAB_E_VERIFICATION;
      }
    return FFLAB_OK;
  });
}

}  // extern "C"
