// fflab command line front end. Talks to the library through the C API only.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>

#include "CLI11.hpp"
#include "fflab/fflab.h"

namespace {

constexpr int kOk = 0, kInputError = 1, kVerifyFailed = 2;

struct Opts {
  unsigned q = 3;
  std::string D;
  std::string method = "auto";
  std::optional<int> n;
  std::string n_range;
  std::string r_range = "1:2";
  int m = 1;
  int omega = 1;
  int cutoff = 8;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 12345;
  double U = 0, h = 0;
  std::string y_range = "-6:8";
  int steps = 2000;
  int workers = 1;
  std::string out;
  std::string cache;
  std::string level = "fast";
  double eps = 0.05;
  double tol = 1e-10;
  double bin_width = 0;
};

std::pair<int, int> int_range(const std::string& s, const std::optional<int>& single, const char* what) {
  if (s.empty()) {
    if (!single) throw CLI::ValidationError(what, "give --n or --n-range");
    return {*single, *single};
  }
  const auto c = s.find(':');
  try {
    if (c == std::string::npos) return {std::stoi(s), std::stoi(s)};
    return {std::stoi(s.substr(0, c)), std::stoi(s.substr(c + 1))};
  } catch (const std::exception&) {
    throw CLI::ValidationError(what, "expected a:b, got '" + s + "'");
  }
}

std::pair<double, double> real_range(const std::string& s) {
  const auto c = s.find(':', 1);
  if (c == std::string::npos) throw CLI::ValidationError("--y-range", "expected lo:hi");
  try {
    return {std::stod(s.substr(0, c)), std::stod(s.substr(c + 1))};
  } catch (const std::exception&) {
    throw CLI::ValidationError("--y-range", "expected lo:hi, got '" + s + "'");
  }
}

// owns a string returned by the C API
struct CStr {
  char* p = nullptr;
  ~CStr() { fflab_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

class Emitter {
 public:
  explicit Emitter(std::string dir) : dir_(std::move(dir)) {
    if (!dir_.empty()) std::filesystem::create_directories(dir_);
  }
  void emit(const std::string& name, const std::string& body) const {
    if (dir_.empty()) {
      std::cout << body;
      if (!body.empty() && body.back() != '\n') std::cout << '\n';
      return;
    }
    const auto path = std::filesystem::path(dir_) / name;
    std::ofstream f(path, std::ios::binary);
    f << body;
    if (!f) throw std::runtime_error("cannot write " + path.string());
    std::cerr << "wrote " << path.string() << '\n';
  }

 private:
  std::string dir_;
};

int report(fflab_status s) {
  if (s == FFLAB_OK) return kOk;
  std::cerr << "fflab: " << fflab_status_name(s) << ": " << fflab_last_error() << '\n';
  return s == FFLAB_E_VERIFICATION ? kVerifyFailed : kInputError;
}

struct Handles {
  fflab_field* field = nullptr;
  fflab_cache* cache = nullptr;
  ~Handles() {
    fflab_field_free(field);
    fflab_cache_free(cache);
  }
};

fflab_status open_handles(const Opts& o, Handles& h) {
  if (auto s = fflab_field_new(o.q, &h.field)) return s;
  return fflab_cache_open(o.cache.empty() ? nullptr : o.cache.c_str(), &h.cache);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fflab: quadratic L-function experiments over F_q[t]"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "flat key=value file; flags override it");
  Opts o;
  app.add_option("--q", o.q, "field order, an odd prime power");
  app.add_option("--D", o.D, "coefficients of D, constant term first, e.g. 1,0,1");
  app.add_option("--method", o.method, "auto, direct, pointcount or euler");
  app.add_option("--n", o.n, "degree");
  app.add_option("--n-range", o.n_range, "degrees a:b");
  app.add_option("--r-range", o.r_range, "moment orders a:b");
  app.add_option("--m", o.m, "degree bound of the prescribed primes");
  app.add_option("--omega", o.omega, "+1 or -1")->check(CLI::IsMember({-1, 1}));
  app.add_option("--cutoff", o.cutoff, "random model cutoff degree");
  app.add_option("--samples", o.samples, "Monte Carlo samples");
  app.add_option("--seed", o.seed, "random model seed");
  app.add_option("--U", o.U, "frequency cutoff for inversion (0 = auto)");
  app.add_option("--freq-step", o.h, "frequency step for inversion (0 = auto)");
  app.add_option("--y-range", o.y_range, "density grid lo:hi");
  app.add_option("--steps", o.steps, "density grid intervals");
  app.add_option("--workers", o.workers, "worker threads")->check(CLI::Range(1, 256));
  app.add_option("--out", o.out, "output directory (default: stdout)");
  app.add_option("--cache", o.cache, "cache directory (default: $FFLAB_CACHE_DIR or ./fflab_cache)");
  app.add_option("--level", o.level, "verify level")->check(CLI::IsMember({"fast", "full"}));
  app.add_option("--eps", o.eps, "epsilon in the extreme-value and height thresholds");
  app.add_option("--tol", o.tol, "main term tail tolerance");
  app.add_option("--bin-width", o.bin_width, "also write histograms with this bin width");

  auto* lfun = app.add_subcommand("lfun", "single-D report: L-polynomial, lambda, gamma_D, checks");
  auto* sweep = app.add_subcommand("sweep", "populate the cache for H_n");
  auto* moments = app.add_subcommand("moments", "empirical moments against the model main term");
  auto* model = app.add_subcommand("model", "random model: Monte Carlo moments and density");
  auto* disc = app.add_subcommand("discrepancy", "distance between F_n and F_rand, small values");
  auto* omega = app.add_subcommand("omega", "prescribed-symbol prime sets and extremes");
  auto* heights = app.add_subcommand("heights", "Taguchi heights and the Weil-height bounds, n odd");
  auto* verify = app.add_subcommand("verify", "run the invariant suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInputError;
  }

  try {
    Emitter out(o.out);
    Handles h;
    if (*lfun) {
      if (o.D.empty()) throw CLI::RequiredError("--D");
      if (auto s = fflab_field_new(o.q, &h.field)) return report(s);
      CStr js;
      const auto s = fflab_lfun(h.field, o.D.c_str(), o.method.c_str(), &js.p);
      if (js.p) out.emit("lfun.json", js.str());
      return report(s);
    }
    if (*verify) {
      CStr js;
      const auto s = fflab_verify(o.level.c_str(), o.workers, &js.p);
      if (js.p) out.emit("verify.json", js.str());
      return report(s);
    }
    if (*model) {
      const auto [lo, hi] = real_range(o.y_range);
      const auto [r_lo, r_hi] = int_range(o.r_range, std::nullopt, "--r-range");
      (void)r_lo;
      CStr mc, dens;
      const auto s = fflab_model_csv(o.q, o.cutoff, o.seed, o.samples, r_hi, o.workers, lo, hi, o.steps, o.U, o.h,
                                     &mc.p, &dens.p);
      if (s) return report(s);
      out.emit("model_moments.csv", mc.str());
      if (dens.p) out.emit("density.csv", dens.str());
      return kOk;
    }
    if (auto s = open_handles(o, h)) return report(s);
    if (*sweep) {
      const auto [a, b] = int_range(o.n_range, o.n, "--n");
      for (int n = a; n <= b; ++n) {
        CStr js;
        if (auto s = fflab_sweep(h.field, h.cache, n, o.workers, &js.p)) return report(s);
        out.emit("sweep_n" + std::to_string(n) + ".json", js.str());
      }
      return kOk;
    }
    if (*moments) {
      const auto [a, b] = int_range(o.n_range, o.n, "--n");
      const auto [r_lo, r_hi] = int_range(o.r_range, std::nullopt, "--r-range");
      CStr csv;
      if (auto s = fflab_moments_csv(h.field, h.cache, a, b, r_lo, r_hi, o.tol, o.workers, &csv.p)) return report(s);
      out.emit("moments.csv", csv.str());
      return kOk;
    }
    if (*disc) {
      const auto [a, b] = int_range(o.n_range, o.n, "--n");
      CStr csv;
      if (auto s = fflab_discrepancy_csv(h.field, h.cache, a, b, o.cutoff, o.seed, o.workers, &csv.p))
        return report(s);
      out.emit("discrepancy.csv", csv.str());
      if (o.bin_width > 0)
        for (int n = a; n <= b; ++n) {
          CStr hist;
          if (auto s = fflab_histogram_csv(h.field, h.cache, n, o.bin_width, o.workers, &hist.p)) return report(s);
          out.emit("histogram_n" + std::to_string(n) + ".csv", hist.str());
        }
      return kOk;
    }
    if (*omega) {
      if (!o.n) throw CLI::RequiredError("--n");
      CStr sum, mem;
      if (auto s = fflab_omega_csv(h.field, h.cache, *o.n, o.m, o.omega, o.workers, &sum.p, &mem.p)) return report(s);
      out.emit("omega.csv", sum.str());
      out.emit("omega_members.csv", mem.str());
      return kOk;
    }
    if (*heights) {
      if (!o.n) throw CLI::RequiredError("--n");
      CStr csv;
      if (auto s = fflab_heights_csv(h.field, h.cache, *o.n, o.eps, o.workers, &csv.p)) return report(s);
      out.emit("heights.csv", csv.str());
      return kOk;
    }
  } catch (const CLI::Error& e) {
    std::cerr << "fflab: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "fflab: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
