#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

namespace fflab {

// Counter-based SplitMix64 stream. The draw for (sample, prime) is a pure function
// of (seed, sample, prime), so any partition of the samples gives the same values.
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t model_draw(std::uint64_t seed, std::uint64_t sample, std::uint64_t prime_index);
// inverse-CDF rule on the top 53 bits: -1, 0 or +1
int model_value(std::uint64_t u53, const mpz_class& N);

class RandomModel {
 public:
  RandomModel(std::uint32_t q, int cutoff, std::uint64_t seed);

  std::uint32_t q() const { return q_; }
  int cutoff() const { return cutoff_; }
  std::uint64_t seed() const { return seed_; }
  // pi_q(d), d = 1..cutoff (index 0 unused)
  const std::vector<mpz_class>& prime_counts() const { return pi_; }
  // primes of degree d occupy [offset(d), offset(d) + pi(d)) in the global order
  std::uint64_t offset(int d) const { return off_[d]; }
  std::uint64_t prime_total() const { return off_[cutoff_ + 1]; }
  double tail_sd() const { return tail_sd_; }

  int draw(std::uint64_t sample, std::uint64_t prime_index) const;
  // sum_P d_P X_P / (q^{d_P} - X_P) for one sample, log q units
  mpq_class sample_series(std::uint64_t sample) const;
  // every X_P forced to x
  mpq_class forced_series(int x) const;

  struct Estimate {
    double mean = 0, se = 0;
  };
  // E[Z^r] with Z in log q units
  Estimate mc_moment(int r, std::uint64_t samples, int workers = 1) const;
  // the samples themselves, log q units, index order
  std::vector<double> samples(std::uint64_t count, int workers = 1) const;

  // E exp(s Z) with Z in real units (times log q)
  double laplace(double s) const;
  std::complex<double> char_function(double u) const;
  // log |Phi(u)|, safe against underflow
  double log_abs_char_function(double u) const;

 private:
  std::uint32_t q_;
  int cutoff_;
  std::uint64_t seed_;
  std::vector<mpz_class> pi_;
  std::vector<std::uint64_t> off_;
  std::vector<mpz_class> N_;
  double tail_sd_ = 0;
};

struct DensityGrid {
  std::vector<double> y, density, cdf;
  double U = 0, h = 0;
  int cutoff = 0;
  std::uint64_t seed = 0;
  double mass = 0;  // integral of the density before renormalization

  double cdf_at(double x) const;  // linear interpolation, clamped
  double mean() const;
};

// U <= 0 selects the frequency cutoff automatically
DensityGrid density_cdf(const RandomModel& M, double y_min, double y_max, int steps, double U, double h);

struct DecayReport {
  double C = 0;
  std::vector<double> ratio;  // -log|Phi(u)| / u^{1-eps}
  bool ok = false;
};
DecayReport decay_check(const RandomModel& M, const std::vector<double>& u_grid, double eps);

}  // namespace fflab
