#include "fflab/randmodel.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "fflab/errors.hpp"
#include "fflab/field.hpp"

namespace fflab {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t model_draw(std::uint64_t seed, std::uint64_t sample, std::uint64_t prime_index) {
  const std::uint64_t key = splitmix64(seed ^ splitmix64(sample));
  return splitmix64(key + (prime_index + 1) * 0x9E3779B97F4A7C15ull) >> 11;
}

namespace {

using u128 = unsigned __int128;

int value_u64(std::uint64_t u, std::uint64_t N) {
  // u / 2^53 against N/(2(N+1)) and (N+2)/(2(N+1))
  const u128 lhs = u128(u) * (2 * u128(N) + 2);
  if (lhs < u128(N) << 53) return -1;
  if (lhs < (u128(N) + 2) << 53) return 0;
  return 1;
}

}  // namespace

int model_value(std::uint64_t u53, const mpz_class& N) {
  if (!N.fits_ulong_p()) fail(ErrorCode::Unsupported, "norm too large for the sampler");
  return value_u64(u53, N.get_ui());
}

RandomModel::RandomModel(std::uint32_t q, int cutoff, std::uint64_t seed) : q_(q), cutoff_(cutoff), seed_(seed) {
  if (cutoff < 1) fail(ErrorCode::InvalidArgument, "cutoff must be >= 1");
  if (std::pow(double(q), cutoff) > 1e18) fail(ErrorCode::Unsupported, "cutoff too large for this q");
  pi_.assign(std::size_t(cutoff) + 1, 0);
  N_.assign(std::size_t(cutoff) + 1, 0);
  off_.assign(std::size_t(cutoff) + 2, 0);
  for (int d = 1; d <= cutoff; ++d) {
    pi_[d] = prime_count(q, d);
    mpz_ui_pow_ui(N_[d].get_mpz_t(), q, unsigned(d));
    off_[d + 1] = off_[d] + pi_[d].get_ui();
  }
  // certified bound on the variance of the neglected primes, real units
  const double lq = std::log(double(q));
  double var = 0;
  for (int d = cutoff + 1; d <= cutoff + 200; ++d) {
    const double N = std::pow(double(q), d);
    const double pc = prime_count(q, d).get_d();
    const double a = d * lq;
    const double t = pc * N / (2 * (N + 1)) * a * a * (1 / ((N - 1) * (N - 1)) + 1 / ((N + 1) * (N + 1)));
    var += t;
    if (t < 1e-20 * var) break;
  }
  tail_sd_ = std::sqrt(var);
}

int RandomModel::draw(std::uint64_t sample, std::uint64_t prime_index) const {
  int d = 1;
  while (d <= cutoff_ && prime_index >= off_[d + 1]) ++d;
  if (d > cutoff_) fail(ErrorCode::InvalidArgument, "prime index beyond cutoff");
  return value_u64(model_draw(seed_, sample, prime_index), N_[d].get_ui());
}

mpq_class RandomModel::sample_series(std::uint64_t sample) const {
  const std::uint64_t key = splitmix64(seed_ ^ splitmix64(sample));
  mpq_class s = 0;
  for (int d = 1; d <= cutoff_; ++d) {
    const std::uint64_t N = N_[d].get_ui();
    long plus = 0, minus = 0;
    for (std::uint64_t j = off_[d]; j < off_[d + 1]; ++j) {
      const std::uint64_t u = splitmix64(key + (j + 1) * 0x9E3779B97F4A7C15ull) >> 11;
      const int x = value_u64(u, N);
      plus += x > 0;
      minus += x < 0;
    }
    s += make_rat(d * plus, N - 1) - make_rat(d * minus, N + 1);
  }
  s.canonicalize();
  return s;
}

mpq_class RandomModel::forced_series(int x) const {
  if (x < -1 || x > 1) fail(ErrorCode::InvalidArgument, "forced value must be -1, 0 or 1");
  mpq_class s = 0;
  for (int d = 1; d <= cutoff_; ++d) s += mpq_class(pi_[d] * d * x) / mpq_class(N_[d] - x);
  s.canonicalize();
  return s;
}

std::vector<double> RandomModel::samples(std::uint64_t count, int workers) const {
  std::vector<double> out(count);
  const int nt = std::max(1, workers);
  auto work = [&](int t) {
    for (std::uint64_t i = std::uint64_t(t); i < count; i += std::uint64_t(nt)) out[i] = sample_series(i).get_d();
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < nt; ++t) pool.emplace_back(work, t);
  work(0);
  for (auto& th : pool) th.join();
  return out;
}

RandomModel::Estimate RandomModel::mc_moment(int r, std::uint64_t samples_n, int workers) const {
  if (r < 1) fail(ErrorCode::InvalidArgument, "r must be >= 1");
  if (samples_n < 100) fail(ErrorCode::InvalidArgument, "need at least 100 samples");
  auto xs = samples(samples_n, workers);
  double s = 0, s2 = 0;
  for (double x : xs) {
    const double v = std::pow(x, r);
    s += v;
    s2 += v * v;
  }
  const double n = double(samples_n);
  Estimate e;
  e.mean = s / n;
  const double var = std::max(0.0, (s2 - n * e.mean * e.mean) / (n - 1));
  e.se = std::sqrt(var / n);
  return e;
}

double RandomModel::laplace(double s) const {
  if (s == 0) return 1.0;
  const double lq = std::log(double(q_));
  double acc = 0;
  for (int d = 1; d <= cutoff_; ++d) {
    const double N = N_[d].get_d(), a = d * lq;
    const double f = 1 / (N + 1) + N / (2 * (N + 1)) * (std::exp(-s * a / (N + 1)) + std::exp(s * a / (N - 1)));
    acc += pi_[d].get_d() * std::log(f);
  }
  return std::exp(acc);
}

namespace {

std::complex<double> euler_factor(double N, double a, double u) {
  const std::complex<double> i(0, 1);
  return 1 / (N + 1) + N / (2 * (N + 1)) * (std::exp(-i * u * a / (N + 1)) + std::exp(i * u * a / (N - 1)));
}

}  // namespace

std::complex<double> RandomModel::char_function(double u) const {
  if (u == 0) return 1.0;
  const double lq = std::log(double(q_));
  std::complex<double> lg = 0;
  for (int d = 1; d <= cutoff_; ++d) {
    auto m = euler_factor(N_[d].get_d(), d * lq, u);
    if (std::abs(m) == 0) return 0.0;
    lg += pi_[d].get_d() * std::log(m);
  }
  return std::exp(lg);
}

double RandomModel::log_abs_char_function(double u) const {
  const double lq = std::log(double(q_));
  double lg = 0;
  for (int d = 1; d <= cutoff_; ++d)
    lg += pi_[d].get_d() * std::log(std::abs(euler_factor(N_[d].get_d(), d * lq, u)));
  return lg;
}

double DensityGrid::cdf_at(double x) const {
  if (y.empty()) return 0;
  if (x <= y.front()) return cdf.front();
  if (x >= y.back()) return cdf.back();
  const double step = (y.back() - y.front()) / double(y.size() - 1);
  std::size_t i = std::min(y.size() - 2, std::size_t((x - y.front()) / step));
  const double t = (x - y[i]) / (y[i + 1] - y[i]);
  return cdf[i] + t * (cdf[i + 1] - cdf[i]);
}

double DensityGrid::mean() const {
  double m = 0;
  for (std::size_t i = 1; i < y.size(); ++i)
    m += 0.5 * (y[i] - y[i - 1]) * (y[i] * density[i] + y[i - 1] * density[i - 1]);
  return m / mass;
}

DensityGrid density_cdf(const RandomModel& M, double y_min, double y_max, int steps, double U, double h) {
  if (!(y_max > y_min) || steps < 2) fail(ErrorCode::InvalidArgument, "bad y grid");
  const double ymax_abs = std::max(std::fabs(y_min), std::fabs(y_max));
  const double log_floor = std::log(1e-8);
  if (U <= 0) {
    const double U_max = 5000;
    for (U = 1; U <= U_max; U += 0.5)
      if (M.log_abs_char_function(U) < log_floor && M.log_abs_char_function(1.5 * U) < log_floor) break;
    if (U > U_max) fail(ErrorCode::InsufficientDecay, "|Phi| does not fall below 1e-8 before U = 5000");
  } else if (M.log_abs_char_function(U) >= log_floor) {
    fail(ErrorCode::InsufficientDecay, "|Phi(U)| >= 1e-8");
  }
  const double nyquist = M_PI / (ymax_abs + 1);
  if (h <= 0) h = std::min(0.02, nyquist / 4);
  if (h > nyquist) fail(ErrorCode::InvalidArgument, "h exceeds pi/(|y|max + 1)");
  int m = int(std::ceil(U / h));
  if (m % 2) ++m;
  const double hh = U / m;
  // Simpson over [0, U]; the negative half is the conjugate
  std::vector<std::complex<double>> w(std::size_t(m) + 1);
  for (int k = 0; k <= m; ++k) {
    const double c = (k == 0 || k == m) ? 1 : (k % 2 ? 4 : 2);
    w[k] = c * hh / 3 * M.char_function(k * hh);
  }
  DensityGrid g;
  g.U = U;
  g.h = hh;
  g.cutoff = M.cutoff();
  g.seed = M.seed();
  g.y.resize(std::size_t(steps) + 1);
  g.density.resize(g.y.size());
  g.cdf.resize(g.y.size());
  for (int i = 0; i <= steps; ++i) {
    const double y = y_min + (y_max - y_min) * i / steps;
    double s = 0;
    for (int k = 0; k <= m; ++k) {
      const double ang = -y * k * hh;
      s += w[k].real() * std::cos(ang) - w[k].imag() * std::sin(ang);
    }
    g.y[i] = y;
    g.density[i] = s / M_PI;
  }
  g.cdf[0] = 0;
  for (std::size_t i = 1; i < g.y.size(); ++i)
    g.cdf[i] = g.cdf[i - 1] + 0.5 * (g.y[i] - g.y[i - 1]) * (g.density[i] + g.density[i - 1]);
  g.mass = g.cdf.back();
  if (std::fabs(g.mass - 1) >= 1e-4) fail(ErrorCode::MassDefect, "density integrates to " + std::to_string(g.mass));
  for (auto& c : g.cdf) c /= g.mass;
  return g;
}

DecayReport decay_check(const RandomModel& M, const std::vector<double>& u_grid, double eps) {
  if (!(eps > 0 && eps < 1)) fail(ErrorCode::DomainError, "eps must lie in (0,1)");
  DecayReport r;
  r.C = INFINITY;
  for (double u : u_grid) {
    if (u == 0) fail(ErrorCode::InvalidArgument, "u = 0 is excluded");
    const double v = -M.log_abs_char_function(u) / std::pow(std::fabs(u), 1 - eps);
    r.ratio.push_back(v);
    r.C = std::min(r.C, v);
  }
  r.ok = !u_grid.empty() && r.C > 0;
  return r;
}

}  // namespace fflab
