#include <cmath>

#include "doctest.h"
#include "fflab/errors.hpp"
#include "fflab/field.hpp"
#include "fflab/moments.hpp"
#include "fflab/randmodel.hpp"

using namespace fflab;

TEST_CASE("model_value thresholds") {
  // N = 3: P(-1) = 3/8, P(0) = 1/4, P(1) = 3/8
  const std::uint64_t two53 = std::uint64_t(1) << 53;
  const mpz_class N = 3;
  CHECK(model_value(0, N) == -1);
  CHECK(model_value(two53 * 3 / 8 - 1, N) == -1);
  CHECK(model_value(two53 * 3 / 8, N) == 0);
  CHECK(model_value(two53 * 5 / 8 - 1, N) == 0);
  CHECK(model_value(two53 * 5 / 8, N) == 1);
  CHECK(model_value(two53 - 1, N) == 1);
}

TEST_CASE("draw frequencies") {
  RandomModel M(3, 2, 99);
  // prime 0 has degree 1 (N = 3)
  int cnt[3] = {0, 0, 0};
  const int S = 40000;
  for (int s = 0; s < S; ++s) cnt[M.draw(s, 0) + 1]++;
  const double p[3] = {3.0 / 8, 1.0 / 4, 3.0 / 8};
  for (int k = 0; k < 3; ++k) CHECK(std::fabs(cnt[k] / double(S) - p[k]) < 5 * std::sqrt(p[k] * (1 - p[k]) / S));
  CHECK(M.prime_total() == 3 + 3);
  CHECK(M.offset(2) == 3);
}

TEST_CASE("sample_series is the sum over per-prime draws") {
  RandomModel M(3, 4, 5);
  auto& pi = M.prime_counts();
  for (std::uint64_t s = 0; s < 20; ++s) {
    mpq_class ref = 0;
    for (int d = 1; d <= 4; ++d) {
      mpz_class N;
      mpz_ui_pow_ui(N.get_mpz_t(), 3, d);
      for (std::uint64_t j = M.offset(d); j < M.offset(d) + pi[d].get_ui(); ++j) {
        const int x = M.draw(s, j);
        ref += make_rat(mpz_class(d * x), N - x);
      }
    }
    CHECK(M.sample_series(s) == ref);
  }
  CHECK(M.forced_series(0) == 0);
  // all +1 at cutoff 1: 3 * 1/(3-1)
  CHECK(RandomModel(3, 1, 0).forced_series(1) == mpq_class(3, 2));
}

TEST_CASE("samples independent of worker count") {
  RandomModel M(3, 6, 12345);
  auto a = M.samples(500, 1), b = M.samples(500, 3);
  CHECK(a == b);
  auto e1 = M.mc_moment(2, 500, 1), e2 = M.mc_moment(2, 500, 4);
  CHECK(e1.mean == e2.mean);
  CHECK(e1.se == e2.se);
}

TEST_CASE("Laplace and characteristic function") {
  RandomModel M(3, 8, 1);
  CHECK(M.laplace(0) == 1.0);
  CHECK(M.char_function(0) == std::complex<double>(1.0));
  // exact E Z and E Z^2 from independence of the X_P, log q units
  mpq_class mean = 0, var = 0;
  for (int d = 1; d <= 8; ++d) {
    mpz_class N;
    mpz_ui_pow_ui(N.get_mpz_t(), 3, d);
    const mpq_class p = make_rat(N, 2 * (N + 1));
    const mpq_class a = make_rat(mpz_class(d), N - 1), b = make_rat(mpz_class(d), N + 1);
    const mpq_class mu = p * (a - b), m2 = p * (a * a + b * b);
    mean += M.prime_counts()[d] * mu;
    var += M.prime_counts()[d] * (m2 - mu * mu);
  }
  const double lq = std::log(3.0);
  const double h = 1e-5;
  const double deriv = (M.laplace(h) - M.laplace(-h)) / (2 * h);
  CHECK(deriv == doctest::Approx(mean.get_d() * lq).epsilon(1e-8));
  const double h2 = 1e-3;
  const double second = (M.laplace(h2) - 2 + M.laplace(-h2)) / (h2 * h2);
  CHECK(second == doctest::Approx(mpq_class(var + mean * mean).get_d() * lq * lq).epsilon(1e-5));
  // Phi(u) = E e^{iuZ}, against the MC average
  auto xs = M.samples(20000, 1);
  for (double u : {0.3, 1.0, 2.5}) {
    std::complex<double> mc = 0;
    for (double x : xs) mc += std::exp(std::complex<double>(0, u * x * std::log(3.0)));
    mc /= double(xs.size());
    CHECK(std::abs(mc - M.char_function(u)) < 0.03);
    CHECK(std::log(std::abs(M.char_function(u))) == doctest::Approx(M.log_abs_char_function(u)));
  }
}

TEST_CASE("density grid") {
  RandomModel M(3, 8, 12345);
  auto g = density_cdf(M, -6, 8, 2000, 0, 0);
  CHECK(std::fabs(g.mass - 1) < 1e-4);
  CHECK(g.cdf.front() == 0);
  CHECK(g.cdf.back() == doctest::Approx(1.0));
  for (std::size_t i = 0; i < g.y.size(); ++i)
    if (g.y[i] >= -3 && g.y[i] <= 3) CHECK(g.density[i] > 0);
  CHECK(g.mean() == doctest::Approx(model_main_term(3, 1, 8).value.get_d() * std::log(3.0)).epsilon(1e-3));
  CHECK_THROWS_AS(density_cdf(M, -6, 8, 100, 0.5, 0), Error);
  try {
    density_cdf(M, -1, 1, 200, 0, 0);
    FAIL("expected MassDefect");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MassDefect);
  }
}

TEST_CASE("decay check") {
  RandomModel M(3, 10, 0);
  std::vector<double> us;
  for (double u = 20; u <= 200; u += 5) us.push_back(u);
  auto r = decay_check(M, us, 0.1);
  CHECK(r.ok);
  CHECK(r.C > 0);
  CHECK(r.ratio.size() == us.size());
  CHECK_THROWS_AS(decay_check(M, {0.0}, 0.1), Error);
}
