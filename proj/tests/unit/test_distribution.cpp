#include <cmath>
#include <filesystem>
#include <random>

#include "doctest.h"
#include "fflab/distribution.hpp"
#include "fflab/errors.hpp"
#include "fflab/moments.hpp"

using namespace fflab;

namespace {

// sup over a dense probe set, including points just left of every jump
double brute_sup(const EmpiricalCDF& A, const EmpiricalCDF& B) {
  std::vector<double> probes;
  for (auto* v : {&A.values, &B.values})
    for (double x : *v) {
      probes.push_back(x);
      probes.push_back(std::nextafter(x, -INFINITY));
    }
  double s = 0;
  for (double x : probes) {
    auto cnt = [x](const EmpiricalCDF& F) {
      std::size_t c = 0;
      for (double v : F.values) c += v <= x;
      return double(c) / double(F.values.size());
    };
    s = std::max(s, std::fabs(cnt(A) - cnt(B)));
  }
  return s;
}

Block block_for(const FieldCtx& F, int n) {
  auto dir = std::filesystem::temp_directory_path() / "fflab_test_dist";
  return SweepCache(dir).ensure(F, n, 1);
}

}  // namespace

TEST_CASE("empirical cdf basics") {
  auto F = FieldCtx::make(3, 1);
  auto e1 = empirical_cdf(block_for(F, 1));
  CHECK(e1.count() == 3);
  CHECK(e1(-1e-12) == 0);
  CHECK(e1(0) == 1);
  CHECK(e1.left_limit(0) == 0);
  auto b6 = block_for(F, 6);
  auto e6 = empirical_cdf(b6);
  CHECK(e6.count() == 486);
  CHECK(e6(1e9) == 1);
  CHECK(e6(-1e9) == 0);
  CHECK(e6.mean() == doctest::Approx(empirical_moment(b6.lambdas(), 1).get_d() * std::log(3.0)).epsilon(1e-12));
  CHECK(std::is_sorted(e6.values.begin(), e6.values.end()));
}

TEST_CASE("discrepancy between step functions") {
  auto F = FieldCtx::make(3, 1);
  auto a = empirical_cdf(block_for(F, 4)), b = empirical_cdf(block_for(F, 5));
  CHECK(discrepancy(a, a) == 0);
  CHECK(discrepancy(a, b) == discrepancy(b, a));
  CHECK(discrepancy(a, b) == doctest::Approx(brute_sup(a, b)).epsilon(1e-15));
  EmpiricalCDF x, y;
  x.values = {0, 1};
  y.values = {2};
  CHECK(discrepancy(x, y) == 1);
}

TEST_CASE("discrepancy against a grid") {
  // uniform law on [0, 1]
  DensityGrid g;
  for (int i = 0; i <= 100; ++i) {
    g.y.push_back(-0.5 + 2.0 * i / 100);
    const double y = g.y.back();
    g.density.push_back(y >= 0 && y <= 1);
    g.cdf.push_back(std::clamp(y, 0.0, 1.0));
  }
  EmpiricalCDF e;
  e.values = {0.25, 0.5, 0.5, 0.75};
  // jumps: F(0.25-)=0 vs .25, F(0.5-)=.25 vs .5, F(0.5)=.75, F(0.75-)=.75, F(0.75)=1
  CHECK(discrepancy(e, g) == doctest::Approx(0.25));
  e.values = {0.2};
  CHECK(discrepancy(e, g) == doctest::Approx(0.8));
  e.values = {2.0};
  try {
    discrepancy(e, g);
    FAIL("expected SupportExceeded");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::SupportExceeded);
  }
}

TEST_CASE("small value counts") {
  auto F = FieldCtx::make(3, 1);
  CHECK(small_value_count(block_for(F, 1), 0) == 3);
  auto b = block_for(F, 6);
  std::uint64_t prev = 0;
  for (double eps : {0.0, 0.05, 0.1, 0.3, 0.7, 1.5, 4.0}) {
    auto c = small_value_count(b, eps);
    CHECK(c >= prev);
    prev = c;
    std::uint64_t ref = 0;
    for (auto& r : b.records) ref += std::fabs(r.lambda.get_d()) * std::log(3.0) <= eps;
    CHECK(c == ref);
  }
  CHECK(prev == 486);
  CHECK_THROWS_AS(small_value_count(b, -1), Error);
}

TEST_CASE("greedy sequence") {
  CHECK(greedy_sequence(3, 0, 0.5).empty());
  CHECK(greedy_sequence(3, 0.3, 0.5).empty());
  auto exact_sum = [](const GreedySequence& G) {
    // sum of count * d x/(q^d - x) in log q units
    mpq_class s = 0;
    for (auto& r : G.runs) {
      mpz_class N;
      mpz_ui_pow_ui(N.get_mpz_t(), G.q, r.degree);
      s += r.count * make_rat(mpz_class(r.degree * G.omega), N - G.omega);
    }
    return s.get_d() * std::log(double(G.q));
  };
  auto g = greedy_sequence(3, 2.0, 0.01);
  CHECK(g.omega == 1);
  CHECK(std::fabs(exact_sum(g) - 2.0) < 0.01);
  CHECK(double(g.achieved) == doctest::Approx(exact_sum(g)).epsilon(1e-12));
  for (auto& r : g.runs) CHECK(r.degree % 2 == 1);
  auto n = greedy_sequence(3, -1.3, 0.001);
  CHECK(n.omega == -1);
  CHECK(std::fabs(exact_sum(n) + 1.3) < 0.001);

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> A(-5, 5), E(1e-3, 1);
  int nonterm = 0, bad = 0;
  for (int i = 0; i < 1000; ++i) {
    const double a = A(rng), e = E(rng);
    try {
      auto G = greedy_sequence(5, a, e);
      bad += !(std::fabs(exact_sum(G) - a) < e);
    } catch (const Error& err) {
      nonterm += err.code() == ErrorCode::NonTerminating;
    }
  }
  CHECK(nonterm == 0);
  CHECK(bad == 0);
  CHECK_THROWS_AS(greedy_sequence(3, 5, 1e-3, 9), Error);
}

TEST_CASE("greedy primes are the first odd-degree irreducibles") {
  auto F = FieldCtx::make(3, 1);
  auto g = greedy_sequence(3, 1.0, 0.5);
  auto ps = greedy_primes(F, g, 1000);
  mpz_class total = 0;
  for (auto& r : g.runs) total += r.count;
  CHECK(mpz_class(ps.size()) == total);
  auto table = prime_table(F, 9);
  std::size_t k = 0;
  for (auto& r : g.runs)
    for (std::size_t i = 0; i < r.count.get_ui(); ++i) CHECK(ps[k++] == table[r.degree][i]);
}

TEST_CASE("ihara constant fit") {
  auto F = FieldCtx::make(3, 1);
  std::vector<Block> bs;
  for (int n = 3; n <= 7; ++n) bs.push_back(block_for(F, n));
  std::vector<const Block*> ptrs;
  for (auto& b : bs) ptrs.push_back(&b);
  auto fit = ihara_constant_fit(ptrs);
  CHECK(std::isfinite(fit.C));
  CHECK(fit.C > 0);
  CHECK(fit.per_n.size() == 5);
  CHECK(fit.C == *std::max_element(fit.per_n.begin(), fit.per_n.end()));
  auto b2 = block_for(F, 2);
  CHECK_THROWS_AS(ihara_constant_fit({&b2}), Error);
}
