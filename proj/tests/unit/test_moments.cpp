#include <cmath>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "fflab/lfunc.hpp"
#include "fflab/moments.hpp"
#include "fflab/sweep.hpp"

using namespace fflab;

namespace {

// sum over deg g <= c of Lambda_r(g^2)/N(g)^2 prod_{P|g} N(P)/(N(P)+1), by enumeration
mpq_class brute_main_term(const FieldCtx& F, int r, int c) {
  mpq_class s = 0;
  for (int d = 1; d <= c; ++d)
    for (auto& g : enumerate(F, PolyKind::Monic, d)) {
      auto fac = factor(F, g);
      mpq_class w = 1;
      for (auto& [P, e] : fac.factors) {
        mpz_class N;
        mpz_ui_pow_ui(N.get_mpz_t(), F.q(), P.deg());
        w *= make_rat(N, N + 1);
      }
      mpz_class N2;
      mpz_ui_pow_ui(N2.get_mpz_t(), F.q(), 2 * d);
      s += make_rat(lambda_r(F, poly_mul(F, g, g), r), N2) * w;
    }
  s.canonicalize();
  return s;
}

std::filesystem::path temp_dir(const char* tag) {
  auto p = std::filesystem::temp_directory_path() / (std::string("fflab_test_") + tag);
  std::filesystem::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("model main term against enumeration") {
  CHECK(model_main_term(3, 1, 1).value == mpq_class(1, 4));
  auto F = FieldCtx::make(3, 1);
  for (int r = 1; r <= 3; ++r)
    for (int c = 1; c <= 3; ++c) CHECK(model_main_term(3, r, c).value == brute_main_term(F, r, c));
  auto F5 = FieldCtx::make(5, 1);
  CHECK(model_main_term(5, 2, 2).value == brute_main_term(F5, 2, 2));
  for (int r = 1; r <= 3; ++r)
    for (int c = 1; c < 20; ++c) CHECK(main_term_tail(3, r, c + 1) < main_term_tail(3, r, c));
  auto mt = model_main_term_tol(3, 1, 1e-10);
  CHECK(mt.tail < 1e-10);
  CHECK(main_term_tail(3, 1, mt.cutoff - 1) >= 1e-10);
}

TEST_CASE("empirical moments from exact lambdas") {
  auto F = FieldCtx::make(3, 1);
  std::vector<mpq_class> l1;
  for (auto& D : enumerate(F, PolyKind::Squarefree, 1)) l1.push_back(lambda_exact(l_polynomial(F, D)));
  CHECK(empirical_moment(l1, 1) == 0);
  std::vector<mpq_class> l2;
  mpq_class s = 0, s2 = 0;
  for (auto& D : enumerate(F, PolyKind::Squarefree, 2)) {
    auto L = l_polynomial(F, D);
    REQUIRE(L.coeffs.size() == 2);
    // [T L'/L] at 1/q for 1 + a T
    mpq_class lam = make_rat(L.coeffs[1], 3 + L.coeffs[1]);
    CHECK(lambda_exact(L) == lam);
    l2.push_back(lam);
    s += lam;
    s2 += lam * lam;
  }
  CHECK(l2.size() == 6);
  CHECK(empirical_moment(l2, 1) == s / 6);
  CHECK(empirical_moment(l2, 2) == s2 / 6);
  CHECK(empirical_moment(l2, 2) >= 0);
}

TEST_CASE("head identity and short sums") {
  auto F = FieldCtx::make(3, 1);
  for (int n = 2; n <= 4; ++n)
    for (auto& D : enumerate(F, PolyKind::Squarefree, n))
      for (int r = 1; r <= 3; ++r) CHECK(head_identity_check(F, D, r));
  auto ss = short_sum_power(F, parse_poly(F, "1,0,1"), 1);
  CHECK(ss.value == mpq_class(-1, 3));
  CHECK(ss.exact == mpq_class(-1, 2));
  CHECK(ss.deviation == doctest::Approx(1.0 / 6));
  auto st = short_sum_power(F, parse_poly(F, "0,1"), 1);
  CHECK(st.value == 0);
  CHECK(st.exact == 0);
}

TEST_CASE("Laplace transform of the empirical values") {
  auto F = FieldCtx::make(3, 1);
  auto b = compute_block(F, 5, 1);
  auto lam = b.lambdas();
  CHECK(empirical_laplace(lam, 3, 0.0) == 1.0);
  for (double s = -2; s <= 2; s += 0.25) {
    double second = empirical_laplace(lam, 3, s + 0.25) - 2 * empirical_laplace(lam, 3, s) +
                    empirical_laplace(lam, 3, s - 0.25);
    CHECK(second >= 0);
  }
}

TEST_CASE("Lerch series and its bound") {
  auto v = lerch_phi(0.5, 1, 1);
  CHECK(v.value == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(v.bound == doctest::Approx(12.0));
  CHECK(v.within);
  for (int xi = 1; xi <= 9; ++xi)
    for (int r = 1; r <= 6; ++r)
      for (int n = 1; n <= 10; ++n) CHECK(lerch_phi(xi / 10.0, r, n).within);
  CHECK(lerch_phi(1e-9, 3, 4).value == doctest::Approx(64.0));
  // closed form for r = 2: sum (n+k)^2 x^k
  double x = 0.3, n = 3;
  double closed = (n * n) / (1 - x) + (2 * n * x) / std::pow(1 - x, 2) + x * (1 + x) / std::pow(1 - x, 3);
  CHECK(lerch_phi(x, 2, 3).value == doctest::Approx(closed).epsilon(1e-12));
  CHECK_THROWS_AS(lerch_phi(1.0, 1, 1), Error);
  CHECK_THROWS_AS(lerch_phi(0.0, 1, 1), Error);
}

TEST_CASE("sweep blocks and the cache") {
  auto F = FieldCtx::make(3, 1);
  auto b1 = compute_block(F, 6, 1);
  CHECK(b1.records.size() == 486);
  auto b3 = compute_block(F, 6, 3);
  CHECK(b1.digest == b3.digest);
  CHECK(b1.digest.size() == 64);

  auto dir = temp_dir("cache");
  SweepCache cache(dir);
  bool computed = false;
  auto c1 = cache.ensure(F, 6, 2, &computed);
  CHECK(computed);
  CHECK(c1.digest == b1.digest);
  auto c2 = cache.ensure(F, 6, 1, &computed);
  CHECK_FALSE(computed);
  CHECK(c2.digest == b1.digest);
  // round trip is exact
  for (std::size_t i = 0; i < c2.records.size(); ++i) {
    CHECK(c2.records[i].lambda == b1.records[i].lambda);
    CHECK(c2.records[i].L == b1.records[i].L);
  }
  // interrupted run: keep a prefix plus a torn line, drop the manifest
  {
    std::ifstream in(cache.records_path(3, 6));
    std::string all((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::size_t cut = 0;
    for (int i = 0; i < 100; ++i) cut = all.find('\n', cut) + 1;
    std::ofstream out(cache.records_path(3, 6), std::ios::trunc);
    out << all.substr(0, cut + 20);
  }
  std::filesystem::remove(cache.manifest_path(3, 6));
  CHECK_FALSE(cache.load(F, 6).has_value());
  auto c3 = cache.ensure(F, 6, 4, &computed);
  CHECK(computed);
  CHECK(c3.digest == b1.digest);
  CHECK(cache.load(F, 6)->records.size() == 486);
  const SweepRecord* r = c3.find(monic_index(F, parse_poly(F, "1,0,0,0,0,1,1")));
  REQUIRE(r != nullptr);
  CHECK(r->lambda == lambda_exact(l_polynomial(F, r->D, LMethod::Direct)));
  std::filesystem::remove_all(dir);
}
