#include <cmath>

#include "doctest.h"
#include "fflab/characters.hpp"
#include "fflab/lfunc.hpp"

using namespace fflab;

namespace {

using V = std::vector<std::int64_t>;

// L coefficients straight from the factored character definition
V oracle_l(const FieldCtx& F, const Poly& D) {
  QuadCharacter chi(F, D);
  V c{1};
  for (int k = 1; k < D.deg(); ++k) {
    std::int64_t s = 0;
    for (auto& f : enumerate(F, PolyKind::Monic, k)) s += chi.by_factoring(f);
    c.push_back(s);
  }
  return c;
}

// #{(x, y) : y^2 = D(x)} over F_{p^m}, plus points at infinity
long brute_points(int p, const Poly& D, int m) {
  auto E = FieldCtx::make(p, m);
  std::vector<int> roots(E.q(), 0);
  for (Elem y = 0; y < E.q(); ++y) ++roots[E.mul(y, y)];
  long n = D.deg() % 2 ? 1 : 2;
  for (Elem x = 0; x < E.q(); ++x) {
    Elem v = 0;
    for (int i = D.deg(); i >= 0; --i) v = E.add(E.mul(v, x), Elem(D.c[i]));
    n += roots[v];
  }
  return n;
}

}  // namespace

TEST_CASE("L-polynomial examples") {
  auto F = FieldCtx::make(3, 1);
  CHECK(l_polynomial(F, parse_poly(F, "0,1")).coeffs == V{1});
  for (auto m : {LMethod::Direct, LMethod::PointCount, LMethod::Euler})
    CHECK(l_polynomial(F, parse_poly(F, "1,0,1"), m).coeffs == V{1, -1});
  CHECK_THROWS_AS(l_polynomial(F, parse_poly(F, "1,0,0,1")), Error);
  CHECK_THROWS_AS(l_polynomial(F, parse_poly(F, "2")), Error);
  try {
    l_polynomial(F, parse_poly(F, "1,0,0,1"));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotSquareFree);
  }
  CHECK(genus_of(6) == 2);
  CHECK(genus_of(5) == 2);
  CHECK(genus_of(1) == 0);
}

TEST_CASE("all L-polynomial methods agree with the factored oracle") {
  for (auto [q, nmax] : {std::pair{3, 5}, std::pair{5, 3}, std::pair{9, 3}}) {
    auto F = FieldCtx::from_order(q);
    for (int n = 1; n <= nmax; ++n)
      for (auto& D : enumerate(F, PolyKind::Squarefree, n)) {
        V want = oracle_l(F, D);
        CHECK(l_polynomial(F, D, LMethod::Direct).coeffs == want);
        CHECK(l_polynomial(F, D, LMethod::PointCount).coeffs == want);
        CHECK(l_polynomial(F, D, LMethod::Euler).coeffs == want);
      }
  }
  // euler vs direct one step further
  auto F = FieldCtx::make(3, 1);
  EulerEvaluator ev(F, 6);
  for (auto& D : enumerate(F, PolyKind::Squarefree, 6))
    CHECK(ev.coeffs(D) == l_polynomial(F, D, LMethod::Direct).coeffs);
}

TEST_CASE("power sums") {
  auto c = power_sums(V{1, -1}, 6);
  for (int N = 1; N <= 6; ++N) CHECK(c[N] == -1);
  auto z = power_sums(V{1}, 4);
  for (int N = 1; N <= 4; ++N) CHECK(z[N] == 0);
  auto back = coeffs_from_power_sums(power_sums(V{1, 2, 0, 9, 27}, 4), 4);
  CHECK(back == std::vector<mpz_class>{1, 2, 0, 9, 27});
  // c_N = sum over M_N of Lambda * chi
  auto F = FieldCtx::make(3, 1);
  for (auto& D : enumerate(F, PolyKind::Squarefree, 4)) {
    QuadCharacter chi(F, D);
    auto L = l_polynomial(F, D);
    auto cN = power_sums(L.coeffs, 4);
    CHECK(cN[1] == L.coeffs[1]);
    for (int N = 1; N <= 4; ++N) {
      long s = 0;
      for (auto& f : enumerate(F, PolyKind::Monic, N)) s += von_mangoldt(F, f) * chi(f);
      CHECK(cN[N] == s);
    }
  }
}

TEST_CASE("log derivatives at s=1 and s=0") {
  auto F = FieldCtx::make(3, 1);
  auto L = l_polynomial(F, parse_poly(F, "1,0,1"));
  CHECK(lambda_exact(L) == mpq_class(-1, 2));
  LogLinear s1 = log_deriv(L, At::S1);
  CHECK(s1.a == mpq_class(1, 2));
  CHECK(s1.b == 0);
  CHECK_THROWS_AS(log_deriv(L, At::S0), Error);
  auto L0 = l_polynomial(F, parse_poly(F, "0,1"));
  CHECK(log_deriv(L0, At::S1).a == 0);
  CHECK(log_deriv(L0, At::S0).a == 0);

  for (int n = 1; n <= 5; n += 2)
    for (auto& D : enumerate(F, PolyKind::Squarefree, n)) {
      auto Ld = l_polynomial(F, D);
      CHECK(log_deriv_s0_direct(Ld) == log_deriv_s0_functional(Ld));
    }
  for (auto& D : enumerate(F, PolyKind::Squarefree, 4)) {
    auto Ld = l_polynomial(F, D);
    CHECK_THROWS_AS(log_deriv_s0_direct(Ld), Error);
  }
  // lambda against the Dirichlet series sum_N c_N q^-N with geometric tail
  for (auto& D : enumerate(F, PolyKind::Squarefree, 5)) {
    auto Ld = l_polynomial(F, D);
    const double lam = lambda_exact(Ld).get_d();
    auto c = power_sums(Ld.coeffs, 60);
    double partial = 0;
    for (int N = 1; N <= 60; ++N) partial += c[N].get_d() / std::pow(3.0, N);
    double tail = 4 * std::pow(3.0, -30.5) / (1 - 1 / std::sqrt(3.0));
    CHECK(std::fabs(partial - lam) <= tail);
  }
}

TEST_CASE("class numbers and gamma_D") {
  auto F = FieldCtx::make(3, 1);
  CHECK(class_number(F, parse_poly(F, "0,1")) == 1);
  CHECK_THROWS_AS(class_number(F, parse_poly(F, "1,0,1")), Error);
  Poly D = parse_poly(F, "1,2,0,1");
  V L = oracle_l(F, D);
  std::int64_t h = 0;
  for (auto x : L) h += x;
  CHECK(class_number(F, D) == h);
  for (int n = 1; n <= 5; n += 2)
    for (auto& E : enumerate(F, PolyKind::Squarefree, n)) CHECK(class_number(F, E) >= 1);

  CHECK(gamma_D(F, parse_poly(F, "0,1")).real() == doctest::Approx(0.0));
  auto F5 = FieldCtx::make(5, 1);
  LogLinear g5 = gamma_D(F5, parse_poly(F5, "0,1"));
  CHECK(g5.a == mpq_class(1, 4));
  CHECK(g5.b == 0);
  // t^2+1 over F_3 is a pointed conic: rational function field, gamma = gamma_3 = 0
  LogLinear gc = gamma_D(F, parse_poly(F, "1,0,1"));
  CHECK(gc.a == 0);
  CHECK(gc.b == 0);
}

TEST_CASE("point counts against brute force over the extension field") {
  auto F = FieldCtx::make(3, 1);
  CHECK(point_counts(F, parse_poly(F, "0,1"), 1)[1] == 4);
  CHECK(point_counts(F, parse_poly(F, "1,0,1"), 1)[1] == 4);
  for (int n = 1; n <= 4; ++n)
    for (auto& D : enumerate(F, PolyKind::Squarefree, n)) {
      auto N = point_counts(F, D, 3);
      auto L = l_polynomial(F, D);
      auto c = power_sums(zeta_numerator(L), 3);
      for (int m = 1; m <= 3; ++m) {
        CHECK(N[m] == brute_points(3, D, m));
        mpz_class qm;
        mpz_ui_pow_ui(qm.get_mpz_t(), 3, m);
        CHECK(N[m] == qm + 1 + c[m]);
      }
    }
}

TEST_CASE("Ihara route agrees with the L-function route") {
  auto F = FieldCtx::make(3, 1);
  auto t = gamma_via_ihara(F, parse_poly(F, "0,1"), 1e-8);
  CHECK(t.value == doctest::Approx(0.0));
  CHECK(t.bound == 0.0);
  for (int n = 1; n <= 5; ++n)
    for (auto& D : enumerate(F, PolyKind::Squarefree, n)) {
      auto est = gamma_via_ihara(F, D, 1e-8);
      CHECK(est.bound < 1e-8);
      CHECK(std::fabs(est.value - gamma_D(F, D).real()) < 1e-8);
    }
  // supersingular y^2 = x^3 + x over F_7
  auto F7 = FieldCtx::make(7, 1);
  Poly E = parse_poly(F7, "0,1,0,1");
  auto L = l_polynomial(F7, E);
  CHECK(L.coeffs == V{1, 0, 7});
  LogLinear g = gamma_D(L);
  CHECK(g.a == mpq_class(1, 12));
  CHECK(g.b == 0);
  CHECK(g.a != mpq_class(1, 8));
  auto est = gamma_via_ihara(F7, E, 1e-10);
  CHECK(std::fabs(est.value - std::log(7.0) / 12) < 1e-10);
}

TEST_CASE("verify_L on small discriminants") {
  auto F = FieldCtx::make(3, 1);
  auto v6 = verify_L(F, parse_poly(F, "1,1,0,1,0,0,1"));
  CHECK(v6.genus == 2);
  for (auto [q, nmax] : {std::pair{3, 6}, std::pair{5, 4}})
    for (int n = 1; n <= nmax; ++n) {
      auto G = FieldCtx::make(q, 1);
      for (auto& D : enumerate(G, PolyKind::Squarefree, n)) {
        auto L = l_polynomial(G, D);
        auto v = verify_L(L);
        CHECK(v.func_eq);
        CHECK(v.rh);
        CHECK(v.max_root_dev < 1e-9);
        if (v.genus >= 2) {
          REQUIRE(v.lindelof.has_value());
          CHECK(*v.lindelof);
        } else {
          CHECK_FALSE(v.lindelof.has_value());
        }
        auto P = zeta_numerator(L);
        mpz_class qg;
        mpz_ui_pow_ui(qg.get_mpz_t(), q, v.genus);
        CHECK(mpz_class(P.back()) == qg);
      }
    }
  // a broken polynomial fails the symmetry check
  LPolynomial bad;
  bad.q = 3;
  bad.n = 3;
  bad.coeffs = {1, 1, 2};
  CHECK_FALSE(verify_L(bad).func_eq);
}
