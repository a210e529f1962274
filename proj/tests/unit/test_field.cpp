#include <cmath>
#include <set>

#include "doctest.h"
#include "fflab/field.hpp"

using namespace fflab;

namespace {

Poly P3(const char* s) {
  static FieldCtx F = FieldCtx::make(3, 1);
  return parse_poly(F, s);
}

// products of all pairs of monics with degrees summing to n
std::set<std::vector<Elem>> reducible_monics(const FieldCtx& F, int n) {
  std::set<std::vector<Elem>> out;
  for (int d = 1; d < n; ++d)
    for (auto& a : enumerate(F, PolyKind::Monic, d))
      for (auto& b : enumerate(F, PolyKind::Monic, n - d)) out.insert(poly_mul(F, a, b).c);
  return out;
}

}  // namespace

TEST_CASE("make_field validates input and picks the first irreducible modulus") {
  auto F3 = FieldCtx::make(3, 1);
  CHECK(F3.q() == 3);
  CHECK(F3.modulus() == std::vector<std::uint32_t>{0, 1});
  auto F9 = FieldCtx::make(3, 2);
  CHECK(F9.q() == 9);
  // monic quadratics over F_3 in order: first without a root
  CHECK(F9.modulus() == std::vector<std::uint32_t>{1, 0, 1});
  CHECK_THROWS_AS(FieldCtx::make(2, 1), Error);
  CHECK_THROWS_AS(FieldCtx::make(9, 1), Error);
  CHECK_THROWS_AS(FieldCtx::make(3, 0), Error);
  try {
    FieldCtx::make(2, 1);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonOddPrime);
  }
  CHECK(FieldCtx::from_order(25).k() == 2);
  CHECK_THROWS_AS(FieldCtx::from_order(4), Error);
}

TEST_CASE("field axioms on F_9 and F_25") {
  for (auto [p, k] : {std::pair{3, 2}, std::pair{5, 2}, std::pair{3, 3}}) {
    auto F = FieldCtx::make(p, k);
    for (Elem a = 0; a < F.q(); ++a) {
      if (a) CHECK(F.mul(a, F.inv(a)) == 1);
      CHECK(F.add(a, F.neg(a)) == 0);
      for (Elem b = 0; b < F.q(); b += 3)
        for (Elem c = 0; c < F.q(); c += 5) {
          CHECK(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
          CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
        }
    }
    int squares = 0;
    for (Elem a = 1; a < F.q(); ++a) squares += F.eta(a) == 1;
    CHECK(squares == int(F.q() - 1) / 2);
  }
}

TEST_CASE("polynomial text round trip") {
  auto F = FieldCtx::make(3, 1);
  CHECK(format_poly(F, parse_poly(F, "1,0,1")) == "1,0,1");
  CHECK(format_poly(F, parse_poly(F, " -1 , 4, 0 ")) == "2,1");
  CHECK_THROWS_AS(parse_poly(F, "1,,2"), Error);
  CHECK_THROWS_AS(parse_poly(F, "1,x"), Error);
  auto F9 = FieldCtx::make(3, 2);
  Poly f = parse_poly(F9, "[1,2],0,1");
  CHECK(f.deg() == 2);
  CHECK(format_poly(F9, f) == "[1,2],0,1");
}

TEST_CASE("enumeration counts and order") {
  auto F = FieldCtx::make(3, 1);
  CHECK(enumerate(F, PolyKind::Monic, 2).size() == 9);
  CHECK(enumerate(F, PolyKind::Squarefree, 2).size() == 6);
  auto lin = enumerate(F, PolyKind::Irreducible, 1);
  REQUIRE(lin.size() == 3);
  CHECK(format_poly(F, lin[0]) == "0,1");
  CHECK(format_poly(F, lin[1]) == "1,1");
  CHECK(format_poly(F, lin[2]) == "2,1");
  CHECK(enumerate(F, PolyKind::Monic, 0).size() == 1);
  for (int n = 1; n <= 6; ++n) {
    auto sf = enumerate(F, PolyKind::Squarefree, n);
    CHECK(sf.size() == monic_count(F, n) - (n >= 2 ? monic_count(F, n - 1) : 0));
    for (std::size_t i = 1; i < sf.size(); ++i) CHECK(poly_less(sf[i - 1], sf[i]));
  }
  for (std::uint64_t i = 0; i < 81; ++i) CHECK(monic_index(F, monic_from_index(F, 4, i)) == i);
}

TEST_CASE("square-free test in characteristic p") {
  CHECK_FALSE(is_squarefree(FieldCtx::make(3, 1), P3("1,0,0,1")));  // (t+1)^3
  CHECK(is_squarefree(FieldCtx::make(3, 1), P3("1,0,1")));
  CHECK_FALSE(is_squarefree(FieldCtx::make(3, 1), P3("0,0,1")));
}

TEST_CASE("irreducibility against brute-force products") {
  for (auto [p, k] : {std::pair{3, 1}, std::pair{5, 1}, std::pair{3, 2}}) {
    auto F = FieldCtx::make(p, k);
    for (int n = 1; n <= (F.q() == 3 ? 5 : 3); ++n) {
      auto red = reducible_monics(F, n);
      for (auto& f : enumerate(F, PolyKind::Monic, n)) CHECK(is_irreducible(F, f) == (red.count(f.c) == 0));
      CHECK(mpz_class(enumerate(F, PolyKind::Irreducible, n).size()) == prime_count(F.q(), n));
    }
  }
  CHECK(prime_count(3, 1) == 3);
  CHECK(prime_count(3, 2) == 3);
  CHECK(prime_count(3, 3) == 8);
}

TEST_CASE("prime count lower bound") {
  for (std::uint64_t q : {3, 5, 7, 9})
    for (int n = 1; n <= 12; ++n) {
      double qn = std::pow(double(q), n);
      double lower = qn / n - std::pow(double(q), n / 2.0) / n - std::pow(double(q), n / 3.0);
      CHECK(prime_count(q, n).get_d() >= lower);
    }
  CHECK(prime_count_upto(3, 2) == 6);
  CHECK(primorial_degree(3, 2) == 9);
}

TEST_CASE("factorization reconstructs its input") {
  auto F = FieldCtx::make(3, 1);
  auto f1 = factor(F, P3("0,0,1"));
  REQUIRE(f1.factors.size() == 1);
  CHECK(f1.factors[0].first == P3("0,1"));
  CHECK(f1.factors[0].second == 2);
  auto f2 = factor(F, P3("1,0,1"));
  REQUIRE(f2.factors.size() == 1);
  CHECK(f2.factors[0].second == 1);
  CHECK(factor(F, Poly::one()).factors.empty());
  CHECK_THROWS_AS(factor(F, Poly()), Error);
  for (auto [p, k] : {std::pair{3, 1}, std::pair{5, 1}, std::pair{3, 2}, std::pair{7, 1}}) {
    auto G = FieldCtx::make(p, k);
    int maxn = G.q() == 3 ? 7 : 4;
    for (int n = 1; n <= maxn; ++n)
      for (auto& f : enumerate(G, PolyKind::Monic, n)) {
        Poly g = poly_scale(G, f, G.q() - 1);
        auto fac = factor(G, g);
        Poly prod = Poly::constant(fac.lead);
        for (auto& [P, e] : fac.factors) {
          CHECK(is_irreducible(G, P));
          CHECK(P.is_monic());
          prod = poly_mul(G, prod, poly_pow(G, P, unsigned(e)));
        }
        CHECK(prod == g);
      }
  }
  // p-th powers inside
  Poly f = poly_mul(F, poly_pow(F, P3("1,1"), 6), P3("1,0,1"));
  auto fac = factor(F, f);
  REQUIRE(fac.factors.size() == 2);
  CHECK(fac.factors[0].second == 6);
}

TEST_CASE("von Mangoldt sums and Lambda_r") {
  auto F = FieldCtx::make(3, 1);
  CHECK(von_mangoldt(F, P3("0,0,1")) == 1);
  CHECK(von_mangoldt(F, P3("0,1,1")) == 0);
  for (auto q : {3, 5}) {
    auto G = FieldCtx::make(q, 1);
    for (int n = 1; n <= 6 && monic_count(G, n) <= 20000; ++n) {
      std::int64_t s = 0;
      for (auto& f : enumerate(G, PolyKind::Monic, n)) s += von_mangoldt(G, f);
      CHECK(std::uint64_t(s) == monic_count(G, n));
    }
  }
  CHECK(lambda_r(F, P3("0,1"), 1) == 1);
  CHECK(lambda_r(F, P3("0,0,1"), 2) == 1);
  CHECK(lambda_r(F, P3("0,0,0,1"), 2) == 2);
  CHECK(lambda_r(F, Poly::one(), 2) == 0);
  // brute force: ordered pairs and triples of monic divisors
  for (int n = 1; n <= 5; ++n)
    for (auto& f : enumerate(F, PolyKind::Monic, n)) {
      mpz_class two = 0, three = 0;
      for (int d1 = 0; d1 <= n; ++d1)
        for (auto& a : enumerate(F, PolyKind::Monic, d1)) {
          auto [q1, r1] = poly_divmod(F, f, a);
          if (!r1.is_zero()) continue;
          std::int64_t la = von_mangoldt(F, a);
          if (!la) continue;
          two += la * von_mangoldt(F, q1);
          for (int d2 = 0; d2 <= q1.deg(); ++d2)
            for (auto& b : enumerate(F, PolyKind::Monic, d2)) {
              auto [q2, r2] = poly_divmod(F, q1, b);
              if (!r2.is_zero()) continue;
              three += la * von_mangoldt(F, b) * von_mangoldt(F, q2);
            }
        }
      CHECK(lambda_r(F, f, 2) == two);
      CHECK(lambda_r(F, f, 3) == three);
    }
}

TEST_CASE("reciprocal norm sums up to q^j") {
  auto F = FieldCtx::make(3, 1);
  mpq_class inv_sum = 0, vm_sum = 0;
  for (int j = 0; j <= 6; ++j) {
    mpz_class N;
    mpz_ui_pow_ui(N.get_mpz_t(), 3, j);
    for (auto& f : enumerate(F, PolyKind::Monic, j)) {
      inv_sum += make_rat(1, N);
      vm_sum += make_rat(von_mangoldt(F, f), N);
    }
    CHECK(inv_sum == j + 1);
    CHECK(vm_sum == j);
  }
}

TEST_CASE("zeta log-derivative partial sums") {
  auto F = FieldCtx::make(3, 1);
  for (int s : {2, 3}) {
    const double target = std::log(3.0) / (std::pow(3.0, s - 1) - 1);
    double partial = 0;
    const int J = 7;
    for (int j = 1; j <= J; ++j)
      for (auto& f : enumerate(F, PolyKind::Monic, j))
        partial += von_mangoldt(F, f) * std::log(3.0) / std::pow(3.0, j * s);
    // each degree contributes q^j * log q / q^{js}
    double tail = 0;
    for (int j = J + 1; j < 200; ++j) tail += std::log(3.0) * std::pow(3.0, j * (1 - s));
    CHECK(std::fabs(partial - target) <= tail * (1 + 1e-9));
  }
}
