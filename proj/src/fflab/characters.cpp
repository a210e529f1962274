#include "fflab/characters.hpp"

#include <cmath>

#include "fflab/lfunc.hpp"

namespace fflab {

int residue_symbol_euler(const FieldCtx& F, const Poly& f, const Poly& P) {
  if (!P.is_monic() || !is_irreducible(F, P))
    fail(ErrorCode::NotIrreducible, "residue symbol modulus " + format_poly(F, P) + " is not monic irreducible");
  Poly r = poly_mod(F, f, P);
  if (r.is_zero()) return 0;
  mpz_class e;
  mpz_ui_pow_ui(e.get_mpz_t(), F.q(), unsigned(P.deg()));
  e = (e - 1) / 2;
  Poly v = poly_powmod(F, r, e, P);
  if (v.is_one()) return 1;
  if (v.deg() == 0 && v.c[0] == F.neg(1)) return -1;
  throw std::logic_error("Euler criterion produced a non-unit");
}

int jacobi_symbol(const FieldCtx& F, const Poly& f, const Poly& g) {
  if (!g.is_monic() || g.deg() < 1) fail(ErrorCode::InvalidArgument, "jacobi_symbol needs a monic nonconstant modulus");
  // Sign law: for coprime monic a, b we have (a/b) = (b/a) * (-1)^{((q-1)/2) deg a deg b};
  // for a unit c, (c/b) = eta(c)^{deg b}.
  const bool half_odd = ((F.q() - 1) / 2) % 2 == 1;
  int res = 1;
  Poly a = poly_mod(F, f, g), b = g;
  for (;;) {
    if (a.is_zero()) return 0;
    Elem lc = a.lead();
    if (lc != 1) {
      if (b.deg() % 2 == 1 && F.eta(lc) == -1) res = -res;
      a = poly_monic(F, a);
    }
    if (a.deg() == 0) return res;
    if (half_odd && (a.deg() % 2 == 1) && (b.deg() % 2 == 1)) res = -res;
    Poly r = poly_mod(F, b, a);
    b = std::move(a);
    a = std::move(r);
  }
}

QuadCharacter::QuadCharacter(const FieldCtx& F, const Poly& D) : F_(F), D_(D), fac_(factor(F, D)) {
  if (!D.is_monic()) fail(ErrorCode::InvalidArgument, "character modulus must be monic");
}

int QuadCharacter::operator()(const Poly& f) const {
  if (f.deg() <= 0) {
    if (f.is_zero()) return 0;
    // units: eta(c)^{deg D}
    return D_.deg() % 2 == 0 ? 1 : F_.eta(f.c[0]);
  }
  Poly fm = poly_monic(F_, f);
  int s = jacobi_symbol(F_, D_, fm);
  if (f.lead() != 1 && D_.deg() % 2 == 1) s *= F_.eta(f.lead());
  return s;
}

int QuadCharacter::by_factoring(const Poly& f) const {
  int s = 1;
  for (auto& [P, e] : factor(F_, f).factors) {
    int v = residue_symbol_euler(F_, D_, P);
    if (v == 0) return 0;
    if (e % 2) s *= v;
  }
  return s;
}

int QuadCharacter::splitting(const Poly& P) const {
  for (auto& [Q, e] : fac_.factors)
    if (Q == P) return 0;
  return (*this)(P);
}

CharSumReport avg_char_over_Hn(const FieldCtx& F, const Poly& f, int n) {
  if (!f.is_monic()) fail(ErrorCode::InvalidArgument, "f must be monic");
  if (n < 1) fail(ErrorCode::InvalidDegree, "n must be >= 1");
  CharSumReport rep;
  rep.square = is_perfect_square(F, f);
  long sum = 0, count = 0;
  for_each_poly(F, PolyKind::Squarefree, n, 0, monic_count(F, n), [&](const Poly& D, std::uint64_t) {
    sum += f.deg() == 0 ? 1 : jacobi_symbol(F, D, f);
    ++count;
  });
  rep.sum = sum;
  rep.count = count;
  rep.main_term = 0;
  if (rep.square) {
    mpq_class m(rep.count);
    for (auto& [P, e] : factor(F, f).factors) {
      mpz_class N;
      mpz_ui_pow_ui(N.get_mpz_t(), F.q(), unsigned(P.deg()));
      m *= mpq_class(N, N + 1);
    }
    m.canonicalize();
    rep.main_term = m;
  }
  mpq_class dev = mpq_class(rep.sum) - rep.main_term;
  rep.deviation = std::fabs(dev.get_d());
  rep.normalized = rep.square ? rep.deviation / std::sqrt(double(count))
                              : rep.deviation / std::pow(double(F.q()), n / 2.0);
  return rep;
}

std::vector<bool> char_sum_generating_check(const FieldCtx& F, const Poly& f, int d_max) {
  if (!f.is_monic()) fail(ErrorCode::InvalidArgument, "f must be monic");
  if (is_perfect_square(F, f)) fail(ErrorCode::SquareModulus, format_poly(F, f) + " is a perfect square");
  std::vector<std::int64_t> L = character_l_polynomial(F, f);
  // reciprocity turns T into eps*T with eps = (-1)^{((q-1)/2) deg f}
  const bool flip = ((F.q() - 1) / 2) % 2 == 1 && f.deg() % 2 == 1;
  const int len = d_max + 1;
  std::vector<mpz_class> s(len, 0);
  for (std::size_t k = 0; k < L.size() && int(k) < len; ++k)
    s[k] = (flip && k % 2) ? -L[k] : L[k];
  // times (1 - q T^2)
  for (int k = len - 1; k >= 2; --k) s[k] -= mpz_class(F.q()) * s[k - 2];
  // divided by prod (1 - T^{2 d_P})
  for (auto& [P, e] : factor(F, f).factors) {
    const int step = 2 * P.deg();
    for (int k = step; k < len; ++k) s[k] += s[k - step];
  }
  std::vector<bool> ok(len);
  for (int d = 0; d < len; ++d) {
    long direct = 0;
    if (d == 0) {
      direct = 1;
    } else {
      for_each_poly(F, PolyKind::Squarefree, d, 0, monic_count(F, d),
                    [&](const Poly& D, std::uint64_t) { direct += jacobi_symbol(F, D, f); });
    }
    ok[d] = s[d] == direct;
  }
  return ok;
}

}  // namespace fflab
