#include "fflab/heights.hpp"

#include <cmath>

#include "fflab/characters.hpp"
#include "fflab/errors.hpp"
#include "fflab/omega.hpp"

namespace fflab {

namespace {

void require_odd(int n) {
  if (n % 2 == 0) fail(ErrorCode::EvenDegree, "heights need deg D odd");
}

// sum_k c_k (k - n) in log q units
mpz_class grouped_sum(const LPolynomial& L) {
  mpz_class s = 0;
  for (std::size_t k = 0; k < L.coeffs.size() && int(k) <= L.n - 1; ++k) s += mpz_class(L.coeffs[k]) * (long(k) - L.n);
  return s;
}

}  // namespace

LogLinear taguchi(const LPolynomial& L) {
  require_odd(L.n);
  const long q = L.q;
  mpq_class a = mpq_class(L.n, 4) - mpq_class(2 * q - 1, 2 * (q - 1)) - lambda_exact(L) / 2;
  a.canonicalize();
  return LogLinear{L.q, a, 0};
}

LogLinear taguchi(const FieldCtx& F, const Poly& D) {
  require_odd(D.deg());
  return taguchi(l_polynomial(F, D));
}

double wei_character_sum(const FieldCtx& F, const Poly& D) {
  require_odd(D.deg());
  const int n = D.deg();
  const double lq = std::log(double(F.q()));
  QuadCharacter chi(F, D);
  double s = 0;
  for (int k = 0; k <= n - 1; ++k)
    for_each_poly(F, PolyKind::Monic, k, 0, monic_count(F, k),
                  [&](const Poly& f, std::uint64_t) { s += chi(f) * (k - n) * lq; });
  return s;
}

double taguchi_wei(const FieldCtx& F, const Poly& D, std::optional<mpz_class> h) {
  require_odd(D.deg());
  const double q = F.q(), lq = std::log(q);
  const mpz_class hD = h ? *h : class_number(F, D);
  return D.deg() * lq / 4 - q * lq / (2 * (q - 1)) + wei_character_sum(F, D) / (2 * hD.get_d());
}

double taguchi_wei_from_L(const LPolynomial& L) {
  require_odd(L.n);
  const double q = L.q, lq = std::log(q);
  return L.n * lq / 4 - q * lq / (2 * (q - 1)) + grouped_sum(L).get_d() * lq / (2 * class_number(L).get_d());
}

bool chowla_selberg_check(const FieldCtx& F, const Poly& D, double tol) {
  require_odd(D.deg());
  const auto L = l_polynomial(F, D);
  const mpz_class h = class_number(L);
  if (h == 0) fail(ErrorCode::PoleAtEvaluation, "L(0) vanishes");
  const double lhs = log_deriv(L, At::S0).real();
  const double rhs = -D.deg() * std::log(double(F.q())) - wei_character_sum(F, D) / h.get_d();
  return std::fabs(lhs - rhs) <= tol;
}

double weil_lower_bound(std::uint32_t q, int n) {
  if (n % 2 == 0) fail(ErrorCode::InvalidDegree, "n must be odd");
  const double r = std::sqrt(double(q)), lq = std::log(double(q));
  return (1.0 / 20 - 1 / (10 * (r + 1))) * n * lq - (3 * q - r - 1) * lq / (10 * (q - 1.0)) - 6.0 / 5;
}

double taguchi_centre(std::uint32_t q, int n) {
  const double lq = std::log(double(q));
  return n * lq / 4 - (2 * q - 1.0) * lq / (2 * (q - 1.0));
}

Cor13Thresholds cor13_thresholds(std::uint32_t q, int n, double eps) {
  if (n < 3) fail(ErrorCode::InvalidDegree, "n must be >= 3");
  Cor13Thresholds t;
  const double L = n * std::log(double(q));
  const double ll = std::log(L), lll = std::log(ll);
  const double Aq = A_q(q);
  t.centre = taguchi_centre(q, n);
  t.eps_n = 5 * ll * ll / L;
  t.ii_upper = t.centre + ll / 2 + lll / 2 - (Aq + eps) / 2;
  t.ii_lower = t.centre - ll / 2 - lll / 2 + (Aq + eps) / 2;
  t.iii = t.ii_upper / 5 - 6.0 / 5;
  return t;
}

std::vector<HeightRow> corollary13_table(const FieldCtx& F, const Block& block, double eps) {
  require_odd(block.n);
  if (block.q != F.q()) fail(ErrorCode::InvalidArgument, "block is for another field");
  const auto th = cor13_thresholds(F.q(), block.n, eps);
  const double lq = std::log(double(F.q()));
  std::vector<HeightRow> rows;
  rows.reserve(block.records.size());
  for (auto& rec : block.records) {
    LPolynomial L{F.q(), rec.D, block.n, rec.L};
    HeightRow r;
    r.D = rec.D;
    r.prime = is_irreducible(F, rec.D);
    r.h_tag = taguchi(L);
    r.h_tag_wei = taguchi_wei_from_L(L);
    const mpz_class h = class_number(L);
    const double s0 = log_deriv(L, At::S0).real();
    r.chowla_ok = std::fabs(s0 - (-block.n * lq - grouped_sum(L).get_d() * lq / h.get_d())) <= 1e-9;
    const double v = r.h_tag.real();
    r.cor13_i = std::fabs(v - th.centre) <= th.eps_n / 2;
    r.cor13_ii_upper = r.prime && v >= th.ii_upper;
    r.cor13_ii_lower = r.prime && v <= th.ii_lower;
    r.weil_lower = v / 5 - 6.0 / 5;
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace fflab
