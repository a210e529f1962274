#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "fflab/errors.hpp"

namespace fflab {

// canonicalized num/den
inline mpq_class make_rat(const mpz_class& num, const mpz_class& den) {
  mpq_class r(num, den);
  r.canonicalize();
  return r;
}

// Field elements are indices in [0, q): sum of a_j p^j over the polynomial
// basis of the canonical modulus.
using Elem = std::uint32_t;

class FieldCtx {
 public:
  struct Impl {
    std::uint32_t p = 0, k = 0, q = 0;
    std::vector<std::uint32_t> modulus;  // over F_p, constant first, monic
    std::vector<Elem> add_t, mul_t, inv_t, neg_t;
    std::vector<std::int8_t> eta_t;
  };

  FieldCtx() = default;
  static FieldCtx make(std::int64_t p, std::int64_t k);
  // q must be an odd prime power
  static FieldCtx from_order(std::int64_t q);

  std::uint32_t p() const { return im_->p; }
  std::uint32_t k() const { return im_->k; }
  std::uint32_t q() const { return im_->q; }
  const std::vector<std::uint32_t>& modulus() const { return im_->modulus; }
  bool valid() const { return im_ != nullptr; }
  bool same(const FieldCtx& o) const { return im_->q == o.im_->q; }

  Elem add(Elem a, Elem b) const {
    if (im_->add_t.empty()) {
      Elem s = a + b;
      return s >= im_->p ? s - im_->p : s;
    }
    return im_->add_t[std::size_t(a) * im_->q + b];
  }
  Elem neg(Elem a) const {
    if (im_->neg_t.empty()) return a == 0 ? 0 : im_->p - a;
    return im_->neg_t[a];
  }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const {
    if (im_->mul_t.empty()) return Elem(std::uint64_t(a) * b % im_->p);
    return im_->mul_t[std::size_t(a) * im_->q + b];
  }
  Elem inv(Elem a) const;
  Elem pow(Elem a, std::uint64_t e) const;
  // quadratic character of F_q^x, eta(0) = 0
  int eta(Elem a) const {
    if (!im_->eta_t.empty()) return im_->eta_t[a];
    return eta_slow(a);
  }
  Elem from_int(std::int64_t v) const;
  std::vector<std::uint32_t> coords(Elem a) const;
  Elem from_coords(const std::vector<std::int64_t>& c) const;

 private:
  int eta_slow(Elem a) const;
  std::shared_ptr<const Impl> im_;
};

struct Poly {
  std::vector<Elem> c;  // constant first, no trailing zeros

  Poly() = default;
  explicit Poly(std::vector<Elem> coeffs) : c(std::move(coeffs)) { trim(); }
  static Poly one() { return Poly(std::vector<Elem>{1}); }
  static Poly x() { return Poly(std::vector<Elem>{0, 1}); }
  static Poly constant(Elem a) { return Poly(std::vector<Elem>{a}); }

  int deg() const { return int(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  bool is_one() const { return c.size() == 1 && c[0] == 1; }
  bool is_monic() const { return !c.empty() && c.back() == 1; }
  Elem lead() const { return c.empty() ? 0 : c.back(); }
  Elem coeff(int i) const { return i >= 0 && i < int(c.size()) ? c[i] : 0; }
  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  bool operator==(const Poly& o) const { return c == o.c; }
  bool operator!=(const Poly& o) const { return c != o.c; }
};

Poly poly_add(const FieldCtx& F, const Poly& a, const Poly& b);
Poly poly_sub(const FieldCtx& F, const Poly& a, const Poly& b);
Poly poly_mul(const FieldCtx& F, const Poly& a, const Poly& b);
Poly poly_scale(const FieldCtx& F, const Poly& a, Elem s);
std::pair<Poly, Poly> poly_divmod(const FieldCtx& F, const Poly& a, const Poly& b);
Poly poly_mod(const FieldCtx& F, const Poly& a, const Poly& b);
Poly poly_div(const FieldCtx& F, const Poly& a, const Poly& b);
Poly poly_monic(const FieldCtx& F, const Poly& a);
Poly poly_gcd(const FieldCtx& F, const Poly& a, const Poly& b);  // monic, gcd(0,0) = 0
Poly poly_derivative(const FieldCtx& F, const Poly& a);
Poly poly_pow(const FieldCtx& F, const Poly& a, unsigned e);
Poly poly_mulmod(const FieldCtx& F, const Poly& a, const Poly& b, const Poly& m);
Poly poly_powmod(const FieldCtx& F, const Poly& a, std::uint64_t e, const Poly& m);
Poly poly_powmod(const FieldCtx& F, const Poly& a, const mpz_class& e, const Poly& m);
Elem poly_eval(const FieldCtx& F, const Poly& a, Elem x);
bool poly_less(const Poly& a, const Poly& b);  // degree, then lexicographic

std::string format_poly(const FieldCtx& F, const Poly& f);
Poly parse_poly(const FieldCtx& F, const std::string& s);

enum class PolyKind { Monic, Squarefree, Irreducible };

std::uint64_t checked_pow(std::uint64_t b, unsigned e);
std::uint64_t monic_count(const FieldCtx& F, int n);
// lexicographic on (c_0, ..., c_{n-1}): c_0 is the most significant digit
Poly monic_from_index(const FieldCtx& F, int n, std::uint64_t idx);
std::uint64_t monic_index(const FieldCtx& F, const Poly& f);

bool is_squarefree(const FieldCtx& F, const Poly& f);
bool is_irreducible(const FieldCtx& F, const Poly& f);
bool is_perfect_square(const FieldCtx& F, const Poly& f);

// Visits monic polynomials with index in [begin, end) that match kind.
void for_each_poly(const FieldCtx& F, PolyKind kind, int n, std::uint64_t begin,
                   std::uint64_t end,
                   const std::function<void(const Poly&, std::uint64_t)>& fn);
std::vector<Poly> enumerate(const FieldCtx& F, PolyKind kind, int n);

struct Factorization {
  Elem lead = 1;
  std::vector<std::pair<Poly, int>> factors;  // sorted by poly_less
};

Factorization factor(const FieldCtx& F, const Poly& f, std::uint64_t seed = 0x9d2c5680u);

std::int64_t von_mangoldt(const FieldCtx& F, const Poly& f);
mpz_class lambda_r(const FieldCtx& F, const Poly& f, int r);
mpz_class lambda_r(const Factorization& fac, int r);

mpz_class prime_count(std::uint64_t q, int n);
mpz_class prime_count_upto(std::uint64_t q, int m);    // Pi_q(m)
mpz_class primorial_degree(std::uint64_t q, int m);    // deg of product of P in P_{<=m}

// primes[d] lists P_d in lexicographic order, d = 0 unused
std::vector<std::vector<Poly>> prime_table(const FieldCtx& F, int max_deg);

}  // namespace fflab
