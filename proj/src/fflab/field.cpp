#include "fflab/field.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <random>
#include <sstream>

namespace fflab {

const char* error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::NonOddPrime: return "NonOddPrime";
    case ErrorCode::InvalidDegree: return "InvalidDegree";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::NotSquareFree: return "NotSquareFree";
    case ErrorCode::DegreeZero: return "DegreeZero";
    case ErrorCode::EvenDegree: return "EvenDegree";
    case ErrorCode::PoleAtEvaluation: return "PoleAtEvaluation";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::NotIrreducible: return "NotIrreducible";
    case ErrorCode::SquareModulus: return "SquareModulus";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::InsufficientDecay: return "InsufficientDecay";
    case ErrorCode::MassDefect: return "MassDefect";
    case ErrorCode::SupportExceeded: return "SupportExceeded";
    case ErrorCode::NonTerminating: return "NonTerminating";
    case ErrorCode::Io: return "Io";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Unsupported: return "Unsupported";
  }
  return "Unknown";
}

namespace {

bool is_prime_u64(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

constexpr std::uint32_t kMaxTableOrder = 1024;
constexpr std::uint32_t kMaxEtaTable = 1u << 20;

}  // namespace

FieldCtx FieldCtx::make(std::int64_t p, std::int64_t k) {
  if (p < 3 || p % 2 == 0 || !is_prime_u64(p))
    fail(ErrorCode::NonOddPrime, "p = " + std::to_string(p) + " is not an odd prime");
  if (k < 1) fail(ErrorCode::InvalidDegree, "extension degree k must be >= 1");
  if (p > (std::int64_t(1) << 31)) fail(ErrorCode::Unsupported, "p too large");

  auto im = std::make_shared<Impl>();
  im->p = std::uint32_t(p);
  im->k = std::uint32_t(k);
  if (k == 1) {
    im->q = im->p;
    im->modulus = {0, 1};
  } else {
    std::uint64_t q = checked_pow(std::uint64_t(p), unsigned(k));
    if (q > kMaxTableOrder)
      fail(ErrorCode::Unsupported, "extension fields are limited to q <= 1024");
    im->q = std::uint32_t(q);
    FieldCtx base = make(p, 1);
    std::uint64_t total = monic_count(base, int(k));
    for (std::uint64_t i = 0; i < total; ++i) {
      Poly m = monic_from_index(base, int(k), i);
      if (is_irreducible(base, m)) {
        im->modulus.assign(m.c.begin(), m.c.end());
        break;
      }
    }
  }
  if (im->q <= kMaxTableOrder) {
    const std::uint32_t Q = im->q, P = im->p, K = im->k;
    auto to_coords = [&](Elem e) {
      std::vector<std::uint32_t> c(K);
      for (std::uint32_t j = 0; j < K; ++j) {
        c[j] = e % P;
        e /= P;
      }
      return c;
    };
    auto from = [&](const std::vector<std::uint32_t>& c) {
      Elem e = 0;
      for (std::uint32_t j = K; j-- > 0;) e = e * P + c[j];
      return e;
    };
    im->add_t.resize(std::size_t(Q) * Q);
    im->mul_t.resize(std::size_t(Q) * Q);
    im->neg_t.resize(Q);
    for (Elem a = 0; a < Q; ++a) {
      auto ca = to_coords(a);
      std::vector<std::uint32_t> n(K);
      for (std::uint32_t j = 0; j < K; ++j) n[j] = (P - ca[j]) % P;
      im->neg_t[a] = from(n);
      for (Elem b = 0; b < Q; ++b) {
        auto cb = to_coords(b);
        std::vector<std::uint32_t> s(K);
        for (std::uint32_t j = 0; j < K; ++j) s[j] = (ca[j] + cb[j]) % P;
        im->add_t[std::size_t(a) * Q + b] = from(s);
        std::vector<std::uint64_t> prod(2 * K - 1, 0);
        for (std::uint32_t i = 0; i < K; ++i)
          for (std::uint32_t j = 0; j < K; ++j) prod[i + j] += std::uint64_t(ca[i]) * cb[j];
        for (auto& v : prod) v %= P;
        for (std::size_t d = prod.size(); d-- > K;) {
          std::uint64_t top = prod[d];
          if (!top) continue;
          for (std::uint32_t j = 0; j < K; ++j)
            prod[d - K + j] = (prod[d - K + j] + top * (P - im->modulus[j])) % P;
          prod[d] = 0;
        }
        std::vector<std::uint32_t> r(K);
        for (std::uint32_t j = 0; j < K; ++j) r[j] = std::uint32_t(prod[j]);
        im->mul_t[std::size_t(a) * Q + b] = from(r);
      }
    }
    im->inv_t.assign(Q, 0);
    for (Elem a = 1; a < Q; ++a)
      for (Elem b = 1; b < Q; ++b)
        if (im->mul_t[std::size_t(a) * Q + b] == 1) {
          im->inv_t[a] = b;
          break;
        }
  }
  FieldCtx F;
  F.im_ = im;
  if (im->q <= kMaxEtaTable) {
    std::vector<std::int8_t> eta(im->q, -1);
    eta[0] = 0;
    for (Elem a = 1; a < im->q; ++a) eta[F.mul(a, a)] = 1;
    im->eta_t = std::move(eta);
  }
  return F;
}

FieldCtx FieldCtx::from_order(std::int64_t q) {
  if (q < 3 || q % 2 == 0) fail(ErrorCode::NonOddPrime, "q = " + std::to_string(q) + " is not an odd prime power");
  std::int64_t p = 0;
  for (std::int64_t d = 3; d * d <= q; d += 2)
    if (q % d == 0) {
      p = d;
      break;
    }
  if (p == 0) return make(q, 1);
  std::int64_t k = 0, r = q;
  while (r % p == 0) {
    r /= p;
    ++k;
  }
  if (r != 1) fail(ErrorCode::NonOddPrime, "q = " + std::to_string(q) + " is not a prime power");
  return make(p, k);
}

Elem FieldCtx::inv(Elem a) const {
  if (a == 0) fail(ErrorCode::DomainError, "inverse of zero");
  if (!im_->inv_t.empty()) return im_->inv_t[a];
  return pow(a, im_->p - 2);
}

Elem FieldCtx::pow(Elem a, std::uint64_t e) const {
  Elem r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

int FieldCtx::eta_slow(Elem a) const {
  if (a == 0) return 0;
  return pow(a, (im_->q - 1) / 2) == 1 ? 1 : -1;
}

Elem FieldCtx::from_int(std::int64_t v) const {
  std::int64_t p = im_->p;
  return Elem(((v % p) + p) % p);
}

std::vector<std::uint32_t> FieldCtx::coords(Elem a) const {
  std::vector<std::uint32_t> c(im_->k);
  for (auto& x : c) {
    x = a % im_->p;
    a /= im_->p;
  }
  return c;
}

Elem FieldCtx::from_coords(const std::vector<std::int64_t>& c) const {
  if (c.size() > im_->k) fail(ErrorCode::Parse, "too many coordinates for an element of F_q");
  Elem e = 0;
  for (std::size_t j = c.size(); j-- > 0;) e = e * im_->p + from_int(c[j]);
  return e;
}

// ---- polynomial arithmetic ----

Poly poly_add(const FieldCtx& F, const Poly& a, const Poly& b) {
  const Poly& big = a.c.size() >= b.c.size() ? a : b;
  const Poly& small = a.c.size() >= b.c.size() ? b : a;
  Poly r;
  r.c = big.c;
  for (std::size_t i = 0; i < small.c.size(); ++i) r.c[i] = F.add(r.c[i], small.c[i]);
  r.trim();
  return r;
}

Poly poly_sub(const FieldCtx& F, const Poly& a, const Poly& b) {
  Poly r;
  r.c.assign(std::max(a.c.size(), b.c.size()), 0);
  for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = F.sub(a.coeff(int(i)), b.coeff(int(i)));
  r.trim();
  return r;
}

Poly poly_mul(const FieldCtx& F, const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  Poly r;
  r.c.assign(a.c.size() + b.c.size() - 1, 0);
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (!a.c[i]) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j)
      r.c[i + j] = F.add(r.c[i + j], F.mul(a.c[i], b.c[j]));
  }
  r.trim();
  return r;
}

Poly poly_scale(const FieldCtx& F, const Poly& a, Elem s) {
  Poly r;
  r.c.resize(a.c.size());
  for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] = F.mul(a.c[i], s);
  r.trim();
  return r;
}

std::pair<Poly, Poly> poly_divmod(const FieldCtx& F, const Poly& a, const Poly& b) {
  if (b.is_zero()) fail(ErrorCode::ZeroPolynomial, "division by the zero polynomial");
  if (a.deg() < b.deg()) return {Poly(), a};
  std::vector<Elem> rem = a.c;
  std::vector<Elem> quo(a.c.size() - b.c.size() + 1, 0);
  const int db = b.deg();
  const Elem linv = F.inv(b.lead());
  for (int i = a.deg(); i >= db; --i) {
    Elem t = rem[i];
    if (!t) continue;
    if (linv != 1) t = F.mul(t, linv);
    quo[i - db] = t;
    Elem nt = F.neg(t);
    for (int j = 0; j <= db; ++j) rem[i - db + j] = F.add(rem[i - db + j], F.mul(nt, b.c[j]));
  }
  rem.resize(db);
  return {Poly(std::move(quo)), Poly(std::move(rem))};
}

Poly poly_mod(const FieldCtx& F, const Poly& a, const Poly& b) {
  if (b.is_zero()) fail(ErrorCode::ZeroPolynomial, "reduction modulo the zero polynomial");
  if (a.deg() < b.deg()) return a;
  std::vector<Elem> rem = a.c;
  const int db = b.deg();
  const Elem linv = F.inv(b.lead());
  for (int i = a.deg(); i >= db; --i) {
    Elem t = rem[i];
    if (!t) continue;
    if (linv != 1) t = F.mul(t, linv);
    Elem nt = F.neg(t);
    for (int j = 0; j <= db; ++j) rem[i - db + j] = F.add(rem[i - db + j], F.mul(nt, b.c[j]));
  }
  rem.resize(db);
  return Poly(std::move(rem));
}

Poly poly_div(const FieldCtx& F, const Poly& a, const Poly& b) { return poly_divmod(F, a, b).first; }

Poly poly_monic(const FieldCtx& F, const Poly& a) {
  if (a.is_zero() || a.lead() == 1) return a;
  return poly_scale(F, a, F.inv(a.lead()));
}

Poly poly_gcd(const FieldCtx& F, const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = poly_mod(F, x, y);
    x = std::move(y);
    y = std::move(r);
  }
  return poly_monic(F, x);
}

Poly poly_derivative(const FieldCtx& F, const Poly& a) {
  if (a.c.size() <= 1) return Poly();
  Poly r;
  r.c.resize(a.c.size() - 1);
  for (std::size_t i = 1; i < a.c.size(); ++i) r.c[i - 1] = F.mul(a.c[i], F.from_int(std::int64_t(i)));
  r.trim();
  return r;
}

Poly poly_pow(const FieldCtx& F, const Poly& a, unsigned e) {
  Poly r = Poly::one(), b = a;
  while (e) {
    if (e & 1) r = poly_mul(F, r, b);
    e >>= 1;
    if (e) b = poly_mul(F, b, b);
  }
  return r;
}

Poly poly_mulmod(const FieldCtx& F, const Poly& a, const Poly& b, const Poly& m) {
  return poly_mod(F, poly_mul(F, a, b), m);
}

Poly poly_powmod(const FieldCtx& F, const Poly& a, std::uint64_t e, const Poly& m) {
  Poly r = poly_mod(F, Poly::one(), m), b = poly_mod(F, a, m);
  while (e) {
    if (e & 1) r = poly_mulmod(F, r, b, m);
    e >>= 1;
    if (e) b = poly_mulmod(F, b, b, m);
  }
  return r;
}

Poly poly_powmod(const FieldCtx& F, const Poly& a, const mpz_class& e, const Poly& m) {
  Poly r = poly_mod(F, Poly::one(), m), b = poly_mod(F, a, m);
  const std::size_t bits = e == 0 ? 0 : mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    r = poly_mulmod(F, r, r, m);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = poly_mulmod(F, r, b, m);
  }
  return r;
}

Elem poly_eval(const FieldCtx& F, const Poly& a, Elem x) {
  Elem r = 0;
  for (std::size_t i = a.c.size(); i-- > 0;) r = F.add(F.mul(r, x), a.c[i]);
  return r;
}

bool poly_less(const Poly& a, const Poly& b) {
  if (a.deg() != b.deg()) return a.deg() < b.deg();
  return std::lexicographical_compare(a.c.begin(), a.c.end(), b.c.begin(), b.c.end());
}

// ---- text format ----

std::string format_poly(const FieldCtx& F, const Poly& f) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < f.c.size(); ++i) {
    if (i) os << ',';
    Elem e = f.c[i];
    if (F.k() == 1 || e < F.p()) {
      os << e;
    } else {
      auto cs = F.coords(e);
      os << '[';
      for (std::size_t j = 0; j < cs.size(); ++j) os << (j ? "," : "") << cs[j];
      os << ']';
    }
  }
  return os.str();
}

namespace {

struct Cursor {
  const std::string& s;
  std::size_t i = 0;
  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char ch) {
    skip();
    if (i < s.size() && s[i] == ch) {
      ++i;
      return true;
    }
    return false;
  }
  std::int64_t integer() {
    skip();
    std::size_t start = i;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    std::size_t digits = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == digits || i - digits > 18) fail(ErrorCode::Parse, "bad integer in polynomial text '" + s + "'");
    return std::stoll(s.substr(start, i - start));
  }
};

}  // namespace

Poly parse_poly(const FieldCtx& F, const std::string& s) {
  Cursor cur{s};
  std::vector<Elem> c;
  do {
    if (cur.eat('[')) {
      std::vector<std::int64_t> co;
      if (!cur.eat(']')) {
        do co.push_back(cur.integer());
        while (cur.eat(','));
        if (!cur.eat(']')) fail(ErrorCode::Parse, "unterminated '[' in '" + s + "'");
      }
      c.push_back(F.from_coords(co));
    } else {
      c.push_back(F.from_int(cur.integer()));
    }
  } while (cur.eat(','));
  cur.skip();
  if (cur.i != s.size()) fail(ErrorCode::Parse, "trailing characters in polynomial text '" + s + "'");
  return Poly(std::move(c));
}

// ---- enumeration ----

std::uint64_t checked_pow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (r > (std::uint64_t(1) << 62) / b) fail(ErrorCode::Unsupported, "q^n overflows 64 bits");
    r *= b;
  }
  return r;
}

std::uint64_t monic_count(const FieldCtx& F, int n) { return checked_pow(F.q(), unsigned(n)); }

Poly monic_from_index(const FieldCtx& F, int n, std::uint64_t idx) {
  Poly f;
  f.c.assign(std::size_t(n) + 1, 0);
  f.c[n] = 1;
  for (int j = n - 1; j >= 0; --j) {
    f.c[j] = Elem(idx % F.q());
    idx /= F.q();
  }
  return f;
}

std::uint64_t monic_index(const FieldCtx& F, const Poly& f) {
  std::uint64_t idx = 0;
  for (int j = 0; j < f.deg(); ++j) idx = idx * F.q() + f.c[j];
  return idx;
}

bool is_squarefree(const FieldCtx& F, const Poly& f) {
  if (f.is_zero()) return false;
  if (f.deg() == 0) return true;
  Poly d = poly_derivative(F, f);
  if (d.is_zero()) return false;
  return poly_gcd(F, f, d).deg() == 0;
}

bool is_irreducible(const FieldCtx& F, const Poly& f0) {
  const int n = f0.deg();
  if (n <= 0) return false;
  if (n == 1) return true;
  Poly f = poly_monic(F, f0);
  std::vector<int> prime_divs;
  for (int r = 2, m = n; r <= m; ++r)
    if (m % r == 0) {
      prime_divs.push_back(r);
      while (m % r == 0) m /= r;
    }
  const Poly x = Poly::x();
  std::vector<Poly> frob(std::size_t(n) + 1);
  frob[0] = x;
  for (int i = 1; i <= n; ++i) frob[i] = poly_powmod(F, frob[i - 1], std::uint64_t(F.q()), f);
  if (frob[n] != x) return false;
  for (int r : prime_divs) {
    Poly g = poly_gcd(F, poly_sub(F, frob[n / r], x), f);
    if (g.deg() != 0) return false;
  }
  return true;
}

void for_each_poly(const FieldCtx& F, PolyKind kind, int n, std::uint64_t begin,
                   std::uint64_t end,
                   const std::function<void(const Poly&, std::uint64_t)>& fn) {
  if (n < 0) fail(ErrorCode::InvalidDegree, "negative degree");
  if (n == 0) {
    if (kind == PolyKind::Monic && begin == 0 && end > 0) fn(Poly::one(), 0);
    return;
  }
  end = std::min(end, monic_count(F, n));
  if (begin >= end) return;
  Poly f = monic_from_index(F, n, begin);
  const Elem q = F.q();
  for (std::uint64_t idx = begin; idx < end; ++idx) {
    bool keep = true;
    if (kind == PolyKind::Squarefree) keep = is_squarefree(F, f);
    else if (kind == PolyKind::Irreducible) keep = is_irreducible(F, f);
    if (keep) fn(f, idx);
    for (int j = n - 1; j >= 0; --j) {
      if (++f.c[j] < q) break;
      f.c[j] = 0;
    }
  }
}

std::vector<Poly> enumerate(const FieldCtx& F, PolyKind kind, int n) {
  std::vector<Poly> out;
  for_each_poly(F, kind, n, 0, n == 0 ? 1 : monic_count(F, n),
                [&](const Poly& f, std::uint64_t) { out.push_back(f); });
  return out;
}

// ---- factorization ----

namespace {

Poly pth_root(const FieldCtx& F, const Poly& f) {
  const std::uint32_t p = F.p();
  std::uint64_t inv_frob = 1;
  for (std::uint32_t j = 1; j < F.k(); ++j) inv_frob *= p;
  Poly r;
  r.c.resize(std::size_t(f.deg() / int(p)) + 1);
  for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = F.pow(f.coeff(int(i * p)), inv_frob);
  r.trim();
  return r;
}

void squarefree_decomp(const FieldCtx& F, const Poly& f, int mult, std::vector<std::pair<Poly, int>>& out) {
  if (f.deg() <= 0) return;
  Poly d = poly_derivative(F, f);
  if (d.is_zero()) {
    squarefree_decomp(F, pth_root(F, f), mult * int(F.p()), out);
    return;
  }
  Poly c = poly_gcd(F, f, d);
  Poly w = poly_div(F, f, c);
  int i = 1;
  while (w.deg() > 0) {
    Poly y = poly_gcd(F, w, c);
    Poly z = poly_div(F, w, y);
    if (z.deg() > 0) out.emplace_back(z, i * mult);
    ++i;
    w = y;
    c = poly_div(F, c, y);
  }
  if (c.deg() > 0) squarefree_decomp(F, pth_root(F, c), mult * int(F.p()), out);
}

void equal_degree(const FieldCtx& F, const Poly& g, int d, std::mt19937_64& rng, std::vector<Poly>& out) {
  if (g.deg() == d) {
    out.push_back(g);
    return;
  }
  mpz_class qd;
  mpz_ui_pow_ui(qd.get_mpz_t(), F.q(), unsigned(d));
  mpz_class e = (qd - 1) / 2;
  std::uniform_int_distribution<std::uint32_t> coef(0, F.q() - 1);
  for (;;) {
    Poly a;
    a.c.resize(std::size_t(g.deg()));
    for (auto& x : a.c) x = coef(rng);
    a.trim();
    if (a.deg() <= 0) continue;
    Poly b = poly_sub(F, poly_powmod(F, a, e, g), Poly::one());
    Poly u = poly_gcd(F, g, b);
    if (u.deg() > 0 && u.deg() < g.deg()) {
      equal_degree(F, u, d, rng, out);
      equal_degree(F, poly_div(F, g, u), d, rng, out);
      return;
    }
  }
}

}  // namespace

Factorization factor(const FieldCtx& F, const Poly& f, std::uint64_t seed) {
  if (f.is_zero()) fail(ErrorCode::ZeroPolynomial, "cannot factor the zero polynomial");
  Factorization res;
  res.lead = f.lead();
  Poly g = poly_monic(F, f);
  std::vector<std::pair<Poly, int>> sqf;
  squarefree_decomp(F, g, 1, sqf);
  std::mt19937_64 rng(seed);
  const Poly x = Poly::x();
  for (auto& [part, mult] : sqf) {
    Poly rest = part;
    Poly h = poly_mod(F, x, rest);
    for (int i = 1; rest.deg() >= 2 * i; ++i) {
      h = poly_powmod(F, h, std::uint64_t(F.q()), rest);
      Poly dd = poly_gcd(F, rest, poly_sub(F, h, x));
      if (dd.deg() > 0) {
        std::vector<Poly> irr;
        equal_degree(F, dd, i, rng, irr);
        for (auto& P : irr) res.factors.emplace_back(P, mult);
        rest = poly_div(F, rest, dd);
        h = poly_mod(F, h, rest);
      }
    }
    if (rest.deg() > 0) res.factors.emplace_back(rest, mult);
  }
  std::sort(res.factors.begin(), res.factors.end(),
            [](const auto& a, const auto& b) { return poly_less(a.first, b.first); });
  std::vector<std::pair<Poly, int>> merged;
  for (auto& pe : res.factors) {
    if (!merged.empty() && merged.back().first == pe.first) merged.back().second += pe.second;
    else merged.push_back(pe);
  }
  res.factors = std::move(merged);
  return res;
}

std::int64_t von_mangoldt(const FieldCtx& F, const Poly& f) {
  if (f.deg() <= 0) return 0;
  Factorization fac = factor(F, f);
  return fac.factors.size() == 1 ? fac.factors[0].first.deg() : 0;
}

namespace {

mpz_class lambda_rec(const std::vector<int>& degs, std::vector<int>& e, int r,
                     std::map<std::pair<int, std::vector<int>>, mpz_class>& memo) {
  int nonzero = 0, which = -1;
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i]) {
      ++nonzero;
      which = int(i);
    }
  if (nonzero == 0) return 0;
  if (r == 1) return nonzero == 1 ? mpz_class(degs[which]) : mpz_class(0);
  auto key = std::make_pair(r, e);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  mpz_class total = 0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    const int ei = e[i];
    for (int k = 1; k <= ei; ++k) {
      e[i] = ei - k;
      total += degs[i] * lambda_rec(degs, e, r - 1, memo);
    }
    e[i] = ei;
  }
  memo.emplace(std::move(key), total);
  return total;
}

}  // namespace

mpz_class lambda_r(const Factorization& fac, int r) {
  if (r < 1) fail(ErrorCode::InvalidArgument, "lambda_r needs r >= 1");
  std::vector<int> degs, e;
  for (auto& [P, m] : fac.factors) {
    degs.push_back(P.deg());
    e.push_back(m);
  }
  std::map<std::pair<int, std::vector<int>>, mpz_class> memo;
  return lambda_rec(degs, e, r, memo);
}

mpz_class lambda_r(const FieldCtx& F, const Poly& f, int r) {
  if (f.deg() <= 0) return 0;
  return lambda_r(factor(F, f), r);
}

mpz_class prime_count(std::uint64_t q, int n) {
  if (n < 1) fail(ErrorCode::InvalidDegree, "prime_count needs n >= 1");
  auto mobius = [](int m) {
    int mu = 1;
    for (int d = 2; d * d <= m; ++d)
      if (m % d == 0) {
        m /= d;
        if (m % d == 0) return 0;
        mu = -mu;
      }
    if (m > 1) mu = -mu;
    return mu;
  };
  mpz_class s = 0;
  for (int d = 1; d <= n; ++d) {
    if (n % d) continue;
    int mu = mobius(d);
    if (!mu) continue;
    mpz_class t;
    mpz_ui_pow_ui(t.get_mpz_t(), q, unsigned(n / d));
    s += mu * t;
  }
  return s / n;
}

mpz_class prime_count_upto(std::uint64_t q, int m) {
  mpz_class s = 0;
  for (int j = 1; j <= m; ++j) s += prime_count(q, j);
  return s;
}

mpz_class primorial_degree(std::uint64_t q, int m) {
  mpz_class s = 0;
  for (int j = 1; j <= m; ++j) s += j * prime_count(q, j);
  return s;
}

std::vector<std::vector<Poly>> prime_table(const FieldCtx& F, int max_deg) {
  std::vector<std::vector<Poly>> t(std::size_t(std::max(max_deg, 0)) + 1);
  for (int d = 1; d <= max_deg; ++d) t[d] = enumerate(F, PolyKind::Irreducible, d);
  return t;
}

bool is_perfect_square(const FieldCtx& F, const Poly& f) {
  if (f.is_zero()) return true;
  if (F.eta(f.lead()) != 1) return false;
  for (auto& [P, e] : factor(F, f).factors)
    if (e % 2) return false;
  return true;
}

}  // namespace fflab
