#include "fflab/lfunc.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

#include "fflab/characters.hpp"

namespace fflab {

// ---- LogLinear ----

double LogLinear::real() const { return a.get_d() * std::log(double(q)) + b.get_d(); }

LogLinear LogLinear::operator+(const LogLinear& o) const {
  LogLinear r{q, a + o.a, b + o.b};
  return r;
}

LogLinear LogLinear::operator-(const LogLinear& o) const {
  LogLinear r{q, a - o.a, b - o.b};
  return r;
}

LogLinear LogLinear::scaled(const mpq_class& s) const {
  LogLinear r{q, a * s, b * s};
  return r;
}

std::string LogLinear::str() const {
  std::ostringstream os;
  os << a.get_str() << "*log(" << q << ")";
  if (b != 0) os << (b > 0 ? " + " : " - ") << mpq_class(abs(b)).get_str();
  return os.str();
}

const char* method_name(LMethod m) {
  switch (m) {
    case LMethod::Direct: return "direct";
    case LMethod::PointCount: return "pointcount";
    case LMethod::Euler: return "euler";
  }
  return "?";
}

LMethod parse_method(const std::string& s) {
  if (s == "direct") return LMethod::Direct;
  if (s == "pointcount") return LMethod::PointCount;
  if (s == "euler") return LMethod::Euler;
  fail(ErrorCode::InvalidArgument, "unknown L-polynomial method '" + s + "'");
}

int genus_of(int n) { return n % 2 == 0 ? n / 2 - 1 : (n - 1) / 2; }

namespace {

void check_discriminant(const FieldCtx& F, const Poly& D) {
  if (D.is_zero()) fail(ErrorCode::ZeroPolynomial, "D is zero");
  if (D.deg() == 0) fail(ErrorCode::DegreeZero, "D has degree 0");
  if (!D.is_monic()) fail(ErrorCode::InvalidArgument, "D must be monic");
  if (!is_squarefree(F, D)) fail(ErrorCode::NotSquareFree, format_poly(F, D) + " is not square-free");
}

mpz_class qpow(std::uint32_t q, int e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), q, unsigned(e));
  return r;
}

std::int64_t to_i64(const mpz_class& z) {
  if (!z.fits_slong_p()) throw std::overflow_error("L-polynomial coefficient exceeds 64 bits");
  return z.get_si();
}

// multiply by (1 - T)
std::vector<std::int64_t> times_one_minus_t(const std::vector<std::int64_t>& P) {
  std::vector<std::int64_t> L(P.size() + 1, 0);
  for (std::size_t k = 0; k < P.size(); ++k) {
    L[k] += P[k];
    L[k + 1] -= P[k];
  }
  return L;
}

// complete a palindromic-up-to-q-powers polynomial of degree 2g from p_0..p_g
std::vector<std::int64_t> complete_functional(std::uint32_t q, const std::vector<std::int64_t>& head, int g) {
  std::vector<std::int64_t> P(std::size_t(2 * g) + 1);
  for (int k = 0; k <= g; ++k) P[k] = head[k];
  for (int k = 0; k < g; ++k) P[2 * g - k] = to_i64(qpow(q, g - k) * mpz_class(head[k]));
  return P;
}

struct ExtField {
  const FieldCtx& F;
  Poly R;
  int m;
  mpz_class half;  // (q^m - 1)/2

  ExtField(const FieldCtx& F_, int m_) : F(F_), m(m_) {
    std::uint64_t total = monic_count(F, m);
    for (std::uint64_t i = 0; i < total; ++i) {
      Poly c = monic_from_index(F, m, i);
      if (is_irreducible(F, c)) {
        R = c;
        break;
      }
    }
    half = (qpow(F.q(), m) - 1) / 2;
  }
  int eta(const Poly& v) const {
    if (v.is_zero()) return 0;
    Poly w = poly_powmod(F, v, half, R);
    return w.is_one() ? 1 : -1;
  }
};

// S_m = sum over x in F_{q^m} of eta_m(D(x))
mpz_class affine_char_sum(const FieldCtx& F, const Poly& D, int m) {
  long s = 0;
  if (m == 1) {
    for (Elem x = 0; x < F.q(); ++x) s += F.eta(poly_eval(F, D, x));
    return s;
  }
  ExtField E(F, m);
  const std::uint64_t total = monic_count(F, m);
  Poly x;
  x.c.assign(std::size_t(m), 0);
  std::vector<Elem> digits(std::size_t(m), 0);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    x.c = digits;
    x.trim();
    Poly v;
    for (int i = D.deg(); i >= 0; --i) {
      v = poly_mulmod(F, v, x, E.R);
      v = poly_add(F, v, Poly::constant(D.c[i]));
    }
    s += E.eta(v);
    for (int j = 0; j < m; ++j) {
      if (++digits[j] < F.q()) break;
      digits[j] = 0;
    }
  }
  return s;
}

}  // namespace

std::vector<mpz_class> power_sums(const std::vector<std::int64_t>& a, int N_max) {
  std::vector<mpz_class> c(std::size_t(std::max(N_max, 0)) + 1, 0);
  auto coef = [&](int k) { return k < int(a.size()) ? mpz_class(a[k]) : mpz_class(0); };
  for (int k = 1; k <= N_max; ++k) {
    mpz_class v = k * coef(k);
    for (int i = 1; i < k; ++i) v -= c[i] * coef(k - i);
    c[k] = v;
  }
  return c;
}

std::vector<mpz_class> coeffs_from_power_sums(const std::vector<mpz_class>& c, int deg) {
  std::vector<mpz_class> a(std::size_t(deg) + 1, 0);
  a[0] = 1;
  for (int k = 1; k <= deg; ++k) {
    mpz_class s = 0;
    for (int i = 1; i <= k; ++i) s += c[i] * a[k - i];
    if (s % k != 0) throw std::logic_error("Newton identity produced a non-integer coefficient");
    a[k] = s / k;
  }
  return a;
}

std::vector<std::int64_t> character_l_polynomial(const FieldCtx& F, const Poly& f) {
  if (!f.is_monic() || f.deg() < 1) fail(ErrorCode::InvalidArgument, "modulus must be monic nonconstant");
  std::vector<std::int64_t> L(std::size_t(f.deg()), 0);
  L[0] = 1;
  for (int k = 1; k < f.deg(); ++k) {
    long s = 0;
    for_each_poly(F, PolyKind::Monic, k, 0, monic_count(F, k),
                  [&](const Poly& g, std::uint64_t) { s += jacobi_symbol(F, f, g); });
    L[k] = s;
  }
  while (L.size() > 1 && L.back() == 0) L.pop_back();
  return L;
}

EulerEvaluator::EulerEvaluator(const FieldCtx& F, int n) : F_(F), n_(n), g_(genus_of(n)) {
  by_deg_.resize(std::size_t(g_) + 1);
  for (int d = 1; d <= g_; ++d) {
    const std::uint64_t size = monic_count(F, d);
    for (const Poly& P : enumerate(F, PolyKind::Irreducible, d)) {
      PrimeEntry e;
      e.P = P.c;
      e.table.assign(size, -1);
      e.table[0] = 0;
      std::vector<Elem> digits(std::size_t(d), 0);
      for (std::uint64_t idx = 1; idx < size; ++idx) {
        for (int j = 0; j < d; ++j) {
          if (++digits[j] < F.q()) break;
          digits[j] = 0;
        }
        Poly r(digits);
        Poly sq = poly_mod(F, poly_mul(F, r, r), P);
        std::uint64_t code = 0;
        for (int j = d - 1; j >= 0; --j) code = code * F.q() + sq.coeff(j);
        e.table[code] = 1;
      }
      by_deg_[d].push_back(std::move(e));
    }
  }
}

std::vector<std::int64_t> EulerEvaluator::coeffs(const Poly& D) const {
  if (D.deg() != n_) fail(ErrorCode::InvalidArgument, "degree mismatch in EulerEvaluator");
  const int g = g_;
  const std::uint32_t q = F_.q();
  std::vector<std::int64_t> s1(std::size_t(g) + 1, 0), s2(std::size_t(g) + 1, 0);
  std::vector<Elem> r;
  for (int d = 1; d <= g; ++d) {
    for (const PrimeEntry& e : by_deg_[d]) {
      r.assign(D.c.begin(), D.c.end());
      for (int i = n_; i >= d; --i) {
        Elem t = r[i];
        if (!t) continue;
        Elem nt = F_.neg(t);
        for (int j = 0; j < d; ++j) r[i - d + j] = F_.add(r[i - d + j], F_.mul(nt, e.P[j]));
      }
      std::uint64_t code = 0;
      for (int j = d - 1; j >= 0; --j) code = code * q + r[j];
      int chi = e.table[code];
      s1[d] += chi;
      s2[d] += chi != 0;
    }
  }
  // c_N = sum_{d | N} d * sum_{P in P_d} chi(P)^{N/d}
  std::vector<std::int64_t> c(std::size_t(g) + 1, 0);
  for (int N = 1; N <= g; ++N)
    for (int d = 1; d <= N; ++d)
      if (N % d == 0) c[N] += d * ((N / d) % 2 ? s1[d] : s2[d]);
  std::vector<std::int64_t> a(std::size_t(g) + 1, 0);
  a[0] = 1;
  for (int k = 1; k <= g; ++k) {
    __int128 s = 0;
    for (int i = 1; i <= k; ++i) s += __int128(c[i]) * a[k - i];
    if (s % k != 0) throw std::logic_error("Newton identity produced a non-integer coefficient");
    a[k] = std::int64_t(s / k);
  }
  if (n_ % 2 == 1) return complete_functional(q, a, g);
  std::vector<std::int64_t> p(std::size_t(g) + 1, 0);
  std::int64_t run = 0;
  for (int k = 0; k <= g; ++k) p[k] = run += a[k];
  return times_one_minus_t(complete_functional(q, p, g));
}

LPolynomial l_polynomial(const FieldCtx& F, const Poly& D, LMethod method) {
  check_discriminant(F, D);
  LPolynomial L;
  L.q = F.q();
  L.D = D;
  L.n = D.deg();
  const int n = L.n;
  switch (method) {
    case LMethod::Direct: {
      QuadCharacter chi(F, D);
      L.coeffs.assign(std::size_t(n), 0);
      L.coeffs[0] = 1;
      for (int k = 1; k <= n; ++k) {
        long s = 0;
        for_each_poly(F, PolyKind::Monic, k, 0, monic_count(F, k),
                      [&](const Poly& f, std::uint64_t) { s += chi(f); });
        if (k < n) L.coeffs[k] = s;
        else if (s != 0) throw std::logic_error("character sum over M_n is nonzero");
      }
      break;
    }
    case LMethod::PointCount: {
      const int g = genus_of(n);
      const int degP = 2 * g;
      const int inf = n % 2 ? 1 : 2;
      const int M = std::max(degP, n - 1);
      std::vector<mpz_class> cP(std::size_t(M) + 1, 0);
      for (int m = 1; m <= M; ++m) cP[m] = affine_char_sum(F, D, m) + (inf - 1);
      auto P = coeffs_from_power_sums(cP, degP);
      std::vector<std::int64_t> Pi(P.size());
      for (std::size_t k = 0; k < P.size(); ++k) Pi[k] = to_i64(P[k]);
      auto check = power_sums(Pi, M);
      for (int m = 1; m <= M; ++m)
        if (check[m] != cP[m]) throw std::logic_error("point counts inconsistent with the zeta numerator");
      L.coeffs = n % 2 ? Pi : times_one_minus_t(Pi);
      break;
    }
    case LMethod::Euler: {
      EulerEvaluator ev(F, n);
      L.coeffs = ev.coeffs(D);
      break;
    }
  }
  return L;
}

mpq_class lambda_exact(std::uint32_t q, const std::vector<std::int64_t>& a) {
  const int m = int(a.size()) - 1;
  mpz_class num = 0, den = 0, qp = 1;
  for (int k = m; k >= 0; --k) {
    num += k * (mpz_class(a[k]) * qp);
    den += mpz_class(a[k]) * qp;
    qp *= q;
  }
  if (den == 0) fail(ErrorCode::PoleAtEvaluation, "L(1) vanishes");
  mpq_class r(num, den);
  r.canonicalize();
  return r;
}

mpq_class lambda_exact(const LPolynomial& L) { return lambda_exact(L.q, L.coeffs); }

LogLinear log_deriv_s0_direct(const LPolynomial& L) {
  mpz_class num = 0, den = 0;
  for (std::size_t k = 0; k < L.coeffs.size(); ++k) {
    num += mpz_class(L.coeffs[k]) * mpz_class(std::uint64_t(k));
    den += L.coeffs[k];
  }
  if (den == 0) fail(ErrorCode::PoleAtEvaluation, "L(0) vanishes (curve with split infinity)");
  mpq_class a(-num, den);
  a.canonicalize();
  return LogLinear{L.q, a, 0};
}

LogLinear log_deriv_s0_functional(const LPolynomial& L) {
  if (L.n % 2 == 0) fail(ErrorCode::PoleAtEvaluation, "L(0) vanishes (curve with split infinity)");
  return LogLinear{L.q, mpq_class(-(L.n - 1)) + lambda_exact(L), 0};
}

LogLinear log_deriv(const LPolynomial& L, At at) {
  if (at == At::S1) return LogLinear{L.q, -lambda_exact(L), 0};
  LogLinear direct = log_deriv_s0_direct(L);
  LogLinear fe = log_deriv_s0_functional(L);
  if (!(direct == fe)) throw std::logic_error("log-derivative at s=0 disagrees with the functional equation");
  return direct;
}

mpz_class class_number(const LPolynomial& L) {
  if (L.n % 2 == 0) fail(ErrorCode::EvenDegree, "class number is computed for odd deg D only");
  mpz_class h = 0;
  for (auto c : L.coeffs) h += c;
  return h;
}

mpz_class class_number(const FieldCtx& F, const Poly& D) {
  if (D.deg() % 2 == 0) fail(ErrorCode::EvenDegree, "class number is computed for odd deg D only");
  return class_number(l_polynomial(F, D));
}

LogLinear gamma_q(std::uint32_t q) {
  mpq_class a(int(q) - 3, 2 * (int(q) - 1));
  a.canonicalize();
  return LogLinear{q, a, 0};
}

LogLinear gamma_tilde(std::uint32_t q, int n) {
  LogLinear g = gamma_q(q);
  // split infinity: L = L^Art (1 - q^{-s}) contributes -log q/(q-1) at s = 1
  if (n % 2 == 0) {
    mpq_class shift(1, int(q) - 1);
    g.a -= shift;
  }
  return g;
}

LogLinear gamma_D(const LPolynomial& L) {
  return log_deriv(L, At::S1) + gamma_tilde(L.q, L.n);
}

LogLinear gamma_D(const FieldCtx& F, const Poly& D) { return gamma_D(l_polynomial(F, D)); }

std::vector<mpz_class> point_counts(const FieldCtx& F, const Poly& D, int M) {
  if (M < 1) fail(ErrorCode::InvalidArgument, "M must be >= 1");
  check_discriminant(F, D);
  const int inf = D.deg() % 2 ? 1 : 2;
  std::vector<mpz_class> N(std::size_t(M) + 1, 0);
  for (int m = 1; m <= M; ++m) N[m] = qpow(F.q(), m) + affine_char_sum(F, D, m) + inf;
  return N;
}

IharaEstimate gamma_via_ihara(const FieldCtx& F, const Poly& D, double tol) {
  if (!(tol > 0)) fail(ErrorCode::DomainError, "tol must be positive");
  check_discriminant(F, D);
  const std::uint32_t q = F.q();
  const int g = genus_of(D.deg());
  const double logq = std::log(double(q));
  IharaEstimate est;
  // tail: sum_{m > M} 2g q^{-m/2}, in log q units
  auto tail = [&](int M) { return 2.0 * g * std::pow(double(q), -(M + 1) / 2.0) / (1.0 - 1.0 / std::sqrt(double(q))); };
  int M = 1;
  while (g > 0 && tail(M) * logq >= tol) ++M;
  est.M = M;
  est.bound = g > 0 ? tail(M) * logq : 0.0;
  // q^m + 1 - N_m from affine counts up to 2g, extended through the zeta numerator
  std::vector<mpz_class> defect(std::size_t(M) + 1, 0);
  if (g > 0) {
    auto N = point_counts(F, D, 2 * g);
    std::vector<mpz_class> cP(std::size_t(2 * g) + 1, 0);
    for (int m = 1; m <= 2 * g; ++m) cP[m] = N[m] - qpow(q, m) - 1;
    auto P = coeffs_from_power_sums(cP, 2 * g);
    std::vector<std::int64_t> Pi(P.size());
    for (std::size_t k = 0; k < P.size(); ++k) Pi[k] = to_i64(P[k]);
    auto c = power_sums(Pi, M);
    for (int m = 1; m <= M; ++m) defect[m] = -c[m];
  }
  mpq_class s = gamma_q(q).a;
  for (int m = 1; m <= M; ++m) s += make_rat(defect[m], qpow(q, m));
  s.canonicalize();
  est.head = s;
  est.value = s.get_d() * logq;
  return est;
}

std::vector<std::int64_t> zeta_numerator(const LPolynomial& L) {
  if (L.n % 2 == 1) return L.coeffs;
  std::vector<std::int64_t> P(L.coeffs.size() - 1);
  std::int64_t run = 0;
  for (std::size_t k = 0; k < P.size(); ++k) P[k] = run += L.coeffs[k];
  if (run + L.coeffs.back() != 0) throw std::logic_error("L(T) is not divisible by 1 - T");
  return P;
}

namespace {

using QPoly = std::vector<mpq_class>;

void qtrim(QPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

QPoly qmod(QPoly a, const QPoly& b) {
  qtrim(a);
  while (a.size() >= b.size()) {
    mpq_class t = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= t * b[j];
    a.pop_back();
    qtrim(a);
  }
  return a;
}

QPoly qdiv(QPoly a, const QPoly& b) {
  qtrim(a);
  QPoly quo(a.size() >= b.size() ? a.size() - b.size() + 1 : 0);
  while (a.size() >= b.size()) {
    mpq_class t = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    quo[shift] = t;
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= t * b[j];
    a.pop_back();
    qtrim(a);
  }
  return quo;
}

QPoly qgcd(QPoly a, QPoly b) {
  qtrim(a);
  qtrim(b);
  while (!b.empty()) {
    QPoly r = qmod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

}  // namespace

LVerify verify_L(const LPolynomial& L) {
  LVerify v;
  const int g = genus_of(L.n);
  v.genus = g;
  const std::uint32_t q = L.q;
  std::vector<std::int64_t> P;
  try {
    P = zeta_numerator(L);
  } catch (const std::logic_error&) {
    return v;
  }
  v.func_eq = int(P.size()) == 2 * g + 1;
  for (int k = 0; v.func_eq && k <= g; ++k)
    v.func_eq = mpz_class(P[2 * g - k]) == qpow(q, g - k) * P[k];

  const long double target = 1.0L / std::sqrt((long double)q);
  v.rh = v.func_eq;
  if (g > 0 && v.rh) {
    QPoly Pq(P.begin(), P.end()), dP;
    for (std::size_t k = 1; k < Pq.size(); ++k) dP.push_back(Pq[k] * mpq_class(std::uint64_t(k)));
    QPoly sq = qdiv(Pq, qgcd(Pq, dP));
    const int m = int(sq.size()) - 1;
    std::vector<long double> c(sq.size());
    for (std::size_t k = 0; k < sq.size(); ++k) c[k] = (long double)mpq_class(sq[k] / sq.back()).get_d();
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(m, m);
    for (int i = 1; i < m; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < m; ++i) comp(i, m - 1) = -double(c[i]);
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
    for (int i = 0; i < m; ++i) {
      std::complex<long double> z(es.eigenvalues()[i].real(), es.eigenvalues()[i].imag());
      for (int it = 0; it < 8; ++it) {
        std::complex<long double> f = 0, df = 0;
        for (int k = m; k >= 0; --k) {
          df = df * z + f;
          f = f * z + c[k];
        }
        if (std::abs(df) == 0) break;
        z -= f / df;
      }
      long double dev = std::fabs(std::abs(z) - target);
      v.max_root_dev = std::max(v.max_root_dev, double(dev));
    }
    v.rh = v.max_root_dev < 1e-9;
  }
  if (v.rh && L.n % 2 == 0) {
    std::int64_t at1 = 0;
    for (auto x : P) at1 += x;
    v.rh = at1 != 0;
  }
  if (g >= 2) {
    long double x = target, val = 0;
    for (std::size_t k = L.coeffs.size(); k-- > 0;) val = val * x + L.coeffs[k];
    const double logq_g = std::log(double(g)) / std::log(double(q));
    const double bound = 2.0 * g / logq_g + 4.0 * std::sqrt(double(q)) * std::sqrt(double(g));
    v.lindelof = std::log(std::fabs(double(val))) <= bound;
  }
  return v;
}

LVerify verify_L(const FieldCtx& F, const Poly& D) { return verify_L(l_polynomial(F, D)); }

}  // namespace fflab
