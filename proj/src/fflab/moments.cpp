#include "fflab/moments.hpp"

#include <cmath>

#include "fflab/characters.hpp"
#include "fflab/lfunc.hpp"

namespace fflab {

mpq_class empirical_moment(const std::vector<mpq_class>& lambdas, int r) {
  if (r < 1) fail(ErrorCode::InvalidArgument, "r must be >= 1");
  if (lambdas.empty()) fail(ErrorCode::InvalidArgument, "no lambda values");
  mpq_class s = 0;
  for (auto& l : lambdas) {
    mpq_class p = 1;
    for (int i = 0; i < r; ++i) p *= l;
    s += p;
  }
  s /= mpq_class(mpz_class(std::uint64_t(lambdas.size())));
  s.canonicalize();
  return s;
}

double main_term_tail(std::uint32_t q, int r, int cutoff) {
  double s = 0;
  for (int d = cutoff + 1;; ++d) {
    double t = std::pow(2.0 * d, r) * std::pow(double(q), -d);
    s += t;
    // terms decay geometrically once d > r / log q
    if (d > cutoff + 5 && t < 1e-18 * s) break;
  }
  return s;
}

namespace {

// Truncated series in V (degree <= R) and T (degree <= J), row-major by V.
struct Bi {
  int R, J;
  std::vector<mpq_class> a;
  Bi(int R_, int J_) : R(R_), J(J_), a(std::size_t((R_ + 1) * (J_ + 1)), 0) {}
  mpq_class& at(int i, int j) { return a[std::size_t(i * (J + 1) + j)]; }
  const mpq_class& at(int i, int j) const { return a[std::size_t(i * (J + 1) + j)]; }
};

// B = log(A), A(0,0) = 1. Grading by total degree i + j.
Bi bi_log(const Bi& A) {
  Bi B(A.R, A.J);
  for (int w = 1; w <= A.R + A.J; ++w)
    for (int i = 0; i <= std::min(w, A.R); ++i) {
      const int j = w - i;
      if (j > A.J) continue;
      mpq_class s = mpq_class(w) * A.at(i, j);
      for (int a = 0; a <= i; ++a)
        for (int b = 0; b <= j; ++b) {
          if ((a == 0 && b == 0) || (a == i && b == j)) continue;
          const mpq_class& x = B.at(a, b);
          if (x == 0) continue;
          const mpq_class& y = A.at(i - a, j - b);
          if (y == 0) continue;
          s -= mpq_class(a + b) * x * y;
        }
      B.at(i, j) = s / w;
    }
  return B;
}

// B = exp(A), A(0,0) = 0
Bi bi_exp(const Bi& A) {
  Bi B(A.R, A.J);
  B.at(0, 0) = 1;
  for (int w = 1; w <= A.R + A.J; ++w)
    for (int i = 0; i <= std::min(w, A.R); ++i) {
      const int j = w - i;
      if (j > A.J) continue;
      mpq_class s = 0;
      for (int a = 0; a <= i; ++a)
        for (int b = 0; b <= j; ++b) {
          if (a == 0 && b == 0) continue;
          const mpq_class& x = A.at(a, b);
          if (x == 0) continue;
          const mpq_class& y = B.at(i - a, j - b);
          if (y == 0) continue;
          s += mpq_class(a + b) * x * y;
        }
      B.at(i, j) = s / w;
    }
  return B;
}

}  // namespace

MainTerm model_main_term(std::uint32_t q, int r, int cutoff) {
  if (r < 1) fail(ErrorCode::InvalidArgument, "r must be >= 1");
  if (cutoff < 1) fail(ErrorCode::InvalidArgument, "cutoff must be >= 1");
  // E[Z(T)^r] with Z(T) = sum_P d_P sum_k X_P^k (T^{d_P}/N(P))^k; the coefficient of
  // T^{2j} is the sum over deg f = j of Lambda_r(f^2)/N(f)^2 prod N(P)/(N(P)+1).
  const int J = 2 * cutoff;
  Bi logsum(r, J);
  for (int d = 1; d <= cutoff; ++d) {
    mpz_class N;
    mpz_ui_pow_ui(N.get_mpz_t(), q, unsigned(d));
    // d * sum_k s^k u^k with s = +1 and s = -1, u = T^d / N
    std::vector<mpq_class> plus(std::size_t(J) + 1, 0), minus(std::size_t(J) + 1, 0);
    mpq_class uk = 1;
    for (int k = 1; k * d <= J; ++k) {
      uk /= N;
      plus[std::size_t(k * d)] = d * uk;
      minus[std::size_t(k * d)] = (k % 2 ? -d : d) * uk;
    }
    // factor = 1 + sum_{k>=1} V^k/k! * N/(2(N+1)) (A^k + B^k)
    Bi fac(r, J);
    fac.at(0, 0) = 1;
    std::vector<mpq_class> pa(std::size_t(J) + 1, 0), pb(std::size_t(J) + 1, 0);
    pa[0] = pb[0] = 1;
    mpq_class w = make_rat(N, 2 * (N + 1));
    mpq_class fact = 1;
    for (int k = 1; k <= r; ++k) {
      std::vector<mpq_class> na(std::size_t(J) + 1, 0), nb(std::size_t(J) + 1, 0);
      for (int x = 0; x <= J; ++x) {
        if (pa[x] == 0 && pb[x] == 0) continue;
        for (int y = d; x + y <= J; y += d) {
          na[x + y] += pa[x] * plus[y];
          nb[x + y] += pb[x] * minus[y];
        }
      }
      pa.swap(na);
      pb.swap(nb);
      fact *= k;
      for (int j = 0; j <= J; ++j) fac.at(k, j) = w * (pa[j] + pb[j]) / fact;
    }
    Bi lf = bi_log(fac);
    mpz_class cnt = prime_count(q, d);
    for (auto& v : lf.a) v *= cnt;
    for (std::size_t i = 0; i < logsum.a.size(); ++i) logsum.a[i] += lf.a[i];
  }
  Bi E = bi_exp(logsum);
  MainTerm mt;
  mt.cutoff = cutoff;
  mpq_class s = 0;
  for (int j = 0; j <= J; ++j) s += E.at(r, j);
  mpz_class rf = 1;
  for (int k = 2; k <= r; ++k) rf *= k;
  s *= rf;
  s.canonicalize();
  mt.value = s;
  mt.tail = main_term_tail(q, r, cutoff);
  return mt;
}

MainTerm model_main_term_tol(std::uint32_t q, int r, double tol) {
  if (!(tol > 0)) fail(ErrorCode::DomainError, "tol must be positive");
  int c = 1;
  while (main_term_tail(q, r, c) >= tol) ++c;
  return model_main_term(q, r, c);
}

namespace {

// coefficient k of the sum over N_1 + ... + N_r = k of prod c_{N_i}
std::vector<mpz_class> power_of_series(const std::vector<mpz_class>& c, int r, int K) {
  std::vector<mpz_class> acc(std::size_t(K) + 1, 0);
  acc[0] = 1;
  for (int t = 0; t < r; ++t) {
    std::vector<mpz_class> nxt(std::size_t(K) + 1, 0);
    for (int i = 0; i <= K; ++i) {
      if (acc[i] == 0) continue;
      for (int j = 1; i + j <= K; ++j) nxt[i + j] += acc[i] * c[j];
    }
    acc.swap(nxt);
  }
  return acc;
}

}  // namespace

bool head_identity_check(const FieldCtx& F, const Poly& D, int r) {
  if (r < 1) fail(ErrorCode::InvalidArgument, "r must be >= 1");
  if (D.deg() < 2) fail(ErrorCode::InvalidDegree, "head identity needs n >= 2");
  auto L = l_polynomial(F, D);
  const int K = D.deg() - 1;
  auto lhs = power_of_series(power_sums(L.coeffs, K), r, K);
  QuadCharacter chi(F, D);
  for (int k = 0; k <= K; ++k) {
    mpz_class rhs = 0;
    for (auto& f : enumerate(F, PolyKind::Monic, k)) {
      int x = chi(f);
      if (x == 0) continue;
      mpz_class l = lambda_r(F, f, r);
      if (x > 0) rhs += l;
      else rhs -= l;
    }
    if (rhs != lhs[k]) return false;
  }
  return true;
}

ShortSum short_sum_power(const FieldCtx& F, const Poly& D, int r) {
  if (r < 1) fail(ErrorCode::InvalidArgument, "r must be >= 1");
  auto L = l_polynomial(F, D);
  QuadCharacter chi(F, D);
  ShortSum out;
  out.value = 0;
  mpz_class N = 1;
  for (int k = 0; k <= D.deg() - 1; ++k) {
    mpz_class s = 0;
    for (auto& f : enumerate(F, PolyKind::Monic, k)) {
      int x = chi(f);
      if (x == 0) continue;
      mpz_class l = lambda_r(F, f, r);
      if (x > 0) s += l;
      else s -= l;
    }
    out.value += make_rat(s, N);
    N *= F.q();
  }
  out.value.canonicalize();
  mpq_class lam = lambda_exact(L);
  out.exact = 1;
  for (int i = 0; i < r; ++i) out.exact *= lam;
  out.deviation = std::fabs(mpq_class(out.value - out.exact).get_d());
  return out;
}

double empirical_laplace(const std::vector<mpq_class>& lambdas, std::uint32_t q, double s) {
  if (lambdas.empty()) fail(ErrorCode::InvalidArgument, "no lambda values");
  if (s == 0) return 1.0;
  const double lq = std::log(double(q));
  double acc = 0;
  for (auto& l : lambdas) acc += std::exp(s * l.get_d() * lq);
  return acc / double(lambdas.size());
}

LerchResult lerch_phi(double x, int r, int n) {
  if (!(x > 0 && x < 1)) fail(ErrorCode::DomainError, "x must lie in (0,1)");
  if (r < 1 || n < 1) fail(ErrorCode::InvalidArgument, "r, n must be >= 1");
  LerchResult out;
  double s = 0, xk = 1;
  for (long k = 0;; ++k) {
    double t = std::pow(double(n + k), r) * xk;
    s += t;
    xk *= x;
    // past the peak of (n+k)^r x^k the remaining tail is below t * x' / (1 - x')
    const double ratio = std::pow(double(n + k + 1) / double(n + k), r) * x;
    if (ratio < 1 && t * ratio / (1 - ratio) < 1e-12 * s) break;
    if (xk == 0) break;
  }
  out.value = s;
  double fact = 1;
  for (int i = 2; i <= r; ++i) fact *= i;
  out.bound = std::pow(3.0 * n * r, r) * fact / std::pow(1 - x, r + 1);
  out.within = out.value <= out.bound;
  return out;
}

}  // namespace fflab
