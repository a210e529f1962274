#include "fflab/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fflab/errors.hpp"

namespace fflab {

double EmpiricalCDF::operator()(double x) const {
  if (values.empty()) return 0;
  return double(std::upper_bound(values.begin(), values.end(), x) - values.begin()) / double(values.size());
}

double EmpiricalCDF::left_limit(double x) const {
  if (values.empty()) return 0;
  return double(std::lower_bound(values.begin(), values.end(), x) - values.begin()) / double(values.size());
}

double EmpiricalCDF::mean() const {
  double s = 0;
  for (double v : values) s += v;
  return values.empty() ? 0 : s / double(values.size());
}

EmpiricalCDF empirical_cdf(std::uint32_t q, int n, const std::vector<mpq_class>& lambdas) {
  EmpiricalCDF F;
  F.q = q;
  F.n = n;
  const double lq = std::log(double(q));
  F.values.reserve(lambdas.size());
  for (auto& l : lambdas) F.values.push_back(l.get_d() * lq);
  std::sort(F.values.begin(), F.values.end());
  return F;
}

EmpiricalCDF empirical_cdf(const Block& b) { return empirical_cdf(b.q, b.n, b.lambdas()); }

double discrepancy(const EmpiricalCDF& F, const DensityGrid& G) {
  if (F.values.empty()) fail(ErrorCode::InvalidArgument, "empty distribution");
  if (F.values.front() < G.y.front() || F.values.back() > G.y.back())
    fail(ErrorCode::SupportExceeded, "empirical values fall outside the density grid");
  double sup = 0;
  const double N = double(F.values.size());
  std::size_t i = 0;
  while (i < F.values.size()) {
    std::size_t j = i;
    while (j < F.values.size() && F.values[j] == F.values[i]) ++j;
    const double g = G.cdf_at(F.values[i]);
    sup = std::max({sup, std::fabs(double(i) / N - g), std::fabs(double(j) / N - g)});
    i = j;
  }
  return sup;
}

double discrepancy(const EmpiricalCDF& A, const EmpiricalCDF& B) {
  std::vector<double> pts = A.values;
  pts.insert(pts.end(), B.values.begin(), B.values.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  double sup = 0;
  for (double x : pts)
    sup = std::max({sup, std::fabs(A(x) - B(x)), std::fabs(A.left_limit(x) - B.left_limit(x))});
  return sup;
}

double discrepancy_scale(std::uint32_t q, int n) {
  const double L = n * std::log(double(q));
  return std::pow(std::log(L), 2) / L;
}

std::uint64_t small_value_count(const Block& b, double eps) {
  if (!(eps >= 0)) fail(ErrorCode::DomainError, "eps must be >= 0");
  // |lambda| log q <= eps, compared as rationals against eps / log q
  const mpq_class t(eps / std::log(double(b.q)));
  std::uint64_t c = 0;
  for (auto& r : b.records) c += abs(r.lambda) <= t;
  return c;
}

double greedy_h(std::uint32_t q, int degree, int x) {
  const double N = std::pow(double(q), degree);
  return degree * std::log(double(q)) * x / (N - x);
}

GreedySequence greedy_sequence(std::uint32_t q, double alpha, double eps, int degree_cap) {
  if (!(eps > 0)) fail(ErrorCode::DomainError, "eps must be positive");
  GreedySequence G;
  G.q = q;
  G.alpha = alpha;
  G.eps = eps;
  if (std::fabs(alpha) < eps) return G;
  const int w = alpha > 0 ? 1 : -1;
  G.omega = w;
  const long double beta = std::fabs((long double)alpha);
  const long double lim = std::min<long double>(eps / 2.0L, beta - eps / 2.0L);
  const long double lq = std::log((long double)q);
  auto wh = [&](int d) {
    const long double N = std::pow((long double)q, d);
    return d * lq / (N - w);
  };
  int d = 1;
  while (!(wh(d) < lim)) {
    d += 2;
    if (d > degree_cap) fail(ErrorCode::NonTerminating, "greedy start degree beyond the cap");
  }
  long double S = 0;
  const long double goal = beta - eps / 2.0L;
  for (;; d += 2) {
    if (d > degree_cap) fail(ErrorCode::NonTerminating, "greedy construction hit the degree cap");
    const long double h = wh(d);
    const mpz_class avail = prime_count(q, d);
    const long double need = std::floor((goal - S) / h) + 1;
    if (need <= avail.get_d()) {
      G.runs.push_back({d, mpz_class(double(need))});
      S += need * h;
      break;
    }
    G.runs.push_back({d, avail});
    S += (long double)avail.get_d() * h;
  }
  G.achieved = w * S;
  if (!(std::fabs(G.achieved - (long double)alpha) < eps))
    throw std::logic_error("greedy postcondition failed");
  return G;
}

std::vector<Poly> greedy_primes(const FieldCtx& F, const GreedySequence& G, std::size_t limit) {
  if (F.q() != G.q) fail(ErrorCode::InvalidArgument, "field does not match the sequence");
  std::vector<Poly> out;
  for (auto& run : G.runs) {
    mpz_class left = run.count;
    const std::uint64_t total = monic_count(F, run.degree);
    for (std::uint64_t i = 0; i < total && left > 0 && out.size() < limit; ++i) {
      Poly P = monic_from_index(F, run.degree, i);
      if (!is_irreducible(F, P)) continue;
      out.push_back(std::move(P));
      --left;
    }
    if (out.size() >= limit) break;
  }
  return out;
}

IharaFit ihara_constant_fit(const std::vector<const Block*>& blocks) {
  if (blocks.empty()) fail(ErrorCode::InvalidArgument, "empty n range");
  IharaFit fit;
  for (const Block* b : blocks) {
    if (b->n < 3) fail(ErrorCode::InvalidDegree, "n must be >= 3");
    const double lq = std::log(double(b->q));
    const double den = std::log(b->n * lq);
    double m = 0;
    for (auto& r : b->records) m = std::max(m, std::fabs(r.lambda.get_d()) * lq / den);
    fit.per_n.push_back(m);
    fit.C = std::max(fit.C, m);
  }
  return fit;
}

}  // namespace fflab
