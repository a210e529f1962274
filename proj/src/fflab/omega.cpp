#include "fflab/omega.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "fflab/characters.hpp"
#include "fflab/errors.hpp"

namespace fflab {

namespace {

std::vector<Poly> primes_upto(const FieldCtx& F, int m) {
  if (m < 1) fail(ErrorCode::InvalidArgument, "m must be >= 1");
  if (prime_count_upto(F.q(), m) > 24) fail(ErrorCode::Unsupported, "too many primes of degree <= m");
  std::vector<Poly> out;
  auto t = prime_table(F, m);
  for (int d = 1; d <= m; ++d) out.insert(out.end(), t[d].begin(), t[d].end());
  return out;
}

// (-1)^{(q-1)/2 * n * d}
int recip_sign(std::uint32_t q, int n, int d) { return ((q - 1) / 2 * std::uint64_t(n) * d) % 2 ? -1 : 1; }

// visits P_n in monic index order, split over workers; fn(Q, index) must be thread-safe
template <class Fn>
void for_each_prime_parallel(const FieldCtx& F, int n, int workers, Fn fn) {
  const std::uint64_t total = monic_count(F, n);
  const std::uint64_t chunks = 64;
  std::atomic<std::uint64_t> next{0};
  auto work = [&] {
    for (std::uint64_t c; (c = next++) < chunks;) {
      const std::uint64_t b = total * c / chunks, e = total * (c + 1) / chunks;
      for_each_poly(F, PolyKind::Irreducible, n, b, e, [&](const Poly& Q, std::uint64_t i) { fn(Q, i, c); });
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < std::max(1, workers); ++t) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
}

}  // namespace

std::uint64_t SignPrescription::code() const {
  std::uint64_t c = 0;
  for (std::size_t i = 0; i < delta.size(); ++i)
    if (delta[i] < 0) c |= std::uint64_t(1) << i;
  return c;
}

SignPrescription prescription_from_code(const FieldCtx& F, int m, std::uint64_t code) {
  SignPrescription p;
  p.q = F.q();
  p.m = m;
  p.primes = primes_upto(F, m);
  if (p.primes.size() < 64 && code >> p.primes.size()) fail(ErrorCode::InvalidArgument, "code out of range");
  for (std::size_t i = 0; i < p.primes.size(); ++i) p.delta.push_back((code >> i) & 1 ? -1 : 1);
  return p;
}

SignPrescription constant_prescription(const FieldCtx& F, int m, int sign) {
  if (sign != 1 && sign != -1) fail(ErrorCode::InvalidArgument, "sign must be +1 or -1");
  auto p = prescription_from_code(F, m, 0);
  for (auto& d : p.delta) d = sign;
  return p;
}

SignPrescription extreme_prescription(const FieldCtx& F, int n, int m, int omega) {
  if (omega != 1 && omega != -1) fail(ErrorCode::InvalidArgument, "omega must be +1 or -1");
  auto p = prescription_from_code(F, m, 0);
  for (std::size_t i = 0; i < p.primes.size(); ++i) p.delta[i] = -omega * recip_sign(F.q(), n, p.primes[i].deg());
  return p;
}

std::uint64_t sign_code(const FieldCtx& F, const std::vector<Poly>& primes, const Poly& Q) {
  std::uint64_t c = 0;
  for (std::size_t i = 0; i < primes.size(); ++i)
    if (jacobi_symbol(F, primes[i], Q) < 0) c |= std::uint64_t(1) << i;
  return c;
}

PrescribedSet prescribed_set(const FieldCtx& F, int n, const SignPrescription& pres, int workers) {
  if (pres.m < 1) fail(ErrorCode::InvalidArgument, "empty prescription");
  if (n <= pres.m) fail(ErrorCode::InvalidDegree, "need n > m");
  if (pres.q != F.q()) fail(ErrorCode::InvalidArgument, "prescription is for another field");
  PrescribedSet S;
  S.n = n;
  S.prescription = pres;
  S.primes_n = prime_count(F.q(), n);
  S.predicted = std::pow(double(F.q()), n) / (std::ldexp(1.0, int(pres.primes.size())) * n);
  const std::uint64_t want = pres.code();
  std::vector<std::vector<std::uint64_t>> per(64);
  for_each_prime_parallel(F, n, workers, [&](const Poly& Q, std::uint64_t i, std::uint64_t c) {
    if (sign_code(F, pres.primes, Q) == want) per[c].push_back(i);
  });
  for (auto& v : per) S.members.insert(S.members.end(), v.begin(), v.end());
  return S;
}

std::vector<std::uint64_t> partition_sizes(const FieldCtx& F, int n, int m, int workers) {
  if (n <= m) fail(ErrorCode::InvalidDegree, "need n > m");
  auto primes = primes_upto(F, m);
  const std::size_t buckets = std::size_t(1) << primes.size();
  std::vector<std::vector<std::uint64_t>> per(64, std::vector<std::uint64_t>(buckets, 0));
  for_each_prime_parallel(F, n, workers,
                          [&](const Poly& Q, std::uint64_t, std::uint64_t c) { per[c][sign_code(F, primes, Q)]++; });
  std::vector<std::uint64_t> out(buckets, 0);
  for (auto& v : per)
    for (std::size_t b = 0; b < buckets; ++b) out[b] += v[b];
  return out;
}

mpz_class indicator_sum(const FieldCtx& F, const SignPrescription& pres, const Poly& Q) {
  const std::size_t k = pres.primes.size();
  if (k > 16) fail(ErrorCode::Unsupported, "too many primes for the subset sum");
  mpz_class s = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << k); ++mask) {
    Poly f = Poly::constant(1);
    int delta = 1;
    for (std::size_t i = 0; i < k; ++i)
      if ((mask >> i) & 1) {
        f = poly_mul(F, f, pres.primes[i]);
        delta *= pres.delta[i];
      }
    s += delta * (f.deg() == 0 ? 1 : jacobi_symbol(F, f, Q));
  }
  return s;
}

Lemma8 lemma8_sums(std::uint32_t q, int m) {
  if (m < 1) fail(ErrorCode::InvalidArgument, "m must be >= 1");
  Lemma8 r;
  for (int d = 1; d <= m; ++d) {
    mpz_class N;
    mpz_ui_pow_ui(N.get_mpz_t(), q, unsigned(d));
    const mpz_class pc = prime_count(q, d);
    r.head += make_rat(pc * d, N);
    // sum over odd r of N^{-r} = N/(N^2-1)
    r.full += make_rat(pc * d * N, N * N - 1);
  }
  r.lower_ok = r.head > mpq_class(m) - mpq_class(261, 100);
  return r;
}

double A_q(std::uint32_t q) {
  const double lq = std::log(double(q));
  return 2.61 * lq + std::log(2 * std::log(2.0) * double(q) / (q - 1.0));
}

Prop83 prop83_compare(const FieldCtx& F, const PrescribedSet& S, const Block& block) {
  if (block.q != F.q() || block.n != S.n) fail(ErrorCode::InvalidArgument, "block does not match the set");
  const std::uint32_t q = F.q();
  Prop83 r;
  r.size = S.members.size();
  for (auto i : S.members) {
    const SweepRecord* rec = block.find(i);
    if (!rec) fail(ErrorCode::InvalidArgument, "cache block is missing a member of S");
    r.lhs += rec->lambda;
  }
  mpq_class inner = 0;
  const auto& pres = S.prescription;
  for (std::size_t i = 0; i < pres.primes.size(); ++i) {
    const int d = pres.primes[i].deg();
    mpz_class N;
    mpz_ui_pow_ui(N.get_mpz_t(), q, unsigned(d));
    inner += recip_sign(q, S.n, d) * pres.delta[i] * make_rat(mpz_class(d) * N, N * N - 1);
  }
  mpz_class pow2 = 1;
  pow2 <<= pres.primes.size();
  r.main = make_rat(S.primes_n, pow2) * inner;
  r.residual = r.lhs - r.main;
  r.envelope = double(S.n) * S.n * std::pow(double(q), S.n / 2.0 + 2 * pres.m);
  return r;
}

ExtremeResult extreme_search(const FieldCtx& F, int n, int m, int omega, const Block& block, double eps,
                             int workers) {
  if (block.q != F.q() || block.n != n) fail(ErrorCode::InvalidArgument, "block does not match (q, n)");
  ExtremeResult R;
  R.omega = omega;
  R.set = prescribed_set(F, n, extreme_prescription(F, n, m, omega), workers);
  const double lq = std::log(double(F.q()));
  // omega L'/L(1) = -omega lambda log q
  auto val = [&](const SweepRecord& rec) { return -omega * rec.lambda.get_d() * lq; };
  double g = 0;
  std::uint64_t gc = 0;
  for_each_poly(F, PolyKind::Irreducible, n, 0, monic_count(F, n), [&](const Poly&, std::uint64_t i) {
    g += val(*block.find(i));
    ++gc;
  });
  R.global_mean = gc ? g / double(gc) : 0;
  R.best = -INFINITY;
  double s = 0;
  for (auto i : R.set.members) {
    const double v = val(*block.find(i));
    R.values.push_back(v);
    R.best = std::max(R.best, v);
    s += v;
  }
  R.set_mean = R.values.empty() ? 0 : s / double(R.values.size());
  if (R.values.empty()) R.best = 0;
  const double L = n * lq;
  R.threshold_finite = (m - 2.61) * lq - eps;
  R.threshold_asymptotic = std::log(L) + std::log(std::log(L)) - A_q(F.q()) - eps;
  return R;
}

ShortLogDeriv short_log_deriv(const FieldCtx& F, const Poly& D, int y) {
  if (y < 0) fail(ErrorCode::InvalidArgument, "y must be >= 0");
  QuadCharacter chi(F, D);
  ShortLogDeriv r;
  for (int N = 1; N <= y; ++N) {
    mpz_class qN;
    mpz_ui_pow_ui(qN.get_mpz_t(), F.q(), unsigned(N));
    mpz_class c = 0;
    for_each_poly(F, PolyKind::Monic, N, 0, monic_count(F, N), [&](const Poly& f, std::uint64_t) {
      const auto lam = von_mangoldt(F, f);
      if (lam) c += lam * chi(f);
    });
    r.value += make_rat(c, qN);
  }
  // |c_N| <= (n-1) q^{N/2}
  const double q = F.q();
  r.bound = (D.deg() - 1) * std::pow(q, -(y + 1) / 2.0) / (1 - std::pow(q, -0.5));
  return r;
}

}  // namespace fflab
