#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "fflab/field.hpp"
#include "fflab/sweep.hpp"

namespace fflab {

// delta_P for every P of degree <= m, primes in (degree, lexicographic) order
struct SignPrescription {
  std::uint32_t q = 0;
  int m = 0;
  std::vector<Poly> primes;
  std::vector<int> delta;

  // bit i set iff delta of primes[i] is -1
  std::uint64_t code() const;
};

SignPrescription constant_prescription(const FieldCtx& F, int m, int sign);
SignPrescription prescription_from_code(const FieldCtx& F, int m, std::uint64_t code);
// delta_P = omega (-1)^{(q-1) n d_P / 2 + 1}
SignPrescription extreme_prescription(const FieldCtx& F, int n, int m, int omega);

// bit i set iff (P_i / Q) = -1
std::uint64_t sign_code(const FieldCtx& F, const std::vector<Poly>& primes, const Poly& Q);

struct PrescribedSet {
  int n = 0;
  SignPrescription prescription;
  std::vector<std::uint64_t> members;  // monic indices of Q in P_n, increasing
  mpz_class primes_n;                  // pi_q(n)
  double predicted = 0;                // q^n / (2^{Pi_q(m)} n)
};

PrescribedSet prescribed_set(const FieldCtx& F, int n, const SignPrescription& pres, int workers = 1);
// |S| for every code, indexed by code; sums to pi_q(n)
std::vector<std::uint64_t> partition_sizes(const FieldCtx& F, int n, int m, int workers = 1);
// sum over f | prod_{deg P <= m} P of delta_f chi_f(Q), subset by subset
mpz_class indicator_sum(const FieldCtx& F, const SignPrescription& pres, const Poly& Q);

struct Lemma8 {
  mpq_class full, head;  // log q units
  bool lower_ok = false;
};
Lemma8 lemma8_sums(std::uint32_t q, int m);

// explicit constant of the extreme-value theorem, real units
double A_q(std::uint32_t q);

struct Prop83 {
  mpq_class lhs, main, residual;  // log q units
  std::uint64_t size = 0;
  double envelope = 0;            // n^2 q^{n/2 + 2m}, qualitative
};
Prop83 prop83_compare(const FieldCtx& F, const PrescribedSet& S, const Block& block);

struct ExtremeResult {
  PrescribedSet set;
  int omega = 0;
  // omega L'/L(1, chi_Q) in real units
  std::vector<double> values;
  double best = 0;
  double set_mean = 0;
  double global_mean = 0;        // over all of P_n
  double threshold_finite = 0;   // (m - 2.61) log q - eps
  double threshold_asymptotic = 0;
  bool empty() const { return set.members.empty(); }
};
ExtremeResult extreme_search(const FieldCtx& F, int n, int m, int omega, const Block& block, double eps = 0.05,
                             int workers = 1);

// sum_{deg f <= y} Lambda(f) chi_Q(f) / N(f) in log q units, with the RH tail bound
struct ShortLogDeriv {
  mpq_class value;
  double bound = 0;
};
ShortLogDeriv short_log_deriv(const FieldCtx& F, const Poly& D, int y);

}  // namespace fflab
