#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fflab/field.hpp"

namespace fflab {

// Exact a*log(q) + b.
struct LogLinear {
  std::uint32_t q = 0;
  mpq_class a = 0, b = 0;

  double real() const;
  LogLinear operator+(const LogLinear& o) const;
  LogLinear operator-(const LogLinear& o) const;
  LogLinear scaled(const mpq_class& s) const;
  bool operator==(const LogLinear& o) const { return q == o.q && a == o.a && b == o.b; }
  std::string str() const;  // "a*log(q) + b"
};

struct LPolynomial {
  std::uint32_t q = 0;
  Poly D;
  int n = 0;  // deg D
  std::vector<std::int64_t> coeffs;  // c_0 = 1, degree n-1

  int degree() const { return int(coeffs.size()) - 1; }
};

enum class LMethod { Direct, PointCount, Euler };
const char* method_name(LMethod m);
LMethod parse_method(const std::string& s);

int genus_of(int n);

LPolynomial l_polynomial(const FieldCtx& F, const Poly& D, LMethod method = LMethod::Euler);

// L-polynomial of chi_f for any monic non-square f, by direct character sums.
std::vector<std::int64_t> character_l_polynomial(const FieldCtx& F, const Poly& f);

// c_N = -sum alpha_i^N, N = 1..N_max (index 0 unused)
std::vector<mpz_class> power_sums(const std::vector<std::int64_t>& coeffs, int N_max);
// inverse of power_sums: coefficients of degree <= deg from c_1..c_deg
std::vector<mpz_class> coeffs_from_power_sums(const std::vector<mpz_class>& c, int deg);

// lambda_D = (-L'/L(1)) / log q = [T L'(T)/L(T)] at T = 1/q
mpq_class lambda_exact(std::uint32_t q, const std::vector<std::int64_t>& coeffs);
mpq_class lambda_exact(const LPolynomial& L);

enum class At { S1, S0 };
// s=0 is cross-checked against the functional-equation route for odd n
LogLinear log_deriv(const LPolynomial& L, At at);
LogLinear log_deriv_s0_direct(const LPolynomial& L);
LogLinear log_deriv_s0_functional(const LPolynomial& L);

mpz_class class_number(const FieldCtx& F, const Poly& D);
mpz_class class_number(const LPolynomial& L);

LogLinear gamma_q(std::uint32_t q);
LogLinear gamma_tilde(std::uint32_t q, int n);
LogLinear gamma_D(const FieldCtx& F, const Poly& D);
LogLinear gamma_D(const LPolynomial& L);

// N_1..N_M by affine counting (index 0 unused)
std::vector<mpz_class> point_counts(const FieldCtx& F, const Poly& D, int M);

struct IharaEstimate {
  double value = 0;   // gamma of K_D, real units
  double bound = 0;   // certified tail bound, real units
  int M = 0;          // number of terms summed
  mpq_class head;     // exact sum of the first M terms plus (q-3)/(2(q-1)), log q units
};
IharaEstimate gamma_via_ihara(const FieldCtx& F, const Poly& D, double tol);

struct LVerify {
  bool func_eq = false;
  bool rh = false;
  std::optional<bool> lindelof;  // absent when g <= 1
  int genus = 0;
  double max_root_dev = 0;  // max | |root| - q^{-1/2} |
};
LVerify verify_L(const FieldCtx& F, const Poly& D);
LVerify verify_L(const LPolynomial& L);

// zeta numerator P = L for odd n, L/(1-T) for even n
std::vector<std::int64_t> zeta_numerator(const LPolynomial& L);

// Reusable residue tables for the prime-sum method over H_n.
class EulerEvaluator {
 public:
  EulerEvaluator(const FieldCtx& F, int n);
  std::vector<std::int64_t> coeffs(const Poly& D) const;
  int n() const { return n_; }

 private:
  struct PrimeEntry {
    std::vector<Elem> P;            // monic, constant first
    std::vector<std::int8_t> table; // symbol by base-q code of residue
  };
  FieldCtx F_;
  int n_ = 0, g_ = 0;
  std::vector<std::vector<PrimeEntry>> by_deg_;
};

}  // namespace fflab
