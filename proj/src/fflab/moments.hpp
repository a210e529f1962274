#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "fflab/field.hpp"

namespace fflab {

// exact mean of lambda^r, log^r q units
mpq_class empirical_moment(const std::vector<mpq_class>& lambdas, int r);

struct MainTerm {
  mpq_class value;    // partial sum over f with deg f <= cutoff, log^r q units
  double tail = 0;    // sum_{d > cutoff} (2d)^r q^-d
  int cutoff = 0;
};

double main_term_tail(std::uint32_t q, int r, int cutoff);
MainTerm model_main_term(std::uint32_t q, int r, int cutoff);
// smallest cutoff whose tail bound is below tol
MainTerm model_main_term_tol(std::uint32_t q, int r, double tol);

bool head_identity_check(const FieldCtx& F, const Poly& D, int r);

struct ShortSum {
  mpq_class value;   // sum_{f in M_{<=n-1}} Lambda_r(f) chi_D(f) / N(f)
  mpq_class exact;   // lambda_D^r
  double deviation = 0;
};
ShortSum short_sum_power(const FieldCtx& F, const Poly& D, int r);

// mean of exp(s * lambda * log q)
double empirical_laplace(const std::vector<mpq_class>& lambdas, std::uint32_t q, double s);

struct LerchResult {
  double value = 0;
  double bound = 0;
  bool within = false;
};
LerchResult lerch_phi(double x, int r, int n);

}  // namespace fflab
