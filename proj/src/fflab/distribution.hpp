#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "fflab/randmodel.hpp"
#include "fflab/sweep.hpp"

namespace fflab {

// Distribution of f_n(D) = -L'/L(1, chi_D) = lambda_D log q over H_n.
struct EmpiricalCDF {
  std::uint32_t q = 0;
  int n = 0;
  std::vector<double> values;  // sorted

  std::size_t count() const { return values.size(); }
  double operator()(double x) const;     // F_n(x), right-continuous
  double left_limit(double x) const;     // F_n(x-)
  double mean() const;
};

EmpiricalCDF empirical_cdf(const Block& b);
EmpiricalCDF empirical_cdf(std::uint32_t q, int n, const std::vector<mpq_class>& lambdas);

// sup |F_n - F_rand| over the jumps of F_n, both one-sided limits
double discrepancy(const EmpiricalCDF& F, const DensityGrid& G);
// sup distance between two step functions
double discrepancy(const EmpiricalCDF& A, const EmpiricalCDF& B);

// log^2(log q^n) / log q^n
double discrepancy_scale(std::uint32_t q, int n);

// #{D : |L'/L(1, chi_D)| <= eps}, eps in real units
std::uint64_t small_value_count(const Block& b, double eps);

// odd-degree primes in (degree, lexicographic) order, taken in runs
struct GreedyRun {
  int degree = 0;
  mpz_class count;  // the first `count` primes of this degree
};
struct GreedySequence {
  std::uint32_t q = 0;
  double alpha = 0, eps = 0;
  int omega = 0;          // sign of every x_P
  std::vector<GreedyRun> runs;
  long double achieved = 0;
  bool empty() const { return runs.empty(); }
};
double greedy_h(std::uint32_t q, int degree, int x);
GreedySequence greedy_sequence(std::uint32_t q, double alpha, double eps, int degree_cap = 40);
// the explicit primes of G, stopping after `limit` of them
std::vector<Poly> greedy_primes(const FieldCtx& F, const GreedySequence& G, std::size_t limit);

// max over n, D of |lambda_D| log q / log(log q^n)
struct IharaFit {
  double C = 0;
  std::vector<double> per_n;
};
IharaFit ihara_constant_fit(const std::vector<const Block*>& blocks);

}  // namespace fflab
