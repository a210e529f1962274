#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "fflab/field.hpp"
#include "fflab/lfunc.hpp"
#include "fflab/sweep.hpp"

namespace fflab {

// Stable Taguchi height of a rank 2 Drinfeld module with CM by F_q[t][sqrt D], deg D odd.
// Exact: n/4 log q - (2q-1) log q / (2(q-1)) + (1/2) L'/L(1, chi_D).
LogLinear taguchi(const LPolynomial& L);
LogLinear taguchi(const FieldCtx& F, const Poly& D);

// sum over monic f with deg f <= n-1 of chi_D(f) log(N(f)/q^n), by enumeration, double
double wei_character_sum(const FieldCtx& F, const Poly& D);
// the Colmez-type route; h overrides the class number (negative controls)
double taguchi_wei(const FieldCtx& F, const Poly& D, std::optional<mpz_class> h = std::nullopt);
// same sum grouped by degree from the L-polynomial coefficients
double taguchi_wei_from_L(const LPolynomial& L);

bool chowla_selberg_check(const FieldCtx& F, const Poly& D, double tol = 1e-9);

// lower bound for the log Weil height of j over H_n, real units
double weil_lower_bound(std::uint32_t q, int n);
// log q^n / 4 - (2q-1) log q / (2(q-1))
double taguchi_centre(std::uint32_t q, int n);

struct Cor13Thresholds {
  double centre = 0;
  double eps_n = 0;        // 5 log^2(log q^n) / log q^n
  double ii_upper = 0;     // h >= this for the large-value primes
  double ii_lower = 0;     // h <= this for the small-value primes
  double iii = 0;          // Weil height bound for the large-value primes
};
Cor13Thresholds cor13_thresholds(std::uint32_t q, int n, double eps);

struct HeightRow {
  Poly D;
  bool prime = false;
  LogLinear h_tag;
  double h_tag_wei = 0;
  bool chowla_ok = false;
  bool cor13_i = false;
  bool cor13_ii_upper = false;
  bool cor13_ii_lower = false;
  double weil_lower = 0;   // h_tag / 5 - 6/5
};

// One row per D in H_n from the cache block; n odd.
std::vector<HeightRow> corollary13_table(const FieldCtx& F, const Block& block, double eps = 0.05);

}  // namespace fflab
