#pragma once

#include <gmpxx.h>

#include <vector>

#include "fflab/field.hpp"

namespace fflab {

// (f / P) by Euler's criterion in F_q[t]/P. Slow oracle.
int residue_symbol_euler(const FieldCtx& F, const Poly& f, const Poly& P);

// Jacobi symbol (f / g) for monic nonconstant g, by Euclid-style reciprocity.
int jacobi_symbol(const FieldCtx& F, const Poly& f, const Poly& g);

class QuadCharacter {
 public:
  QuadCharacter(const FieldCtx& F, const Poly& D);

  const Poly& modulus() const { return D_; }
  const Factorization& factorization() const { return fac_; }
  // chi_D(f) for monic f
  int operator()(const Poly& f) const;
  // product of Euler-criterion symbols over the factorization of f
  int by_factoring(const Poly& f) const;
  // psi_D at a finite prime P, and at infinity (1 split, 0 ramified)
  int splitting(const Poly& P) const;
  int at_infinity() const { return D_.deg() % 2 == 0 ? 1 : 0; }

 private:
  FieldCtx F_;
  Poly D_;
  Factorization fac_;
};

struct CharSumReport {
  mpz_class sum;          // sum over D in H_n of chi_D(f)
  mpz_class count;        // #H_n
  bool square = false;
  mpq_class main_term;    // #H_n * prod N(P)/(N(P)+1) when f is a square, else 0
  double deviation = 0;   // |sum - main_term|
  double normalized = 0;  // deviation / sqrt(#H_n) (square) or / q^{n/2} (non-square)
};

CharSumReport avg_char_over_Hn(const FieldCtx& F, const Poly& f, int n);

// Compares sum_{D in H_d} chi_D(f) with the generating-function coefficient of T^d,
// d = 0..d_max.
std::vector<bool> char_sum_generating_check(const FieldCtx& F, const Poly& f, int d_max);

}  // namespace fflab
