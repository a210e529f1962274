#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "fflab/distribution.hpp"
#include "fflab/heights.hpp"
#include "fflab/omega.hpp"
#include "fflab/randmodel.hpp"
#include "fflab/sweep.hpp"

// Tables behind the CLI subcommands. Every CSV starts with a "# units:" line,
// then a header row; comma separated, LF line endings.
namespace fflab {

std::string fmt_double(double x);

// single-D report as JSON text
struct LfunReport {
  std::string json;
  bool verified = false;
};
LfunReport lfun_report(const FieldCtx& F, const Poly& D, const std::string& method, int point_count_m = 3);

struct MomentRow {
  int n = 0, r = 0;
  mpq_class empirical, main;
  double tail = 0;
  int cutoff = 0;
  double gap() const;
};
std::vector<MomentRow> moment_table(const FieldCtx& F, const SweepCache& cache, int n_lo, int n_hi, int r_lo,
                                    int r_hi, double tol, int workers);
std::string moments_csv(const std::vector<MomentRow>& rows);

struct ModelRow {
  int r = 0;
  RandomModel::Estimate mc;
  mpq_class main;
  double z = 0;
};
std::vector<ModelRow> model_table(const RandomModel& M, int r_max, std::uint64_t samples, int workers);
std::string model_csv(const RandomModel& M, const std::vector<ModelRow>& rows, std::uint64_t samples);
std::string density_csv(const DensityGrid& g);

struct DiscRow {
  int n = 0;
  std::uint64_t count = 0;
  double discrepancy = 0, ratio = 0, eps_n = 0;
  std::uint64_t small = 0;
};
// F_rand grid from a RandomModel with the given cutoff, spanning the empirical range with margin
DensityGrid discrepancy_grid(const RandomModel& M, double lo, double hi);
std::vector<DiscRow> discrepancy_table(const FieldCtx& F, const SweepCache& cache, int n_lo, int n_hi, int cutoff,
                                       std::uint64_t seed, int workers);
std::string discrepancy_csv(const std::vector<DiscRow>& rows);
std::string histogram_csv(const EmpiricalCDF& e, double bin_width);

std::string omega_csv(const ExtremeResult& R, int n, int m);
std::string omega_members_csv(const FieldCtx& F, const ExtremeResult& R);

std::string heights_csv(const FieldCtx& F, int n, const std::vector<HeightRow>& rows);

}  // namespace fflab
