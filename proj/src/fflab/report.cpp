#include "fflab/report.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "json.hpp"

#include "fflab/errors.hpp"
#include "fflab/lfunc.hpp"
#include "fflab/moments.hpp"

namespace fflab {

using nlohmann::json;

std::string fmt_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

namespace {

json loglinear_json(const LogLinear& v) {
  return {{"a", v.a.get_str()}, {"b", v.b.get_str()}, {"expr", v.str()}, {"real", v.real()}};
}

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

}  // namespace

LfunReport lfun_report(const FieldCtx& F, const Poly& D, const std::string& method, int point_count_m) {
  const int n = D.deg();
  const bool autom = method == "auto";
  LPolynomial L = l_polynomial(F, D, autom ? LMethod::Euler : parse_method(method));
  json j;
  j["q"] = F.q();
  j["D"] = format_poly(F, D);
  j["n"] = n;
  j["method"] = autom ? "auto(euler)" : method;
  bool ok = true;
  if (autom && std::pow(double(F.q()), n - 1) <= 1e5) {
    const bool same = l_polynomial(F, D, LMethod::Direct).coeffs == L.coeffs;
    j["cross_check_direct"] = same;
    ok = ok && same;
  }
  j["L"] = L.coeffs;
  const mpq_class lam = lambda_exact(L);
  j["lambda"] = {{"num", lam.get_num().get_str()}, {"den", lam.get_den().get_str()}, {"units", "log_q_units"},
                 {"real", lam.get_d() * std::log(double(F.q()))}};
  j["log_deriv_s1"] = loglinear_json(log_deriv(L, At::S1));
  if (n % 2) {
    j["log_deriv_s0"] = loglinear_json(log_deriv(L, At::S0));
    j["class_number"] = class_number(L).get_str();
  } else {
    j["log_deriv_s0"] = "pole";
  }
  j["gamma_D"] = loglinear_json(gamma_D(L));
  auto v = verify_L(L);
  j["verify"] = {{"functional_equation", v.func_eq}, {"rh", v.rh}, {"genus", v.genus},
                 {"max_root_deviation", v.max_root_dev}};
  if (v.lindelof) j["verify"]["lindelof"] = *v.lindelof;
  ok = ok && v.func_eq && v.rh && v.lindelof.value_or(true);
  if (point_count_m > 0) {
    auto N = point_counts(F, D, point_count_m);
    std::vector<std::string> s;
    for (int m = 1; m <= point_count_m; ++m) s.push_back(N[m].get_str());
    j["point_counts"] = s;
  }
  j["verified"] = ok;
  return {j.dump(2), ok};
}

double MomentRow::gap() const { return std::fabs(mpq_class(empirical - main).get_d()); }

std::vector<MomentRow> moment_table(const FieldCtx& F, const SweepCache& cache, int n_lo, int n_hi, int r_lo,
                                    int r_hi, double tol, int workers) {
  if (n_lo < 1 || n_hi < n_lo || r_lo < 1 || r_hi < r_lo) fail(ErrorCode::InvalidArgument, "empty n or r range");
  std::map<int, MainTerm> mains;
  for (int r = r_lo; r <= r_hi; ++r) mains[r] = model_main_term_tol(F.q(), r, tol);
  std::vector<MomentRow> rows;
  for (int n = n_lo; n <= n_hi; ++n) {
    const auto lam = cache.ensure(F, n, workers).lambdas();
    for (int r = r_lo; r <= r_hi; ++r) {
      MomentRow row;
      row.n = n;
      row.r = r;
      row.empirical = empirical_moment(lam, r);
      row.main = mains[r].value;
      row.tail = mains[r].tail;
      row.cutoff = mains[r].cutoff;
      rows.push_back(row);
    }
  }
  return rows;
}

std::string moments_csv(const std::vector<MomentRow>& rows) {
  std::ostringstream os;
  os << "# units: empirical, main_term, gap in log_q_units^r\n";
  os << "n,r,empirical,empirical_num,empirical_den,main_term,main_term_tail,main_term_cutoff,gap\n";
  for (auto& r : rows)
    os << r.n << ',' << r.r << ',' << fmt_double(r.empirical.get_d()) << ',' << r.empirical.get_num().get_str() << ','
       << r.empirical.get_den().get_str() << ',' << fmt_double(r.main.get_d()) << ',' << fmt_double(r.tail) << ','
       << r.cutoff << ',' << fmt_double(r.gap()) << '\n';
  return os.str();
}

std::vector<ModelRow> model_table(const RandomModel& M, int r_max, std::uint64_t samples, int workers) {
  if (r_max < 1) fail(ErrorCode::InvalidArgument, "r range is empty");
  // one pass over the samples serves every r
  const auto xs = M.samples(samples, workers);
  std::vector<ModelRow> rows;
  for (int r = 1; r <= r_max; ++r) {
    double s = 0, s2 = 0;
    for (double x : xs) {
      const double v = std::pow(x, r);
      s += v;
      s2 += v * v;
    }
    const double nn = double(samples);
    ModelRow row;
    row.r = r;
    row.mc.mean = s / nn;
    row.mc.se = std::sqrt(std::max(0.0, (s2 - nn * row.mc.mean * row.mc.mean) / (nn - 1)) / nn);
    row.main = model_main_term_tol(M.q(), r, 1e-10).value;
    row.z = row.mc.se > 0 ? (row.mc.mean - row.main.get_d()) / row.mc.se : 0;
    rows.push_back(row);
  }
  return rows;
}

std::string model_csv(const RandomModel& M, const std::vector<ModelRow>& rows, std::uint64_t samples) {
  std::ostringstream os;
  os << "# units: mc_mean, mc_se, main_term in log_q_units^r; q=" << M.q() << " cutoff=" << M.cutoff()
     << " seed=" << M.seed() << " samples=" << samples << "\n";
  os << "r,mc_mean,mc_se,main_term,z\n";
  for (auto& r : rows)
    os << r.r << ',' << fmt_double(r.mc.mean) << ',' << fmt_double(r.mc.se) << ',' << fmt_double(r.main.get_d()) << ','
       << fmt_double(r.z) << '\n';
  return os.str();
}

std::string density_csv(const DensityGrid& g) {
  std::ostringstream os;
  os << "# units: y real; U=" << fmt_double(g.U) << " h=" << fmt_double(g.h) << " cutoff=" << g.cutoff
     << " seed=" << g.seed << " mass=" << fmt_double(g.mass) << "\n";
  os << "y,density,cdf\n";
  for (std::size_t i = 0; i < g.y.size(); ++i)
    os << fmt_double(g.y[i]) << ',' << fmt_double(g.density[i]) << ',' << fmt_double(g.cdf[i]) << '\n';
  return os.str();
}

DensityGrid discrepancy_grid(const RandomModel& M, double lo, double hi) {
  const double m = 3 * M.tail_sd();
  const double a = std::min(-8.0, lo - m), b = std::max(10.0, hi + m);
  return density_cdf(M, a, b, int(std::ceil((b - a) / 0.005)), 0, 0);
}

std::vector<DiscRow> discrepancy_table(const FieldCtx& F, const SweepCache& cache, int n_lo, int n_hi, int cutoff,
                                       std::uint64_t seed, int workers) {
  if (n_lo < 1 || n_hi < n_lo) fail(ErrorCode::InvalidArgument, "empty n range");
  RandomModel M(F.q(), cutoff, seed);
  std::vector<EmpiricalCDF> es;
  std::vector<std::uint64_t> small;
  double lo = 0, hi = 0;
  for (int n = n_lo; n <= n_hi; ++n) {
    const Block b = cache.ensure(F, n, workers);
    small.push_back(small_value_count(b, 5 * discrepancy_scale(F.q(), n)));
    es.push_back(empirical_cdf(b));
    lo = std::min(lo, es.back().values.front());
    hi = std::max(hi, es.back().values.back());
  }
  const auto grid = discrepancy_grid(M, lo, hi);
  std::vector<DiscRow> rows;
  for (std::size_t i = 0; i < es.size(); ++i) {
    const auto& e = es[i];
    DiscRow r;
    r.n = e.n;
    r.count = e.count();
    r.discrepancy = discrepancy(e, grid);
    r.ratio = r.discrepancy / discrepancy_scale(F.q(), e.n);
    r.eps_n = 5 * discrepancy_scale(F.q(), e.n);
    r.small = small[i];
    rows.push_back(r);
  }
  return rows;
}

std::string discrepancy_csv(const std::vector<DiscRow>& rows) {
  std::ostringstream os;
  os << "# units: discrepancy dimensionless; epsilon_n real; ratio_to_bound = discrepancy / "
        "(log^2(log q^n) / log q^n)\n";
  os << "n,count,discrepancy,ratio_to_bound,small_value_count,epsilon_n\n";
  for (auto& r : rows)
    os << r.n << ',' << r.count << ',' << fmt_double(r.discrepancy) << ',' << fmt_double(r.ratio) << ',' << r.small
       << ',' << fmt_double(r.eps_n) << '\n';
  return os.str();
}

std::string histogram_csv(const EmpiricalCDF& e, double bin_width) {
  if (!(bin_width > 0)) fail(ErrorCode::InvalidArgument, "bin width must be positive");
  std::map<long, std::uint64_t> bins;
  for (double v : e.values) bins[long(std::floor(v / bin_width))]++;
  std::ostringstream os;
  os << "# units: bin edges real (f_n = lambda log q); bin_width=" << fmt_double(bin_width) << " q=" << e.q
     << " n=" << e.n << "\n";
  os << "bin_lo,bin_hi,count,density\n";
  for (auto& [k, c] : bins)
    os << fmt_double(k * bin_width) << ',' << fmt_double((k + 1) * bin_width) << ',' << c << ','
       << fmt_double(double(c) / (double(e.count()) * bin_width)) << '\n';
  return os.str();
}

std::string omega_csv(const ExtremeResult& R, int n, int m) {
  std::ostringstream os;
  os << "# units: extreme_value, set_mean, global_mean, thresholds real (omega L'/L(1, chi_Q))\n";
  os << "n,m,omega,size,predicted_size,extreme_value,set_mean,global_mean,threshold_finite,threshold_asymptotic\n";
  os << n << ',' << m << ',' << (R.omega > 0 ? "+1" : "-1") << ',' << R.set.members.size() << ','
     << fmt_double(R.set.predicted) << ',' << (R.empty() ? "" : fmt_double(R.best)) << ','
     << (R.empty() ? "" : fmt_double(R.set_mean)) << ',' << fmt_double(R.global_mean) << ','
     << fmt_double(R.threshold_finite) << ',' << fmt_double(R.threshold_asymptotic) << '\n';
  return os.str();
}

std::string omega_members_csv(const FieldCtx& F, const ExtremeResult& R) {
  std::ostringstream os;
  os << "# units: value real (omega L'/L(1, chi_Q))\n";
  os << "Q,value\n";
  for (std::size_t i = 0; i < R.set.members.size(); ++i)
    os << quoted(format_poly(F, monic_from_index(F, R.set.n, R.set.members[i]))) << ',' << fmt_double(R.values[i])
       << '\n';
  return os.str();
}

std::string heights_csv(const FieldCtx& F, int n, const std::vector<HeightRow>& rows) {
  std::ostringstream os;
  os << "# units: h_tag, h_tag_wei, weil_lower real\n";
  os << "D,n,h_tag,h_tag_wei,chowla_ok,cor13_i,cor13_ii_upper,cor13_ii_lower,weil_lower,prime\n";
  for (auto& r : rows)
    os << quoted(format_poly(F, r.D)) << ',' << n << ',' << fmt_double(r.h_tag.real()) << ','
       << fmt_double(r.h_tag_wei) << ',' << r.chowla_ok << ',' << r.cor13_i << ',' << r.cor13_ii_upper << ','
       << r.cor13_ii_lower << ',' << fmt_double(r.weil_lower) << ',' << r.prime << '\n';
  return os.str();
}

}  // namespace fflab
