#include "fflab/verify.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "json.hpp"

#include "fflab/characters.hpp"
#include "fflab/distribution.hpp"
#include "fflab/errors.hpp"
#include "fflab/heights.hpp"
#include "fflab/lfunc.hpp"
#include "fflab/moments.hpp"
#include "fflab/omega.hpp"
#include "fflab/randmodel.hpp"
#include "fflab/sweep.hpp"

namespace fflab {

namespace {

struct Scope {
  std::uint32_t q;
  int n_max;
};

// counts failures over every squarefree D of degree 1..n_max
std::string over_H(const std::vector<Scope>& scopes, bool odd_only,
                   const std::function<bool(const FieldCtx&, const Poly&)>& pred, bool& ok, int n_min = 1) {
  long tested = 0, bad = 0;
  for (auto s : scopes) {
    auto F = FieldCtx::from_order(s.q);
    for (int n = n_min; n <= s.n_max; ++n) {
      if (odd_only && n % 2 == 0) continue;
      for (auto& D : enumerate(F, PolyKind::Squarefree, n)) {
        ++tested;
        bad += !pred(F, D);
      }
    }
  }
  ok = bad == 0 && tested > 0;
  return std::to_string(tested - bad) + "/" + std::to_string(tested);
}

mpz_class qpow(std::uint32_t q, int e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), q, unsigned(e));
  return r;
}

}  // namespace

std::vector<CheckResult> run_verify(const std::string& level, int workers) {
  if (level != "fast" && level != "full") fail(ErrorCode::InvalidArgument, "level must be fast or full");
  const bool full = level == "full";
  const std::vector<Scope> main = full ? std::vector<Scope>{{3, 7}, {5, 4}} : std::vector<Scope>{{3, 5}, {5, 3}};
  const std::vector<Scope> rh = full ? std::vector<Scope>{{3, 8}, {5, 5}} : std::vector<Scope>{{3, 6}, {5, 3}};
  std::vector<CheckResult> out;
  auto run = [&](const std::string& name, const std::function<std::string(bool&)>& fn) {
    CheckResult r;
    r.name = name;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      r.detail = fn(r.ok);
    } catch (const std::exception& e) {
      r.ok = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.push_back(r);
  };

  run("l_polynomial_methods_agree", [&](bool& ok) {
    return over_H(main, false, [](const FieldCtx& F, const Poly& D) {
      auto a = l_polynomial(F, D, LMethod::Direct).coeffs;
      return a == l_polynomial(F, D, LMethod::PointCount).coeffs && a == l_polynomial(F, D, LMethod::Euler).coeffs;
    }, ok);
  });
  run("functional_equation_and_rh", [&](bool& ok) {
    return over_H(rh, false, [](const FieldCtx& F, const Poly& D) {
      auto v = verify_L(F, D);
      return v.func_eq && v.rh;
    }, ok);
  });
  run("von_mangoldt_sum", [&](bool& ok) {
    long bad = 0;
    for (auto s : main) {
      auto F = FieldCtx::from_order(s.q);
      for (int n = 1; n <= s.n_max; ++n) {
        mpz_class t = 0;
        for (auto& f : enumerate(F, PolyKind::Monic, n)) t += von_mangoldt(F, f);
        bad += t != qpow(s.q, n);
      }
    }
    ok = bad == 0;
    return std::to_string(bad) + " mismatches";
  });
  run("head_identity_r_le_3", [&](bool& ok) {
    return over_H(main, false, [](const FieldCtx& F, const Poly& D) {
      for (int r = 1; r <= 3; ++r)
        if (!head_identity_check(F, D, r)) return false;
      return true;
    }, ok, 2);
  });
  run("log_deriv_s0_two_routes", [&](bool& ok) {
    return over_H(main, true, [](const FieldCtx& F, const Poly& D) {
      auto L = l_polynomial(F, D);
      return log_deriv_s0_direct(L) == log_deriv_s0_functional(L);
    }, ok);
  });
  run("chowla_selberg", [&](bool& ok) {
    return over_H(main, true, [](const FieldCtx& F, const Poly& D) { return chowla_selberg_check(F, D); }, ok);
  });
  run("taguchi_two_routes", [&](bool& ok) {
    return over_H(main, true, [](const FieldCtx& F, const Poly& D) {
      return std::fabs(taguchi_wei(F, D) - taguchi(F, D).real()) < 1e-9;
    }, ok);
  });
  run("jacobi_vs_euler", [&](bool& ok) {
    long tested = 0, bad = 0;
    const int dmax = full ? 4 : 3;
    for (std::uint32_t q : full ? std::vector<std::uint32_t>{3, 5} : std::vector<std::uint32_t>{3}) {
      auto F = FieldCtx::from_order(q);
      for (int dP = 1; dP <= dmax; ++dP)
        for (auto& P : enumerate(F, PolyKind::Irreducible, dP))
          for (int df = 0; df <= dmax; ++df)
            for (auto& f : enumerate(F, PolyKind::Monic, df)) {
              ++tested;
              bad += jacobi_symbol(F, f, P) != residue_symbol_euler(F, f, P);
            }
    }
    ok = bad == 0;
    return std::to_string(bad) + " mismatches in " + std::to_string(tested);
  });
  run("point_counts_newton", [&](bool& ok) {
    return over_H({{3, 4}}, false, [](const FieldCtx& F, const Poly& D) {
      auto N = point_counts(F, D, 3);
      auto c = power_sums(zeta_numerator(l_polynomial(F, D)), 3);
      for (int m = 1; m <= 3; ++m)
        if (N[m] != qpow(F.q(), m) + 1 + c[m]) return false;
      return true;
    }, ok);
  });
  run("ihara_vs_gamma_D", [&](bool& ok) {
    return over_H({{3, full ? 4 : 3}}, false, [](const FieldCtx& F, const Poly& D) {
      auto e = gamma_via_ihara(F, D, 1e-8);
      return std::fabs(e.value - gamma_D(F, D).real()) <= 1e-8;
    }, ok);
  });
  run("prime_sum_lower_bound", [&](bool& ok) {
    ok = true;
    for (std::uint32_t q : {3u, 5u, 7u})
      for (int m = 1; m <= 12; ++m) ok = ok && lemma8_sums(q, m).lower_ok;
    return std::string("q in {3,5,7}, m <= 12");
  });
  run("partition_identity", [&](bool& ok) {
    auto F = FieldCtx::from_order(3);
    ok = true;
    const int nmax = full ? 6 : 4;
    for (int n = 2; n <= nmax; ++n)
      for (int m = 1; m <= 2 && m < n; ++m) {
        mpz_class t = 0;
        for (auto s : partition_sizes(F, n, m, workers)) t += s;
        ok = ok && t == prime_count(3, n);
      }
    return "q=3, n <= " + std::to_string(nmax);
  });
  run("greedy_postcondition", [&](bool& ok) {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> A(-5, 5), E(1e-3, 1);
    const int trials = full ? 1000 : 100;
    int bad = 0;
    for (int i = 0; i < trials; ++i) {
      const double a = A(rng), e = E(rng);
      auto G = greedy_sequence(3, a, e);
      bad += !(std::fabs(double(G.achieved) - a) < e);
    }
    ok = bad == 0;
    return std::to_string(bad) + " failures in " + std::to_string(trials);
  });
  run("model_char_function_and_density", [&](bool& ok) {
    RandomModel M(3, 8, 12345);
    auto g = density_cdf(M, -6, 8, 1400, 0, 0);
    ok = M.char_function(0) == std::complex<double>(1.0) && std::fabs(g.mass - 1) < 1e-4;
    return "mass " + std::to_string(g.mass);
  });
  run("sweep_determinism", [&](bool& ok) {
    auto F = FieldCtx::from_order(3);
    const int n = full ? 6 : 4;
    auto a = compute_block(F, n, 1), b = compute_block(F, n, std::max(2, workers));
    ok = a.digest == b.digest && a.records.size() == std::size_t(2 * std::pow(3, n - 1));
    return a.digest.substr(0, 16);
  });
  return out;
}

std::string verify_json(const std::string& level, const std::vector<CheckResult>& results) {
  nlohmann::json j;
  j["level"] = level;
  bool all = true;
  for (auto& r : results) {
    j["checks"].push_back({{"name", r.name}, {"ok", r.ok}, {"detail", r.detail}, {"seconds", r.seconds}});
    all = all && r.ok;
  }
  j["ok"] = all;
  return j.dump(2);
}

}  // namespace fflab
