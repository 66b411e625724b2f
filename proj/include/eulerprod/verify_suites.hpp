// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "eulerprod/gamma_methods.hpp"
#include "eulerprod/special_functions.hpp"

namespace eulerprod {

/// One named check: passes when max_residual <= threshold.
struct VerifyCheck {
  std::string name;
  double max_residual = 0.0;
  double threshold = 0.0;
  bool pass() const { return max_residual <= threshold; }
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  bool all_pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const VerifyCheck& c) { return c.pass(); });
  }
};

/// Unit-argument reduction, the two-form identity, trigamma forms, and the
/// zeta(2) anchors.
inline VerifyReport verify_hypergeometric(double tol,
                                          const PrecisionContext& ctx) {
  const mpfr_prec_t p = static_cast<mpfr_prec_t>(ctx.bits() + 32);
  VerifyReport rep;
  const double series_tol = tol / 10;

  {
    std::mt19937_64 rng(0x5eed0001);
    std::uniform_real_distribution<double> s_pick(1e-3, 5.0);
    std::uniform_real_distribution<double> gap_pick(0.1, 5.0);
    std::uniform_real_distribution<double> t_pick(0.05, 4.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      double s = s_pick(rng), t = t_pick(rng), v = t + gap_pick(rng);
      Hyp3F2Params in(Real::of_double(s, p), Real::of_double(t, p),
                      Real::of_double(s, p) + 1ul, Real::of_double(v, p));
      auto red = hyp3f2_transform(in);
      Real lhs = hyp3f2_unit(in, ctx, series_tol);
      Real rhs = red.coefficient * hyp3f2_unit(red.reduced, ctx, series_tol);
      worst = std::max(worst, rel_gap(lhs, rhs));
    }
    rep.checks.push_back({"reduction-transform-100-random", worst, tol});
  }

  {
    double worst = 0.0;
    for (double td : {0.5, 1.0, 2.0, 10.0}) {
      Real r = reduction_identity_residual(Real::of_double(td, p), ctx,
                                           series_tol);
      worst = std::max(worst, std::abs(r.to_double()));
    }
    rep.checks.push_back({"two-form-identity-t=0.5,1,2,10", worst, 4 * tol});
  }

  {
    double worst = 0.0;
    for (double td : {0.5, 1.0, 2.0, 5.0, 10.0}) {
      Real t = Real::of_double(td, p);
      Real direct = trigamma(t, ctx, series_tol);
      Real formA =
          hyp3f2_unit(Hyp3F2Params(t, t, t + 1ul, t + 1ul), ctx, series_tol) /
          (t * t);
      Real formB = hyp3f2_unit(Hyp3F2Params(Real::of_ui(1, p),
                                            Real::of_ui(1, p),
                                            Real::of_ui(2, p), t + 1ul),
                               ctx, series_tol) /
                   t;
      worst = std::max({worst, rel_gap(formA, direct), rel_gap(formB, direct)});
    }
    rep.checks.push_back({"trigamma-forms-t=0.5,1,2,5,10", worst, tol});
  }

  {
    Real pi(p);
    mpfr_const_pi(pi.raw(), MPFR_RNDN);
    Real z2 = pi * pi / 6ul;
    double a = std::abs((trigamma(Real::of_ui(1, p), ctx, 1e-15) - z2)
                            .to_double());
    double b = std::abs(
        (hyp3f2_unit(Hyp3F2Params(Real::of_ui(1, p), Real::of_ui(1, p),
                                  Real::of_ui(2, p), Real::of_ui(2, p)),
                     ctx, 1e-16) -
         z2)
            .to_double());
    rep.checks.push_back({"zeta2-anchors", std::max(a, b), 1e-14});
  }
  return rep;
}

/// Exact values and the telescoping step of the shifted digamma.
inline VerifyReport verify_digamma(double tol, const PrecisionContext& ctx) {
  const mpfr_prec_t p = static_cast<mpfr_prec_t>(ctx.bits() + 32);
  VerifyReport rep;
  {
    double worst = 0.0;
    for (unsigned long n = 1; n <= 50; ++n) {
      Real step = digamma_shifted(Real::of_ui(n + 1, p), ctx) -
                  digamma_shifted(Real::of_ui(n, p), ctx);
      worst = std::max(worst,
                       std::abs((step - 1ul / Real::of_ui(n, p)).to_double()));
    }
    rep.checks.push_back({"telescoping-step-n<=50", worst, tol});
  }
  {
    double a = std::abs(digamma_shifted(Real::of_ui(1, p), ctx).to_double());
    Real h3 = Real::of_ui(11, p) / 6ul;
    double b = std::abs(
        (digamma_shifted(Real::of_ui(4, p), ctx) - h3).to_double());
    Real m2ln2 = -(ln(Real::of_ui(2, p), p) * 2ul);
    double c = std::abs(
        (digamma_shifted(Real::of_double(0.5, p), ctx) - m2ln2).to_double());
    rep.checks.push_back({"values-at-1-4-half", std::max({a, b, c}), tol});
  }
  return rep;
}

/// Quadrature against the exact product form of the beta integral.
inline VerifyReport verify_beta(double tol, const PrecisionContext& ctx) {
  const mpfr_prec_t p = static_cast<mpfr_prec_t>(ctx.bits() + 32);
  VerifyReport rep;
  double worst = 0.0;
  for (unsigned long n = 1; n <= 10; ++n)
    for (double td : {0.5, 1.0, 2.5, 5.0}) {
      Real r = beta_integral_residual(n, Real::of_double(td, p), tol / 2, ctx);
      worst = std::max(worst, std::abs(r.to_double()));
    }
  rep.checks.push_back({"beta-integral-n<=10", worst, tol});
  return rep;
}

/// Envelope maximum: closed form at the stationary point, grid domination,
/// and the strict upper bound.
inline VerifyReport verify_bounds(const PrecisionContext& ctx) {
  const mpfr_prec_t p = static_cast<mpfr_prec_t>(ctx.bits() + 32);
  VerifyReport rep;
  std::mt19937_64 rng(0x5eed0002);
  std::uniform_int_distribution<unsigned long> npick(1, 12);
  std::uniform_real_distribution<double> tpick(0.1, 6.0);
  double worst_closed = 0.0;
  double worst_grid = -1.0;    // grid max may not exceed the true max
  double worst_strict = -1.0;  // closed form must stay under the bound
  for (int i = 0; i < 20; ++i) {
    EnvelopeMax e = envelope_max_check(npick(rng), Real::of_double(tpick(rng), p), ctx);
    worst_closed = std::max(worst_closed, rel_gap(e.max_value, e.closed_form));
    worst_grid =
        std::max(worst_grid, ((e.grid_max - e.max_value) / e.max_value).to_double());
    worst_strict =
        std::max(worst_strict, ((e.closed_form - e.upper) / e.upper).to_double());
  }
  rep.checks.push_back({"stationary-point-closed-form", worst_closed, 1e-12});
  rep.checks.push_back({"grid-below-max", worst_grid, 1e-30});
  rep.checks.push_back({"strict-upper-bound", worst_strict, -1e-30});
  return rep;
}

/// Pointwise substitution residuals plus the closed-form inner integral of
/// the triangle route.
inline VerifyReport verify_change_of_vars(double tol,
                                          const PrecisionContext& ctx) {
  const mpfr_prec_t p = static_cast<mpfr_prec_t>(ctx.bits() + 32);
  VerifyReport rep;
  {
    double worst = 0.0;
    for (int i = 1; i < 20; ++i)
      for (int j = 1; j < 20; ++j) {
        Real r = change_of_variables_residual(
            Real::of_double(i / 20.0, p), Real::of_double(j / 20.0, p), ctx);
        worst = std::max(worst, std::abs(r.to_double()));
      }
    for (auto [x, y] : {std::pair{0.9, 0.99}, {0.99, 0.999}, {0.999, 0.99}}) {
      Real r = change_of_variables_residual(Real::of_double(x, p),
                                            Real::of_double(y, p), ctx);
      worst = std::max(worst, std::abs(r.to_double()));
    }
    rep.checks.push_back({"substitution-grid-and-corners", worst, tol});
  }
  {
    std::mt19937_64 rng(0x5eed0003);
    std::uniform_real_distribution<double> upick(0.02, 0.98);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      Real u = Real::of_double(upick(rng), p);
      Real scale = 1ul - u;
      auto f = [scale](const Real& v) { return v / ((1ul - v) * scale); };
      QuadResult r = integrate_1d(IntegrandSpec::finite(Real(p), 1ul - u, f),
                                  tol / 10, ctx);
      Real want = -ln(u, p) / (1ul - u) - 1ul;
      worst = std::max(worst, abs_gap(r.value, want));
    }
    rep.checks.push_back({"inner-v-closed-form-20-random", worst, tol});
  }
  return rep;
}

/// Truncated log series against its closed form, and the termwise
/// partial-fraction integration against the binomial-log values. Both
/// checks carry intrinsic thresholds (the geometric bound itself, and the
/// stated 1e-10), so the suite tolerance is not consulted.
inline VerifyReport verify_series_identities(double /*tol*/,
                                             const PrecisionContext& ctx) {
  const mpfr_prec_t p = static_cast<mpfr_prec_t>(ctx.bits() + 32);
  VerifyReport rep;
  {
    std::mt19937_64 rng(0x5eed0004);
    std::uniform_real_distribution<double> upick(0.05, 0.95);
    std::uniform_real_distribution<double> tpick(0.0, 5.0);
    double worst = 0.0;  // excess of |residual| over the geometric bound
    for (int i = 0; i < 20; ++i) {
      double ud = upick(rng);
      auto N = static_cast<unsigned long>(
          std::clamp(-45.0 / std::log10(1.0 - ud), 10.0, 150.0));
      auto r = log_series_residual(Real::of_double(ud, p),
                                   Real::of_double(tpick(rng), p), N, ctx);
      worst = std::max(
          worst, (abs(r.residual) - r.tail_bound).to_double());
    }
    rep.checks.push_back({"log-series-vs-geometric-bound", worst, 0.0});
  }
  {
    double worst = 0.0;
    for (unsigned long n = 1; n <= 8; ++n) {
      Real r = partial_fraction_residual(n, 1e-11, ctx);
      worst = std::max(worst, std::abs(r.to_double()));
    }
    rep.checks.push_back({"partial-fraction-n<=8", worst, 1e-10});
  }
  return rep;
}

inline std::optional<VerifyReport> run_verify_suite(const std::string& suite,
                                                    double tol,
                                                    const PrecisionContext& ctx) {
  if (suite == "hypergeometric") return verify_hypergeometric(tol, ctx);
  if (suite == "digamma") return verify_digamma(tol, ctx);
  if (suite == "beta") return verify_beta(tol, ctx);
  if (suite == "bounds") return verify_bounds(ctx);
  if (suite == "change-of-vars") return verify_change_of_vars(tol, ctx);
  if (suite == "series-identities") return verify_series_identities(tol, ctx);
  if (suite == "all") {
    VerifyReport all;
    for (const char* s :
         {"hypergeometric", "digamma", "beta", "bounds", "change-of-vars",
          "series-identities"}) {
      auto rep = run_verify_suite(s, tol, ctx);
      for (auto& c : rep->checks) {
        c.name = std::string(s) + "/" + c.name;
        all.checks.push_back(std::move(c));
      }
    }
    return all;
  }
  return std::nullopt;
}

}  // namespace eulerprod
