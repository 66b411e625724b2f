// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "eulerprod/combinatorics.hpp"
#include "eulerprod/errors.hpp"
#include "eulerprod/precision.hpp"
#include "eulerprod/quadrature.hpp"
#include "eulerprod/reference.hpp"
#include "eulerprod/special_functions.hpp"

namespace eulerprod {

/// Every computation route exposed by the library and the CLI.
enum class Method {
  Limit,             // H_n - ln n
  TelescopedSeries,  // H_N - ln(N+1)
  ProductSeries,     // partial sums of the binomial-log series / its product
  HypIntegral,       // F(1,2,2;3,t+2)/(2t(t+1)) over [1, inf)
  Classical,         // 1/ln u + 1/(1-u) over (0, 1)
  StripIntegral,     // u^t (-ln u/(1-u) - 1) over [0,inf) x (0,1)
  TriangleIntegral,  // -v/((1-v)(1-u) ln u) over v in (0, 1-u)
  DoubleIntegral,    // -(1-x)/((1-xy) ln xy) over the unit square
  TrigammaIntegral,  // trigamma(t) - 1/t over [1, inf)
  Accelerated,       // H_{n-1} - ln n + shifted hypergeometric tail
};

inline const char* method_name(Method m) {
  switch (m) {
    case Method::Limit: return "limit";
    case Method::TelescopedSeries: return "telescoped-series";
    case Method::ProductSeries: return "product-series";
    case Method::HypIntegral: return "hypergeometric-integral";
    case Method::Classical: return "classical";
    case Method::StripIntegral: return "strip-integral";
    case Method::TriangleIntegral: return "triangle-integral";
    case Method::DoubleIntegral: return "double-integral";
    case Method::TrigammaIntegral: return "trigamma-integral";
    case Method::Accelerated: return "accelerated";
  }
  return "?";
}

inline std::optional<Method> method_from_name(const std::string& name) {
  for (Method m : {Method::Limit, Method::TelescopedSeries,
                   Method::ProductSeries, Method::HypIntegral,
                   Method::Classical, Method::StripIntegral,
                   Method::TriangleIntegral, Method::DoubleIntegral,
                   Method::TrigammaIntegral, Method::Accelerated})
    if (name == method_name(m)) return m;
  return std::nullopt;
}

/// true when the method's parameter is a term/shift count; false when it is
/// a quadrature tolerance. Accelerated takes a count plus a tolerance.
inline bool method_takes_count(Method m) {
  switch (m) {
    case Method::Limit:
    case Method::TelescopedSeries:
    case Method::ProductSeries:
    case Method::Accelerated:
      return true;
    default:
      return false;
  }
}

namespace detail {

/// H_n = 1 + 1/2 + ... + 1/n at the given precision (H_0 = 0).
inline Real harmonic(unsigned long n, mpfr_prec_t q) {
  Real h(q), inv(q);
  for (unsigned long j = 1; j <= n; ++j) {
    mpfr_set_ui(inv.raw(), j, MPFR_RNDN);
    mpfr_ui_div(inv.raw(), 1, inv.raw(), MPFR_RNDN);
    mpfr_add(h.raw(), h.raw(), inv.raw(), MPFR_RNDN);
  }
  return h;
}

/// -ln u computed through log1p(-(1-u)); keeps full accuracy near u = 1.
inline Real neg_ln(const Real& u, mpfr_prec_t q) {
  Real w = 1ul - u;
  Real neg_w = -w;
  return -log1p(neg_w, q);
}

/// Walks the partial sums S_n = sum_{m<=n} fdl(m)/(m+1) of the binomial-log
/// series under one shared log table; sink(n, S_n) is called for each n.
/// The table and the accumulations run at a precision boosted past the
/// worst-case cancellation at n = N, so every S_n is accurate to the
/// context precision.
inline void series_prefix(unsigned long N, const PrecisionContext& ctx,
                          const std::function<void(unsigned long, const Real&)>& sink,
                          WorkTally* tally = nullptr) {
  if (N < 1) throw domain_error("series prefix: N must be >= 1");
  const long need = required_bits(N) + ceil_log2(N);
  if (ctx.bits() < need)
    throw precision_error(
        "binomial-log series: context of " + std::to_string(ctx.bits()) +
            " bits cannot absorb the cancellation at N = " + std::to_string(N) +
            "; need at least " + std::to_string(need) + " bits",
        need);
  const mpfr_prec_t w =
      boosted_bits(N, ctx.bits()) + static_cast<mpfr_prec_t>(ceil_log2(N));

  std::vector<Real> logs;  // ln(k+1), k = 1..N
  logs.reserve(N);
  for (unsigned long k = 1; k <= N; ++k)
    logs.push_back(ln(Real::of_ui(k + 1, w), w));

  std::vector<mpz_class> row{1, 1};  // binomial row for n = 1
  Real total(w), inner(w), term(w);
  for (unsigned long n = 1; n <= N; ++n) {
    if (n > 1) {  // advance Pascal row in place
      row.push_back(1);
      for (unsigned long k = n - 1; k >= 1; --k) row[k] += row[k - 1];
    }
    // inner = sum_k (-1)^(k+1) C(n,k) ln(k+1)
    mpfr_set_zero(inner.raw(), 1);
    for (unsigned long k = 1; k <= n; ++k) {
      mpfr_mul_z(term.raw(), logs[k - 1].raw(), row[k].get_mpz_t(), MPFR_RNDN);
      if (k % 2 == 1)
        mpfr_add(inner.raw(), inner.raw(), term.raw(), MPFR_RNDN);
      else
        mpfr_sub(inner.raw(), inner.raw(), term.raw(), MPFR_RNDN);
      if (tally) ++tally->series_terms;
    }
    mpfr_div_ui(inner.raw(), inner.raw(), n + 1, MPFR_RNDN);
    mpfr_add(total.raw(), total.raw(), inner.raw(), MPFR_RNDN);
    sink(n, total);
  }
}

}  // namespace detail

/// H_n - ln n, the defining limit sequence.
inline Real gamma_limit(unsigned long n, const PrecisionContext& ctx,
                        WorkTally* tally = nullptr) {
  if (n < 1) throw domain_error("gamma_limit: n must be >= 1");
  const mpfr_prec_t q = static_cast<mpfr_prec_t>(ctx.bits() + 32);
  Real h = detail::harmonic(n, q);
  if (tally) tally->series_terms += static_cast<long long>(n);
  return (h - ln(Real::of_ui(n, q), q)).rounded_to(ctx.bits());
}

/// H_N - ln(N+1): the telescoped form sum_{n<=N} (1/n - ln((n+1)/n)).
inline Real gamma_telescoped_series(unsigned long N, const PrecisionContext& ctx,
                                    WorkTally* tally = nullptr) {
  if (N < 1) throw domain_error("gamma_telescoped_series: N must be >= 1");
  const mpfr_prec_t q = static_cast<mpfr_prec_t>(ctx.bits() + 32);
  Real h = detail::harmonic(N, q);
  if (tally) tally->series_terms += static_cast<long long>(N);
  return (h - ln(Real::of_ui(N + 1, q), q)).rounded_to(ctx.bits());
}

/// S_N = sum_{n=1}^{N} forward_difference_log(n)/(n+1); approaches the limit
/// constant from below with tail below 1/(N+1).
inline Real gamma_series_partial(unsigned long N, const PrecisionContext& ctx,
                                 WorkTally* tally = nullptr) {
  Real out(ctx.bits());
  detail::series_prefix(
      N, ctx,
      [&](unsigned long n, const Real& s) {
        if (n == N) out = s.rounded_to(ctx.bits());
      },
      tally);
  return out;
}

/// a(N) = exp(S_N), the N-th partial product; increasing, bounded by the
/// exponential of the limit constant.
inline Real product_partial(unsigned long N, const PrecisionContext& ctx,
                            WorkTally* tally = nullptr) {
  return eval_exp(gamma_series_partial(N, ctx, tally), ctx);
}

/// Integral over [1, inf) of F(1,2,2;3,t+2) / (2t(t+1)).
inline Real gamma_hyp_integral(double tol, const PrecisionContext& ctx,
                               WorkTally* tally = nullptr,
                               QuadResult* meta = nullptr) {
  const mpfr_prec_t q = static_cast<mpfr_prec_t>(ctx.bits() + 32);
  const double series_tol = tol / 16;
  auto f = [&, q](const Real& t) {
    Hyp3F2Params p(Real::of_ui(2, q), Real::of_ui(2, q), Real::of_ui(3, q),
                   t + 2ul);
    Real F = hyp3f2_unit(p, ctx, series_tol, tally);
    return F / (t * (t + 1ul) * 2ul);
  };
  auto spec = IntegrandSpec::to_infinity(Real::of_ui(1, q), f);
  spec.upper_limit = Real::of_double(0.5, q);  // t^2 f(t) -> 1/2
  QuadResult r = integrate_1d(spec, tol * 0.875, ctx, tally);
  if (meta) *meta = r;
  return r.value;
}

/// Integral over (0,1) of 1/ln u + 1/(1-u); endpoint limits 1 and 1/2.
inline Real gamma_classical(double tol, const PrecisionContext& ctx,
                            WorkTally* tally = nullptr,
                            QuadResult* meta = nullptr) {
  const mpfr_prec_t q = static_cast<mpfr_prec_t>(ctx.bits() + 32);
  auto f = [q](const Real& u) {
    return 1ul / (1ul - u) - 1ul / detail::neg_ln(u, q);
  };
  auto spec =
      IntegrandSpec::finite(Real(q), Real::of_ui(1, q), f);
  spec.lower_limit = Real::of_ui(1, q);
  spec.upper_limit = Real::of_double(0.5, q);
  QuadResult r = integrate_1d(spec, tol, ctx, tally);
  if (meta) *meta = r;
  return r.value;
}

/// Iterated integral over [0,inf) x (0,1) of u^t (-ln u/(1-u) - 1).
inline Real gamma_strip_integral(double tol, const PrecisionContext& ctx,
                                 WorkTally* tally = nullptr,
                                 QuadResult2* meta = nullptr) {
  const mpfr_prec_t q = static_cast<mpfr_prec_t>(ctx.bits() + 32);
  Iterated2DSpec spec2{IntegrandSpec::to_infinity(Real(q), nullptr),
                       [q](const Real& t) {
                         Real tc = t;
                         auto f = [tc, q](const Real& u) {
                           Real w = 1ul - u;
                           Real kernel = detail::neg_ln(u, q) / w - 1ul;
                           return pow(u, tc, q) * kernel;
                         };
                         auto inner = IntegrandSpec::finite(
                             Real(q), Real::of_ui(1, q), f);
                         inner.lower_limit = Real(q);  // u^t ln u -> 0 (t > 0)
                         inner.upper_limit = Real(q);  // kernel -> 0 at u = 1
                         return inner;
                       }};
  // far end in t: the section integral decays like 1/(2t^2)
  spec2.outer.upper_limit = Real::of_double(0.5, q);
  QuadResult2 r = integrate_2d_iterated(spec2, tol, ctx, tally);
  if (meta) *meta = r;
  return r.value;
}

/// Iterated integral over the triangle 0 < v < 1 - u of
/// -v/((1-v)(1-u) ln u).
inline Real gamma_triangle_integral(double tol, const PrecisionContext& ctx,
                                    WorkTally* tally = nullptr,
                                    QuadResult2* meta = nullptr) {
  const mpfr_prec_t q = static_cast<mpfr_prec_t>(ctx.bits() + 32);
  Iterated2DSpec spec2{
      IntegrandSpec::finite(Real(q), Real::of_ui(1, q), nullptr),
      [q](const Real& u) {
        Real uc = u;
        Real scale = (1ul - u) * detail::neg_ln(u, q);  // positive for u<1
        auto f = [scale](const Real& v) {
          return v / ((1ul - v) * scale);
        };
        return IntegrandSpec::finite(Real(q), 1ul - uc, f);
      }};
  spec2.outer.lower_limit = Real::of_ui(1, q);     // section value as u -> 0
  spec2.outer.upper_limit = Real::of_double(0.5, q);  // and as u -> 1
  QuadResult2 r = integrate_2d_iterated(spec2, tol, ctx, tally);
  if (meta) *meta = r;
  return r.value;
}

/// Iterated integral over the unit square of -(1-x)/((1-xy) ln xy),
/// outer in x. The integrand is unbounded toward the (1,1) corner; the
/// refinement floor and a looser tolerance handle it.
inline Real gamma_double_integral(double tol, const PrecisionContext& ctx,
                                  WorkTally* tally = nullptr,
                                  QuadResult2* meta = nullptr) {
  const mpfr_prec_t q = static_cast<mpfr_prec_t>(ctx.bits() + 32);
  Iterated2DSpec spec2{
      IntegrandSpec::finite(Real(q), Real::of_ui(1, q), nullptr),
      [q](const Real& x) {
        Real xc = x;
        auto f = [xc, q](const Real& y) {
          Real xy = xc * y;
          return -((1ul - xc) / ((1ul - xy) * ln(xy, q)));
        };
        auto inner =
            IntegrandSpec::finite(Real(q), Real::of_ui(1, q), f);
        inner.lower_limit = Real(q);  // ln(xy) -> -inf as y -> 0
        inner.upper_limit = (xc.sign() > 0)
                                ? -(1ul / ln(xc, q))
                                : Real(q);  // section value at y = 1
        return inner;
      }};
  // the inner integral tends to 1 as x -> 1 (and to 0 at x = 0)
  spec2.outer.upper_limit = Real::of_ui(1, q);
  QuadResult2 r = integrate_2d_iterated(spec2, tol, ctx, tally);
  if (meta) *meta = r;
  return r.value;
}

/// Integral over [1, inf) of trigamma(t) - 1/t, evaluated through the
/// subtraction-free series form of the integrand.
inline Real gamma_trigamma_integral(double tol, const PrecisionContext& ctx,
                                    WorkTally* tally = nullptr,
                                    QuadResult* meta = nullptr) {
  const mpfr_prec_t q = static_cast<mpfr_prec_t>(ctx.bits() + 32);
  const double series_tol = tol / 16;
  auto f = [&, series_tol](const Real& t) {
    return trigamma_minus_reciprocal(t, ctx, series_tol, tally);
  };
  auto spec = IntegrandSpec::to_infinity(Real::of_ui(1, q), f);
  spec.upper_limit = Real::of_double(0.5, q);  // t^2 (trigamma - 1/t) -> 1/2
  QuadResult r = integrate_1d(spec, tol * 0.875, ctx, tally);
  if (meta) *meta = r;
  return r.value;
}

/// H_{n-1} - ln n + integral over [n, inf) of (1/t)[F(1,1,1;2,t+1) - 1].
/// Larger n trades explicit harmonic terms for a shorter, flatter integral,
/// so the work to reach a fixed tolerance drops.
inline Real gamma_accelerated(unsigned long n, double tol,
                              const PrecisionContext& ctx,
                              WorkTally* tally = nullptr,
                              QuadResult* meta = nullptr) {
  if (n < 1) throw domain_error("gamma_accelerated: n must be >= 1");
  const mpfr_prec_t q = static_cast<mpfr_prec_t>(ctx.bits() + 32);
  const double series_tol = tol / 16;
  auto f = [&, series_tol, q](const Real& t) {
    Real one = Real::of_ui(1, q);
    Hyp3F2Params p(one, one, Real::of_ui(2, q), t + 1ul);
    return hyp3f2_unit_minus_one(p, ctx, series_tol, tally) / t;
  };
  auto spec = IntegrandSpec::to_infinity(Real::of_ui(n, q), f);
  spec.upper_limit = Real::of_double(0.5, q);  // (t/s)... integrand ~ 1/(2t^2)
  QuadResult r = integrate_1d(spec, tol * 0.875, ctx, tally);
  if (meta) *meta = r;
  Real head = detail::harmonic(n - 1, q) - ln(Real::of_ui(n, q), q);
  if (tally) tally->series_terms += static_cast<long long>(n - 1);
  return (head + r.value).rounded_to(ctx.bits());
}

/// Quadrature minus closed form of the beta integral
///   integral_0^1 u^(t-1) (1-u)^n / (n+1) du
///     = n! / ((n+1) t (t+1) ... (t+n)).
inline Real beta_integral_residual(unsigned long n, const Real& t, double tol,
                                   const PrecisionContext& ctx,
                                   WorkTally* tally = nullptr) {
  if (n < 1) throw domain_error("beta_integral_residual: n must be >= 1");
  if (t.sign() <= 0)
    throw domain_error("beta_integral_residual: t must be positive");
  const mpfr_prec_t q = static_cast<mpfr_prec_t>(ctx.bits() + 32);
  Real tm1 = t - 1ul;
  auto f = [tm1, n, q](const Real& u) {
    return pow(u, tm1, q) * pow_ui(1ul - u, n, q) / (n + 1);
  };
  auto spec = IntegrandSpec::finite(Real(q), Real::of_ui(1, q), f);
  if (t < Real::of_ui(1, q)) spec.lower_limit = Real(q);  // integrable blow-up
  QuadResult lhs = integrate_1d(spec, tol, ctx, tally);

  mpz_class fact;
  mpz_fac_ui(fact.get_mpz_t(), n);
  Real rhs(q);
  mpfr_set_z(rhs.raw(), fact.get_mpz_t(), MPFR_RNDN);
  rhs /= (n + 1);
  for (unsigned long j = 0; j <= n; ++j) rhs /= t + j;
  return (lhs.value - rhs).rounded_to(ctx.bits());
}

/// The maximum of u^t (1-u)^n / (n+1) on [0,1]: its location t/(n+t), the
/// closed form n^n t^t / ((n+1)(n+t)^(n+t)), the strict upper bound
/// t^t / n^(1+t), and a 10^4-point grid maximum for comparison.
struct EnvelopeMax {
  Real max_value;
  Real closed_form;
  Real upper;
  Real grid_max;
};

inline EnvelopeMax envelope_max_check(unsigned long n, const Real& t,
                                      const PrecisionContext& ctx) {
  if (n < 1) throw domain_error("envelope_max_check: n must be >= 1");
  if (t.sign() <= 0)
    throw domain_error("envelope_max_check: t must be positive");
  const mpfr_prec_t q = static_cast<mpfr_prec_t>(ctx.bits() + 32);
  auto value_at = [&](const Real& u) {
    return pow(u, t, q) * pow_ui(1ul - u, n, q) / (n + 1);
  };
  Real u_star = t / (t + n);
  Real max_value = value_at(u_star);

  Real nr = Real::of_ui(n, q);
  Real closed = pow(nr, nr, q) * pow(t, t, q) /
                ((n + 1) * pow(nr + t, nr + t, q));
  Real upper = pow(t, t, q) / pow(nr, 1ul + t, q);

  Real grid_max(q);
  const unsigned long grid = 10'000;
  for (unsigned long i = 1; i < grid; ++i) {
    Real u = Real::of_ui(i, q) / grid;
    Real v = value_at(u);
    if (v > grid_max) grid_max = v;
  }
  return {max_value.rounded_to(ctx.bits()), closed.rounded_to(ctx.bits()),
          upper.rounded_to(ctx.bits()), grid_max.rounded_to(ctx.bits())};
}

/// Partial sum minus closed form of
///   sum_{n>=1} u^t (1-u)^n/(n+1) = u^t (-ln u/(1-u) - 1),
/// plus the geometric bound on the truncation tail.
struct LogSeriesResidual {
  Real residual;
  Real tail_bound;
};

inline LogSeriesResidual log_series_residual(const Real& u, const Real& t,
                                             unsigned long N,
                                             const PrecisionContext& ctx) {
  if (u.sign() <= 0 || !(u < Real::of_ui(1, u.prec())))
    throw domain_error("log_series_residual: u must lie in (0,1)");
  if (t.sign() < 0)
    throw domain_error("log_series_residual: t must be nonnegative");
  const mpfr_prec_t q = static_cast<mpfr_prec_t>(ctx.bits() + 32);
  Real ut = pow(u, t, q);
  Real w = 1ul - u;
  Real partial(q);
  Real wp = w;  // (1-u)^n
  for (unsigned long n = 1; n <= N; ++n) {
    partial += wp / (n + 1);
    wp *= w;
  }
  partial *= ut;
  Real closed = ut * (detail::neg_ln(u, q) / w - 1ul);
  // wp is now (1-u)^(N+1); tail < ut wp^... sum_{n>N} (1-u)^n/(n+1)
  //   < ut (1-u)^(N+1) / ((N+2) u)
  Real tail_bound = ut * wp / ((N + 2) * u);
  return {(partial - closed).rounded_to(ctx.bits()),
          tail_bound.rounded_to(ctx.bits())};
}

/// Pointwise residual of the substitution v = 1-x, u = xy between the
/// square-domain integrand and the triangle-domain integrand; the Jacobian
/// contributes a factor x. Zero up to rounding.
inline Real change_of_variables_residual(const Real& x, const Real& y,
                                         const PrecisionContext& ctx) {
  const mpfr_prec_t q = static_cast<mpfr_prec_t>(ctx.bits() + 32);
  Real one = Real::of_ui(1, q);
  if (x.sign() <= 0 || !(x < one) || y.sign() <= 0 || !(y < one))
    throw domain_error("change_of_variables_residual: need 0 < x, y < 1");
  Real xy = x * y;
  Real square = -((one - x) / ((one - xy) * ln(xy, q)));
  Real v = one - x;
  Real u = xy;
  Real triangle = -(v / ((one - v) * (one - u) * ln(u, q)));
  return (square - triangle * x).rounded_to(ctx.bits());
}

/// Quadrature of  integral_1^inf n! / ((n+1) t (t+1) ... (t+n)) dt  minus
/// forward_difference_log(n)/(n+1): validates the termwise partial-fraction
/// integration linking the key integrand to the binomial-log series.
inline Real partial_fraction_residual(unsigned long n, double tol,
                                      const PrecisionContext& ctx,
                                      WorkTally* tally = nullptr) {
  if (n < 1) throw domain_error("partial_fraction_residual: n must be >= 1");
  const mpfr_prec_t q = static_cast<mpfr_prec_t>(ctx.bits() + 32);
  mpz_class fact;
  mpz_fac_ui(fact.get_mpz_t(), n);
  auto f = [fact, n, q](const Real& t) {
    Real denom = t;
    for (unsigned long j = 1; j <= n; ++j) denom *= t + j;
    Real num(q);
    mpfr_set_z(num.raw(), fact.get_mpz_t(), MPFR_RNDN);
    return num / (denom * (n + 1));
  };
  auto spec = IntegrandSpec::to_infinity(Real::of_ui(1, q), f);
  spec.upper_limit =
      (n == 1) ? Real::of_double(0.5, q) : Real(q);  // t^2 f -> 1/2 or 0
  QuadResult lhs = integrate_1d(spec, tol, ctx, tally);

  PrecisionContext boosted(std::max(ctx.bits(), required_bits(n)));
  Real rhs = forward_difference_log(n, boosted) / (n + 1);
  return (lhs.value - rhs).rounded_to(ctx.bits());
}

/// One row of a convergence table. abs_error is always recomputed from the
/// stored approximation and the frozen reference, never cached.
struct ConvergenceRecord {
  Method method;
  double parameter = 0.0;
  bool parameter_is_count = false;
  Real approximation;
  long long work = 0;
  std::string error;  // empty on success

  double abs_error_vs(const Real& reference) const {
    return abs(approximation - reference).to_double();
  }
};

/// Evaluates one method across a parameter list: term counts for the series
/// and limit methods (ascending), tolerances for the integral methods
/// (coarse to fine). The product-series rows share one series walk. Errors
/// are attached to their rows rather than aborting the table.
inline std::vector<ConvergenceRecord> convergence_table(
    Method m, std::vector<double> params, const PrecisionContext& ctx,
    double accel_tol = 1e-10) {
  std::vector<ConvergenceRecord> rows;
  const bool counts = method_takes_count(m);
  if (counts)
    std::sort(params.begin(), params.end());
  else
    std::sort(params.begin(), params.end(), std::greater<double>());

  auto make_row = [&](double p) {
    ConvergenceRecord r{m, p, counts, Real(ctx.bits()), 0, ""};
    return r;
  };

  if (m == Method::ProductSeries) {
    for (double p : params) rows.push_back(make_row(p));
    unsigned long maxN = 0;
    for (double p : params)
      maxN = std::max(maxN, static_cast<unsigned long>(p));
    // largest N the context can absorb; rows beyond it carry the error
    unsigned long feasible = 0;
    while (feasible < maxN &&
           required_bits(feasible + 1) + detail::ceil_log2(feasible + 1) <=
               ctx.bits())
      ++feasible;
    for (auto& r : rows)
      if (r.parameter > static_cast<double>(feasible))
        r.error = "precision: need " +
                  std::to_string(required_bits(
                      static_cast<unsigned long>(r.parameter))) +
                  " bits";
    if (feasible >= 1) {
      WorkTally tally;
      detail::series_prefix(
          feasible, ctx,
          [&](unsigned long n, const Real& s) {
            for (auto& r : rows) {
              if (r.error.empty() &&
                  static_cast<unsigned long>(r.parameter) == n) {
                r.approximation = eval_exp(s.rounded_to(ctx.bits()), ctx);
                r.work = tally.series_terms;
              }
            }
          },
          &tally);
    }
    return rows;
  }

  for (double p : params) {
    ConvergenceRecord r = make_row(p);
    WorkTally tally;
    try {
      switch (m) {
        case Method::Limit:
          r.approximation =
              gamma_limit(static_cast<unsigned long>(p), ctx, &tally);
          break;
        case Method::TelescopedSeries:
          r.approximation = gamma_telescoped_series(
              static_cast<unsigned long>(p), ctx, &tally);
          break;
        case Method::Accelerated:
          r.approximation = gamma_accelerated(static_cast<unsigned long>(p),
                                              accel_tol, ctx, &tally);
          break;
        case Method::HypIntegral:
          r.approximation = gamma_hyp_integral(p, ctx, &tally);
          break;
        case Method::Classical:
          r.approximation = gamma_classical(p, ctx, &tally);
          break;
        case Method::StripIntegral:
          r.approximation = gamma_strip_integral(p, ctx, &tally);
          break;
        case Method::TriangleIntegral:
          r.approximation = gamma_triangle_integral(p, ctx, &tally);
          break;
        case Method::DoubleIntegral:
          r.approximation = gamma_double_integral(p, ctx, &tally);
          break;
        case Method::TrigammaIntegral:
          r.approximation = gamma_trigamma_integral(p, ctx, &tally);
          break;
        case Method::ProductSeries:
          break;  // handled above
      }
      r.work = tally.total();
    } catch (const precision_error& e) {
      r.error = std::string("precision: ") + e.what();
    } catch (const convergence_error& e) {
      r.error = std::string("convergence: ") + e.what();
    } catch (const domain_error& e) {
      r.error = std::string("domain: ") + e.what();
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace eulerprod
