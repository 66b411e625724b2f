// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>

#include "eulerprod/bernoulli.hpp"
#include "eulerprod/errors.hpp"
#include "eulerprod/precision.hpp"

namespace eulerprod {

/// Evaluation-effort counters shared across the numeric layers: quadrature
/// counts integrand evaluations, the series engines count terms. Both are
/// deterministic, machine-independent measures of work.
struct WorkTally {
  long long integrand_evals = 0;
  long long series_terms = 0;
  long long total() const { return integrand_evals + series_terms; }
};

/// Parameters of F(1, s, t; u, v) at unit argument: term m of the series is
/// (s)_m (t)_m / ((u)_m (v)_m), with the leading numerator parameter 1
/// cancelling the 1/m!. Construction enforces positivity of the denominator
/// parameters and the convergence condition u + v - 1 - s - t > 0.
class Hyp3F2Params {
 public:
  Hyp3F2Params(Real s, Real t, Real u, Real v)
      : s_(std::move(s)), t_(std::move(t)), u_(std::move(u)), v_(std::move(v)) {
    if (u_.sign() <= 0 || v_.sign() <= 0)
      throw domain_error("Hyp3F2Params: denominator parameters must be positive");
    if (excess().sign() <= 0)
      throw domain_error(
          "Hyp3F2Params: series diverges; need u + v - 1 - s - t > 0");
  }

  static Hyp3F2Params of(double s, double t, double u, double v,
                         mpfr_prec_t prec) {
    return Hyp3F2Params(Real::of_double(s, prec), Real::of_double(t, prec),
                        Real::of_double(u, prec), Real::of_double(v, prec));
  }

  const Real& s() const { return s_; }
  const Real& t() const { return t_; }
  const Real& u() const { return u_; }
  const Real& v() const { return v_; }

  /// u + v - 1 - s - t; terms decay like m^-(1+excess).
  Real excess() const { return u_ + v_ - 1ul - s_ - t_; }

 private:
  Real s_, t_, u_, v_;
};

namespace detail {

constexpr long long kHypIterationCap = 10'000'000;

/// Truncated power series in x with Real coefficients, fixed order.
template <int Order>
struct Series {
  std::array<Real, Order + 1> c;

  explicit Series(mpfr_prec_t prec) : c(make(prec)) {}

  static std::array<Real, Order + 1> make(mpfr_prec_t prec) {
    return make_impl(prec, std::make_index_sequence<Order + 1>{});
  }
  template <std::size_t... I>
  static std::array<Real, Order + 1> make_impl(mpfr_prec_t prec,
                                               std::index_sequence<I...>) {
    return {((void)I, Real(prec))...};
  }

  mpfr_prec_t prec() const { return c[0].prec(); }

  Series mul(const Series& o) const {
    Series r(prec());
    for (int k = 0; k <= Order; ++k)
      for (int j = 0; j <= k; ++j) r.c[k] += c[j] * o.c[k - j];
    return r;
  }

  /// Multiplicative inverse; requires a nonzero constant term.
  Series inverse() const {
    Series r(prec());
    Real inv0 = 1ul / c[0];
    r.c[0] = inv0;
    for (int k = 1; k <= Order; ++k) {
      Real acc(prec());
      for (int j = 1; j <= k; ++j) acc += c[j] * r.c[k - j];
      r.c[k] = -(inv0 * acc);
    }
    return r;
  }
};

constexpr int kTailSeriesOrder = 9;  // power-series truncation in x = 1/N
constexpr int kTailUnknowns = 9;     // ansatz coefficients a_{-1} .. a_7
using TailSeries = Series<kTailSeriesOrder>;

/// Coefficients of the asymptotic tail factor R(N): with G(m) the m-th series
/// term, R(N) = sum_{m>=N} G(m) / G(N) satisfies R(N) = 1 + r(N) R(N+1),
/// where r is the term ratio. Substituting the ansatz
/// R(N) = a_{-1} N + a_0 + a_1/N + ... and matching powers of 1/N gives a
/// triangular linear system solved here once per evaluation.
struct TailFactor {
  std::array<Real, kTailUnknowns> a;  // a[0] = a_{-1}, a[i] = a_{i-1} for i >= 1

  explicit TailFactor(const Hyp3F2Params& p, mpfr_prec_t q)
      : a{Real(q), Real(q), Real(q), Real(q), Real(q),
          Real(q), Real(q), Real(q), Real(q)} {
    // r(x) with x = 1/N: (1 + s x)(1 + t x) / ((1 + u x)(1 + v x)).
    TailSeries num(q), den(q), one_plus_x(q);
    num.c[0] = Real::of_ui(1, q);
    num.c[1] = p.s() + p.t();
    num.c[2] = p.s() * p.t();
    den.c[0] = Real::of_ui(1, q);
    den.c[1] = p.u() + p.v();
    den.c[2] = p.u() * p.v();
    one_plus_x.c[0] = Real::of_ui(1, q);
    one_plus_x.c[1] = Real::of_ui(1, q);
    TailSeries r = num.mul(den.inverse());
    TailSeries inv_1px = one_plus_x.inverse();

    // basis[i](x) multiplies unknown a[i]; basis for a_{-1} is
    // (1 - r(x)(1+x)) / x, and for a_j (j >= 0) it is x^j (1 - r(x)(1+x)^-j).
    std::array<TailSeries, kTailUnknowns> basis{
        TailSeries(q), TailSeries(q), TailSeries(q), TailSeries(q),
        TailSeries(q), TailSeries(q), TailSeries(q), TailSeries(q),
        TailSeries(q)};
    {
      TailSeries e = r.mul(one_plus_x);
      for (int k = 0; k < kTailSeriesOrder; ++k)
        basis[0].c[k] = -e.c[k + 1];  // (1 - e)/x; constant term of e is 1
    }
    TailSeries pw(q);
    pw.c[0] = Real::of_ui(1, q);  // (1+x)^-j, starting at j = 0
    for (int j = 0; j + 1 < kTailUnknowns; ++j) {
      TailSeries g = r.mul(pw);
      for (int k = 0; k <= kTailSeriesOrder; ++k) g.c[k] = -g.c[k];
      g.c[0] += Real::of_ui(1, q);
      // shift up by j places into basis[j+1]
      for (int k = kTailSeriesOrder; k >= j; --k) basis[j + 1].c[k] = g.c[k - j];
      pw = pw.mul(inv_1px);
    }

    // Triangular solve: equation at x^k determines a[k] (basis[i] starts at
    // order i for i >= 1, order 0 for i = 0).
    for (int k = 0; k < kTailUnknowns; ++k) {
      Real rhs = (k == 0) ? Real::of_ui(1, q) : Real(q);
      for (int i = 0; i < k; ++i) rhs -= a[i] * basis[i].c[k];
      a[k] = rhs / basis[k].c[k];
    }
  }

  /// R(N) from the ansatz, by Horner in 1/N.
  Real at(const Real& n_value) const {
    Real x = 1ul / n_value;
    Real acc = a[kTailUnknowns - 1];
    for (int i = kTailUnknowns - 2; i >= 1; --i) acc = acc * x + a[i];
    return acc + a[0] * n_value;
  }
};

/// Shared series engine. Sums term_0 = 1 (skipped when with_leading_one is
/// false), term_{m+1} = term_m (s+m)(t+m)/((u+m)(v+m)), and at doubling
/// checkpoints closes the sum with the asymptotic tail factor. Two successive
/// closed estimates agreeing within tol/2 validate each other, since the
/// truncation error decays like a power of the checkpoint index.
inline Real hyp3f2_sum(const Hyp3F2Params& p, const PrecisionContext& ctx,
                       double tol, bool with_leading_one,
                       WorkTally* tally = nullptr) {
  if (!(tol > 0)) throw domain_error("hyp3f2: tol must be positive");
  const mpfr_prec_t q = static_cast<mpfr_prec_t>(ctx.bits() + 32);
  const TailFactor tail(p, q);

  Real sum(q);
  if (with_leading_one) sum = Real::of_ui(1, q);
  Real term = Real::of_ui(1, q);
  Real sm(q), tm(q), um(q), vm(q), numer(q), denom(q), next_term(q);
  bool have_prev = false;
  Real prev_estimate(q);
  long long next_checkpoint = 4;

  for (long long m = 0; m <= kHypIterationCap; ++m) {
    // next_term = term * (s+m)(t+m) / ((u+m)(v+m)), all in place
    unsigned long mu = static_cast<unsigned long>(m);
    mpfr_add_ui(sm.raw(), p.s().raw(), mu, MPFR_RNDN);
    mpfr_add_ui(tm.raw(), p.t().raw(), mu, MPFR_RNDN);
    mpfr_add_ui(um.raw(), p.u().raw(), mu, MPFR_RNDN);
    mpfr_add_ui(vm.raw(), p.v().raw(), mu, MPFR_RNDN);
    mpfr_mul(numer.raw(), sm.raw(), tm.raw(), MPFR_RNDN);
    mpfr_mul(denom.raw(), um.raw(), vm.raw(), MPFR_RNDN);
    mpfr_mul(next_term.raw(), term.raw(), numer.raw(), MPFR_RNDN);
    mpfr_div(next_term.raw(), next_term.raw(), denom.raw(), MPFR_RNDN);
    if (tally) ++tally->series_terms;

    if (next_term.is_zero()) {  // s or t hit a nonpositive integer; sum exact
      return sum.rounded_to(ctx.bits());
    }

    if (m + 1 == next_checkpoint) {
      Real n_value = Real::of_ui(static_cast<unsigned long>(m + 1), q);
      Real est_tail = next_term * tail.at(n_value);
      Real estimate = sum + est_tail;
      Real bound = abs(estimate) * Real::of_double(0.5 * tol, q);
      // a tail already far below tolerance needs no cross-validation
      if (abs(est_tail) * 8ul <= bound) return estimate.rounded_to(ctx.bits());
      if (have_prev && abs(estimate - prev_estimate) <= bound)
        return estimate.rounded_to(ctx.bits());
      prev_estimate = std::move(estimate);
      have_prev = true;
      next_checkpoint *= 2;
    }

    mpfr_add(sum.raw(), sum.raw(), next_term.raw(), MPFR_RNDN);
    mpfr_swap(term.raw(), next_term.raw());
  }
  throw convergence_error(
      "hyp3f2: iteration cap reached before meeting tol = " +
          std::to_string(tol),
      sum.to_double(), tol);
}

}  // namespace detail

/// F(1, s, t; u, v) at unit argument, within 2*tol relative of the true sum.
inline Real hyp3f2_unit(const Hyp3F2Params& p, const PrecisionContext& ctx,
                        double tol, WorkTally* tally = nullptr) {
  return detail::hyp3f2_sum(p, ctx, tol, /*with_leading_one=*/true, tally);
}

/// F(1, s, t; u, v) - 1, summed without the leading term so that small
/// values keep full relative accuracy (used where F is near 1).
inline Real hyp3f2_unit_minus_one(const Hyp3F2Params& p,
                                  const PrecisionContext& ctx, double tol,
                                  WorkTally* tally = nullptr) {
  return detail::hyp3f2_sum(p, ctx, tol, /*with_leading_one=*/false, tally);
}

/// The unit-argument reduction F(1, s, t; s+1, v) =
/// s/(v-t) * F(1, v-t, v-s; v-t+1, v), valid for s > 0 and v > t.
struct Hyp3F2Reduction {
  Real coefficient;
  Hyp3F2Params reduced;
};

inline Hyp3F2Reduction hyp3f2_transform(const Hyp3F2Params& p) {
  if (!(p.u() == p.s() + 1ul))
    throw shape_error("hyp3f2_transform: needs the shape F(1, s, t; s+1, v)");
  if (p.s().sign() <= 0)
    throw validity_error("hyp3f2_transform: requires s > 0");
  if (!(p.v() > p.t()))
    throw validity_error("hyp3f2_transform: requires v - t > 0");
  Real coeff = p.s() / (p.v() - p.t());
  Hyp3F2Params reduced(p.v() - p.t(), p.v() - p.s(), p.v() - p.t() + 1ul,
                       p.v());
  return {std::move(coeff), std::move(reduced)};
}

/// Shifted digamma  sum_{n>=0} (1/(n+1) - 1/(x+n)), the additively
/// normalized logarithmic derivative of the factorial function: it vanishes
/// at 1 and satisfies value(x+1) = value(x) + 1/x, so value(n+1) is the n-th
/// harmonic number. Computed as an explicit partial sum plus the asymptotic
/// tail difference, which is free of any reference constant. Absolute error
/// below 2^(8-bits).
inline Real digamma_shifted(const Real& x, const PrecisionContext& ctx) {
  if (x.is_nan() || x.sign() <= 0)
    throw domain_error("digamma_shifted: argument must be positive");
  const mpfr_prec_t q = static_cast<mpfr_prec_t>(ctx.bits() + 64);
  const unsigned long terms =
      static_cast<unsigned long>(ctx.bits() < 64 ? 64 : ctx.bits());

  Real xq = x.rounded_to(q);
  Real xm1 = xq - 1ul;
  Real sum(q);
  Real z = xq;  // x + n
  for (unsigned long n = 0; n < terms; ++n) {
    sum += xm1 / ((n + 1) * z);
    z += 1ul;
  }

  // Tail = sum_{n>=terms} (1/(n+1) - 1/(x+n)); by the asymptotic expansion
  // of both partial fraction tails this is
  //   ln(z2/z1) - 1/(2 z2) + 1/(2 z1) - sum_k B_{2k}/(2k) (z2^-2k - z1^-2k)
  // with z1 = terms + 1 and z2 = terms + x. The expansion minimum is far
  // below the target because z1, z2 >= bits.
  Real z1 = Real::of_ui(terms + 1, q);
  Real z2 = z;  // terms + x
  Real tail = ln(z2 / z1, q);
  tail -= 1ul / (z2 * 2ul);
  tail += 1ul / (z1 * 2ul);
  Real iz1 = 1ul / (z1 * z1);
  Real iz2 = 1ul / (z2 * z2);
  Real p1 = iz1, p2 = iz2;
  Real cutoff(q);
  mpfr_set_ui_2exp(cutoff.raw(), 1, static_cast<mpfr_exp_t>(-(ctx.bits() + 16)),
                   MPFR_RNDN);
  for (unsigned long k = 1; k <= 4 * terms; ++k) {
    Real b(q);
    mpfr_set_q(b.raw(), bernoulli(2 * k).get_mpq_t(), MPFR_RNDN);
    b /= 2 * k;
    Real piece = b * (p2 - p1);
    tail -= piece;
    if (abs(b * p1) <= cutoff && abs(b * p2) <= cutoff) break;
    p1 *= iz1;
    p2 *= iz2;
  }
  return (sum + tail).rounded_to(ctx.bits());
}

/// Trigamma  sum_{n>=0} (x+n)^-2, within tol. Terms are summed directly
/// until the integral bracket  1/(x+N) <= tail <= 1/(x+N-1)  is narrower
/// than tol; the returned tail estimate 1/(x+N-1/2) lies inside the bracket,
/// so the bracket width bounds the error. Far terms, individually below
/// ~1e-9 of the total, are accumulated in compensated double arithmetic;
/// their rounding contribution stays several decades under tol.
inline Real trigamma(const Real& x, const PrecisionContext& ctx, double tol) {
  if (x.is_nan() || x.sign() <= 0)
    throw domain_error("trigamma: argument must be positive");
  if (!(tol > 0)) throw domain_error("trigamma: tol must be positive");
  const mpfr_prec_t q = static_cast<mpfr_prec_t>(ctx.bits() + 32);
  constexpr long long cap = 400'000'000;
  const double z_switch = std::max(64.0, 4.4e-15 / tol);

  Real sum(q);
  Real z = x.rounded_to(q);  // x + n
  Real inv(q), width(q);
  Real tolr = Real::of_double(tol, q);
  unsigned long n_summed = 0;
  bool closed = false;
  while (mpfr_cmp_d(z.raw(), z_switch) < 0) {
    mpfr_sqr(inv.raw(), z.raw(), MPFR_RNDN);
    mpfr_ui_div(inv.raw(), 1, inv.raw(), MPFR_RNDN);
    mpfr_add(sum.raw(), sum.raw(), inv.raw(), MPFR_RNDN);
    mpfr_add_ui(z.raw(), z.raw(), 1, MPFR_RNDN);
    ++n_summed;
    mpfr_sub_ui(width.raw(), z.raw(), 1, MPFR_RNDN);
    mpfr_mul(width.raw(), width.raw(), z.raw(), MPFR_RNDN);
    mpfr_ui_div(width.raw(), 1, width.raw(), MPFR_RNDN);
    if (width <= tolr) {
      closed = true;
      break;
    }
  }
  if (!closed) {
    double zd = z.to_double();  // x + n_summed, large enough to be exact here
    double far = 0.0, comp = 0.0;  // Kahan pair
    long long n2 = 0;
    while (1.0 / ((zd - 1.0) * zd) > tol) {
      if (++n2 > cap)
        throw convergence_error(
            "trigamma: bracket did not close within the iteration cap",
            sum.to_double() + far, tol);
      double term = 1.0 / (zd * zd);
      double y = term - comp;
      double t2 = far + y;
      comp = (t2 - far) - y;
      far = t2;
      zd += 1.0;
    }
    sum += Real::of_double(far, q);
    sum += Real::of_double(comp, q);
    n_summed += static_cast<unsigned long>(n2);
  }
  // z = x + n_summed exactly, then the in-bracket tail estimate
  Real zn = x.rounded_to(q) + n_summed;
  Real tail_est = 1ul / (zn - Real::of_double(0.5, q));
  return (sum + tail_est).rounded_to(ctx.bits());
}

/// Trigamma(t) - 1/t evaluated subtraction-free through the series
/// sum_{n>=0} 1/((t+n)^2 (t+n+1)), closed with an Euler-Maclaurin tail.
/// All terms are positive, so the result carries full relative accuracy even
/// where the plain difference would cancel to nothing (large t). Integrands
/// over [1, inf) use this form.
inline Real trigamma_minus_reciprocal(const Real& t, const PrecisionContext& ctx,
                                      double rel_tol,
                                      WorkTally* tally = nullptr) {
  if (t.is_nan() || t.sign() <= 0)
    throw domain_error("trigamma_minus_reciprocal: argument must be positive");
  const mpfr_prec_t q = static_cast<mpfr_prec_t>(ctx.bits() + 32);

  Real sum(q);
  Real z = t.rounded_to(q);  // t + n
  Real tolr = Real::of_double(rel_tol, q);
  for (long long n = 0;; ++n) {
    if (n % 8 == 0) {
      // Remainder of the Euler-Maclaurin closure is far below z^-8.
      Real rem = 1ul / pow_ui(z, 8, q);
      Real scale = sum + 1ul / (z * z * 2ul);
      if (rem <= tolr * scale) break;
    }
    Real zp1 = z + 1ul;
    sum += 1ul / (z * z * zp1);
    if (tally) ++tally->series_terms;
    z = std::move(zp1);
  }

  // Euler-Maclaurin over m = z, z+1, ... of f(m) = 1/(m^2 (m+1)) =
  // m^-2 - m^-1 + (m+1)^-1:
  //   integral:  1/z - ln(1 + 1/z)
  //   + f(z)/2 - f'(z)/12 + f'''(z)/720 - f^(5)(z)/30240
  Real zin = 1ul / z;
  Real zp1 = z + 1ul;
  Real integral = zin - log1p(zin, q);
  Real f0 = 1ul / (z * z * zp1);
  Real z2 = z * z, z3 = z2 * z, z4 = z3 * z, z5 = z4 * z, z6 = z5 * z,
       z7 = z6 * z;
  Real w2 = zp1 * zp1, w4 = w2 * w2, w6 = w4 * w2;
  Real f1 = 1ul / z2 - 2ul / z3 - 1ul / w2;
  Real f3 = 6ul / z4 - 24ul / z5 - 6ul / w4;
  Real f5 = 120ul / z6 - 720ul / z7 - 120ul / w6;
  Real tail = integral + f0 / 2ul - f1 / 12ul + f3 / 720ul - f5 / 30240ul;
  return (sum + tail).rounded_to(ctx.bits());
}

/// Residual of the reduction identity
///   (1/t) [F(1,1,1;2,t+1) - 1]  =  1/(2t(t+1)) F(1,2,2;3,t+2),
/// both sides evaluated from the series. Near zero when the identity holds.
inline Real reduction_identity_residual(const Real& t,
                                        const PrecisionContext& ctx,
                                        double tol,
                                        WorkTally* tally = nullptr) {
  if (t.is_nan() || t.sign() <= 0)
    throw domain_error("reduction_identity_residual: t must be positive");
  const mpfr_prec_t q = static_cast<mpfr_prec_t>(ctx.bits() + 32);
  Real one = Real::of_ui(1, q);
  Real two = Real::of_ui(2, q);
  Real three = Real::of_ui(3, q);
  Real tq = t.rounded_to(q);

  Hyp3F2Params left(one, one, two, tq + 1ul);
  Real lhs = hyp3f2_unit_minus_one(left, ctx, tol, tally) / tq;

  Hyp3F2Params right(two, two, three, tq + 2ul);
  Real rhs = hyp3f2_unit(right, ctx, tol, tally) / (tq * (tq + 1ul) * 2ul);

  return (lhs - rhs).rounded_to(ctx.bits());
}

}  // namespace eulerprod
