// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <iterator>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eulerprod/errors.hpp"
#include "eulerprod/precision.hpp"
#include "eulerprod/special_functions.hpp"  // WorkTally

namespace eulerprod {

/// One-dimensional integrand over (lower, upper), where upper may be an
/// infinite marker. Endpoint limit values take the place of evaluator calls
/// at the corresponding original endpoint; for an integrable but unbounded
/// endpoint any finite patch value works, the adaptive refinement grades
/// around it. For an infinite upper end, upper_limit is the limit of
/// f(t) * t^2 as t grows; the tail transform derives the transformed
/// integrand's far-end value from it.
struct IntegrandSpec {
  std::function<Real(const Real&)> evaluator;
  Real lower;
  Real upper;
  bool upper_infinite = false;
  std::optional<Real> lower_limit;
  std::optional<Real> upper_limit;

  static IntegrandSpec finite(Real lo, Real hi,
                              std::function<Real(const Real&)> f) {
    if (!(lo < hi))
      throw domain_error("IntegrandSpec: lower must be below upper");
    IntegrandSpec s;
    s.evaluator = std::move(f);
    s.lower = std::move(lo);
    s.upper = std::move(hi);
    return s;
  }

  static IntegrandSpec to_infinity(Real lo,
                                   std::function<Real(const Real&)> f) {
    IntegrandSpec s;
    s.evaluator = std::move(f);
    s.upper = s.lower = std::move(lo);
    s.upper_infinite = true;
    return s;
  }

 private:
  IntegrandSpec() : lower(64), upper(64) {}
};

struct QuadResult {
  Real value;
  double err_estimate = 0.0;
  long long evaluations = 0;
  bool hit_floor = false;
};

namespace detail {

/// Clenshaw-Curtis nodes and weights on [-1, 1] at a given precision:
/// 17-point base rule with the embedded 9-point rule on the even nodes.
struct CCRule {
  std::vector<Real> nodes;  // x_j = cos(j pi / 16), j = 0..16
  std::vector<Real> w16;    // 17 weights
  std::vector<Real> w8;     // 9 weights for the embedded rule

  explicit CCRule(mpfr_prec_t q) {
    Real pi(q);
    mpfr_const_pi(pi.raw(), MPFR_RNDN);
    auto cc_weights = [&](unsigned long n) {
      std::vector<Real> w;
      for (unsigned long j = 0; j <= n; ++j) {
        Real acc = Real::of_ui(1, q);
        for (unsigned long k = 1; k <= n / 2; ++k) {
          unsigned long b = (k == n / 2) ? 1 : 2;
          Real angle = pi * (2 * k * j) / n;
          acc -= cos(angle, q) * b / (4 * k * k - 1);
        }
        Real cj = Real::of_ui((j == 0 || j == n) ? 1 : 2, q);
        w.push_back(acc * cj / n);
      }
      return w;
    };
    for (unsigned long j = 0; j <= 16; ++j) nodes.push_back(cos(pi * j / 16ul, q));
    w16 = cc_weights(16);
    w8 = cc_weights(8);
  }
};

inline const CCRule& cc_rule(mpfr_prec_t q) {
  static std::mutex mu;
  static std::map<mpfr_prec_t, CCRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  return cache.try_emplace(q, q).first->second;
}

/// Globally adaptive bisection: panels are kept in a worst-first queue and
/// the largest local estimate is split until the estimates sum below the
/// tolerance. Panels narrower than 2^(-bits/2) are frozen instead of split.
class Adaptive1D {
  struct Segment {
    Real a, b;
    Real q16;
    double err;
    bool at_lo, at_hi;
  };

 public:
  Adaptive1D(const IntegrandSpec& spec, mpfr_prec_t q, WorkTally* tally)
      : spec_(spec), rule_(cc_rule(q)), q_(q), tally_(tally), floor_width_(q) {
    mpfr_set_ui_2exp(floor_width_.raw(), 1,
                     static_cast<mpfr_exp_t>(-(q - 32) / 2), MPFR_RNDN);
  }

  QuadResult run(double tol) {
    std::multimap<double, Segment> active;  // keyed by err, worst = last
    std::vector<Segment> frozen;
    double err_total = 0.0;
    bool hit_floor = false;

    double err_frozen = 0.0;
    auto enqueue = [&](Segment&& s) {
      double e = s.err;
      err_total += e;
      if (s.b - s.a < floor_width_) {
        hit_floor = true;
        err_frozen += e;
        frozen.push_back(std::move(s));
      } else {
        active.emplace(e, std::move(s));
      }
    };

    // frozen panels can no longer improve; once they alone exceed the
    // tolerance, further refinement elsewhere is pointless. The split cap
    // turns an unreachable tolerance into a prompt error instead of a grind
    // toward the width floor everywhere.
    constexpr long kSplitCap = 20'000;
    long splits = 0;
    enqueue(make_segment(spec_.lower, spec_.upper, true, true));
    while (err_total > tol && err_frozen <= tol && !active.empty()) {
      if (++splits > kSplitCap) {
        hit_floor = true;
        break;
      }
      auto worst_it = std::prev(active.end());
      Segment worst = std::move(worst_it->second);
      active.erase(worst_it);
      err_total -= worst.err;
      Real mid = (worst.a + worst.b) / 2ul;
      enqueue(make_segment(worst.a, mid, worst.at_lo, false));
      enqueue(make_segment(mid, worst.b, false, worst.at_hi));
    }

    // deterministic total: sum panel values ordered by position
    std::vector<const Segment*> all;
    all.reserve(active.size() + frozen.size());
    for (const auto& [e, s] : active) all.push_back(&s);
    for (const auto& s : frozen) all.push_back(&s);
    std::sort(all.begin(), all.end(),
              [](const Segment* x, const Segment* y) { return x->a < y->a; });
    Real value(q_);
    for (const Segment* s : all) value += s->q16;

    QuadResult r{value.rounded_to(q_ - 32), err_total, evals_, hit_floor};
    if (err_total > tol)
      throw convergence_error(
          "integrate_1d: refinement limit reached at err_estimate = " +
              std::to_string(err_total),
          r.value.to_double(), err_total);
    return r;
  }

 private:
  Real point_value(const Real& x, bool is_lower_edge, bool is_upper_edge) {
    if (is_lower_edge && spec_.lower_limit) return *spec_.lower_limit;
    if (is_upper_edge && spec_.upper_limit) return *spec_.upper_limit;
    ++evals_;
    if (tally_) ++tally_->integrand_evals;
    return spec_.evaluator(x);
  }

  // Q16 with the embedded Q8 defect as local error estimate on [a, b].
  Segment make_segment(Real a, Real b, bool at_lo, bool at_hi) {
    Real half = (b - a) / 2ul;
    Real mid = (a + b) / 2ul;
    std::vector<Real> f;
    f.reserve(17);
    for (int j = 0; j <= 16; ++j) {
      if (j == 0)
        f.push_back(point_value(b, false, at_hi));
      else if (j == 16)
        f.push_back(point_value(a, at_lo, false));
      else
        f.push_back(point_value(mid + half * rule_.nodes[j], false, false));
    }
    Real q16(q_), q8(q_);
    for (int j = 0; j <= 16; ++j) q16 += rule_.w16[j] * f[j];
    for (int j = 0; j <= 8; ++j) q8 += rule_.w8[j] * f[2 * j];
    q16 *= half;
    q8 *= half;
    // roundoff floor keeps the estimate honest when both rules are exact
    double err = abs(q16 - q8).to_double() +
                 std::ldexp(std::max(1.0, std::abs(q16.to_double())),
                            -static_cast<int>(q_ - 16));
    return Segment{std::move(a), std::move(b), std::move(q16), err, at_lo,
                   at_hi};
  }

  const IntegrandSpec& spec_;
  const CCRule& rule_;
  mpfr_prec_t q_;
  WorkTally* tally_;
  Real floor_width_;
  long long evals_ = 0;
};

/// Reciprocal tail substitution mapping [a, inf) onto s in (0, 1]:
/// t = a/s for a > 0 (so the transformed integrand of an O(1/t^2) tail is
/// flat regardless of the scale a), and t = 1/s - 1 for a = 0. The supplied
/// upper_limit of the original spec is lim f(t) t^2; the transformed
/// integrand tends to it at the far end, divided by a when a > 0.
inline IntegrandSpec reciprocal_tail_transform(const IntegrandSpec& spec,
                                               mpfr_prec_t q) {
  Real a = spec.lower;
  if (a.sign() < 0)
    throw domain_error("reciprocal tail: lower bound must be nonnegative");
  auto f = spec.evaluator;
  const bool scaled = a.sign() > 0;
  auto transformed = [a, f, scaled](const Real& s) {
    if (scaled) return f(a / s) * a / (s * s);
    Real t = 1ul / s - 1ul;
    return f(t) / (s * s);
  };
  IntegrandSpec out = IntegrandSpec::finite(Real(q), Real::of_ui(1, q),
                                            std::move(transformed));
  if (spec.upper_limit)
    out.lower_limit = scaled ? (*spec.upper_limit / a) : *spec.upper_limit;
  out.upper_limit = spec.lower_limit;  // s = 1 is the original lower endpoint
  return out;
}

}  // namespace detail

/// Adaptive integration of spec to absolute tolerance tol. The returned
/// err_estimate is the accumulated panel estimate (embedded-rule defect),
/// held at or below tol by bisection. Throws convergence_error with the
/// partial value when the refinement floor is reached first.
inline QuadResult integrate_1d(const IntegrandSpec& spec, double tol,
                               const PrecisionContext& ctx,
                               WorkTally* tally = nullptr) {
  if (!(tol > 0)) throw domain_error("integrate_1d: tol must be positive");
  const mpfr_prec_t q = static_cast<mpfr_prec_t>(ctx.bits() + 32);
  if (spec.upper_infinite) {
    IntegrandSpec t = detail::reciprocal_tail_transform(spec, q);
    detail::Adaptive1D engine(t, q, tally);
    return engine.run(tol);
  }
  detail::Adaptive1D engine(spec, q, tally);
  return engine.run(tol);
}

/// Iterated double integral: an outer domain whose integrand is itself an
/// adaptive inner integral, built per outer point. The inner runs at tol/8;
/// with an outer range of measure at most 1 the combined defect stays below
/// tol. Outer endpoint limits are limits of the inner integral's value.
struct Iterated2DSpec {
  IntegrandSpec outer;  // evaluator ignored; bounds and limits used
  std::function<IntegrandSpec(const Real&)> inner;
};

struct QuadResult2 {
  Real value;
  double err_estimate = 0.0;
  long long evaluations = 0;
};

inline QuadResult2 integrate_2d_iterated(const Iterated2DSpec& spec2,
                                         double tol,
                                         const PrecisionContext& ctx,
                                         WorkTally* tally = nullptr) {
  if (!(tol > 0))
    throw domain_error("integrate_2d_iterated: tol must be positive");
  const double inner_tol = tol / 8;
  const double outer_tol = tol - inner_tol;
  long long inner_evals = 0;

  IntegrandSpec outer = spec2.outer;
  auto inner_factory = spec2.inner;
  outer.evaluator = [&, inner_factory](const Real& x) {
    try {
      QuadResult r = integrate_1d(inner_factory(x), inner_tol, ctx, tally);
      inner_evals += r.evaluations;
      return r.value;
    } catch (const convergence_error& e) {
      throw convergence_error("inner integral at outer point " +
                                  std::to_string(x.to_double()) + ": " +
                                  e.what(),
                              e.partial_value(), e.err_estimate());
    }
  };
  QuadResult outer_res = integrate_1d(outer, outer_tol, ctx, tally);
  return {outer_res.value, outer_res.err_estimate + inner_tol,
          outer_res.evaluations + inner_evals};
}

}  // namespace eulerprod
