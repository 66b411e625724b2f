// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include <gmpxx.h>

#include "eulerprod/gamma_methods.hpp"

using namespace eulerprod;

namespace {

const PrecisionContext kCtx(256);
const mpfr_prec_t P = 288;

Real R(double x) { return Real::of_double(x, P); }

Real ln_ui(unsigned long n) { return ln(Real::of_ui(n, P), P); }

}  // namespace

TEST_CASE("limit sequence: small cases and the Euler-Maclaurin window") {
  CHECK(mpfr_cmp_ui(gamma_limit(1, kCtx).raw(), 1) == 0);
  Real g2 = gamma_limit(2, kCtx);
  CHECK(rel_gap(g2, R(1.5) - ln_ui(2)) < 1e-60);
  CHECK(std::abs(g2.to_double() - 0.8068528194) < 1e-10);

  // H_n - ln n - gamma lies in (1/(2(n+1)), 1/(2n))
  Real ref = gamma_reference(P);
  for (unsigned long n : {10ul, 1000ul, 100000ul, 1000000ul}) {
    double excess = (gamma_limit(n, kCtx) - ref).to_double();
    CHECK(excess > 1.0 / (2 * (n + 1)));
    CHECK(excess < 1.0 / (2 * n));
  }
  // one-in-a-million still lands within the stated window of the constant
  CHECK(std::abs((gamma_limit(1000000, kCtx) - ref).to_double()) <
        1e-6 * 1.01);
}

TEST_CASE("telescoped series equals H_N - ln(N+1) and brackets the limit") {
  Real g1 = gamma_telescoped_series(1, kCtx);
  CHECK(rel_gap(g1, 1ul - ln_ui(2)) < 1e-60);
  CHECK(std::abs(g1.to_double() - 0.3068528194) < 1e-10);

  // telescoping identity against the limit form
  for (unsigned long n : {7ul, 64ul, 301ul}) {
    Real lhs = gamma_telescoped_series(n, kCtx);
    Real rhs = gamma_limit(n, kCtx) - (ln_ui(n + 1) - ln_ui(n));
    CHECK(rel_gap(lhs, rhs) < 1e-70);
  }

  Real ref = gamma_reference(P);
  double err = std::abs((gamma_telescoped_series(1000, kCtx) - ref).to_double());
  CHECK(err < 1.1 / 2000.0);

  // strictly increasing in N
  Real prev = gamma_telescoped_series(1, kCtx);
  for (unsigned long n = 2; n <= 40; ++n) {
    Real cur = gamma_telescoped_series(n, kCtx);
    CHECK(cur > prev);
    prev = cur;
  }
}

TEST_CASE("binomial-log series: closed forms, monotonicity, tail bound") {
  Real s1 = gamma_series_partial(1, kCtx);
  CHECK(rel_gap(s1, ln_ui(2) / 2ul) < 1e-70);
  CHECK(std::abs(s1.to_double() - 0.3465735903) < 1e-10);

  Real s2 = gamma_series_partial(2, kCtx);
  Real want2 = ln_ui(2) / 2ul + (ln_ui(2) * 2ul - ln_ui(3)) / 3ul;
  CHECK(rel_gap(s2, want2) < 1e-70);
  CHECK(std::abs(s2.to_double() - 0.4424676144) < 1e-10);

  Real ref = gamma_reference(P);
  for (unsigned long N : {10ul, 100ul}) {
    double gap = std::abs((gamma_series_partial(N, kCtx) - ref).to_double());
    CHECK(gap < 1.0 / (N + 1));
  }

  Real prev = gamma_series_partial(1, kCtx);
  for (unsigned long n = 2; n <= 30; ++n) {
    Real cur = gamma_series_partial(n, kCtx);
    CHECK(cur > prev);
    prev = cur;
  }

  CHECK_THROWS_AS(gamma_series_partial(200, PrecisionContext(128)),
                  precision_error);
}

TEST_CASE("partial products: first factors, growth, exp-consistency") {
  Real a1 = product_partial(1, kCtx);
  Real sqrt2 = sqrt(Real::of_ui(2, P), P);
  CHECK(rel_gap(a1, sqrt2) < 1e-60);
  CHECK(std::abs(a1.to_double() - 1.4142135624) < 1e-10);

  Real a2 = product_partial(2, kCtx);
  Real want = sqrt2 * pow(Real::of_ui(4, P) / 3ul, Real::of_ui(1, P) / 3ul, P);
  CHECK(rel_gap(a2, want) < 1e-60);
  CHECK(std::abs(a2.to_double() - 1.5565) < 1e-4);

  CHECK(rel_gap(product_partial(10, kCtx),
                eval_exp(gamma_series_partial(10, kCtx), kCtx)) <
        std::ldexp(4.0, -256));

  // a(4) against the displayed factors, assembled from exact prime maps
  {
    PrecisionContext wide(512);
    Real acc = Real::of_ui(1, 512);
    for (unsigned long n = 1; n <= 4; ++n) {
      mpq_class base = 1;
      for (const auto& [prime, e] : factor_rational(n).factors) {
        mpz_class mag;
        mpz_class ae = ::abs(e);
        mpz_pow_ui(mag.get_mpz_t(), mpz_class(prime).get_mpz_t(), ae.get_ui());
        if (e > 0)
          base *= mpq_class(mag);
        else
          base /= mpq_class(mag);
      }
      base.canonicalize();
      Real br(512);
      mpfr_set_q(br.raw(), base.get_mpq_t(), MPFR_RNDN);
      acc *= pow(br, Real::of_ui(1, 512) / (n + 1), 512);
    }
    CHECK(rel_gap(product_partial(4, wide), acc) < 1e-140);
  }

  // a(n) strictly increasing and below the limit for every n <= 200
  {
    PrecisionContext wide(512);
    Real bound = exp_gamma_reference(600);
    std::vector<double> params;
    for (int n = 1; n <= 200; ++n) params.push_back(n);
    auto rows = convergence_table(Method::ProductSeries, params, wide);
    REQUIRE(rows.size() == 200);
    for (size_t i = 0; i < rows.size(); ++i) {
      REQUIRE(rows[i].error.empty());
      if (i) REQUIRE(rows[i].approximation > rows[i - 1].approximation);
      REQUIRE(rows[i].approximation < bound);
    }
  }
}

TEST_CASE("hypergeometric integral route") {
  Real ref = gamma_reference(P);
  Real got = gamma_hyp_integral(1e-8, kCtx);
  CHECK(abs_gap(got, ref) <= 1e-7);

  // integrand at t = 1 is (1/4) F(1,2,2;3,3) = zeta(2) - 1
  Real pi(P);
  mpfr_const_pi(pi.raw(), MPFR_RNDN);
  Real z2m1 = pi * pi / 6ul - 1ul;
  Hyp3F2Params p(Real::of_ui(2, P), Real::of_ui(2, P), Real::of_ui(3, P),
                 Real::of_ui(3, P));
  Real at1 = hyp3f2_unit(p, kCtx, 1e-18) / 4ul;
  CHECK(rel_gap(at1, z2m1) <= 1e-15);

  // 2 t^2 * integrand -> 1 for large t
  Real t = Real::of_ui(1000, P);
  Hyp3F2Params pt(Real::of_ui(2, P), Real::of_ui(2, P), Real::of_ui(3, P),
                  t + 2ul);
  Real integrand = hyp3f2_unit(pt, kCtx, 1e-16) / (t * (t + 1ul) * 2ul);
  CHECK(std::abs((integrand * t * t * 2ul).to_double() - 1.0) < 2e-3);
}

TEST_CASE("classical integral route and endpoint limits") {
  Real ref = gamma_reference(P);
  Real got = gamma_classical(1e-10, kCtx);
  CHECK(abs_gap(got, ref) <= 1e-9);
  CHECK(std::abs(got.to_double() - 0.5772156649) < 1e-9);

  // limit 1/2 at u -> 1 and 1 at u -> 0, checked just inside the ends
  auto f = [](const Real& u) {
    return (1ul / (1ul - u) - 1ul / (-ln(u, P))).to_double();
  };
  CHECK(std::abs(f(R(1) - R(1e-9)) - 0.5) < 1e-8);
  CHECK(std::abs(f(R(1e-60)) - 1.0) < 1e-2);
}

TEST_CASE("strip integral route and its sections") {
  Real ref = gamma_reference(P);
  Real got = gamma_strip_integral(1e-6, kCtx);
  CHECK(abs_gap(got, ref) <= 1e-5);

  // inner kernel tends to 0 at u -> 1
  Real u = R(1) - R(1e-8);
  Real kernel = -ln(u, P) / (1ul - u) - 1ul;
  CHECK(std::abs(kernel.to_double()) < 1e-7);

  // integrating the t-section first recovers -1/ln u pointwise
  for (double ud : {0.3, 0.7}) {
    Real uu = R(ud);
    auto sec = IntegrandSpec::to_infinity(
        Real(P), [uu](const Real& t) { return pow(uu, t, P); });
    // u^t t^2 -> 0 at infinity
    sec.upper_limit = Real(P);
    QuadResult r = integrate_1d(sec, 1e-10, kCtx);
    CHECK(abs_gap(r.value, -(1ul / ln(uu, P))) <= 1e-9);
  }
}

TEST_CASE("triangle integral route, closed-form inner, edge limits") {
  Real ref = gamma_reference(P);
  Real got = gamma_triangle_integral(1e-8, kCtx);
  CHECK(abs_gap(got, ref) <= 1e-7);

  // inner v-integral normalized by (1-u) matches (-ln u)/(1-u) - 1
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> pick(0.02, 0.98);
  for (int i = 0; i < 20; ++i) {
    Real u = R(pick(rng));
    Real scale = 1ul - u;
    auto f = [scale](const Real& v) { return v / ((1ul - v) * scale); };
    QuadResult r =
        integrate_1d(IntegrandSpec::finite(Real(P), 1ul - u, f), 1e-13, kCtx);
    Real want = -ln(u, P) / (1ul - u) - 1ul;
    CHECK(abs_gap(r.value, want) <= 1e-12);
  }

  // unnormalized inner integral -ln u - (1 - u) tends to 0 as u -> 1
  Real u1 = R(1) - R(1e-6);
  Real tail = -ln(u1, P) - (1ul - u1);
  CHECK(std::abs(tail.to_double()) < 1e-9);
}

TEST_CASE("square-domain integral route and its sections") {
  Real ref = gamma_reference(P);
  Real got = gamma_double_integral(1e-5, kCtx);
  CHECK(abs_gap(got, ref) <= 1e-4);

  auto integrand = [](double xd, double yd) {
    Real x = R(xd), y = R(yd);
    Real xy = x * y;
    return (-((1ul - x) / ((1ul - xy) * ln(xy, P)))).to_double();
  };
  // the x = 1 section vanishes identically for y < 1
  CHECK(integrand(1.0, 0.7) == 0.0);
  // the y -> 0 limit is 0: values decay like 1/|ln y|
  double near = integrand(0.5, 1e-3);
  double nearer = integrand(0.5, 1e-30);
  double nearest = integrand(0.5, 1e-300);
  CHECK(near < 0.08);
  CHECK(nearer < near);
  CHECK(nearest < nearer);
  CHECK(nearest < 8e-4);
}

TEST_CASE("trigamma integral route agrees with the hypergeometric route") {
  Real ref = gamma_reference(P);
  Real got = gamma_trigamma_integral(1e-8, kCtx);
  CHECK(abs_gap(got, ref) <= 1e-7);

  Real other = gamma_hyp_integral(1e-8, kCtx);
  CHECK(abs_gap(got, other) <= 2e-7);

  // integrand at t = 1 is zeta(2) - 1; 2 t^2 integrand -> 1 at t = 1000
  Real pi(P);
  mpfr_const_pi(pi.raw(), MPFR_RNDN);
  Real at1 = trigamma_minus_reciprocal(Real::of_ui(1, P), kCtx, 1e-15);
  CHECK(rel_gap(at1, pi * pi / 6ul - 1ul) <= 1e-13);
  Real t = Real::of_ui(1000, P);
  Real big = trigamma_minus_reciprocal(t, kCtx, 1e-15);
  CHECK(std::abs((big * t * t * 2ul).to_double() - 1.0) < 2e-3);
}

TEST_CASE("accelerated route: values and decreasing work") {
  Real ref = gamma_reference(P);
  WorkTally w1, w10;
  Real g1 = gamma_accelerated(1, 1e-8, kCtx, &w1);
  CHECK(abs_gap(g1, ref) <= 1e-7);
  Real g10 = gamma_accelerated(10, 1e-10, kCtx, &w10);
  CHECK(abs_gap(g10, ref) <= 1e-9);
  CHECK(std::abs(g10.to_double() - 0.5772156649) < 1e-9);

  WorkTally wa, wb;
  gamma_accelerated(1, 1e-8, kCtx, &wa);
  gamma_accelerated(10, 1e-8, kCtx, &wb);
  CHECK(wb.total() < wa.total());
}

TEST_CASE("beta integral residuals") {
  // n = 1, t = 1: both sides are exactly 1/4
  Real r11 = beta_integral_residual(1, Real::of_ui(1, P), 1e-12, kCtx);
  CHECK(std::abs(r11.to_double()) < 1e-12);

  Real r52 = beta_integral_residual(5, R(2.5), 1e-10, kCtx);
  CHECK(std::abs(r52.to_double()) < 2e-10);

  Real r105 = beta_integral_residual(10, R(0.5), 1e-8, kCtx);
  CHECK(std::abs(r105.to_double()) < 2e-8);
}

TEST_CASE("envelope maximum: location, closed form, strict bound") {
  // n = 1, t = 1: maximum of u(1-u)/2 is 1/8 at u = 1/2
  EnvelopeMax e11 = envelope_max_check(1, Real::of_ui(1, P), kCtx);
  CHECK(std::abs(e11.max_value.to_double() - 0.125) < 1e-40);
  CHECK(rel_gap(e11.max_value, e11.closed_form) < 1e-40);

  // n = 3, t = 2: closed form (1/4) 27 * 4 / 5^5
  EnvelopeMax e32 = envelope_max_check(3, Real::of_ui(2, P), kCtx);
  Real want = Real::of_ui(27, P) * 4ul / (Real::of_ui(3125, P) * 4ul);
  CHECK(rel_gap(e32.closed_form, want) < 1e-40);
  CHECK(rel_gap(e32.max_value, e32.closed_form) <= 1e-12);

  std::mt19937_64 rng(17);
  std::uniform_int_distribution<unsigned long> npick(1, 12);
  std::uniform_real_distribution<double> tpick(0.1, 6.0);
  for (int i = 0; i < 20; ++i) {
    EnvelopeMax e = envelope_max_check(npick(rng), R(tpick(rng)), kCtx);
    CHECK(rel_gap(e.max_value, e.closed_form) <= 1e-12);
    CHECK(e.grid_max <= e.max_value + abs(e.max_value) * 1e-30);
    CHECK(e.closed_form < e.upper);
  }
}

TEST_CASE("log series identity: residual under the geometric tail bound") {
  auto r = log_series_residual(R(0.5), Real::of_ui(1, P), 60, kCtx);
  CHECK(std::abs(r.residual.to_double()) < 2.0 * std::ldexp(1.0, -60));
  CHECK(abs(r.residual) <= r.tail_bound);

  // t = 0 closed form at u = 1/2 is 2 ln 2 - 1
  auto r0 = log_series_residual(R(0.5), Real(P), 200, kCtx);
  Real closed = pow(R(0.5), Real(P), P) *
                (-ln(R(0.5), P) / R(0.5) - 1ul);
  CHECK(std::abs(closed.to_double() - 0.3862943611) < 1e-10);
  CHECK(std::abs(r0.residual.to_double()) < 1e-55);

  // closed form tends to 0 as u -> 1
  Real u = R(1) - R(1e-7);
  Real near1 = -ln(u, P) / (1ul - u) - 1ul;
  CHECK(std::abs(near1.to_double()) < 1e-6);

  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> upick(0.05, 0.95);
  std::uniform_real_distribution<double> tpick(0.0, 5.0);
  for (int i = 0; i < 20; ++i) {
    double ud = upick(rng);
    // truncation point chosen so the geometric bound stays far above the
    // 256-bit rounding floor and the comparison is meaningful
    auto N = static_cast<unsigned long>(
        std::clamp(-45.0 / std::log10(1.0 - ud), 10.0, 150.0));
    auto rr = log_series_residual(R(ud), R(tpick(rng)), N, kCtx);
    CHECK(abs(rr.residual) <= rr.tail_bound);
  }
}

TEST_CASE("change of variables residual vanishes to rounding") {
  CHECK(std::abs(change_of_variables_residual(R(0.5), R(0.5), kCtx).to_double()) <
        1e-14);
  CHECK(std::abs(change_of_variables_residual(R(0.9), R(0.99), kCtx).to_double()) <
        1e-12);
  // x -> 1: both integrands vanish
  Real x = R(1) - R(1e-9);
  Real xy = x * R(0.5);
  Real square = -((1ul - x) / ((1ul - xy) * ln(xy, P)));
  CHECK(std::abs(square.to_double()) < 1e-8);

  for (int i = 1; i < 20; ++i)
    for (int j = 1; j < 20; ++j) {
      Real r = change_of_variables_residual(R(i / 20.0), R(j / 20.0), kCtx);
      CHECK(std::abs(r.to_double()) <= 1e-12);
    }
}

TEST_CASE("partial fraction validation ties the integrand to the series") {
  // n = 1: integral is (1/2) ln 2
  WorkTally t;
  Real r1 = partial_fraction_residual(1, 1e-11, kCtx, &t);
  CHECK(std::abs(r1.to_double()) < 1e-10);
  for (unsigned long n = 2; n <= 8; ++n) {
    Real rn = partial_fraction_residual(n, 1e-11, kCtx);
    CHECK(std::abs(rn.to_double()) < 1e-10);
  }
}

TEST_CASE("cross-method agreement at desk scale") {
  Real ref = gamma_reference(P);
  struct Entry {
    const char* name;
    Real value;
    double bound;
  };
  std::vector<Entry> entries;
  entries.push_back({"limit", gamma_limit(100000, kCtx), 1.01 / 200000});
  entries.push_back(
      {"telescoped", gamma_telescoped_series(1000, kCtx), 1.1 / 2000});
  entries.push_back({"series", gamma_series_partial(150, kCtx), 1.0 / 151});
  entries.push_back({"hyp", gamma_hyp_integral(1e-8, kCtx), 1e-7});
  entries.push_back({"classical", gamma_classical(1e-10, kCtx), 1e-9});
  entries.push_back({"strip", gamma_strip_integral(1e-6, kCtx), 1e-5});
  entries.push_back({"triangle", gamma_triangle_integral(1e-8, kCtx), 1e-7});
  entries.push_back({"double", gamma_double_integral(1e-5, kCtx), 1e-4});
  entries.push_back({"trigamma", gamma_trigamma_integral(1e-8, kCtx), 1e-7});
  entries.push_back({"accelerated", gamma_accelerated(10, 1e-10, kCtx), 1e-9});

  for (const auto& e : entries) {
    CAPTURE(e.name);
    CHECK(abs_gap(e.value, ref) <= e.bound);
  }
  for (size_t i = 0; i < entries.size(); ++i)
    for (size_t j = i + 1; j < entries.size(); ++j) {
      CAPTURE(entries[i].name);
      CAPTURE(entries[j].name);
      CHECK(abs_gap(entries[i].value, entries[j].value) <=
            entries[i].bound + entries[j].bound);
    }
}

TEST_CASE("convergence tables: ordering, monotonicity, error columns") {
  Real ref = gamma_reference(P);

  std::vector<double> params;
  for (int n = 1; n <= 50; ++n) params.push_back(n);
  auto rows = convergence_table(Method::ProductSeries, params, kCtx);
  REQUIRE(rows.size() == 50);
  CHECK(std::abs(rows[0].approximation.to_double() - 1.4142135624) < 1e-10);
  for (size_t i = 0; i + 1 < rows.size(); ++i) {
    CHECK(rows[i].parameter < rows[i + 1].parameter);
    CHECK(rows[i].approximation < rows[i + 1].approximation);
    CHECK(rows[i].error.empty());
  }

  Real expref = exp_gamma_reference(P);
  for (const auto& r : rows) CHECK(r.approximation < expref);

  auto crows =
      convergence_table(Method::Classical, {1e-4, 1e-6, 1e-8}, kCtx);
  REQUIRE(crows.size() == 3);
  CHECK(crows[0].parameter == 1e-4);
  CHECK(crows[2].parameter == 1e-8);
  CHECK(crows[0].abs_error_vs(ref) >= crows[1].abs_error_vs(ref));
  CHECK(crows[1].abs_error_vs(ref) >= crows[2].abs_error_vs(ref));

  // a precision-starved row carries its error without aborting the table
  auto prows = convergence_table(Method::ProductSeries, {5, 500},
                                 PrecisionContext(256));
  REQUIRE(prows.size() == 2);
  CHECK(prows[0].error.empty());
  CHECK(!prows[1].error.empty());
}

TEST_CASE("frozen reference digits recompute from the accelerated route") {
  PrecisionContext ctx256(256);
  Real recomputed = gamma_accelerated(50, 1e-30, ctx256);
  CHECK(abs_gap(recomputed, gamma_reference(300)) <= 2e-30);
  Real expref = eval_exp(gamma_reference(300).rounded_to(300),
                         PrecisionContext(300));
  CHECK(rel_gap(expref, exp_gamma_reference(300)) <= 1e-39);
}
