// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <map>
#include <vector>

#include "eulerprod/combinatorics.hpp"

using namespace eulerprod;

namespace {

// Oracle: Pascal's triangle built row by row with plain additions.
mpz_class pascal_oracle(unsigned long n, unsigned long k) {
  std::vector<mpz_class> row{1};
  for (unsigned long i = 1; i <= n; ++i) {
    std::vector<mpz_class> next(i + 1, 1);
    for (unsigned long j = 1; j < i; ++j) next[j] = row[j - 1] + row[j];
    row = std::move(next);
  }
  return row[k];
}

// Oracle: factor prod (k+1)^(e_k) by trial division of each base.
std::map<unsigned long, mpz_class> factor_oracle(unsigned long n) {
  ExponentVector ev = exponent_vector(n);
  std::map<unsigned long, mpz_class> out;
  for (unsigned long k = 1; k <= n; ++k) {
    unsigned long base = k + 1;
    for (unsigned long p = 2; p <= base; ++p) {
      while (base % p == 0) {
        out[p] += ev.entries[k];
        base /= p;
      }
    }
  }
  for (auto it = out.begin(); it != out.end();)
    it = (it->second == 0) ? out.erase(it) : std::next(it);
  return out;
}

}  // namespace

TEST_CASE("binomial basics and Pascal oracle") {
  CHECK(binomial(4, 2) == 6);
  for (unsigned long n : {0ul, 1ul, 7ul, 33ul}) CHECK(binomial(n, 0) == 1);
  CHECK(binomial(60, 30) == mpz_class("118264581564861424"));
  CHECK(binomial(60, 30) == pascal_oracle(60, 30));
  CHECK(binomial(200, 71) == pascal_oracle(200, 71));
  CHECK_THROWS_AS(binomial(3, 4), domain_error);
}

TEST_CASE("exponent vectors for the first three factors") {
  auto as_longs = [](const ExponentVector& ev) {
    std::vector<long> v;
    for (const auto& e : ev.entries) v.push_back(e.get_si());
    return v;
  };
  CHECK(as_longs(exponent_vector(1)) == std::vector<long>{-1, 1});
  CHECK(as_longs(exponent_vector(2)) == std::vector<long>{-1, 2, -1});
  CHECK(as_longs(exponent_vector(3)) == std::vector<long>{-1, 3, -3, 1});
  CHECK_THROWS_AS(exponent_vector(0), domain_error);
}

TEST_CASE("exponent vector invariants for every n up to 500") {
  for (unsigned long n = 1; n <= 500; ++n) {
    ExponentVector ev = exponent_vector(n);
    REQUIRE(ev.entries.size() == n + 1);
    REQUIRE(ev.entries[0] == -1);
    mpz_class sum = 0;
    bool alternating = true;
    for (unsigned long k = 0; k <= n; ++k) {
      sum += ev.entries[k];
      if (k < n && mpz_class(ev.entries[k] * ev.entries[k + 1]) >= 0)
        alternating = false;
    }
    REQUIRE(sum == 0);
    REQUIRE(alternating);
    unsigned long mid = n / 2;
    mpz_class expect = binomial(n, mid);
    if (mid % 2 == 0) expect = -expect;
    REQUIRE(ev.entries[mid] == expect);
  }
}

TEST_CASE("factor_rational matches displayed factors and the oracle") {
  auto fr1 = factor_rational(1);
  REQUIRE(fr1.factors.size() == 1);
  CHECK(fr1.factors.at(2) == 1);

  auto fr2 = factor_rational(2);
  REQUIRE(fr2.factors.size() == 2);
  CHECK(fr2.factors.at(2) == 2);
  CHECK(fr2.factors.at(3) == -1);

  auto fr3 = factor_rational(3);
  REQUIRE(fr3.factors.size() == 2);
  CHECK(fr3.factors.at(2) == 5);
  CHECK(fr3.factors.at(3) == -3);

  for (unsigned long n : {4ul, 7ul, 12ul, 25ul})
    CHECK(factor_rational(n).factors == factor_oracle(n));
}

TEST_CASE("factoring round-trips through an exact rational for small n") {
  for (unsigned long n = 1; n <= 12; ++n) {
    FactoredRational fr = factor_rational(n);
    mpq_class value = 1;
    for (const auto& [p, e] : fr.factors) {
      mpz_class mag;
      mpz_class ae = ::abs(e);
      mpz_pow_ui(mag.get_mpz_t(), mpz_class(p).get_mpz_t(), ae.get_ui());
      if (e > 0)
        value *= mpq_class(mag);
      else
        value /= mpq_class(mag);
    }
    value.canonicalize();
    // Re-factor numerator and denominator by trial division.
    std::map<unsigned long, mpz_class> refactored;
    auto grind = [&](mpz_class m, int sgn) {
      for (unsigned long p = 2; m > 1; ++p)
        while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
          refactored[p] += sgn;
          mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
        }
    };
    grind(value.get_num(), 1);
    grind(value.get_den(), -1);
    for (auto it = refactored.begin(); it != refactored.end();)
      it = (it->second == 0) ? refactored.erase(it) : std::next(it);
    CHECK(refactored == fr.factors);
  }
}

TEST_CASE("forward difference of logs: closed forms at n = 1, 2") {
  PrecisionContext ctx(128);
  Real got1 = forward_difference_log(1, ctx);
  Real ln2 = eval_ln(Real::of_ui(2, 160), PrecisionContext(160));
  CHECK(rel_gap(got1, ln2) <= std::ldexp(1.0, -120));

  Real got2 = forward_difference_log(2, ctx);
  Real ln3 = eval_ln(Real::of_ui(3, 160), PrecisionContext(160));
  Real want2 = ln2 * 2ul - ln3;
  CHECK(rel_gap(got2, want2) <= std::ldexp(1.0, -120));
  CHECK(std::abs(got2.to_double() - 0.2876820724) < 1e-9);
}

TEST_CASE("forward difference of logs refuses inadequate precision") {
  CHECK_THROWS_AS(forward_difference_log(60, PrecisionContext(64)),
                  precision_error);
  try {
    forward_difference_log(60, PrecisionContext(64));
  } catch (const precision_error& e) {
    CHECK(e.required_bits() == required_bits(60));
  }
  CHECK_NOTHROW(forward_difference_log(60, PrecisionContext(required_bits(60))));
}

TEST_CASE("the 53-bit path at n = 60 is cancellation noise") {
  double naive = forward_difference_log_naive53(60);
  Real accurate = forward_difference_log(60, PrecisionContext(512));
  double rel = std::abs(naive - accurate.to_double()) /
               std::abs(accurate.to_double());
  CHECK(rel > 0.10);
}

TEST_CASE("minimum-precision result agrees with a double-precision rerun") {
  const long bits = required_bits(60);
  Real lo = forward_difference_log(60, PrecisionContext(bits));
  Real hi = forward_difference_log(60, PrecisionContext(2 * bits));
  CHECK(rel_gap(lo, hi) <= std::ldexp(1.0, static_cast<int>(6 - bits)));
}

TEST_CASE("positivity of the log sum for every n up to 200") {
  for (unsigned long n = 1; n <= 200; ++n) {
    PrecisionContext ctx(required_bits(n));
    REQUIRE(forward_difference_log(n, ctx).sign() > 0);
  }
}

TEST_CASE("prime-decomposition route agrees with the direct log sum") {
  for (unsigned long n : {3ul, 10ul, 40ul, 90ul}) {
    long bits = required_bits(n);
    PrecisionContext ctx(bits);
    Real direct = forward_difference_log(n, ctx);
    // sum_p a_p ln p at a compensating precision, using factor_rational.
    mpfr_prec_t work = static_cast<mpfr_prec_t>(2 * bits + 64);
    Real via_primes(work);
    Real term(work);
    for (const auto& [p, e] : factor_rational(n).factors) {
      Real lnp = ln(Real::of_ui(p, work), work);
      mpfr_mul_z(term.raw(), lnp.raw(), e.get_mpz_t(), MPFR_RNDN);
      mpfr_add(via_primes.raw(), via_primes.raw(), term.raw(), MPFR_RNDN);
    }
    CHECK(rel_gap(direct, via_primes) <=
          std::ldexp(1.0, static_cast<int>(8 - bits)));
  }
}

TEST_CASE("cancellation magnitude grows like the central binomial") {
  for (unsigned long n : {20ul, 40ul, 60ul}) {
    mpfr_prec_t work = detail::boosted_bits(n, required_bits(n));
    ExponentVector ev = exponent_vector(n);
    Real gross(work);
    Real term(work);
    for (unsigned long k = 1; k <= n; ++k) {
      Real lnk = ln(Real::of_ui(k + 1, work), work);
      mpz_class mag = ::abs(ev.entries[k]);
      mpfr_mul_z(term.raw(), lnk.raw(), mag.get_mpz_t(), MPFR_RNDN);
      mpfr_add(gross.raw(), gross.raw(), term.raw(), MPFR_RNDN);
    }
    Real net = forward_difference_log(n, PrecisionContext(required_bits(n)));
    Real ratio = gross / net;
    Real threshold(64);
    mpfr_set_ui_2exp(threshold.raw(), 1, static_cast<mpfr_exp_t>(n - 2),
                     MPFR_RNDN);
    CHECK(ratio > threshold);
  }
}
