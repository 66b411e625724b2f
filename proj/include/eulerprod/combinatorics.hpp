// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <cmath>
#include <iterator>
#include <map>
#include <string>
#include <vector>

#include "eulerprod/errors.hpp"
#include "eulerprod/precision.hpp"

namespace eulerprod {

/// Exact binomial coefficient C(n, k). Arbitrary size, never overflows.
inline mpz_class binomial(unsigned long n, unsigned long k) {
  if (k > n) throw domain_error("binomial: k must not exceed n");
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

/// The signed exponents e_k = (-1)^(k+1) * C(n,k), k = 0..n, that define the
/// n-th factor of the product: the factor's rational base is
/// prod_k (k+1)^(e_k) and its outer exponent is 1/(n+1).
struct ExponentVector {
  unsigned long n = 0;
  std::vector<mpz_class> entries;  // length n+1, strictly alternating signs
};

inline ExponentVector exponent_vector(unsigned long n) {
  if (n < 1) throw domain_error("exponent_vector: n must be >= 1");
  ExponentVector ev;
  ev.n = n;
  ev.entries.reserve(n + 1);
  // Row of Pascal's triangle via the multiplicative recurrence; exact.
  mpz_class c = 1;
  for (unsigned long k = 0; k <= n; ++k) {
    ev.entries.push_back((k % 2 == 1) ? c : mpz_class(-c));
    if (k < n) {
      c *= n - k;
      mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), k + 1);
    }
  }
  return ev;
}

/// Exact prime-exponent map of a positive rational: prime -> nonzero exponent.
struct FactoredRational {
  std::map<unsigned long, mpz_class> factors;
};

namespace detail {

/// Trial-division factor map of a small positive integer.
inline std::map<unsigned long, unsigned long> factor_small(unsigned long m) {
  std::map<unsigned long, unsigned long> out;
  for (unsigned long p = 2; p * p <= m; ++p) {
    while (m % p == 0) {
      ++out[p];
      m /= p;
    }
  }
  if (m > 1) ++out[m];
  return out;
}

}  // namespace detail

/// Prime factorization of the n-th factor's rational base
/// prod_{k=0}^{n} (k+1)^(e_k). Zero exponents are dropped.
inline FactoredRational factor_rational(unsigned long n) {
  if (n < 1) throw domain_error("factor_rational: n must be >= 1");
  ExponentVector ev = exponent_vector(n);
  FactoredRational fr;
  for (unsigned long k = 0; k <= n; ++k) {
    if (k + 1 == 1) continue;  // base 1 contributes nothing
    for (const auto& [p, mult] : detail::factor_small(k + 1))
      fr.factors[p] += ev.entries[k] * mult;
  }
  for (auto it = fr.factors.begin(); it != fr.factors.end();)
    it = (it->second == 0) ? fr.factors.erase(it) : std::next(it);
  return fr;
}

namespace detail {

inline long ceil_log2(unsigned long x) {  // x >= 1
  long lg = 0;
  unsigned long v = 1;
  while (v < x) {
    v <<= 1;
    ++lg;
  }
  return lg;
}

}  // namespace detail

/// Minimum context bits accepted by forward_difference_log(n, .): up to n
/// bits cancel in the alternating sum and 64 guard bits absorb rounding.
inline long required_bits(unsigned long n) {
  return static_cast<long>(n) + detail::ceil_log2(n + 2) + 64;
}

namespace detail {

/// Exact-integer-weighted sum  sum_k e_k * ln(k+1)  evaluated at `work`
/// bits. The weights are exact; only the logs carry rounding error, so the
/// absolute error is below (n+1) * max|e_k| * ln(n+1) * 2^(1-work).
inline Real weighted_log_sum(const ExponentVector& ev, mpfr_prec_t work) {
  Real acc(work);
  Real term(work);
  Real lnk(work);
  for (unsigned long k = 1; k <= ev.n; ++k) {  // k = 0 has weight on ln 1 = 0
    mpfr_set_ui(lnk.raw(), k + 1, MPFR_RNDN);
    mpfr_log(lnk.raw(), lnk.raw(), MPFR_RNDN);
    mpfr_mul_z(term.raw(), lnk.raw(), ev.entries[k].get_mpz_t(), MPFR_RNDN);
    mpfr_add(acc.raw(), acc.raw(), term.raw(), MPFR_RNDN);
  }
  return acc;
}

/// Internal precision that compensates the ~n bits lost to cancellation so
/// the rounded result is accurate to the full context precision.
inline mpfr_prec_t boosted_bits(unsigned long n, long ctx_bits) {
  return static_cast<mpfr_prec_t>(ctx_bits + static_cast<long>(n) +
                                  ceil_log2(n + 2) + 16);
}

}  // namespace detail

/// The alternating binomial log sum  sum_{k=0}^{n} (-1)^(k+1) C(n,k) ln(k+1).
/// Strictly positive. Refuses to run below required_bits(n): the terms reach
/// C(n, n/2) * ln(n+1) while the value is O(1/n), so a short context would
/// return cancellation noise. Internally the sum is carried at a boosted
/// precision and rounded back, so the returned value is accurate to the
/// context precision itself.
inline Real forward_difference_log(unsigned long n, const PrecisionContext& ctx) {
  if (n < 1) throw domain_error("forward_difference_log: n must be >= 1");
  const long need = required_bits(n);
  if (ctx.bits() < need)
    throw precision_error(
        "forward_difference_log: context of " + std::to_string(ctx.bits()) +
            " bits cannot absorb the cancellation at n = " + std::to_string(n) +
            "; need at least " + std::to_string(need) + " bits",
        need);
  ExponentVector ev = exponent_vector(n);
  Real s = detail::weighted_log_sum(ev, detail::boosted_bits(n, ctx.bits()));
  return s.rounded_to(ctx.bits());
}

/// The same alternating sum accumulated in IEEE double (53 bits, no guard).
/// Kept as a demonstration of catastrophic cancellation: for n around 60 the
/// result has no correct digits. Not used by any shipped computation.
inline double forward_difference_log_naive53(unsigned long n) {
  if (n < 1) throw domain_error("forward_difference_log_naive53: n must be >= 1");
  ExponentVector ev = exponent_vector(n);
  double acc = 0.0;
  for (unsigned long k = 1; k <= n; ++k) {
    double w = mpz_get_d(ev.entries[k].get_mpz_t());
    acc += w * std::log(static_cast<double>(k + 1));
  }
  return acc;
}

}  // namespace eulerprod
