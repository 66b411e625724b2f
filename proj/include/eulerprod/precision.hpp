// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <mpfr.h>

#include <cstdio>
#include <string>
#include <utility>

#include "eulerprod/errors.hpp"

namespace eulerprod {

/// Working precision for every extended-precision evaluation. Rounding is
/// fixed to nearest; every MPFR operation under a context of p bits then has
/// relative error at most 2^(1-p). Immutable and safe to share.
class PrecisionContext {
 public:
  explicit PrecisionContext(long bits) : bits_(bits) {
    if (bits < 64)
      throw domain_error("PrecisionContext: bits must be at least 64");
  }
  long bits() const { return bits_; }

 private:
  long bits_;
};

/// Value-semantic wrapper around mpfr_t. Each value carries its own
/// precision; binary operators round to the wider of the two operands.
/// Hot loops may use raw() to call the MPFR C API in place.
class Real {
 public:
  explicit Real(mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Real(Real&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  static Real of_ui(unsigned long x, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_ui(r.v_, x, MPFR_RNDN);
    return r;
  }
  static Real of_si(long x, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_si(r.v_, x, MPFR_RNDN);
    return r;
  }
  static Real of_double(double x, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_d(r.v_, x, MPFR_RNDN);
    return r;
  }
  static Real of_str(const std::string& s, mpfr_prec_t prec) {
    Real r(prec);
    if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
      throw domain_error("Real: unparseable decimal literal '" + s + "'");
    return r;
  }

  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  bool is_nan() const { return mpfr_nan_p(v_) != 0; }
  bool is_inf() const { return mpfr_inf_p(v_) != 0; }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  Real rounded_to(mpfr_prec_t prec) const {
    Real r(prec);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
  }

  Real& operator+=(const Real& o) {
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator-=(const Real& o) {
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator*=(const Real& o) {
    mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator/=(const Real& o) {
    mpfr_div(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator+=(unsigned long u) {
    mpfr_add_ui(v_, v_, u, MPFR_RNDN);
    return *this;
  }
  Real& operator-=(unsigned long u) {
    mpfr_sub_ui(v_, v_, u, MPFR_RNDN);
    return *this;
  }
  Real& operator*=(unsigned long u) {
    mpfr_mul_ui(v_, v_, u, MPFR_RNDN);
    return *this;
  }
  Real& operator/=(unsigned long u) {
    mpfr_div_ui(v_, v_, u, MPFR_RNDN);
    return *this;
  }

  friend Real operator+(const Real& a, const Real& b) {
    Real r(wider(a, b));
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator-(const Real& a, const Real& b) {
    Real r(wider(a, b));
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator*(const Real& a, const Real& b) {
    Real r(wider(a, b));
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator/(const Real& a, const Real& b) {
    Real r(wider(a, b));
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator-(const Real& a) {
    Real r(a.prec());
    mpfr_neg(r.v_, a.v_, MPFR_RNDN);
    return r;
  }

  friend Real operator+(const Real& a, unsigned long u) {
    Real r(a.prec());
    mpfr_add_ui(r.v_, a.v_, u, MPFR_RNDN);
    return r;
  }
  friend Real operator+(unsigned long u, const Real& a) { return a + u; }
  friend Real operator-(const Real& a, unsigned long u) {
    Real r(a.prec());
    mpfr_sub_ui(r.v_, a.v_, u, MPFR_RNDN);
    return r;
  }
  friend Real operator-(unsigned long u, const Real& a) {
    Real r(a.prec());
    mpfr_ui_sub(r.v_, u, a.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator*(const Real& a, unsigned long u) {
    Real r(a.prec());
    mpfr_mul_ui(r.v_, a.v_, u, MPFR_RNDN);
    return r;
  }
  friend Real operator*(unsigned long u, const Real& a) { return a * u; }
  friend Real operator/(const Real& a, unsigned long u) {
    Real r(a.prec());
    mpfr_div_ui(r.v_, a.v_, u, MPFR_RNDN);
    return r;
  }
  friend Real operator/(unsigned long u, const Real& a) {
    Real r(a.prec());
    mpfr_ui_div(r.v_, u, a.v_, MPFR_RNDN);
    return r;
  }

  friend bool operator==(const Real& a, const Real& b) {
    return mpfr_equal_p(a.v_, b.v_) != 0;
  }
  friend bool operator!=(const Real& a, const Real& b) { return !(a == b); }
  friend bool operator<(const Real& a, const Real& b) {
    return mpfr_less_p(a.v_, b.v_) != 0;
  }
  friend bool operator<=(const Real& a, const Real& b) {
    return mpfr_lessequal_p(a.v_, b.v_) != 0;
  }
  friend bool operator>(const Real& a, const Real& b) {
    return mpfr_greater_p(a.v_, b.v_) != 0;
  }
  friend bool operator>=(const Real& a, const Real& b) {
    return mpfr_greaterequal_p(a.v_, b.v_) != 0;
  }
  friend int cmp_d(const Real& a, double d) { return mpfr_cmp_d(a.v_, d); }

 private:
  static mpfr_prec_t wider(const Real& a, const Real& b) {
    return a.prec() >= b.prec() ? a.prec() : b.prec();
  }
  mpfr_t v_;
};

inline Real abs(const Real& x) {
  Real r(x.prec());
  mpfr_abs(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

inline Real ln(const Real& x, mpfr_prec_t prec) {
  Real r(prec);
  mpfr_log(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

inline Real exp(const Real& x, mpfr_prec_t prec) {
  Real r(prec);
  mpfr_exp(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

inline Real log1p(const Real& x, mpfr_prec_t prec) {
  Real r(prec);
  mpfr_log1p(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

inline Real pow(const Real& base, const Real& expo, mpfr_prec_t prec) {
  Real r(prec);
  mpfr_pow(r.raw(), base.raw(), expo.raw(), MPFR_RNDN);
  return r;
}

inline Real pow_ui(const Real& base, unsigned long e, mpfr_prec_t prec) {
  Real r(prec);
  mpfr_pow_ui(r.raw(), base.raw(), e, MPFR_RNDN);
  return r;
}

inline Real sqrt(const Real& x, mpfr_prec_t prec) {
  Real r(prec);
  mpfr_sqrt(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

inline Real cos(const Real& x, mpfr_prec_t prec) {
  Real r(prec);
  mpfr_cos(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

/// pi to the context precision.
inline Real const_pi(const PrecisionContext& ctx) {
  Real r(ctx.bits());
  mpfr_const_pi(r.raw(), MPFR_RNDN);
  return r;
}

/// Natural logarithm at the context precision. Requires x > 0.
inline Real eval_ln(const Real& x, const PrecisionContext& ctx) {
  if (x.is_nan() || x.sign() <= 0)
    throw domain_error("eval_ln: argument must be positive");
  return ln(x, ctx.bits());
}

/// Exponential at the context precision. Requires a finite argument whose
/// exponential stays inside the representable exponent range.
inline Real eval_exp(const Real& x, const PrecisionContext& ctx) {
  if (x.is_nan() || x.is_inf())
    throw domain_error("eval_exp: argument must be finite");
  Real r = exp(x, ctx.bits());
  if (r.is_inf())
    throw range_error("eval_exp: result overflows the exponent range");
  return r;
}

/// |a - b| as a double; enough dynamic range for every tolerance used here.
inline double abs_gap(const Real& a, const Real& b) {
  return abs(a - b).to_double();
}

/// |a - b| / |b| as a double; b must be nonzero.
inline double rel_gap(const Real& a, const Real& b) {
  return (abs(a - b) / abs(b)).to_double();
}

}  // namespace eulerprod
