// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "eulerprod/precision.hpp"

namespace eulerprod {

// Reference digits for the limit constant and its exponential, computed by
// this library itself: gamma_accelerated(50, 1e-30) under a 256-bit context,
// cross-checked against a 384-bit run with n = 80 and tol = 1e-42, and
// truncated to the 40 digits on which both runs agree. exp_gamma is the
// 384-bit exponential of the 50-digit value, truncated the same way. The
// recomputation is asserted in tests/test_gamma_methods.cpp.
inline constexpr const char* kGammaReferenceDigits =
    "0.5772156649015328606065120900824024310421";
inline constexpr const char* kExpGammaReferenceDigits =
    "1.7810724179901979852365041031071795491696";

/// The reference value at a given precision. Digits beyond the frozen table
/// (about 1e-40) are rounding fill; every consumer here compares at
/// tolerances no tighter than 1e-30.
inline Real gamma_reference(mpfr_prec_t prec) {
  return Real::of_str(kGammaReferenceDigits, prec);
}

inline Real exp_gamma_reference(mpfr_prec_t prec) {
  return Real::of_str(kExpGammaReferenceDigits, prec);
}

}  // namespace eulerprod
