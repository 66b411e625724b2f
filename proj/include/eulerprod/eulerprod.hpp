// SPDX-License-Identifier: Apache-2.0
#pragma once

// Umbrella header: the whole public surface.

#include "eulerprod/bernoulli.hpp"
#include "eulerprod/combinatorics.hpp"
#include "eulerprod/errors.hpp"
#include "eulerprod/gamma_methods.hpp"
#include "eulerprod/precision.hpp"
#include "eulerprod/quadrature.hpp"
#include "eulerprod/reference.hpp"
#include "eulerprod/special_functions.hpp"
#include "eulerprod/table_io.hpp"
#include "eulerprod/verify_suites.hpp"
