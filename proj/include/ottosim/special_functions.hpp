#pragma once

#include "ottosim/signed_log.hpp"

namespace ottosim {

// Associated Laguerre polynomial L_n^l(x) for integer n, l >= 0 and x >= 0,
// evaluated by the three-term recurrence in n with exponent renormalization.
// Exact for n in {0, 1}. Supports n up to 1e6.
SignedLogValue assoc_laguerre(int n, int l, double x);

// ln I_l(x) for integer order l >= 0 and x >= 0. Internally exponentially
// scaled; usable for x up to 1e8 and beyond without overflow.
double log_bessel_i_scaled(int l, double x);

// ln(e^{-x} I_l(x)), always in (-inf, 0]. Same kernel as log_bessel_i_scaled
// but free of the O(x*eps) rounding that forming "ln I - x" would incur at
// large argument; series assembly uses this variant.
double log_bessel_i_exp_scaled(int l, double x);

// ln(n0!/(n0+l)!) <= 0 for n0, l >= 0 with n0 + l <= 1e7.
double log_factorial_ratio(long long n0, long long l);

}  // namespace ottosim
