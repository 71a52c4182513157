#pragma once

#include "cbsum/precision.hpp"

namespace cbsum {

/// Fundamental constants at the requested context.  Each is computed by two
/// independent internal routes and cross-checked before being cached, so a
/// returned value is self-certified to the context's digits.

Real const_pi(PrecisionContext ctx);
Real const_ln2(PrecisionContext ctx);
Real const_euler_gamma(PrecisionContext ctx);

/// zeta(m) for integer m >= 2 (throws std::domain_error otherwise).
Real const_zeta(long m, PrecisionContext ctx);

/// Li_m(1/2) = sum_{k>=1} 2^-k k^-m for m >= 1; the defining series is
/// truncated once the term drops below the context's resolution, so the
/// geometric tail is below 2^-K.
Real const_li_half(long m, PrecisionContext ctx);

}  // namespace cbsum
