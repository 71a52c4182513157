#pragma once

#include "cbsum/precision.hpp"

namespace cbsum {

/// Options for the doubling tanh-sinh quadrature ladder.
struct QuadratureOptions {
  int level = 11;  // maximum doubling depth (>= 3)
  PrecisionContext ctx{30};

  void validate() const;
};

struct LogSineResult {
  Real value;
  int levels_used = 0;
  Real self_error;  // |last level - previous level|
  bool converged = false;
};

/// int_0^{pi/2} (ln sin x)^n dx via double-exponential quadrature; the node
/// ladder absorbs the logarithmic endpoint singularity.  Converged once two
/// successive levels agree within the context resolution.
LogSineResult log_sin_moment(int n, const QuadratureOptions& opts);

/// |(-1)^n/n! * log_sin_moment(n) - 1 - evaluate(L, n+1)| for n >= 1.
Real theorem1_residual(int n, PrecisionContext ctx);

/// Checks the two log-sine integral identities behind the L-family order-4
/// entry: the value of int_0^pi ln^3(2 sin(x/2)) dx and the cubic moment's
/// closed form, each by quadrature; returns the larger residual.
Real ls4_check(PrecisionContext ctx);

}  // namespace cbsum
