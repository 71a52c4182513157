#pragma once

#include "cbsum/precision.hpp"

namespace cbsum {

/// The nonlinear Euler-sum relations tying the H_k^2, H_2k and h_k^2 cubic
/// sums together.  Every series in a relation is evaluated independently.
enum class RelationId {
  EvenOddSplit,       // sum H^2/k^3 - alternating sum = 1/4 sum H_2k^2/k^3
  OddSquareAssembly,  // sum h^2/k^3 = 15/4 sum H^2/k^3 - 4 alt - sum H h/k^3
  MixFromWeighted,    // sum H h/k^3 = 8 sum H H_2k/(2k)^3 - 1/2 sum H^2/k^3
  WOneSquare,         // 2 w(1) = (sum h_k c_k/k)^2
};

/// |LHS - RHS| of the relation at the given context.
Real relation_residual(RelationId id, PrecisionContext ctx);

const char* relation_name(RelationId id);

/// |evaluate(W, n) - catalog closed form| for n in 1..3.
Real w_closed_form_check(int n, PrecisionContext ctx);

}  // namespace cbsum
