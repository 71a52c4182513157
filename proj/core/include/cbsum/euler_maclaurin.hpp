#pragma once

#include <vector>

#include "cbsum/precision.hpp"
#include "cbsum/rational.hpp"

namespace cbsum {

/// Exact Bernoulli number B_n (B_1 = -1/2 convention).  Cached.
const Rational& bernoulli(int n);

/// int_a^inf x^-s (ln x)^m dx, exact closed form, for s > 1, m >= 0.
Real integral_inv_pow_log(const Rational& s, int m, const Real& a);

/// sum_{k=a}^inf k^-s (ln k)^m for s > 1, via Euler-Maclaurin with up to
/// `em_order` correction terms (stops early once corrections fall below the
/// context resolution).
Real tail_inv_pow_log(const Rational& s, int m, long a, int em_order, PrecisionContext ctx);

/// Coefficients a_j of the expansion c(x) * sqrt(pi x) = sum_j a_j x^-j,
/// exact rationals (a_0 = 1, a_1 = -1/8, a_2 = 1/128, ...).
std::vector<Rational> central_ratio_expansion(int count);

namespace em {

/// Polynomial in ln x; index = power of the log.
using LogPoly = std::vector<Real>;

/// Truncated series  sum_{j<J} x^-j P_j(ln x)  used as the smooth-kernel
/// factor in tail expansions.  All coefficient arithmetic happens at the
/// context the coefficients were built with.
struct FactorSeries {
  std::vector<LogPoly> terms;

  int length() const { return static_cast<int>(terms.size()); }
};

FactorSeries mul(const FactorSeries& a, const FactorSeries& b, int truncate_to);

/// Builders for the asymptotic factors of the series kernels, valid at large
/// x (expansions of c_k, H_k, h_k and H_2k, and of shifted inverse powers).
FactorSeries stirling_central_factor(int count, PrecisionContext ctx);
FactorSeries harmonic_factor(int count, PrecisionContext ctx);
FactorSeries odd_harmonic_factor(int count, PrecisionContext ctx);
FactorSeries double_harmonic_factor(int count, PrecisionContext ctx);
/// (1 + q/x)^-p  as a series in 1/x.
FactorSeries shifted_inverse_power_factor(const Rational& q, int p, int count,
                                          PrecisionContext ctx);

/// Tail  scalar * sum_{k=a}^inf k^-base * (series factor at k), summed with
/// tail_inv_pow_log on each elementary piece.
Real series_tail(const Rational& base_exponent, const FactorSeries& factor,
                 const Real& scalar, long a, int em_order, PrecisionContext ctx);

}  // namespace em
}  // namespace cbsum
