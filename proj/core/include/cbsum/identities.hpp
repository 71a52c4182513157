#pragma once

#include <functional>
#include <vector>

#include "cbsum/precision.hpp"
#include "cbsum/rational.hpp"

namespace cbsum {

/// Exact element of span{1, ln 2, pi} with rational coefficients.  Keeps the
/// lemma residual checks exact instead of floating.
struct BasisValue {
  Rational rat{0};
  Rational ln2_coeff{0};
  Rational pi_coeff{0};

  static BasisValue rational(Rational r) { return {std::move(r), 0, 0}; }

  friend BasisValue operator+(const BasisValue& a, const BasisValue& b) {
    return {a.rat + b.rat, a.ln2_coeff + b.ln2_coeff, a.pi_coeff + b.pi_coeff};
  }
  friend BasisValue operator-(const BasisValue& a, const BasisValue& b) {
    return {a.rat - b.rat, a.ln2_coeff - b.ln2_coeff, a.pi_coeff - b.pi_coeff};
  }
  friend BasisValue operator*(const Rational& s, const BasisValue& a) {
    return {s * a.rat, s * a.ln2_coeff, s * a.pi_coeff};
  }

  bool is_zero() const { return rat.is_zero() && ln2_coeff.is_zero() && pi_coeff.is_zero(); }
  bool operator==(const BasisValue&) const = default;

  Real numeric(PrecisionContext ctx) const;
};

/// f(k) = sum_i c_i/(i+k) = (1/k)(1/c_k) - 1/k, exact.
Rational lemma1_f(long k);

/// f(k) = sum_i c_i/(i+k)^2 = (1/k^2 - 2 ln2/k + 2 h_k/k - H_k/k)/c_k - 1/k^2,
/// exact in span{1, ln2}.
BasisValue lemma2_f(long k);

/// g(j) = sum_i c_i/(2i+2j-1) = (pi/2) c_{j-1} - 1/(2j-1), exact in
/// span{1, pi}, j >= 1.
BasisValue lemma3_g(long j);

/// sum_i h_i c_i/(i+k) = (h_k/k)(1/c_k), exact.
Rational lemma4_rhs(long k);

struct TelescopeResult {
  Rational partial;  // h(1) + sum_{i<=K} (h(i+1)-h(i)) c_i
  bool limit_hint;   // false when the increments do not decay fast enough
};

/// Telescoping operator applied to a rational weight sequence h (indexing
/// from 1); hseq must be defined up to K+1.
TelescopeResult telescope(const std::function<Rational(long)>& hseq, long K);

/// Float variant for very large K where exact partials are impractical.
Real telescope_numeric(const std::function<Rational(long)>& hseq, long K, PrecisionContext ctx);

/// sum_{i=1..k} (1/(2i(2i+1))) / c_i, computed independently on both sides of
/// the identity  = 1 - 1/((2k+1) c_k); throws std::logic_error on mismatch.
Rational finite_binom_sum(long k);

struct OddPartialFraction {
  Rational partial;  // sum_{k<=K} 1/((2k-1)(2k+2i-1))
  Rational limit;    // h_i / (2i)
};

OddPartialFraction odd_partial_fraction(long i, long K);

/// First-order inhomogeneous difference problem f(k) = coef(k) f(k-1) + inhom(k).
struct RecurrenceProblem {
  std::function<Rational(long)> coef;       // nonzero
  std::function<BasisValue(long)> inhom;
  BasisValue init;                          // f(first_index)
  long first_index = 1;
};

/// Exact forward substitution, returns f(first_index .. K).
std::vector<BasisValue> solve_first_order(const RecurrenceProblem& problem, long K);

/// Verifies the partial-fraction decompositions
///   1/(i (k+i)^2)   = 1/(k^2 i) - 1/(k^2 (k+i)) - 1/(k (k+i)^2)
///   1/(i^2 (k+i)^2) = 1/(k^2 i^2) - 2/(k^3 i) + 2/(k^3 (k+i)) + 1/(k^2 (k+i)^2)
/// exactly at (i, k).
bool partial_fraction_check(long i, long k);

/// The five convolution/derivation chains: each rebuilds both routes of the
/// chain from independent series evaluations and returns |LHS - RHS|.
enum class ConvolutionId {
  S3Chain,         // double sum over c_i c_k/(i (k+i)^2), two routes
  S4Antisymmetry,  // symmetric double-sum difference, exactly zero
  V2Chain,         // double sum behind the v(2) derivation
  Z2Chain,         // odd-denominator chain behind z(2)
  W1Square,        // 2 w(1) = v(1)^2 symmetrization
};

Real verify_convolution(ConvolutionId id, PrecisionContext ctx);

const char* convolution_name(ConvolutionId id);

}  // namespace cbsum
