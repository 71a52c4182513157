#pragma once

#include <optional>
#include <string>

#include "cbsum/precision.hpp"
#include "cbsum/rational.hpp"

namespace cbsum {

/// The twelve series families.  c_k = C(2k,k)/4^k, H_k the harmonic number,
/// h_k the odd harmonic number; all sums run over k >= 1.
enum class FamilyTag {
  S,            // c_k / k^n                 (order n >= 1)
  L,            // c_k / (2k+1)^n            (order n >= 1)
  V,            // h_k c_k / k^n             (order n >= 1)
  Z,            // h_k c_k / (2k-1)^n        (order n >= 1)
  W,            // h_k^2 / k^(2n)            (order n >= 1)
  LinH,         // H_k / k^n                 (order n >= 2)
  LinOddH,      // h_k / k^n                 (order n >= 2)
  MixHOddH3,    // H_k h_k / k^3
  AltHSq3,      // (-1)^(k-1) H_k^2 / k^3    (alternating)
  WeightedH2k,  // H_k H_2k / (2k)^3
  SqH2k,        // H_2k^2 / k^3
  OddHSq3,      // h_k^2 / k^3
};

bool family_has_order(FamilyTag tag);

/// Tagged family plus integer order where applicable.  Construction
/// validates the (tag, n) combination.
struct SeriesFamily {
  FamilyTag tag;
  int n;

  SeriesFamily(FamilyTag tag_, int n_ = 0);

  static SeriesFamily s(int n) { return {FamilyTag::S, n}; }
  static SeriesFamily l(int n) { return {FamilyTag::L, n}; }
  static SeriesFamily v(int n) { return {FamilyTag::V, n}; }
  static SeriesFamily z(int n) { return {FamilyTag::Z, n}; }
  static SeriesFamily w(int n) { return {FamilyTag::W, n}; }
  static SeriesFamily lin_H(int n) { return {FamilyTag::LinH, n}; }
  static SeriesFamily lin_h(int n) { return {FamilyTag::LinOddH, n}; }
  static SeriesFamily fixed(FamilyTag tag) { return {tag, 0}; }

  bool alternating() const { return tag == FamilyTag::AltHSq3; }

  /// Stable identifier, e.g. "s:3", "lin-h:2", "alt-H2-k3".
  std::string id() const;

  /// Parses the identifier format produced by id().
  static std::optional<SeriesFamily> from_id(const std::string& id);

  friend bool operator==(const SeriesFamily&, const SeriesFamily&) = default;
};

struct EvalOptions {
  long cutoff = 10000;           // direct summation stops here (K0 >= 100)
  int em_order = 12;             // Euler-Maclaurin correction terms (>= 2)
  std::optional<double> tol;     // absolute tolerance; default 10^-(digits-5)

  void validate() const;
};

struct EvalResult {
  Real value;
  long terms_used = 0;
  Real tail_estimate;      // magnitude of the applied tail correction
  bool converged = false;  // two internal runs agree within tol
  Real self_error;         // |run1 - run2|
};

/// Exact k-th summand of the family.
Rational term(const SeriesFamily& family, long k);

/// Exact summand at the stream's current position (O(1) amortized when
/// scanning k upward; the stream must carry H_2k for the H_2k families).
class SequenceStream;
Rational term_at(const SeriesFamily& family, const SequenceStream& position);

/// Exact sum of the first K terms (K >= 0).
Rational partial_sum(const SeriesFamily& family, long K);

/// High-precision value of the infinite sum: exact-kernel direct summation to
/// the cutoff, then an Euler-Maclaurin tail on the smooth extension of the
/// kernel.  Certified by agreement of runs at (K0, em) and (2 K0, em+2);
/// disagreement beyond tol is reported via converged=false, never thrown.
EvalResult evaluate(const SeriesFamily& family, PrecisionContext ctx, EvalOptions opts = {});

/// Alternating-series evaluation (AltHSq3 only) by iterated averaging of the
/// partial sums, certified by doubling the transform order.
EvalResult evaluate_alternating(const SeriesFamily& family, PrecisionContext ctx,
                                EvalOptions opts = {});

struct TailBracket {
  Real lower;
  Real upper;

  bool contains(const Real& x) const { return lower <= x && x <= upper; }
  Real width() const { return upper - lower; }
};

/// Rigorous bounds  lower <= sum - partial_sum(K) <= upper  via integral
/// comparison of monotone envelopes of the kernel.  Rejects the alternating
/// family (std::invalid_argument).
TailBracket tail_bracket(const SeriesFamily& family, long K, PrecisionContext ctx);

/// Internal kernels used by the identity and relation checks: exact terms
/// with the same tail machinery as the public families.
struct ShiftedKernel {
  enum class Kind {
    CentralOverShiftSq,   // c_i / (i+q)^2
    OddHCentralOverShift, // h_i c_i / (i+q)
    HSqOverCube,          // H_i^2 / i^3   (q unused)
  };
  Kind kind;
  long shift = 0;
};

Rational term(const ShiftedKernel& kernel, long k);
Rational partial_sum(const ShiftedKernel& kernel, long K);
EvalResult evaluate(const ShiftedKernel& kernel, PrecisionContext ctx, EvalOptions opts = {});
TailBracket tail_bracket(const ShiftedKernel& kernel, long K, PrecisionContext ctx);

}  // namespace cbsum
