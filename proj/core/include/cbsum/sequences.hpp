#pragma once

#include <shared_mutex>
#include <vector>

#include "cbsum/rational.hpp"

namespace cbsum {

/// c_k = C(2k,k)/4^k, exact, via the multiplicative recurrence
/// c_k = c_{k-1} * (2k-1)/(2k), c_0 = 1.
Rational central_ratio(long k);

/// H_k = sum_{i=1..k} 1/i, exact.
Rational harmonic(long k);

/// h_k = sum_{i=1..k} 1/(2i-1), exact.
Rational odd_harmonic(long k);

/// Shared append-only cache of c_k, H_k and h_k.  Reads behave as pure
/// lookups; growth is amortized and race-free.  Indices beyond the cache cap
/// are computed on demand without being retained.
class SequenceTable {
 public:
  static SequenceTable& shared();

  Rational central(long k);
  Rational harm(long k);
  Rational odd_harm(long k);

  long cache_cap() const { return cap_; }

 private:
  explicit SequenceTable(long cap) : cap_(cap) {}

  long cap_;
  std::vector<Rational> c_, harm_, odd_;
  mutable std::shared_mutex mu_;
};

/// Exact forward stream of (k, c_k, H_k, h_k) and optionally H_{2k}.
/// Starts at k = 0 with c = 1, H = h = H2 = 0.
class SequenceStream {
 public:
  explicit SequenceStream(bool with_double_harmonic = false)
      : with_h2_(with_double_harmonic) {}

  void advance();

  long k() const { return k_; }
  const Rational& c() const { return c_; }
  const Rational& H() const { return harm_; }
  const Rational& h() const { return odd_; }
  const Rational& H2() const { return harm2_; }

 private:
  long k_ = 0;
  bool with_h2_;
  Rational c_{1}, harm_{0}, odd_{0}, harm2_{0};
};

}  // namespace cbsum
