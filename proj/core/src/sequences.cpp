#include "cbsum/sequences.hpp"

#include <mutex>
#include <stdexcept>

namespace cbsum {

namespace {

constexpr long kCacheCap = 4096;

void check_index(long k) {
  if (k < 0) throw std::invalid_argument("sequence index must be >= 0");
}

// Exact sum_{i=a..b} 1/(step*i - off) by balanced splitting, so the partial
// denominators stay proportionate.
Rational reciprocal_range(long a, long b, long step, long off) {
  if (a > b) return Rational{0};
  if (b - a < 16) {
    Rational acc{0};
    for (long i = a; i <= b; ++i) acc += Rational{1, static_cast<unsigned long>(step * i - off)};
    return acc;
  }
  const long mid = a + (b - a) / 2;
  return reciprocal_range(a, mid, step, off) + reciprocal_range(mid + 1, b, step, off);
}

}  // namespace

void SequenceStream::advance() {
  ++k_;
  c_ *= Rational{2 * k_ - 1, static_cast<unsigned long>(2 * k_)};
  harm_ += Rational{1, static_cast<unsigned long>(k_)};
  odd_ += Rational{1, static_cast<unsigned long>(2 * k_ - 1)};
  if (with_h2_) {
    harm2_ += Rational{1, static_cast<unsigned long>(2 * k_ - 1)};
    harm2_ += Rational{1, static_cast<unsigned long>(2 * k_)};
  }
}

SequenceTable& SequenceTable::shared() {
  static SequenceTable table{kCacheCap};
  return table;
}

Rational SequenceTable::central(long k) {
  check_index(k);
  if (k > cap_) {
    // Continue the recurrence beyond the cache in product form.
    Rational base = central(cap_);
    Rational num{1}, den{1};
    for (long j = cap_ + 1; j <= k; ++j) {
      num *= Rational{2 * j - 1};
      den *= Rational{2 * j};
    }
    return base * num / den;
  }
  {
    std::shared_lock lk(mu_);
    if (k < static_cast<long>(c_.size())) return c_[k];
  }
  std::unique_lock lk(mu_);
  if (c_.empty()) c_.push_back(Rational{1});
  for (long j = static_cast<long>(c_.size()); j <= k; ++j)
    c_.push_back(c_.back() * Rational{2 * j - 1, static_cast<unsigned long>(2 * j)});
  return c_[k];
}

Rational SequenceTable::harm(long k) {
  check_index(k);
  if (k > cap_) return harm(cap_) + reciprocal_range(cap_ + 1, k, 1, 0);
  {
    std::shared_lock lk(mu_);
    if (k < static_cast<long>(harm_.size())) return harm_[k];
  }
  std::unique_lock lk(mu_);
  if (harm_.empty()) harm_.push_back(Rational{0});
  for (long j = static_cast<long>(harm_.size()); j <= k; ++j)
    harm_.push_back(harm_.back() + Rational{1, static_cast<unsigned long>(j)});
  return harm_[k];
}

Rational SequenceTable::odd_harm(long k) {
  check_index(k);
  if (k > cap_) return odd_harm(cap_) + reciprocal_range(cap_ + 1, k, 2, 1);
  {
    std::shared_lock lk(mu_);
    if (k < static_cast<long>(odd_.size())) return odd_[k];
  }
  std::unique_lock lk(mu_);
  if (odd_.empty()) odd_.push_back(Rational{0});
  for (long j = static_cast<long>(odd_.size()); j <= k; ++j)
    odd_.push_back(odd_.back() + Rational{1, static_cast<unsigned long>(2 * j - 1)});
  return odd_[k];
}

Rational central_ratio(long k) { return SequenceTable::shared().central(k); }
Rational harmonic(long k) { return SequenceTable::shared().harm(k); }
Rational odd_harmonic(long k) { return SequenceTable::shared().odd_harm(k); }

}  // namespace cbsum
