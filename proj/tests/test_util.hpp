#pragma once

#include <string>

#include "cbsum/precision.hpp"

namespace cbsum::test {

/// |a - b| <= 10^-e
inline bool agree_to(const Real& a, const Real& b, long e) {
  return (a - b).abs().abs_below_pow10(e);
}

inline bool matches_decimal(const Real& value, const std::string& reference, long e) {
  return agree_to(value, Real::from_decimal(reference, value.context()), e);
}

}  // namespace cbsum::test
