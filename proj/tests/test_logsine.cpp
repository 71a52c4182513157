#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>

#include "cbsum/constants.hpp"
#include "cbsum/logsine.hpp"
#include "test_util.hpp"

using namespace cbsum;
using cbsum::test::agree_to;
using cbsum::test::matches_decimal;

TEST_CASE("options and argument guards") {
  QuadratureOptions bad;
  bad.level = 2;
  CHECK_THROWS_AS(log_sin_moment(1, bad), std::invalid_argument);
  QuadratureOptions ok;
  CHECK_THROWS_AS(log_sin_moment(-1, ok), std::invalid_argument);
  CHECK_THROWS_AS(theorem1_residual(0, PrecisionContext{20}), std::invalid_argument);
}

TEST_CASE("zeroth moment is the interval length") {
  QuadratureOptions opts;
  opts.ctx = PrecisionContext{30};
  const LogSineResult r = log_sin_moment(0, opts);
  CHECK(agree_to(r.value, const_pi(opts.ctx) / 2, 29));
  CHECK(r.converged);
}

TEST_CASE("first moments against their closed forms") {
  QuadratureOptions opts;
  opts.ctx = PrecisionContext{30};
  const Real pi = const_pi(opts.ctx);
  const Real ln2 = const_ln2(opts.ctx);

  const LogSineResult m1 = log_sin_moment(1, opts);
  CHECK(m1.converged);
  CHECK(agree_to(m1.value, -(pi / 2 * ln2), 27));

  // reference values for the squared and cubed moments
  const LogSineResult m2 = log_sin_moment(2, opts);
  CHECK(matches_decimal(m2.value, "2.046622024472740646169641008176973476637", 27));
  const LogSineResult m3 = log_sin_moment(3, opts);
  CHECK(matches_decimal(m3.value, "-6.041882909775093522150424130675995985509", 26));

  // cubic closed form
  const Real z3 = const_zeta(3, opts.ctx);
  const Real pi3 = pi * pi * pi;
  const Real closed = -(pi * z3 * Rational{3, 4}) - pi3 * ln2 / 8 - pi * ln2 * ln2 * ln2 / 2;
  CHECK(agree_to(m3.value, closed, 26));
}

TEST_CASE("moment signs alternate") {
  QuadratureOptions opts;
  opts.ctx = PrecisionContext{20};
  for (int n = 1; n <= 5; ++n) {
    const LogSineResult r = log_sin_moment(n, opts);
    CHECK(r.value.sign() == (n % 2 == 0 ? 1 : -1));
    CHECK(r.converged);
  }
}

TEST_CASE("level ladder reports its own error") {
  QuadratureOptions opts;
  opts.ctx = PrecisionContext{25};
  const LogSineResult r = log_sin_moment(2, opts);
  CHECK(r.converged);
  CHECK(r.levels_used >= 3);
  CHECK(r.self_error.abs_below_pow10(25));
}

TEST_CASE("theorem-1 bridge residuals") {
  const PrecisionContext ctx{25};
  for (int n = 1; n <= 3; ++n) CHECK(theorem1_residual(n, ctx).abs_below_pow10(20));
}

TEST_CASE("log-sine value check") {
  CHECK(ls4_check(PrecisionContext{25}).abs_below_pow10(20));
}
