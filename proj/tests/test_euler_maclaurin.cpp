#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <mpfr.h>

#include "cbsum/constants.hpp"
#include "cbsum/euler_maclaurin.hpp"
#include "cbsum/sequences.hpp"
#include "test_util.hpp"

using namespace cbsum;
using cbsum::test::matches_decimal;

TEST_CASE("bernoulli numbers") {
  CHECK(bernoulli(0) == Rational{1});
  CHECK(bernoulli(1) == Rational{-1, 2});
  CHECK(bernoulli(2) == Rational{1, 6});
  CHECK(bernoulli(3) == Rational{0});
  CHECK(bernoulli(4) == Rational{-1, 30});
  CHECK(bernoulli(8) == Rational{-1, 30});
  CHECK(bernoulli(10) == Rational{5, 66});
  CHECK(bernoulli(12) == Rational{-691, 2730});
}

TEST_CASE("central-ratio expansion coefficients") {
  const auto a = central_ratio_expansion(6);
  CHECK(a[0] == Rational{1});
  CHECK(a[1] == Rational{-1, 8});
  CHECK(a[2] == Rational{1, 128});
  CHECK(a[3] == Rational{5, 1024});
  CHECK(a[4] == Rational{-21, 32768});
}

TEST_CASE("expansion reproduces c_k sqrt(pi k) at large k") {
  // the expansion truncated at J terms must sit within the next coefficient's
  // contribution of the exact value
  const PrecisionContext ctx{45};
  const int J = 12;
  const auto a = central_ratio_expansion(J + 1);
  for (long k : {1000L, 10000L}) {
    Real exact{central_ratio(k), ctx};
    Real sqrt_pik{ctx};
    mpfr_mul_si(sqrt_pik.mutable_raw(), const_pi(ctx).raw(), k, MPFR_RNDN);
    mpfr_sqrt(sqrt_pik.mutable_raw(), sqrt_pik.raw(), MPFR_RNDN);
    exact *= sqrt_pik;

    // Horner from the top coefficient
    Real horner{a[J], ctx};
    for (int j = J - 1; j >= 0; --j) horner = horner / k + Real{a[j], ctx};

    Real next_term = Real{a[J], ctx}.abs() / k;  // conservative next-term scale
    for (int j = 1; j < J; ++j) next_term = next_term / k;
    CHECK((exact - horner).abs() <= next_term * 4L);
  }
}

TEST_CASE("closed-form integral of inverse powers with logs") {
  const PrecisionContext ctx{40};
  // int_2^inf x^-2 dx = 1/2
  CHECK(test::agree_to(integral_inv_pow_log(Rational{2}, 0, Real{2, ctx}),
                       Real{Rational{1, 2}, ctx}, 38));
  // int_4^inf x^-2 ln x dx = (ln 4 + 1)/4
  Real ln4{ctx};
  mpfr_log_ui(ln4.mutable_raw(), 4, MPFR_RNDN);
  CHECK(test::agree_to(integral_inv_pow_log(Rational{2}, 1, Real{4, ctx}),
                       (ln4 + Real{1, ctx}) / 4, 38));
  CHECK_THROWS(integral_inv_pow_log(Rational{1}, 0, Real{2, ctx}));
}

TEST_CASE("euler-maclaurin tails against independent references") {
  const PrecisionContext ctx{45};
  // references from the zeta-derivative route
  CHECK(matches_decimal(tail_inv_pow_log(Rational{3}, 0, 101, 14, ctx),
                        "4.95024999166749985004165022302969116909416273574e-5", 42));
  CHECK(matches_decimal(tail_inv_pow_log(Rational{7, 2}, 1, 101, 14, ctx),
                        "1.97916820288549305564920575993563074700436281894e-5", 42));
  // small starting points cap the reachable accuracy
  CHECK(matches_decimal(tail_inv_pow_log(Rational{3, 2}, 0, 10, 30, ctx),
                        "0.648661631941570422146862910654059339647278877542", 21));
  CHECK(matches_decimal(tail_inv_pow_log(Rational{2}, 1, 8, 22, ctx),
                        "0.401688964645282859060623537505253005466942196805", 16));
  CHECK(matches_decimal(tail_inv_pow_log(Rational{5, 2}, 2, 16, 16, ctx),
                        "0.131665980179274478551967464956241354298087294158", 22));
}

TEST_CASE("tail is consistent across split points") {
  const PrecisionContext ctx{40};
  const Rational s{5, 2};
  // T(s,m,64) = sum_{64<=k<256} + T(s,m,256)
  for (int m : {0, 1, 2}) {
    Real head{ctx};
    for (long k = 64; k < 256; ++k) {
      Real lnk{ctx}, t{ctx};
      mpfr_log_ui(lnk.mutable_raw(), static_cast<unsigned long>(k), MPFR_RNDN);
      mpfr_pow_ui(lnk.mutable_raw(), lnk.raw(), static_cast<unsigned long>(m), MPFR_RNDN);
      mpfr_set_si(t.mutable_raw(), k, MPFR_RNDN);
      mpfr_pow(t.mutable_raw(), t.raw(), Real{s, ctx}.raw(), MPFR_RNDN);
      head += lnk / t;
    }
    const Real whole = tail_inv_pow_log(s, m, 64, 16, ctx);
    const Real rest = tail_inv_pow_log(s, m, 256, 16, ctx);
    CHECK(test::agree_to(whole, head + rest, 34));
  }
}
