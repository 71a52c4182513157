#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cbsum/catalog.hpp"
#include "cbsum/constants.hpp"
#include "cbsum/euler_relations.hpp"
#include "cbsum/sequences.hpp"
#include "cbsum/series.hpp"
#include "test_util.hpp"

using namespace cbsum;
using cbsum::test::agree_to;

TEST_CASE("relation residuals at 25 digits") {
  const PrecisionContext ctx{25};
  CHECK(relation_residual(RelationId::EvenOddSplit, ctx).abs_below_pow10(15));
  CHECK(relation_residual(RelationId::OddSquareAssembly, ctx).abs_below_pow10(15));
  CHECK(relation_residual(RelationId::MixFromWeighted, ctx).abs_below_pow10(15));
  CHECK(relation_residual(RelationId::WOneSquare, ctx).abs_below_pow10(20));
}

TEST_CASE("w closed forms, and the first one numerically") {
  const PrecisionContext ctx{25};
  for (int n = 1; n <= 3; ++n) CHECK(w_closed_form_check(n, ctx).abs_below_pow10(15));

  const Real w1 = evaluate(SeriesFamily::w(1), ctx).value;
  const Real target = const_zeta(4, ctx) * Rational{45, 16};
  CHECK(agree_to(w1, target, 20));
  CHECK(test::matches_decimal(w1, "3.04403409481257616363876039652", 20));
}

TEST_CASE("even/odd partition holds exactly at finite truncations") {
  // sum_{k<=2K} H^2/k^3 - sum_{k<=2K} (-1)^(k-1) H^2/k^3 = 1/4 sum_{k<=K} H_2k^2/k^3
  const long K = 250;
  const Rational full = partial_sum(ShiftedKernel{ShiftedKernel::Kind::HSqOverCube}, 2 * K);
  const Rational alt = partial_sum(SeriesFamily::fixed(FamilyTag::AltHSq3), 2 * K);
  const Rational even = partial_sum(SeriesFamily::fixed(FamilyTag::SqH2k), K);
  CHECK(full - alt == even / Rational{4});
}

TEST_CASE("the algebraic backbone of the splits") {
  // H_2k^2 = h_k^2 + h_k H_k + H_k^2/4, exact
  SequenceStream st{true};
  for (long k = 1; k <= 2000; ++k) {
    st.advance();
    const Rational lhs = st.H2() * st.H2();
    const Rational rhs =
        st.h() * st.h() + st.h() * st.H() + st.H() * st.H() / Rational{4};
    CHECK(lhs == rhs);
  }
}

TEST_CASE("w check argument guard") {
  CHECK_THROWS(w_closed_form_check(0, PrecisionContext{20}));
  CHECK_THROWS(w_closed_form_check(4, PrecisionContext{20}));
}
