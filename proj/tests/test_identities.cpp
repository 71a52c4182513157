#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <stdexcept>

#include "cbsum/constants.hpp"
#include "cbsum/identities.hpp"
#include "cbsum/sequences.hpp"
#include "cbsum/series.hpp"
#include "test_util.hpp"

using namespace cbsum;
using cbsum::test::agree_to;

TEST_CASE("lemma 1 values and recurrence") {
  CHECK(lemma1_f(1) == Rational{1});
  CHECK(lemma1_f(2) == Rational{5, 6});
  CHECK(lemma1_f(3) == Rational{11, 15});
  for (long k = 2; k <= 300; ++k) {
    const Rational residual =
        lemma1_f(k) - Rational{2 * k - 2, static_cast<unsigned long>(2 * k - 1)} *
                          lemma1_f(k - 1) -
        Rational{1, static_cast<unsigned long>(k * (2 * k - 1))};
    CHECK(residual.is_zero());
  }
}

TEST_CASE("lemma 2 values") {
  const BasisValue f1 = lemma2_f(1);
  CHECK(f1.rat == Rational{3});
  CHECK(f1.ln2_coeff == Rational{-4});
  CHECK(f1.pi_coeff.is_zero());
  const BasisValue f2 = lemma2_f(2);
  CHECK(f2.rat == Rational{71, 36});
  CHECK(f2.ln2_coeff == Rational{-8, 3});
}

TEST_CASE("lemma 2 satisfies its difference equation with the lemma 1 inhomogeneity") {
  // f(k) - (2k-2)/(2k-1) f(k-1) = 4/(2k-1)^2 - 1/k^2 - 2/(2k-1)^2 * f1(k-1)
  for (long k = 2; k <= 200; ++k) {
    const Rational odd{2 * k - 1};
    const Rational odd_sq = odd * odd;
    BasisValue rhs;
    rhs.rat = Rational{4} / odd_sq - Rational{1, static_cast<unsigned long>(k * k)} -
              Rational{2} / odd_sq * lemma1_f(k - 1);
    const BasisValue lhs =
        lemma2_f(k) - Rational{2 * k - 2, static_cast<unsigned long>(2 * k - 1)} *
                          lemma2_f(k - 1);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("lemma 2 matches the shifted series numerically") {
  const PrecisionContext ctx{30};
  EvalOptions opts;
  opts.cutoff = 2000;
  for (long k = 1; k <= 5; ++k) {
    const Real series =
        evaluate(ShiftedKernel{ShiftedKernel::Kind::CentralOverShiftSq, k}, ctx, opts).value;
    CHECK(agree_to(lemma2_f(k).numeric(ctx), series, 20));
  }
}

TEST_CASE("lemma 3 values and recurrence") {
  const BasisValue g1 = lemma3_g(1);
  CHECK(g1.pi_coeff == Rational{1, 2});
  CHECK(g1.rat == Rational{-1});
  const BasisValue g2 = lemma3_g(2);
  CHECK(g2.pi_coeff == Rational{1, 4});
  CHECK(g2.rat == Rational{-1, 3});
  const BasisValue g3 = lemma3_g(3);
  CHECK(g3.pi_coeff == Rational{3, 16});
  CHECK(g3.rat == Rational{-1, 5});
  for (long k = 1; k <= 300; ++k) {
    BasisValue residual = lemma3_g(k + 1) -
                          Rational{2 * k - 1, static_cast<unsigned long>(2 * k)} * lemma3_g(k);
    residual.rat -= Rational{1, static_cast<unsigned long>(2 * k)} *
                    Rational{1, static_cast<unsigned long>(2 * k + 1)};
    CHECK(residual.is_zero());
  }
}

TEST_CASE("lemma 4 values and series oracle") {
  CHECK(lemma4_rhs(1) == Rational{2});
  CHECK(lemma4_rhs(2) == Rational{16, 9});
  CHECK(lemma4_rhs(3) == Rational{368, 225});

  // the truncated series increases toward the limit and sits inside the bracket
  const PrecisionContext ctx{25};
  const ShiftedKernel kernel{ShiftedKernel::Kind::OddHCentralOverShift, 3};
  const Rational p1 = partial_sum(kernel, 2500);
  const Rational p2 = partial_sum(kernel, 5000);
  CHECK(p1 < p2);
  CHECK(p2 < lemma4_rhs(3));
  TailBracket br = tail_bracket(kernel, 5000, ctx);
  CHECK(br.contains(Real{lemma4_rhs(3) - p2, ctx}));
}

TEST_CASE("telescoping operator") {
  auto ones = [](long) { return Rational{1}; };
  for (long K : {0L, 1L, 17L, 400L}) {
    const TelescopeResult r = telescope(ones, K);
    CHECK(r.partial == Rational{1});
    CHECK(r.limit_hint);
  }

  // weight h_i: increments 1/(2i+1), converges to pi/2
  auto oddh = [](long i) { return odd_harmonic(i); };
  const long K = 4000;
  const TelescopeResult r = telescope(oddh, K);
  CHECK(r.limit_hint);
  const PrecisionContext ctx{30};
  // partial = 1 + sum_{i<=K} c_i/(2i+1); the remaining tail is the L-family tail
  CHECK(r.partial == Rational{1} + partial_sum(SeriesFamily::l(1), K));
  const Real gap = const_pi(ctx) / 2 - Real{r.partial, ctx};
  CHECK(tail_bracket(SeriesFamily::l(1), K, ctx).contains(gap));

  auto linear = [](long i) { return Rational{i}; };
  CHECK_FALSE(telescope(linear, 500).limit_hint);
}

TEST_CASE("telescope numeric path tracks the exact one") {
  auto oddh = [](long i) { return odd_harmonic(i); };
  const PrecisionContext ctx{25};
  const Real numeric = telescope_numeric(oddh, 3000, ctx);
  const Real exact{telescope(oddh, 3000).partial, ctx};
  CHECK(agree_to(numeric, exact, 22));
}

TEST_CASE("finite binomial sum identity") {
  CHECK(finite_binom_sum(0) == Rational{0});
  CHECK(finite_binom_sum(1) == Rational{1, 3});
  CHECK(finite_binom_sum(2) == Rational{7, 15});
  CHECK_NOTHROW(finite_binom_sum(500));
}

TEST_CASE("odd partial fraction limits") {
  CHECK(odd_partial_fraction(1, 0).limit == Rational{1, 2});
  CHECK(odd_partial_fraction(2, 0).limit == Rational{1, 3});
  const OddPartialFraction pf = odd_partial_fraction(3, 10000);
  CHECK(pf.limit == Rational{23, 90});
  const Rational gap = pf.limit - pf.partial;
  CHECK(gap > Rational{0});
  CHECK(gap < Rational{1, 10000});
}

TEST_CASE("first-order solver reproduces the lemmas") {
  // lemma 1: coef (2k-2)/(2k-1), inhom 1/(k(2k-1)), f(1) = 1
  RecurrenceProblem p1;
  p1.coef = [](long k) { return Rational{2 * k - 2, static_cast<unsigned long>(2 * k - 1)}; };
  p1.inhom = [](long k) {
    return BasisValue::rational(Rational{1, static_cast<unsigned long>(k * (2 * k - 1))});
  };
  p1.init = BasisValue::rational(Rational{1});
  p1.first_index = 1;
  const auto sol1 = solve_first_order(p1, 2000);
  for (long k = 1; k <= 2000; ++k) {
    CHECK(sol1[k - 1].rat == lemma1_f(k));
    CHECK(sol1[k - 1].ln2_coeff.is_zero());
  }

  // lemma 3 under the index shift j = k+1: g(j) = (2j-3)/(2j-2) g(j-1) + 1/((2j-2)(2j-1))
  RecurrenceProblem p3;
  p3.coef = [](long j) { return Rational{2 * j - 3, static_cast<unsigned long>(2 * j - 2)}; };
  p3.inhom = [](long j) {
    return BasisValue::rational(Rational{1, static_cast<unsigned long>(2 * j - 2)} *
                                Rational{1, static_cast<unsigned long>(2 * j - 1)});
  };
  p3.init = lemma3_g(1);
  p3.first_index = 1;
  const auto sol3 = solve_first_order(p3, 2000);
  for (long j = 1; j <= 2000; ++j) CHECK(sol3[j - 1] == lemma3_g(j));

  // constant problem
  RecurrenceProblem pc;
  pc.coef = [](long) { return Rational{1}; };
  pc.inhom = [](long) { return BasisValue{}; };
  pc.init = BasisValue{Rational{7}, Rational{1}, Rational{0}};
  pc.first_index = 5;
  const auto solc = solve_first_order(pc, 25);
  for (const BasisValue& v : solc) CHECK(v == pc.init);

  CHECK_THROWS_AS(solve_first_order(pc, 3), std::invalid_argument);
}

TEST_CASE("partial fraction decompositions hold exactly") {
  CHECK(partial_fraction_check(1, 1));
  CHECK(partial_fraction_check(7, 3));
  std::mt19937_64 rng{20240817};
  std::uniform_int_distribution<long> dist{1, 1000000};
  for (int t = 0; t < 200; ++t) CHECK(partial_fraction_check(dist(rng), dist(rng)));
}

TEST_CASE("convolution chains at moderate precision") {
  const PrecisionContext ctx{25};
  CHECK(verify_convolution(ConvolutionId::S3Chain, ctx).abs_below_pow10(20));
  CHECK(verify_convolution(ConvolutionId::V2Chain, ctx).abs_below_pow10(20));
  CHECK(verify_convolution(ConvolutionId::Z2Chain, ctx).abs_below_pow10(20));
  CHECK(verify_convolution(ConvolutionId::W1Square, ctx).abs_below_pow10(20));
  CHECK(verify_convolution(ConvolutionId::S4Antisymmetry, ctx).is_zero());
}

TEST_CASE("the swap behind the w identity is exactly antisymmetric") {
  // 1/(k(i+k)) + 1/(i(i+k)) = 1/(ik) termwise
  for (long i = 1; i <= 40; ++i)
    for (long k = 1; k <= 40; ++k) {
      const Rational lhs = Rational{1, static_cast<unsigned long>(k * (i + k))} +
                           Rational{1, static_cast<unsigned long>(i * (i + k))};
      CHECK(lhs == Rational{1, static_cast<unsigned long>(i * k)});
    }
}
