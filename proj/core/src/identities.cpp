#include "cbsum/identities.hpp"

#include <cmath>
#include <stdexcept>

#include "cbsum/catalog.hpp"
#include "cbsum/constants.hpp"
#include "cbsum/sequences.hpp"
#include "cbsum/series.hpp"

namespace cbsum {

Real BasisValue::numeric(PrecisionContext ctx) const {
  Real out{rat, ctx};
  out += const_ln2(ctx) * ln2_coeff;
  out += const_pi(ctx) * pi_coeff;
  return out;
}

Rational lemma1_f(long k) {
  if (k < 1) throw std::invalid_argument("lemma1_f: k must be >= 1");
  const Rational inv_c = central_ratio(k).inverse();
  const Rational inv_k{1, static_cast<unsigned long>(k)};
  return inv_k * inv_c - inv_k;
}

BasisValue lemma2_f(long k) {
  if (k < 1) throw std::invalid_argument("lemma2_f: k must be >= 1");
  SequenceTable& tab = SequenceTable::shared();
  const Rational inv_c = tab.central(k).inverse();
  const Rational inv_k{1, static_cast<unsigned long>(k)};
  const Rational inv_k2 = inv_k * inv_k;
  BasisValue out;
  out.rat = (inv_k2 + Rational{2} * tab.odd_harm(k) * inv_k - tab.harm(k) * inv_k) * inv_c -
            inv_k2;
  out.ln2_coeff = Rational{-2} * inv_k * inv_c;
  return out;
}

BasisValue lemma3_g(long j) {
  if (j < 1) throw std::invalid_argument("lemma3_g: j must be >= 1");
  BasisValue out;
  out.pi_coeff = central_ratio(j - 1) / Rational{2};
  out.rat = Rational{-1, static_cast<unsigned long>(2 * j - 1)};
  return out;
}

Rational lemma4_rhs(long k) {
  if (k < 1) throw std::invalid_argument("lemma4_rhs: k must be >= 1");
  return odd_harmonic(k) / Rational{k} * central_ratio(k).inverse();
}

TelescopeResult telescope(const std::function<Rational(long)>& hseq, long K) {
  if (K < 0) throw std::invalid_argument("telescope: K must be >= 0");
  SequenceStream st;
  Rational partial = hseq(1);
  Rational prev = partial;
  Rational total{0}, chunk{0};
  // decay probes at K/4, K/2, K for the convergence hint
  const long probes[3] = {std::max<long>(1, K / 4), std::max<long>(1, K / 2), std::max<long>(1, K)};
  double probe_mag[3] = {0.0, 0.0, 0.0};
  for (long i = 1; i <= K; ++i) {
    st.advance();
    const Rational next = hseq(i + 1);
    const Rational incr = (next - prev) * st.c();
    chunk += incr;
    if (i % 128 == 0) {
      total += chunk;
      chunk = Rational{0};
    }
    for (int p = 0; p < 3; ++p)
      if (i == probes[p]) probe_mag[p] = std::fabs(incr.to_double());
    prev = next;
  }
  partial += total + chunk;

  bool hint = true;
  if (K >= 4 && probe_mag[2] > 0.0) {
    if (probe_mag[0] <= 0.0 || probe_mag[1] <= 0.0) {
      hint = false;  // increments reappeared after vanishing
    } else {
      // fitted decay exponent of |dh(i) c_i| must exceed 1
      const double r1 = std::log(probe_mag[0] / probe_mag[1]) / std::log(2.0);
      const double r2 = std::log(probe_mag[1] / probe_mag[2]) / std::log(2.0);
      hint = r1 > 1.02 && r2 > 1.02;
    }
  }
  return {partial, hint};
}

Real telescope_numeric(const std::function<Rational(long)>& hseq, long K, PrecisionContext ctx) {
  const PrecisionContext wctx{ctx.digits + ctx.guard + 10, 8};
  const mpfr_prec_t prec = wctx.bits();
  mpfr_t c, acc, incr;
  mpfr_inits2(prec, c, acc, incr, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_ui(c, 1, MPFR_RNDN);
  mpfr_set_q(acc, hseq(1).raw(), MPFR_RNDN);
  Rational prev = hseq(1);
  for (long i = 1; i <= K; ++i) {
    mpfr_mul_ui(c, c, static_cast<unsigned long>(2 * i - 1), MPFR_RNDN);
    mpfr_div_ui(c, c, static_cast<unsigned long>(2 * i), MPFR_RNDN);
    const Rational next = hseq(i + 1);
    mpfr_set_q(incr, (next - prev).raw(), MPFR_RNDN);
    mpfr_mul(incr, incr, c, MPFR_RNDN);
    mpfr_add(acc, acc, incr, MPFR_RNDN);
    prev = next;
  }
  Real out{ctx};
  mpfr_set(out.mutable_raw(), acc, MPFR_RNDN);
  mpfr_clears(c, acc, incr, static_cast<mpfr_ptr>(nullptr));
  return out;
}

Rational finite_binom_sum(long k) {
  if (k < 0) throw std::invalid_argument("finite_binom_sum: k must be >= 0");
  SequenceStream st;
  Rational lhs{0};
  for (long i = 1; i <= k; ++i) {
    st.advance();
    lhs += Rational{1, static_cast<unsigned long>(2 * i)} *
           Rational{1, static_cast<unsigned long>(2 * i + 1)} * st.c().inverse();
  }
  const Rational rhs =
      Rational{1} - Rational{1, static_cast<unsigned long>(2 * k + 1)} *
                        (k == 0 ? Rational{1} : st.c().inverse());
  if (lhs != rhs) throw std::logic_error("finite_binom_sum: the two sides disagree");
  return lhs;
}

OddPartialFraction odd_partial_fraction(long i, long K) {
  if (i < 1) throw std::invalid_argument("odd_partial_fraction: i must be >= 1");
  if (K < 0) throw std::invalid_argument("odd_partial_fraction: K must be >= 0");
  Rational partial{0}, chunk{0};
  for (long k = 1; k <= K; ++k) {
    chunk += Rational{1, static_cast<unsigned long>(2 * k - 1)} *
             Rational{1, static_cast<unsigned long>(2 * k + 2 * i - 1)};
    if (k % 128 == 0) {
      partial += chunk;
      chunk = Rational{0};
    }
  }
  partial += chunk;
  const Rational limit = odd_harmonic(i) / Rational{2 * i};
  return {partial, limit};
}

std::vector<BasisValue> solve_first_order(const RecurrenceProblem& problem, long K) {
  if (K < problem.first_index)
    throw std::invalid_argument("solve_first_order: K below the first index");
  std::vector<BasisValue> out;
  out.reserve(K - problem.first_index + 1);
  out.push_back(problem.init);
  for (long k = problem.first_index + 1; k <= K; ++k) {
    const Rational a = problem.coef(k);
    if (a.is_zero()) throw std::invalid_argument("solve_first_order: zero coefficient");
    out.push_back(a * out.back() + problem.inhom(k));
  }
  return out;
}

bool partial_fraction_check(long i, long k) {
  if (i < 1 || k < 1) throw std::invalid_argument("partial_fraction_check: needs i, k >= 1");
  const Rational I{i}, Kk{k};
  const Rational ki = Kk + I;
  const Rational k2 = Kk * Kk, ki2 = ki * ki;
  const bool first =
      (I * ki2).inverse() ==
      (k2 * I).inverse() - (k2 * ki).inverse() - (Kk * ki2).inverse();
  const bool second =
      (I * I * ki2).inverse() ==
      (k2 * I * I).inverse() - Rational{2} * (k2 * Kk * I).inverse() +
          Rational{2} * (k2 * Kk * ki).inverse() + (k2 * ki2).inverse();
  return first && second;
}

namespace {

Real eval_value(const SeriesFamily& f, PrecisionContext ctx) { return evaluate(f, ctx).value; }

// Exact antisymmetric double sum  sum_{i,k<=N} c_i c_k (1/(i^2(k+i)^2) - 1/(k^2(k+i)^2)).
Rational antisymmetric_double_sum(long N) {
  std::vector<Rational> c(N + 1);
  SequenceStream st;
  for (long k = 1; k <= N; ++k) {
    st.advance();
    c[k] = st.c();
  }
  Rational total{0};
  for (long i = 1; i <= N; ++i) {
    Rational row{0};
    for (long k = 1; k <= N; ++k) {
      const Rational ki{(k + i) * (k + i)};
      const Rational left = (Rational{i * i} * ki).inverse();
      const Rational right = (Rational{k * k} * ki).inverse();
      row += c[k] * (left - right);
    }
    total += c[i] * row;
  }
  return total;
}

}  // namespace

Real verify_convolution(ConvolutionId id, PrecisionContext ctx) {
  const PrecisionContext wctx{ctx.digits + ctx.guard, ctx.guard};
  switch (id) {
    case ConvolutionId::S3Chain: {
      // Both routes through the double sum  sum_{i,k} c_i c_k / (i (k+i)^2).
      const Real s1 = eval_value(SeriesFamily::s(1), wctx);
      const Real s2 = eval_value(SeriesFamily::s(2), wctx);
      const Real s3 = eval_value(SeriesFamily::s(3), wctx);
      const Real linH2 = eval_value(SeriesFamily::lin_H(2), wctx);
      const Real linh2 = eval_value(SeriesFamily::lin_h(2), wctx);
      const Real z3 = const_zeta(3, wctx);
      const Real z2 = const_zeta(2, wctx);
      const Real ln2 = const_ln2(wctx);
      const Real route_a = s1 * s2 / 2 - z3 / 2 + s3 / 2;
      const Real route_b = z3 - ln2 * z2 * 2L + linh2 * 2L - linH2 - s3;
      return (route_a - route_b).abs();
    }
    case ConvolutionId::S4Antisymmetry: {
      const Rational exact = antisymmetric_double_sum(100);
      return Real{exact, ctx}.abs();
    }
    case ConvolutionId::V2Chain: {
      const Real l2 = eval_value(SeriesFamily::l(2), wctx);
      const Real v2 = eval_value(SeriesFamily::v(2), wctx);
      const Real pi = const_pi(wctx);
      const Real z3 = const_zeta(3, wctx);
      const Real z2 = const_zeta(2, wctx);
      const Real ln2 = const_ln2(wctx);
      const Real route_a = pi / 2 * (Real{1, wctx} + l2) - z3 * Rational{7, 8};
      const Real route_b = ln2 * z2 * Rational{3, 4} - v2 / 4;
      return (route_a - route_b).abs();
    }
    case ConvolutionId::Z2Chain: {
      const Real z1v = eval_value(SeriesFamily::z(1), wctx);
      const Real z2v = eval_value(SeriesFamily::z(2), wctx);
      const Real v1 = eval_value(SeriesFamily::v(1), wctx);
      const Real pi = const_pi(wctx);
      const Real z2 = const_zeta(2, wctx);
      const Real ln2 = const_ln2(wctx);
      const Real route_a = -z1v + z2v + v1 / 2;
      const Real route_b = pi * ln2 - pi + z2 * Rational{3, 4};
      return (route_a - route_b).abs();
    }
    case ConvolutionId::W1Square: {
      const Real w1 = eval_value(SeriesFamily::w(1), wctx);
      const Real v1 = eval_value(SeriesFamily::v(1), wctx);
      return (w1 * 2L - v1 * v1).abs();
    }
  }
  throw std::logic_error("verify_convolution: unreachable");
}

const char* convolution_name(ConvolutionId id) {
  switch (id) {
    case ConvolutionId::S3Chain: return "s3-chain";
    case ConvolutionId::S4Antisymmetry: return "s4-antisym";
    case ConvolutionId::V2Chain: return "v2-chain";
    case ConvolutionId::Z2Chain: return "z2-chain";
    case ConvolutionId::W1Square: return "w1-square";
  }
  return "?";
}

}  // namespace cbsum
