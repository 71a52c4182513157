#include "cbsum/logsine.hpp"

#include <mpfr.h>

#include <cmath>
#include <functional>
#include <stdexcept>

#include "cbsum/constants.hpp"
#include "cbsum/series.hpp"

namespace cbsum {

void QuadratureOptions::validate() const {
  if (level < 3) throw std::invalid_argument("QuadratureOptions: level must be >= 3");
}

namespace {

// Integrand evaluated at x = a + off_a (off_a is the stable distance to the
// left endpoint, where the singularity lives).
using Integrand = std::function<void(mpfr_ptr out, mpfr_srcptr x, mpfr_srcptr off_a,
                                     mpfr_prec_t prec)>;

struct QuadResult {
  Real value;
  int levels_used = 0;
  Real self_error;
  bool converged = false;
};

// tanh-sinh rule on [a, b]:  x(t) = mid + rad tanh((pi/2) sinh t).
QuadResult tanh_sinh(const Integrand& f, const Real& a, const Real& b, int max_level,
                     PrecisionContext ctx) {
  const PrecisionContext wctx{ctx.digits + ctx.guard + 10, 8};
  const mpfr_prec_t prec = wctx.bits();

  mpfr_t mid, rad, halfpi, t, w, sh, ch, ex, off_a, off_b, x, fx, contrib, level_sum, h;
  mpfr_inits2(prec, mid, rad, halfpi, t, w, sh, ch, ex, off_a, off_b, x, fx, contrib,
              level_sum, h, static_cast<mpfr_ptr>(nullptr));

  mpfr_add(mid, a.raw(), b.raw(), MPFR_RNDN);
  mpfr_div_ui(mid, mid, 2, MPFR_RNDN);
  mpfr_sub(rad, b.raw(), a.raw(), MPFR_RNDN);
  mpfr_div_ui(rad, rad, 2, MPFR_RNDN);

  Real pi = const_pi(wctx);
  mpfr_set(halfpi, pi.raw(), MPFR_RNDN);
  mpfr_div_ui(halfpi, halfpi, 2, MPFR_RNDN);

  // |w f| threshold below which outward node iteration stops
  mpfr_t floor_;
  mpfr_init2(floor_, prec);

  // Evaluates the weighted integrand at t, adding into level_sum.
  // Returns false once the contribution is negligible.
  auto node = [&](mpfr_srcptr tt) {
    // u = (pi/2) sinh t ; weight = (pi/2) cosh t / cosh^2(u)
    mpfr_sinh_cosh(sh, ch, tt, MPFR_RNDN);
    mpfr_mul(sh, sh, halfpi, MPFR_RNDN);
    mpfr_mul(ch, ch, halfpi, MPFR_RNDN);
    // off_a = rad * 2/(1+e^{2u}) with u negated: distance to a for t<0 is
    // rad (1 + tanh u) = rad * 2 e^{2u}/(1+e^{2u}) = rad * 2/(1+e^{-2u})
    mpfr_mul_si(ex, sh, -2, MPFR_RNDN);
    mpfr_exp(ex, ex, MPFR_RNDN);
    mpfr_add_ui(ex, ex, 1, MPFR_RNDN);
    mpfr_ui_div(off_a, 2, ex, MPFR_RNDN);
    mpfr_mul(off_a, off_a, rad, MPFR_RNDN);
    mpfr_mul_si(ex, sh, 2, MPFR_RNDN);
    mpfr_exp(ex, ex, MPFR_RNDN);
    mpfr_add_ui(ex, ex, 1, MPFR_RNDN);
    mpfr_ui_div(off_b, 2, ex, MPFR_RNDN);
    mpfr_mul(off_b, off_b, rad, MPFR_RNDN);
    // x = a + off_a (stable near a); weight w = (pi/2) cosh t / cosh^2(u)
    mpfr_add(x, a.raw(), off_a, MPFR_RNDN);
    mpfr_cosh(w, sh, MPFR_RNDN);
    mpfr_sqr(w, w, MPFR_RNDN);
    mpfr_div(w, ch, w, MPFR_RNDN);
    mpfr_mul(w, w, rad, MPFR_RNDN);
    f(fx, x, off_a, prec);
    mpfr_mul(contrib, w, fx, MPFR_RNDN);
    mpfr_add(level_sum, level_sum, contrib, MPFR_RNDN);
    mpfr_abs(contrib, contrib, MPFR_RNDN);
    return mpfr_cmp(contrib, floor_) >= 0;
  };

  Real prev_estimate{wctx}, estimate{wctx};
  Real self_error{wctx};
  bool converged = false;
  int level = 1;
  mpfr_t total;  // h * sum of weighted nodes, accumulated across levels
  mpfr_init2(total, prec);
  mpfr_set_zero(total, 1);

  for (; level <= max_level; ++level) {
    mpfr_set_ui(h, 1, MPFR_RNDN);
    mpfr_div_2ui(h, h, static_cast<unsigned long>(level), MPFR_RNDN);
    mpfr_set_zero(level_sum, 1);

    // threshold relative to the current total scale
    mpfr_abs(floor_, total, MPFR_RNDN);
    if (mpfr_zero_p(floor_)) mpfr_set_ui(floor_, 1, MPFR_RNDN);
    mpfr_div_2ui(floor_, floor_, static_cast<unsigned long>(prec + 16), MPFR_RNDN);

    if (level == 1) {
      mpfr_set_zero(t, 1);
      node(t);
    }
    // new nodes at odd multiples of h (all multiples at level 1)
    const long stride = (level == 1) ? 1 : 2;
    const long start = 1;
    for (int sgn = 0; sgn < 2; ++sgn) {
      long miss = 0;
      for (long j = start; miss < 8; j += stride) {
        mpfr_mul_si(t, h, sgn == 0 ? j : -j, MPFR_RNDN);
        if (!node(t)) ++miss;
        else miss = 0;
      }
    }

    // total(previous h) already holds sum * h_prev; halving h means
    // total_new = total_prev/2 + h_new * level_sum.
    if (level == 1) {
      mpfr_mul(total, level_sum, h, MPFR_RNDN);
    } else {
      mpfr_div_2ui(total, total, 1, MPFR_RNDN);
      mpfr_mul(level_sum, level_sum, h, MPFR_RNDN);
      mpfr_add(total, total, level_sum, MPFR_RNDN);
    }

    mpfr_set(estimate.mutable_raw(), total, MPFR_RNDN);
    if (level >= 3) {
      self_error = (estimate - prev_estimate).abs();
      Real scale = estimate.abs() + Real{1, wctx};
      Real target =
          scale * Real{std::pow(10.0, -static_cast<double>(ctx.total_digits() + 2)), wctx};
      if (self_error <= target) {
        converged = true;
        prev_estimate = estimate;
        break;
      }
    }
    prev_estimate = estimate;
  }

  mpfr_clears(mid, rad, halfpi, t, w, sh, ch, ex, off_a, off_b, x, fx, contrib, level_sum, h,
              floor_, total, static_cast<mpfr_ptr>(nullptr));

  QuadResult out{Real{ctx}, level > max_level ? max_level : level, Real{ctx}, converged};
  Real rounded{ctx};
  mpfr_set(rounded.mutable_raw(), estimate.raw(), MPFR_RNDN);
  out.value = rounded;
  Real err{ctx};
  mpfr_set(err.mutable_raw(), self_error.raw(), MPFR_RNDN);
  out.self_error = err;
  return out;
}

}  // namespace

LogSineResult log_sin_moment(int n, const QuadratureOptions& opts) {
  opts.validate();
  if (n < 0) throw std::invalid_argument("log_sin_moment: n must be >= 0");
  const PrecisionContext ctx = opts.ctx;

  if (n == 0) {
    Real half_pi = const_pi(ctx) / 2;
    return {half_pi, 0, Real{ctx}, true};
  }

  Integrand f = [n](mpfr_ptr out, mpfr_srcptr x, mpfr_srcptr, mpfr_prec_t prec) {
    mpfr_t s;
    mpfr_init2(s, prec);
    mpfr_sin(s, x, MPFR_RNDN);
    mpfr_log(s, s, MPFR_RNDN);
    // powering the log directly, no exp/log round trip
    mpfr_pow_ui(out, s, static_cast<unsigned long>(n), MPFR_RNDN);
    mpfr_clear(s);
  };

  Real a{0L, ctx};
  Real b = const_pi(ctx) / 2;
  QuadResult q = tanh_sinh(f, a, b, opts.level, ctx);
  return {q.value, q.levels_used, q.self_error, q.converged};
}

Real theorem1_residual(int n, PrecisionContext ctx) {
  if (n < 1) throw std::invalid_argument("theorem1_residual: n must be >= 1");
  const PrecisionContext wctx{ctx.digits + ctx.guard, ctx.guard};
  QuadratureOptions qopts{.level = 13, .ctx = wctx};
  LogSineResult moment = log_sin_moment(n, qopts);

  Rational factor{1};
  for (int i = 2; i <= n; ++i) factor *= Rational{i};
  factor = factor.inverse();
  if (n % 2 == 1) factor = -factor;

  Real lhs = moment.value * factor - Real{1, wctx};
  Real rhs = evaluate(SeriesFamily::l(n + 1), wctx).value;
  return (lhs - rhs).abs();
}

Real ls4_check(PrecisionContext ctx) {
  const PrecisionContext wctx{ctx.digits + ctx.guard, ctx.guard};
  const Real pi = const_pi(wctx);
  const Real ln2 = const_ln2(wctx);
  const Real z3 = const_zeta(3, wctx);
  QuadratureOptions qopts{.level = 13, .ctx = wctx};

  // ln^3(2 sin(x/2)) over [0, pi]
  Integrand f_half = [](mpfr_ptr out, mpfr_srcptr x, mpfr_srcptr, mpfr_prec_t prec) {
    mpfr_t s;
    mpfr_init2(s, prec);
    mpfr_div_ui(s, x, 2, MPFR_RNDN);
    mpfr_sin(s, s, MPFR_RNDN);
    mpfr_mul_ui(s, s, 2, MPFR_RNDN);
    mpfr_log(s, s, MPFR_RNDN);
    mpfr_pow_ui(out, s, 3, MPFR_RNDN);
    mpfr_clear(s);
  };
  // ln^3(2 sin p) over [0, pi/2]
  Integrand f_full = [](mpfr_ptr out, mpfr_srcptr x, mpfr_srcptr, mpfr_prec_t prec) {
    mpfr_t s;
    mpfr_init2(s, prec);
    mpfr_sin(s, x, MPFR_RNDN);
    mpfr_mul_ui(s, s, 2, MPFR_RNDN);
    mpfr_log(s, s, MPFR_RNDN);
    mpfr_pow_ui(out, s, 3, MPFR_RNDN);
    mpfr_clear(s);
  };

  Real zero{0L, wctx};
  QuadResult q1 = tanh_sinh(f_half, zero, pi, qopts.level, wctx);
  QuadResult q2 = tanh_sinh(f_full, zero, pi / 2, qopts.level, wctx);

  // int_0^pi ln^3(2 sin(x/2)) dx = -(3/2) pi z3
  Real residual = (z3 * pi * Rational{3, 2} + q1.value).abs();
  // substitution x = 2p halves the interval
  Real sub_residual = (q1.value - q2.value * 2L).abs();
  if (sub_residual > residual) residual = sub_residual;

  // cubic moment, directly and assembled from the binomial expansion of
  // (ln 2 + ln sin p)^3 inside q2
  LogSineResult m1 = log_sin_moment(1, qopts);
  LogSineResult m2 = log_sin_moment(2, qopts);
  LogSineResult m3 = log_sin_moment(3, qopts);
  Real ln2_sq = ln2 * ln2;
  Real ln2_cu = ln2_sq * ln2;
  Real assembled =
      q2.value - ln2_cu * pi / 2 - ln2_sq * m1.value * 3L - ln2 * m2.value * 3L;
  Real asm_residual = (assembled - m3.value).abs();
  if (asm_residual > residual) residual = asm_residual;

  // closed form of the cubic moment
  Real pi3 = pi * pi * pi;
  Real closed = -(pi * z3 * Rational{3, 4}) - pi3 * ln2 / 8 - pi * ln2_cu / 2;
  Real closed_residual = (m3.value - closed).abs();
  if (closed_residual > residual) residual = closed_residual;

  Real out{ctx};
  mpfr_set(out.mutable_raw(), residual.raw(), MPFR_RNDN);
  return out;
}

}  // namespace cbsum
