#include "cbsum/constants.hpp"

#include <mpfr.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "cbsum/euler_maclaurin.hpp"
#include "cbsum/sequences.hpp"

namespace cbsum {

namespace {

using CacheKey = std::tuple<char, long, long>;  // kind, order, total digits

std::map<CacheKey, Real>& cache() {
  static std::map<CacheKey, Real> c;
  return c;
}

std::mutex& cache_mutex() {
  static std::mutex m;
  return m;
}

// Internal agreement requirement between the two routes.
void require_agreement(const Real& a, const Real& b, PrecisionContext ctx, const char* what) {
  Real diff = (a - b).abs();
  if (!diff.abs_below_pow10(ctx.total_digits() - 3))
    throw std::logic_error(std::string("constant cross-check failed for ") + what);
}

// atan(1/q) by its Maclaurin series, exact rational terms.
Real atan_inv(long q, PrecisionContext ctx) {
  const mpfr_prec_t prec = ctx.bits();
  mpfr_t acc, term, qpow;
  mpfr_inits2(prec, acc, term, qpow, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_zero(acc, 1);
  mpfr_set_si(qpow, q, MPFR_RNDN);
  const long q2 = q * q;
  long j = 0;
  while (true) {
    mpfr_ui_div(term, 1, qpow, MPFR_RNDN);
    mpfr_div_ui(term, term, static_cast<unsigned long>(2 * j + 1), MPFR_RNDN);
    if (j % 2 == 1) mpfr_neg(term, term, MPFR_RNDN);
    mpfr_add(acc, acc, term, MPFR_RNDN);
    mpfr_abs(term, term, MPFR_RNDN);
    mpfr_t floor_;
    mpfr_init2(floor_, 32);
    mpfr_set_ui_2exp(floor_, 1, -(prec + 8), MPFR_RNDN);
    const bool done = mpfr_cmp(term, floor_) < 0;
    mpfr_clear(floor_);
    if (done) break;
    mpfr_mul_si(qpow, qpow, q2, MPFR_RNDN);
    ++j;
  }
  Real out{ctx};
  mpfr_set(out.mutable_raw(), acc, MPFR_RNDN);
  mpfr_clears(acc, term, qpow, static_cast<mpfr_ptr>(nullptr));
  return out;
}

// Alternating zeta (eta function) by iterated averaging of partial sums.
Real eta_by_averaging(long m, PrecisionContext ctx) {
  // each averaging pass roughly halves the alternating remainder
  const long order = (ctx.total_digits() + 8) * 10 / 3 + 16;
  const mpfr_prec_t prec = ctx.bits() + 16;
  std::vector<Real> partial;
  partial.reserve(order + 1);
  mpfr_t acc, term;
  mpfr_inits2(prec, acc, term, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_zero(acc, 1);
  for (long k = 1; k <= order + 1; ++k) {
    mpfr_set_si(term, k, MPFR_RNDN);
    mpfr_pow_si(term, term, -m, MPFR_RNDN);
    if (k % 2 == 0) mpfr_neg(term, term, MPFR_RNDN);
    mpfr_add(acc, acc, term, MPFR_RNDN);
    Real p{ctx};
    mpfr_set(p.mutable_raw(), acc, MPFR_RNDN);
    partial.push_back(p);
  }
  mpfr_clears(acc, term, static_cast<mpfr_ptr>(nullptr));
  // fold: S_i <- (S_i + S_{i+1})/2
  for (size_t len = partial.size(); len > 1; --len)
    for (size_t i = 0; i + 1 < len; ++i) partial[i] = (partial[i] + partial[i + 1]) / 2;
  return partial[0];
}

Real zeta_by_euler_maclaurin(long m, PrecisionContext ctx) {
  const long cut = std::max<long>(48, ctx.total_digits());
  const mpfr_prec_t prec = ctx.bits() + 16;
  mpfr_t acc, term;
  mpfr_inits2(prec, acc, term, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_zero(acc, 1);
  for (long k = 1; k < cut; ++k) {
    mpfr_set_si(term, k, MPFR_RNDN);
    mpfr_pow_si(term, term, -m, MPFR_RNDN);
    mpfr_add(acc, acc, term, MPFR_RNDN);
  }
  Real head{ctx};
  mpfr_set(head.mutable_raw(), acc, MPFR_RNDN);
  mpfr_clears(acc, term, static_cast<mpfr_ptr>(nullptr));
  return head + tail_inv_pow_log(Rational{m}, 0, cut, ctx.total_digits(), ctx);
}

Real gamma_by_euler_maclaurin(PrecisionContext ctx) {
  // gamma = H_N - ln N - 1/(2N) + sum_j B_2j/(2j N^2j)
  const long N = std::max<long>(64, (ctx.total_digits() * 5) / 4);
  Real g{harmonic(N), ctx};
  Real n{N, ctx};
  Real lnn{ctx};
  mpfr_log(lnn.mutable_raw(), n.raw(), MPFR_RNDN);
  g -= lnn;
  g -= Real{Rational{1, static_cast<unsigned long>(2 * N)}, ctx};
  Rational n2{N * N};
  Rational npow{1};
  const int jmax = ctx.total_digits();
  for (int j = 1; j <= jmax; ++j) {
    npow *= n2;
    const Rational c = bernoulli(2 * j) / (Rational{2 * j} * npow);
    Real corr{c, ctx};
    g += corr;
    if (corr.abs_below_pow10(ctx.total_digits() + 4)) break;
  }
  return g;
}

Real cached(char kind, long order, PrecisionContext ctx, Real (*compute)(long, PrecisionContext)) {
  const CacheKey key{kind, order, ctx.total_digits()};
  {
    std::lock_guard lk(cache_mutex());
    auto it = cache().find(key);
    if (it != cache().end()) return Real{it->second};
  }
  Real value = compute(order, ctx);
  std::lock_guard lk(cache_mutex());
  auto [it, _] = cache().emplace(key, value);
  return Real{it->second};
}

}  // namespace

Real const_pi(PrecisionContext ctx) {
  return cached('p', 0, ctx, [](long, PrecisionContext c) {
    Real primary{c};
    mpfr_const_pi(primary.mutable_raw(), MPFR_RNDN);
    // Machin: pi = 16 atan(1/5) - 4 atan(1/239)
    Real check = atan_inv(5, c) * 16L - atan_inv(239, c) * 4L;
    require_agreement(primary, check, c, "pi");
    return primary;
  });
}

Real const_ln2(PrecisionContext ctx) {
  return cached('l', 0, ctx, [](long, PrecisionContext c) {
    Real primary{c};
    mpfr_const_log2(primary.mutable_raw(), MPFR_RNDN);
    // ln 2 = 2 atanh(1/3) = sum 2 / ((2j+1) 3^(2j+1))
    const mpfr_prec_t prec = c.bits();
    mpfr_t acc, term, pow3;
    mpfr_inits2(prec, acc, term, pow3, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_zero(acc, 1);
    mpfr_set_ui(pow3, 3, MPFR_RNDN);
    for (long j = 0;; ++j) {
      mpfr_ui_div(term, 2, pow3, MPFR_RNDN);
      mpfr_div_ui(term, term, static_cast<unsigned long>(2 * j + 1), MPFR_RNDN);
      mpfr_add(acc, acc, term, MPFR_RNDN);
      if (mpfr_cmp_ui_2exp(term, 1, -(prec + 8)) < 0) break;
      mpfr_mul_ui(pow3, pow3, 9, MPFR_RNDN);
    }
    Real check{c};
    mpfr_set(check.mutable_raw(), acc, MPFR_RNDN);
    mpfr_clears(acc, term, pow3, static_cast<mpfr_ptr>(nullptr));
    require_agreement(primary, check, c, "ln2");
    return primary;
  });
}

Real const_euler_gamma(PrecisionContext ctx) {
  return cached('g', 0, ctx, [](long, PrecisionContext c) {
    Real primary{c};
    mpfr_const_euler(primary.mutable_raw(), MPFR_RNDN);
    require_agreement(primary, gamma_by_euler_maclaurin(c), c, "gamma");
    return primary;
  });
}

Real const_zeta(long m, PrecisionContext ctx) {
  if (m < 2) throw std::domain_error("zeta: requires m >= 2 (zeta(1) diverges)");
  return cached('z', m, ctx, [](long order, PrecisionContext c) {
    Real primary = zeta_by_euler_maclaurin(order, c);
    // Independent route: zeta(m) = eta(m) / (1 - 2^(1-m)).
    Real eta = eta_by_averaging(order, c);
    Real denom{1, c};
    Real two_pow{Rational{1, 2}.pow(static_cast<unsigned long>(order - 1)), c};
    denom -= two_pow;
    require_agreement(primary, eta / denom, c, "zeta");
    return primary;
  });
}

Real const_li_half(long m, PrecisionContext ctx) {
  if (m < 1) throw std::domain_error("li_half: requires m >= 1");
  return cached('L', m, ctx, [](long order, PrecisionContext c) {
    const mpfr_prec_t prec = c.bits();
    mpfr_t acc, term, kpow;
    mpfr_inits2(prec, acc, term, kpow, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_zero(acc, 1);
    mpfr_t half_pow;
    mpfr_init2(half_pow, prec);
    mpfr_set_ui(half_pow, 1, MPFR_RNDN);
    for (long k = 1;; ++k) {
      mpfr_div_2ui(half_pow, half_pow, 1, MPFR_RNDN);  // 2^-k
      mpfr_set_si(kpow, k, MPFR_RNDN);
      mpfr_pow_si(kpow, kpow, -order, MPFR_RNDN);
      mpfr_mul(term, half_pow, kpow, MPFR_RNDN);
      mpfr_add(acc, acc, term, MPFR_RNDN);
      if (mpfr_cmp_ui_2exp(term, 1, -(prec + 8)) < 0) break;
    }
    Real out{c};
    mpfr_set(out.mutable_raw(), acc, MPFR_RNDN);
    mpfr_clears(acc, term, kpow, half_pow, static_cast<mpfr_ptr>(nullptr));
    return out;
  });
}

}  // namespace cbsum
