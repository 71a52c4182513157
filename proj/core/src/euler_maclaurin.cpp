#include "cbsum/euler_maclaurin.hpp"

#include "cbsum/constants.hpp"

#include <gmp.h>
#include <mpfr.h>

#include <mutex>
#include <stdexcept>
#include <vector>

namespace cbsum {

namespace {

Rational binom(unsigned long n, unsigned long k) {
  Rational r{1};
  mpz_bin_uiui(mpq_numref(r.mutable_raw()), n, k);
  return r;
}

}  // namespace

const Rational& bernoulli(int n) {
  if (n < 0) throw std::invalid_argument("bernoulli: negative index");
  static std::vector<Rational> cache;
  static std::mutex mu;
  std::lock_guard lk(mu);
  while (static_cast<int>(cache.size()) <= n) {
    const int m = static_cast<int>(cache.size());
    if (m == 0) {
      cache.push_back(Rational{1});
      continue;
    }
    // sum_{j=0}^{m} C(m+1, j) B_j = 0
    Rational acc{0};
    for (int j = 0; j < m; ++j) acc += binom(m + 1, j) * cache[j];
    cache.push_back(-acc / Rational{m + 1});
  }
  return cache[n];
}

Real integral_inv_pow_log(const Rational& s, int m, const Real& a) {
  if (s <= Rational{1}) throw std::invalid_argument("integral_inv_pow_log: needs s > 1");
  const PrecisionContext ctx = a.context();
  const mpfr_prec_t prec = ctx.bits();

  mpfr_t lna, apow, sm1, term, acc, t;
  mpfr_inits2(prec, lna, apow, sm1, term, acc, t, static_cast<mpfr_ptr>(nullptr));
  mpfr_log(lna, a.raw(), MPFR_RNDN);

  // a^(1-s) = exp((1-s) ln a)
  Rational one_minus_s = Rational{1} - s;
  mpfr_set_q(t, one_minus_s.raw(), MPFR_RNDN);
  mpfr_mul(apow, t, lna, MPFR_RNDN);
  mpfr_exp(apow, apow, MPFR_RNDN);

  mpfr_set_q(sm1, (s - Rational{1}).raw(), MPFR_RNDN);

  // sum_{i=0..m} (m!/(m-i)!) (ln a)^(m-i) / (s-1)^(i+1)
  mpfr_set_zero(acc, 1);
  Rational falling{1};
  for (int i = 0; i <= m; ++i) {
    if (i > 0) falling *= Rational{m - i + 1};
    mpfr_pow_ui(term, lna, static_cast<unsigned long>(m - i), MPFR_RNDN);
    mpfr_mul_q(term, term, falling.raw(), MPFR_RNDN);
    mpfr_pow_ui(t, sm1, static_cast<unsigned long>(i + 1), MPFR_RNDN);
    mpfr_div(term, term, t, MPFR_RNDN);
    mpfr_add(acc, acc, term, MPFR_RNDN);
  }
  mpfr_mul(acc, acc, apow, MPFR_RNDN);

  Real out{ctx};
  mpfr_set(out.mutable_raw(), acc, MPFR_RNDN);
  mpfr_clears(lna, apow, sm1, term, acc, t, static_cast<mpfr_ptr>(nullptr));
  return out;
}

Real tail_inv_pow_log(const Rational& s, int m, long a, int em_order, PrecisionContext ctx) {
  if (s <= Rational{1}) throw std::invalid_argument("tail_inv_pow_log: needs s > 1");
  if (a < 2) throw std::invalid_argument("tail_inv_pow_log: needs a >= 2");
  if (em_order < 1) em_order = 1;
  const mpfr_prec_t prec = ctx.bits();

  Real total = integral_inv_pow_log(s, m, Real{a, ctx});

  mpfr_t lna, lpow, apow, term, poly, t;
  mpfr_inits2(prec, lna, lpow, apow, term, poly, t, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_si(t, a, MPFR_RNDN);
  mpfr_log(lna, t, MPFR_RNDN);

  // powers of ln a up to m
  std::vector<Real> lnpow;
  lnpow.reserve(m + 1);
  for (int i = 0; i <= m; ++i) {
    Real p{ctx};
    mpfr_pow_ui(p.mutable_raw(), lna, static_cast<unsigned long>(i), MPFR_RNDN);
    lnpow.push_back(p);
  }

  // a^-s = exp(-s ln a)
  mpfr_set_q(t, (-s).raw(), MPFR_RNDN);
  mpfr_mul(apow, t, lna, MPFR_RNDN);
  mpfr_exp(apow, apow, MPFR_RNDN);

  // + g(a)/2
  mpfr_mul(term, apow, lnpow[m].raw(), MPFR_RNDN);
  mpfr_div_ui(term, term, 2, MPFR_RNDN);
  {
    Real half{ctx};
    mpfr_set(half.mutable_raw(), term, MPFR_RNDN);
    total += half;
  }

  // Correction terms  - B_2j/(2j)! g^(2j-1)(a), with exact derivative
  // coefficients of g(x) = x^-s ln^m x maintained as rationals.
  std::vector<Rational> cur(m + 1);
  cur[m] = Rational{1};
  int deriv = 0;
  Rational fact{1};  // (2j)!
  mpfr_t threshold;
  mpfr_init2(threshold, prec);
  mpfr_abs(threshold, total.raw(), MPFR_RNDN);
  mpfr_div_2ui(threshold, threshold, static_cast<unsigned long>(prec + 4), MPFR_RNDN);

  for (int j = 1; j <= em_order; ++j) {
    while (deriv < 2 * j - 1) {
      std::vector<Rational> next(m + 1);
      const Rational factor = -(s + Rational{deriv});
      for (int i = 0; i <= m; ++i) {
        next[i] = factor * cur[i];
        if (i + 1 <= m) next[i] += Rational{i + 1} * cur[i + 1];
      }
      cur = std::move(next);
      ++deriv;
      mpfr_div_si(apow, apow, a, MPFR_RNDN);  // apow = a^-(s+deriv)
    }
    fact *= Rational{2 * j - 1};
    fact *= Rational{2 * j};

    mpfr_set_zero(poly, 1);
    for (int i = 0; i <= m; ++i) {
      if (cur[i].is_zero()) continue;
      mpfr_mul_q(t, lnpow[i].raw(), cur[i].raw(), MPFR_RNDN);
      mpfr_add(poly, poly, t, MPFR_RNDN);
    }
    const Rational coeff = bernoulli(2 * j) / fact;
    mpfr_mul_q(term, poly, coeff.raw(), MPFR_RNDN);
    mpfr_mul(term, term, apow, MPFR_RNDN);

    Real correction{ctx};
    mpfr_set(correction.mutable_raw(), term, MPFR_RNDN);
    total -= correction;

    mpfr_abs(term, term, MPFR_RNDN);
    if (mpfr_cmp(term, threshold) < 0) break;
  }

  mpfr_clears(lna, lpow, apow, term, poly, t, threshold, static_cast<mpfr_ptr>(nullptr));
  return total;
}

std::vector<Rational> central_ratio_expansion(int count) {
  if (count < 1) count = 1;
  static std::vector<Rational> cache;
  static std::mutex mu;
  std::lock_guard lk(mu);
  if (static_cast<int>(cache.size()) < count) {
    // ln(c(x) sqrt(pi x)) = sum over odd n of (2^-n - 2) B_{n+1} / (n(n+1)) x^-n;
    // exponentiate formally: j a_j = sum_i i e_i a_{j-i}.
    std::vector<Rational> e(count, Rational{0});
    for (int n = 1; n < count; n += 2) {
      Rational pow2{1, 1};
      for (int i = 0; i < n; ++i) pow2 *= Rational{1, 2};
      e[n] = (pow2 - Rational{2}) * bernoulli(n + 1) / Rational{n * (n + 1)};
    }
    std::vector<Rational> a(count, Rational{0});
    a[0] = Rational{1};
    for (int j = 1; j < count; ++j) {
      Rational acc{0};
      for (int i = 1; i <= j; i += 2) acc += Rational{i} * e[i] * a[j - i];
      a[j] = acc / Rational{j};
    }
    cache = std::move(a);
  }
  return std::vector<Rational>(cache.begin(), cache.begin() + count);
}

namespace em {

namespace {

LogPoly poly_mul(const LogPoly& a, const LogPoly& b) {
  if (a.empty() || b.empty()) return {};
  LogPoly out(a.size() + b.size() - 1, Real{a.front().context()});
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

void poly_add_into(LogPoly& a, const LogPoly& b) {
  if (b.size() > a.size()) a.resize(b.size(), Real{b.front().context()});
  for (size_t i = 0; i < b.size(); ++i) a[i] += b[i];
}

}  // namespace

FactorSeries mul(const FactorSeries& a, const FactorSeries& b, int truncate_to) {
  FactorSeries out;
  out.terms.resize(truncate_to);
  for (int i = 0; i < a.length() && i < truncate_to; ++i) {
    if (a.terms[i].empty()) continue;
    for (int j = 0; j < b.length() && i + j < truncate_to; ++j) {
      if (b.terms[j].empty()) continue;
      poly_add_into(out.terms[i + j], poly_mul(a.terms[i], b.terms[j]));
    }
  }
  return out;
}

FactorSeries stirling_central_factor(int count, PrecisionContext ctx) {
  const auto coeffs = central_ratio_expansion(count);
  FactorSeries f;
  f.terms.resize(count);
  for (int j = 0; j < count; ++j) f.terms[j] = {Real{coeffs[j], ctx}};
  return f;
}

FactorSeries harmonic_factor(int count, PrecisionContext ctx) {
  FactorSeries f;
  f.terms.resize(count);
  f.terms[0] = {const_euler_gamma(ctx), Real{1, ctx}};
  if (count > 1) f.terms[1] = {Real{Rational{1, 2}, ctx}};
  for (int j = 2; j < count; j += 2)
    f.terms[j] = {Real{-bernoulli(j) / Rational{j}, ctx}};
  return f;
}

FactorSeries double_harmonic_factor(int count, PrecisionContext ctx) {
  FactorSeries f;
  f.terms.resize(count);
  f.terms[0] = {const_euler_gamma(ctx) + const_ln2(ctx), Real{1, ctx}};
  if (count > 1) f.terms[1] = {Real{Rational{1, 4}, ctx}};
  Rational quarter{1, 4}, scale{1};
  for (int j = 2; j < count; j += 2) {
    scale *= quarter;
    f.terms[j] = {Real{-scale * bernoulli(j) / Rational{j}, ctx}};
  }
  return f;
}

FactorSeries odd_harmonic_factor(int count, PrecisionContext ctx) {
  FactorSeries f;
  f.terms.resize(count);
  f.terms[0] = {const_ln2(ctx) + const_euler_gamma(ctx) / 2, Real{Rational{1, 2}, ctx}};
  Rational quarter{1, 4}, scale{1};
  for (int j = 2; j < count; j += 2) {
    scale *= quarter;
    f.terms[j] = {Real{-(scale - Rational{1, 2}) * bernoulli(j) / Rational{j}, ctx}};
  }
  return f;
}

FactorSeries shifted_inverse_power_factor(const Rational& q, int p, int count,
                                          PrecisionContext ctx) {
  FactorSeries f;
  f.terms.resize(count);
  Rational coeff{1};
  for (int j = 0; j < count; ++j) {
    if (j > 0) {
      // binom(-p, j) q^j  built incrementally
      coeff *= Rational{-(p + j - 1)} * q / Rational{j};
    }
    f.terms[j] = {Real{coeff, ctx}};
  }
  return f;
}

Real series_tail(const Rational& base_exponent, const FactorSeries& factor, const Real& scalar,
                 long a, int em_order, PrecisionContext ctx) {
  Real total{ctx};
  for (int j = 0; j < factor.length(); ++j) {
    const LogPoly& poly = factor.terms[j];
    for (int m = 0; m < static_cast<int>(poly.size()); ++m) {
      if (poly[m].is_zero()) continue;
      total += poly[m] * tail_inv_pow_log(base_exponent + Rational{j}, m, a, em_order, ctx);
    }
  }
  return total * scalar;
}

}  // namespace em
}  // namespace cbsum
