#include "cbsum/series.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "cbsum/constants.hpp"
#include "cbsum/euler_maclaurin.hpp"
#include "cbsum/sequences.hpp"

namespace cbsum {

namespace {

// Unified internal kernel: the public families plus the shifted oracles.
struct Kernel {
  enum class K {
    S, L, V, Z, W, LinH, LinOdd, Mix, Alt, WeightH2k, SqH2k, OddSq,
    CShiftSq, HcShift, HSqCube,
  };
  K k;
  int n = 0;
  long q = 0;

  bool needs_h2() const { return k == K::WeightH2k || k == K::SqH2k; }
  bool alternating() const { return k == K::Alt; }
};

Kernel to_kernel(const SeriesFamily& f) {
  using K = Kernel::K;
  switch (f.tag) {
    case FamilyTag::S: return {K::S, f.n};
    case FamilyTag::L: return {K::L, f.n};
    case FamilyTag::V: return {K::V, f.n};
    case FamilyTag::Z: return {K::Z, f.n};
    case FamilyTag::W: return {K::W, f.n};
    case FamilyTag::LinH: return {K::LinH, f.n};
    case FamilyTag::LinOddH: return {K::LinOdd, f.n};
    case FamilyTag::MixHOddH3: return {K::Mix, 3};
    case FamilyTag::AltHSq3: return {K::Alt, 3};
    case FamilyTag::WeightedH2k: return {K::WeightH2k, 3};
    case FamilyTag::SqH2k: return {K::SqH2k, 3};
    case FamilyTag::OddHSq3: return {K::OddSq, 3};
  }
  throw std::logic_error("unreachable family tag");
}

Kernel to_kernel(const ShiftedKernel& s) {
  using K = Kernel::K;
  switch (s.kind) {
    case ShiftedKernel::Kind::CentralOverShiftSq: return {K::CShiftSq, 2, s.shift};
    case ShiftedKernel::Kind::OddHCentralOverShift: return {K::HcShift, 1, s.shift};
    case ShiftedKernel::Kind::HSqOverCube: return {K::HSqCube, 3, 0};
  }
  throw std::logic_error("unreachable kernel kind");
}

Rational int_pow(long base, int e) {
  Rational r{base};
  return r.pow(static_cast<unsigned long>(e));
}

// ---------------------------------------------------------------- exact terms

Rational exact_term(const Kernel& ker, const SequenceStream& st) {
  using K = Kernel::K;
  const long k = st.k();
  switch (ker.k) {
    case K::S: return st.c() / int_pow(k, ker.n);
    case K::L: return st.c() / int_pow(2 * k + 1, ker.n);
    case K::V: return st.h() * st.c() / int_pow(k, ker.n);
    case K::Z: return st.h() * st.c() / int_pow(2 * k - 1, ker.n);
    case K::W: return st.h() * st.h() / int_pow(k, 2 * ker.n);
    case K::LinH: return st.H() / int_pow(k, ker.n);
    case K::LinOdd: return st.h() / int_pow(k, ker.n);
    case K::Mix: return st.H() * st.h() / int_pow(k, 3);
    case K::Alt: {
      Rational t = st.H() * st.H() / int_pow(k, 3);
      return (k % 2 == 0) ? -t : t;
    }
    case K::WeightH2k: return st.H() * st.H2() / int_pow(2 * k, 3);
    case K::SqH2k: return st.H2() * st.H2() / int_pow(k, 3);
    case K::OddSq: return st.h() * st.h() / int_pow(k, 3);
    case K::CShiftSq: return st.c() / int_pow(k + ker.q, 2);
    case K::HcShift: return st.h() * st.c() / int_pow(k + ker.q, 1);
    case K::HSqCube: return st.H() * st.H() / int_pow(k, 3);
  }
  throw std::logic_error("unreachable kernel");
}

Rational exact_partial_sum(const Kernel& ker, long K) {
  if (K < 0) throw std::invalid_argument("partial_sum: K must be >= 0");
  SequenceStream st{ker.needs_h2()};
  Rational total{0}, chunk{0};
  for (long k = 1; k <= K; ++k) {
    st.advance();
    chunk += exact_term(ker, st);
    if (k % 128 == 0) {
      total += chunk;
      chunk = Rational{0};
    }
  }
  return total + chunk;
}

// --------------------------------------------------------------- float stream

struct FloatStream {
  mpfr_prec_t prec;
  bool with_h2;
  long k = 0;
  mpfr_t c, H, h, H2, t1, t2;

  FloatStream(mpfr_prec_t p, bool h2) : prec(p), with_h2(h2) {
    mpfr_inits2(prec, c, H, h, H2, t1, t2, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_ui(c, 1, MPFR_RNDN);
    mpfr_set_zero(H, 1);
    mpfr_set_zero(h, 1);
    mpfr_set_zero(H2, 1);
  }
  ~FloatStream() { mpfr_clears(c, H, h, H2, t1, t2, static_cast<mpfr_ptr>(nullptr)); }

  void advance() {
    ++k;
    mpfr_mul_ui(c, c, static_cast<unsigned long>(2 * k - 1), MPFR_RNDN);
    mpfr_div_ui(c, c, static_cast<unsigned long>(2 * k), MPFR_RNDN);
    mpfr_set_ui(t1, 1, MPFR_RNDN);
    mpfr_div_ui(t1, t1, static_cast<unsigned long>(k), MPFR_RNDN);
    mpfr_add(H, H, t1, MPFR_RNDN);
    mpfr_set_ui(t1, 1, MPFR_RNDN);
    mpfr_div_ui(t1, t1, static_cast<unsigned long>(2 * k - 1), MPFR_RNDN);
    mpfr_add(h, h, t1, MPFR_RNDN);
    if (with_h2) {
      mpfr_add(H2, H2, t1, MPFR_RNDN);
      mpfr_set_ui(t1, 1, MPFR_RNDN);
      mpfr_div_ui(t1, t1, static_cast<unsigned long>(2 * k), MPFR_RNDN);
      mpfr_add(H2, H2, t1, MPFR_RNDN);
    }
  }

  // writes the k-th summand into `out`
  void term_value(const Kernel& ker, mpfr_ptr out) {
    using K = Kernel::K;
    switch (ker.k) {
      case K::S:
        mpfr_ui_pow_ui(t2, static_cast<unsigned long>(k), static_cast<unsigned long>(ker.n), MPFR_RNDN);
        mpfr_div(out, c, t2, MPFR_RNDN);
        return;
      case K::L:
        mpfr_ui_pow_ui(t2, static_cast<unsigned long>(2 * k + 1), static_cast<unsigned long>(ker.n), MPFR_RNDN);
        mpfr_div(out, c, t2, MPFR_RNDN);
        return;
      case K::V:
        mpfr_ui_pow_ui(t2, static_cast<unsigned long>(k), static_cast<unsigned long>(ker.n), MPFR_RNDN);
        mpfr_mul(out, h, c, MPFR_RNDN);
        mpfr_div(out, out, t2, MPFR_RNDN);
        return;
      case K::Z:
        mpfr_ui_pow_ui(t2, static_cast<unsigned long>(2 * k - 1), static_cast<unsigned long>(ker.n), MPFR_RNDN);
        mpfr_mul(out, h, c, MPFR_RNDN);
        mpfr_div(out, out, t2, MPFR_RNDN);
        return;
      case K::W:
        mpfr_ui_pow_ui(t2, static_cast<unsigned long>(k), static_cast<unsigned long>(2 * ker.n), MPFR_RNDN);
        mpfr_sqr(out, h, MPFR_RNDN);
        mpfr_div(out, out, t2, MPFR_RNDN);
        return;
      case K::LinH:
        mpfr_ui_pow_ui(t2, static_cast<unsigned long>(k), static_cast<unsigned long>(ker.n), MPFR_RNDN);
        mpfr_div(out, H, t2, MPFR_RNDN);
        return;
      case K::LinOdd:
        mpfr_ui_pow_ui(t2, static_cast<unsigned long>(k), static_cast<unsigned long>(ker.n), MPFR_RNDN);
        mpfr_div(out, h, t2, MPFR_RNDN);
        return;
      case K::Mix:
        mpfr_ui_pow_ui(t2, static_cast<unsigned long>(k), 3, MPFR_RNDN);
        mpfr_mul(out, H, h, MPFR_RNDN);
        mpfr_div(out, out, t2, MPFR_RNDN);
        return;
      case K::Alt:
        mpfr_ui_pow_ui(t2, static_cast<unsigned long>(k), 3, MPFR_RNDN);
        mpfr_sqr(out, H, MPFR_RNDN);
        mpfr_div(out, out, t2, MPFR_RNDN);
        if (k % 2 == 0) mpfr_neg(out, out, MPFR_RNDN);
        return;
      case K::WeightH2k:
        mpfr_ui_pow_ui(t2, static_cast<unsigned long>(2 * k), 3, MPFR_RNDN);
        mpfr_mul(out, H, H2, MPFR_RNDN);
        mpfr_div(out, out, t2, MPFR_RNDN);
        return;
      case K::SqH2k:
        mpfr_ui_pow_ui(t2, static_cast<unsigned long>(k), 3, MPFR_RNDN);
        mpfr_sqr(out, H2, MPFR_RNDN);
        mpfr_div(out, out, t2, MPFR_RNDN);
        return;
      case K::OddSq:
        mpfr_ui_pow_ui(t2, static_cast<unsigned long>(k), 3, MPFR_RNDN);
        mpfr_sqr(out, h, MPFR_RNDN);
        mpfr_div(out, out, t2, MPFR_RNDN);
        return;
      case K::CShiftSq:
        mpfr_ui_pow_ui(t2, static_cast<unsigned long>(k + ker.q), 2, MPFR_RNDN);
        mpfr_div(out, c, t2, MPFR_RNDN);
        return;
      case K::HcShift:
        mpfr_mul(out, h, c, MPFR_RNDN);
        mpfr_div_ui(out, out, static_cast<unsigned long>(k + ker.q), MPFR_RNDN);
        return;
      case K::HSqCube:
        mpfr_ui_pow_ui(t2, static_cast<unsigned long>(k), 3, MPFR_RNDN);
        mpfr_sqr(out, H, MPFR_RNDN);
        mpfr_div(out, out, t2, MPFR_RNDN);
        return;
    }
  }
};

// ------------------------------------------------------------ tail expansion

struct Expansion {
  Rational base;
  Real scalar;
  em::FactorSeries factor;
};

Real inv_sqrt_pi(PrecisionContext ctx) {
  Real pi = const_pi(ctx);
  Real r{ctx};
  mpfr_sqrt(r.mutable_raw(), pi.raw(), MPFR_RNDN);
  mpfr_ui_div(r.mutable_raw(), 1, r.raw(), MPFR_RNDN);
  return r;
}

Expansion build_expansion(const Kernel& ker, int J, PrecisionContext ctx) {
  using K = Kernel::K;
  const Rational half{1, 2};
  switch (ker.k) {
    case K::S:
      return {Rational{ker.n} + half, inv_sqrt_pi(ctx), em::stirling_central_factor(J, ctx)};
    case K::L: {
      Real sc = inv_sqrt_pi(ctx) * half.pow(ker.n);
      auto f = em::mul(em::stirling_central_factor(J, ctx),
                       em::shifted_inverse_power_factor(half, ker.n, J, ctx), J);
      return {Rational{ker.n} + half, sc, std::move(f)};
    }
    case K::V: {
      auto f = em::mul(em::stirling_central_factor(J, ctx), em::odd_harmonic_factor(J, ctx), J);
      return {Rational{ker.n} + half, inv_sqrt_pi(ctx), std::move(f)};
    }
    case K::Z: {
      Real sc = inv_sqrt_pi(ctx) * half.pow(ker.n);
      auto f = em::mul(em::stirling_central_factor(J, ctx), em::odd_harmonic_factor(J, ctx), J);
      f = em::mul(f, em::shifted_inverse_power_factor(-half, ker.n, J, ctx), J);
      return {Rational{ker.n} + half, sc, std::move(f)};
    }
    case K::W: {
      auto oh = em::odd_harmonic_factor(J, ctx);
      return {Rational{2 * ker.n}, Real{1, ctx}, em::mul(oh, oh, J)};
    }
    case K::LinH:
      return {Rational{ker.n}, Real{1, ctx}, em::harmonic_factor(J, ctx)};
    case K::LinOdd:
      return {Rational{ker.n}, Real{1, ctx}, em::odd_harmonic_factor(J, ctx)};
    case K::Mix: {
      auto f = em::mul(em::harmonic_factor(J, ctx), em::odd_harmonic_factor(J, ctx), J);
      return {Rational{3}, Real{1, ctx}, std::move(f)};
    }
    case K::WeightH2k: {
      auto f = em::mul(em::harmonic_factor(J, ctx), em::double_harmonic_factor(J, ctx), J);
      return {Rational{3}, Real{Rational{1, 8}, ctx}, std::move(f)};
    }
    case K::SqH2k: {
      auto dh = em::double_harmonic_factor(J, ctx);
      return {Rational{3}, Real{1, ctx}, em::mul(dh, dh, J)};
    }
    case K::OddSq: {
      auto oh = em::odd_harmonic_factor(J, ctx);
      return {Rational{3}, Real{1, ctx}, em::mul(oh, oh, J)};
    }
    case K::HSqCube: {
      auto hf = em::harmonic_factor(J, ctx);
      return {Rational{3}, Real{1, ctx}, em::mul(hf, hf, J)};
    }
    case K::CShiftSq: {
      auto f = em::mul(em::stirling_central_factor(J, ctx),
                       em::shifted_inverse_power_factor(Rational{ker.q}, 2, J, ctx), J);
      return {Rational{2} + half, inv_sqrt_pi(ctx), std::move(f)};
    }
    case K::HcShift: {
      auto f = em::mul(em::stirling_central_factor(J, ctx), em::odd_harmonic_factor(J, ctx), J);
      f = em::mul(f, em::shifted_inverse_power_factor(Rational{ker.q}, 1, J, ctx), J);
      return {Rational{1} + half, inv_sqrt_pi(ctx), std::move(f)};
    }
    case K::Alt:
      break;
  }
  throw std::logic_error("build_expansion: alternating kernel has no direct expansion");
}

int pick_expansion_length(long a, long target_digits) {
  const double per_term = std::log10(static_cast<double>(a));
  int J = static_cast<int>(static_cast<double>(target_digits) / per_term) + 8;
  return std::clamp(J, 10, 48);
}

Real round_to(PrecisionContext ctx, const Real& x) {
  Real out{ctx};
  mpfr_set(out.mutable_raw(), x.raw(), MPFR_RNDN);
  return out;
}

PrecisionContext working_context(PrecisionContext ctx, long cutoff) {
  const long extra = 10 + static_cast<long>(std::log10(static_cast<double>(std::max<long>(cutoff, 10))));
  return PrecisionContext{ctx.digits + ctx.guard + extra, 8};
}

double default_tol(PrecisionContext ctx) {
  return std::pow(10.0, -static_cast<double>(ctx.digits - 5));
}

struct KernelRuns {
  Real v1, v2, tail2;
  long terms = 0;
};

// Direct sum to the cutoff plus Euler-Maclaurin tail, at (K0, em) and
// (2 K0, em+2).
KernelRuns run_kernel(const Kernel& ker, PrecisionContext wctx, const EvalOptions& opts) {
  const long K0 = opts.cutoff;
  const mpfr_prec_t prec = wctx.bits();

  FloatStream st{prec, ker.needs_h2()};
  mpfr_t acc, term;
  mpfr_inits2(prec, acc, term, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_zero(acc, 1);
  Real direct1{wctx};
  for (long k = 1; k <= 2 * K0; ++k) {
    st.advance();
    st.term_value(ker, term);
    mpfr_add(acc, acc, term, MPFR_RNDN);
    if (k == K0) mpfr_set(direct1.mutable_raw(), acc, MPFR_RNDN);
  }
  Real direct2{wctx};
  mpfr_set(direct2.mutable_raw(), acc, MPFR_RNDN);
  mpfr_clears(acc, term, static_cast<mpfr_ptr>(nullptr));

  const int J1 = pick_expansion_length(K0 + 1, wctx.total_digits());
  const int J2 = pick_expansion_length(2 * K0 + 1, wctx.total_digits());
  Expansion e1 = build_expansion(ker, J1, wctx);
  Expansion e2 = (J1 == J2) ? e1 : build_expansion(ker, J2, wctx);

  Real tail1 = em::series_tail(e1.base, e1.factor, e1.scalar, K0 + 1, opts.em_order, wctx);
  Real tail2 = em::series_tail(e2.base, e2.factor, e2.scalar, 2 * K0 + 1, opts.em_order + 2, wctx);

  return {direct1 + tail1, direct2 + tail2, tail2.abs(), 2 * K0};
}

EvalResult finish(const KernelRuns& runs, PrecisionContext ctx, double tol) {
  EvalResult out{Real{ctx}, runs.terms, Real{ctx}, false, Real{ctx}};
  out.value = round_to(ctx, runs.v2);
  out.tail_estimate = round_to(ctx, runs.tail2);
  out.self_error = round_to(ctx, (runs.v1 - runs.v2).abs());
  out.converged = mpfr_cmp_d(out.self_error.raw(), tol) <= 0;
  return out;
}

EvalResult evaluate_kernel(const Kernel& ker, PrecisionContext ctx, EvalOptions opts) {
  opts.validate();
  const double tol = opts.tol.value_or(default_tol(ctx));
  const PrecisionContext wctx = working_context(ctx, opts.cutoff);

  if (ker.alternating()) {
    // Plain evaluation of the alternating sum goes through the exact
    // even/odd split: sum (-1)^(k-1) a_k = sum a_k - 1/4 sum H_2k^2/k^3.
    KernelRuns full = run_kernel({Kernel::K::HSqCube, 3, 0}, wctx, opts);
    KernelRuns even = run_kernel({Kernel::K::SqH2k, 3, 0}, wctx, opts);
    Real quarter{Rational{1, 4}, wctx};
    KernelRuns combined{full.v1 - quarter * even.v1, full.v2 - quarter * even.v2,
                        (full.tail2 - quarter * even.tail2).abs(), full.terms};
    return finish(combined, ctx, tol);
  }
  return finish(run_kernel(ker, wctx, opts), ctx, tol);
}

// ------------------------------------------------------------- tail brackets

struct LinearEnv {  // a + b ln k
  Real a;
  Rational b;
};

struct EnvTerm {
  Real coeff;
  Rational s;
  int m;
};

void push_linear(std::vector<EnvTerm>& out, const Real& scale, const LinearEnv& e,
                 const Rational& s) {
  out.push_back({scale * e.a, s, 0});
  out.push_back({scale * Real{e.b, scale.context()}, s, 1});
}

void push_product(std::vector<EnvTerm>& out, const Real& scale, const LinearEnv& x,
                  const LinearEnv& y, const Rational& s) {
  const PrecisionContext ctx = scale.context();
  out.push_back({scale * (x.a * y.a), s, 0});
  out.push_back({scale * (x.a * Real{y.b, ctx} + y.a * Real{x.b, ctx}), s, 1});
  out.push_back({scale * (Real{x.b, ctx} * Real{y.b, ctx}), s, 2});
}

struct EnvelopePair {
  std::vector<EnvTerm> upper, lower;
};

EnvelopePair build_envelopes(const Kernel& ker, long K, PrecisionContext wctx) {
  using K_ = Kernel::K;
  const Real gamma = const_euler_gamma(wctx);
  const Real ln2 = const_ln2(wctx);
  const Real isp = inv_sqrt_pi(wctx);
  const Rational half{1, 2};

  // c_K sqrt(K): lower envelope constant for c_k, k >= K
  Real cK{central_ratio(K), wctx};
  Real sqrtK{wctx};
  mpfr_sqrt_ui(sqrtK.mutable_raw(), static_cast<unsigned long>(K), MPFR_RNDN);
  const Real c_lo = cK * sqrtK;

  const Real inv2K = Real{Rational{1, static_cast<unsigned long>(2 * K)}, wctx};
  const Real inv4K = Real{Rational{1, static_cast<unsigned long>(4 * K)}, wctx};
  const Real invK2_24 = Real{Rational{1, static_cast<unsigned long>(24 * K * K)}, wctx};
  const Real invK2_48 = Real{Rational{1, static_cast<unsigned long>(48 * K * K)}, wctx};

  const LinearEnv Hu{gamma + inv2K, Rational{1}};
  const LinearEnv Hl{gamma, Rational{1}};
  const LinearEnv hu{ln2 + gamma / 2 + invK2_24, half};
  const LinearEnv hl{ln2 + gamma / 2 - invK2_48, half};
  const LinearEnv H2u{ln2 + gamma + inv4K, Rational{1}};
  const LinearEnv H2l{ln2 + gamma, Rational{1}};

  // (1 + r/K)^-p lower slack factors
  auto shrink = [&](const Rational& r, int p) {
    Real base{Rational{1} + r / Rational{K}, wctx};
    Real out{1, wctx};
    mpfr_pow_si(out.mutable_raw(), base.raw(), -p, MPFR_RNDN);
    return out;
  };

  EnvelopePair env;
  const Rational n{ker.n};
  switch (ker.k) {
    case K_::S:
      env.upper.push_back({isp, n + half, 0});
      env.lower.push_back({c_lo, n + half, 0});
      break;
    case K_::L: {
      const Real scale_n = Real{half.pow(ker.n), wctx};
      env.upper.push_back({isp * scale_n, n + half, 0});
      env.lower.push_back({c_lo * scale_n * shrink(half, ker.n), n + half, 0});
      break;
    }
    case K_::Z: {
      const Real scale_n = Real{half.pow(ker.n), wctx};
      // (2k-1)^-n <= (2k)^-n (1 - 1/(2K))^-n ; >= (2k)^-n
      push_linear(env.upper, isp * scale_n * shrink(-half, ker.n), hu, n + half);
      push_linear(env.lower, c_lo * scale_n, hl, n + half);
      break;
    }
    case K_::V:
      push_linear(env.upper, isp, hu, n + half);
      push_linear(env.lower, c_lo, hl, n + half);
      break;
    case K_::W:
      push_product(env.upper, Real{1, wctx}, hu, hu, Rational{2 * ker.n});
      push_product(env.lower, Real{1, wctx}, hl, hl, Rational{2 * ker.n});
      break;
    case K_::LinH:
      push_linear(env.upper, Real{1, wctx}, Hu, n);
      push_linear(env.lower, Real{1, wctx}, Hl, n);
      break;
    case K_::LinOdd:
      push_linear(env.upper, Real{1, wctx}, hu, n);
      push_linear(env.lower, Real{1, wctx}, hl, n);
      break;
    case K_::Mix:
      push_product(env.upper, Real{1, wctx}, Hu, hu, Rational{3});
      push_product(env.lower, Real{1, wctx}, Hl, hl, Rational{3});
      break;
    case K_::WeightH2k:
      push_product(env.upper, Real{Rational{1, 8}, wctx}, Hu, H2u, Rational{3});
      push_product(env.lower, Real{Rational{1, 8}, wctx}, Hl, H2l, Rational{3});
      break;
    case K_::SqH2k:
      push_product(env.upper, Real{1, wctx}, H2u, H2u, Rational{3});
      push_product(env.lower, Real{1, wctx}, H2l, H2l, Rational{3});
      break;
    case K_::OddSq:
      push_product(env.upper, Real{1, wctx}, hu, hu, Rational{3});
      push_product(env.lower, Real{1, wctx}, hl, hl, Rational{3});
      break;
    case K_::HSqCube:
      push_product(env.upper, Real{1, wctx}, Hu, Hu, Rational{3});
      push_product(env.lower, Real{1, wctx}, Hl, Hl, Rational{3});
      break;
    case K_::CShiftSq:
      env.upper.push_back({isp, Rational{2} + half, 0});
      env.lower.push_back({c_lo * shrink(Rational{ker.q}, 2), Rational{2} + half, 0});
      break;
    case K_::HcShift:
      push_linear(env.upper, isp, hu, Rational{1} + half);
      push_linear(env.lower, c_lo * shrink(Rational{ker.q}, 1), hl, Rational{1} + half);
      break;
    case K_::Alt:
      throw std::invalid_argument("tail_bracket: alternating family has no monotone envelope");
  }
  return env;
}

TailBracket bracket_kernel(const Kernel& ker, long K, PrecisionContext ctx) {
  if (ker.alternating())
    throw std::invalid_argument("tail_bracket: alternating family has no monotone envelope");
  if (K < 0) throw std::invalid_argument("tail_bracket: K must be >= 0");

  const PrecisionContext wctx{ctx.digits + ctx.guard + 8, 8};
  constexpr long kMinBase = 16;

  Rational head{0};
  long base = K;
  if (K < kMinBase) {
    SequenceStream st{ker.needs_h2()};
    for (long k = 1; k <= kMinBase; ++k) {
      st.advance();
      if (k > K) head += exact_term(ker, st);
    }
    base = kMinBase;
  }

  EnvelopePair env = build_envelopes(ker, base, wctx);
  Real upper{wctx}, lower{wctx};
  const Real at_base{base, wctx};
  const Real at_next{base + 1, wctx};
  for (const auto& t : env.upper) upper += t.coeff * integral_inv_pow_log(t.s, t.m, at_base);
  for (const auto& t : env.lower) lower += t.coeff * integral_inv_pow_log(t.s, t.m, at_next);

  // Widen marginally so final rounding cannot flip containment; the envelope
  // slack is many orders larger than this.
  Real widen = upper.abs() * Real{std::pow(10.0, -static_cast<double>(ctx.total_digits())), wctx};
  Real head_r{head, wctx};
  TailBracket out{Real{ctx}, Real{ctx}};
  out.lower = round_to(ctx, head_r + lower - widen);
  out.upper = round_to(ctx, head_r + upper + widen);
  return out;
}

}  // namespace

// ------------------------------------------------------------------ families

bool family_has_order(FamilyTag tag) {
  switch (tag) {
    case FamilyTag::S:
    case FamilyTag::L:
    case FamilyTag::V:
    case FamilyTag::Z:
    case FamilyTag::W:
    case FamilyTag::LinH:
    case FamilyTag::LinOddH:
      return true;
    default:
      return false;
  }
}

SeriesFamily::SeriesFamily(FamilyTag tag_, int n_) : tag(tag_), n(n_) {
  if (!family_has_order(tag)) {
    n = 0;
    return;
  }
  const int min_n = (tag == FamilyTag::LinH || tag == FamilyTag::LinOddH) ? 2 : 1;
  if (n < min_n)
    throw std::invalid_argument("series order n=" + std::to_string(n) + " below minimum " +
                                std::to_string(min_n));
}

std::string SeriesFamily::id() const {
  switch (tag) {
    case FamilyTag::S: return "s:" + std::to_string(n);
    case FamilyTag::L: return "l:" + std::to_string(n);
    case FamilyTag::V: return "v:" + std::to_string(n);
    case FamilyTag::Z: return "z:" + std::to_string(n);
    case FamilyTag::W: return "w:" + std::to_string(n);
    case FamilyTag::LinH: return "lin-H:" + std::to_string(n);
    case FamilyTag::LinOddH: return "lin-h:" + std::to_string(n);
    case FamilyTag::MixHOddH3: return "mix-Hh-k3";
    case FamilyTag::AltHSq3: return "alt-H2-k3";
    case FamilyTag::WeightedH2k: return "H-H2k-w";
    case FamilyTag::SqH2k: return "H2k-sq-k3";
    case FamilyTag::OddHSq3: return "h-sq-k3";
  }
  return "?";
}

std::optional<SeriesFamily> SeriesFamily::from_id(const std::string& id) {
  const auto colon = id.find(':');
  try {
    if (colon == std::string::npos) {
      if (id == "mix-Hh-k3") return SeriesFamily::fixed(FamilyTag::MixHOddH3);
      if (id == "alt-H2-k3") return SeriesFamily::fixed(FamilyTag::AltHSq3);
      if (id == "H-H2k-w") return SeriesFamily::fixed(FamilyTag::WeightedH2k);
      if (id == "H2k-sq-k3") return SeriesFamily::fixed(FamilyTag::SqH2k);
      if (id == "h-sq-k3") return SeriesFamily::fixed(FamilyTag::OddHSq3);
      return std::nullopt;
    }
    const std::string tag = id.substr(0, colon);
    const int n = std::stoi(id.substr(colon + 1));
    if (tag == "s") return SeriesFamily::s(n);
    if (tag == "l") return SeriesFamily::l(n);
    if (tag == "v") return SeriesFamily::v(n);
    if (tag == "z") return SeriesFamily::z(n);
    if (tag == "w") return SeriesFamily::w(n);
    if (tag == "lin-H") return SeriesFamily::lin_H(n);
    if (tag == "lin-h") return SeriesFamily::lin_h(n);
  } catch (const std::exception&) {
    return std::nullopt;
  }
  return std::nullopt;
}

void EvalOptions::validate() const {
  if (cutoff < 100) throw std::invalid_argument("EvalOptions: cutoff must be >= 100");
  if (em_order < 2) throw std::invalid_argument("EvalOptions: em_order must be >= 2");
  if (tol && *tol <= 0.0) throw std::invalid_argument("EvalOptions: tol must be positive");
}

Rational term(const SeriesFamily& family, long k) {
  if (k < 1) throw std::invalid_argument("term: k must be >= 1");
  const Kernel ker = to_kernel(family);
  SequenceTable& tab = SequenceTable::shared();
  using K = Kernel::K;
  switch (ker.k) {
    case K::S: return tab.central(k) / int_pow(k, ker.n);
    case K::L: return tab.central(k) / int_pow(2 * k + 1, ker.n);
    case K::V: return tab.odd_harm(k) * tab.central(k) / int_pow(k, ker.n);
    case K::Z: return tab.odd_harm(k) * tab.central(k) / int_pow(2 * k - 1, ker.n);
    case K::W: return tab.odd_harm(k) * tab.odd_harm(k) / int_pow(k, 2 * ker.n);
    case K::LinH: return tab.harm(k) / int_pow(k, ker.n);
    case K::LinOdd: return tab.odd_harm(k) / int_pow(k, ker.n);
    case K::Mix: return tab.harm(k) * tab.odd_harm(k) / int_pow(k, 3);
    case K::Alt: {
      Rational t = tab.harm(k) * tab.harm(k) / int_pow(k, 3);
      return (k % 2 == 0) ? -t : t;
    }
    case K::WeightH2k: return tab.harm(k) * tab.harm(2 * k) / int_pow(2 * k, 3);
    case K::SqH2k: return tab.harm(2 * k) * tab.harm(2 * k) / int_pow(k, 3);
    case K::OddSq: return tab.odd_harm(k) * tab.odd_harm(k) / int_pow(k, 3);
    default: break;
  }
  throw std::logic_error("term: unreachable");
}

Rational term_at(const SeriesFamily& family, const SequenceStream& position) {
  if (position.k() < 1) throw std::invalid_argument("term_at: stream not advanced");
  return exact_term(to_kernel(family), position);
}

Rational partial_sum(const SeriesFamily& family, long K) {
  return exact_partial_sum(to_kernel(family), K);
}

EvalResult evaluate(const SeriesFamily& family, PrecisionContext ctx, EvalOptions opts) {
  return evaluate_kernel(to_kernel(family), ctx, opts);
}

EvalResult evaluate_alternating(const SeriesFamily& family, PrecisionContext ctx,
                                EvalOptions opts) {
  if (!family.alternating())
    throw std::invalid_argument("evaluate_alternating: kernel is not alternating");
  opts.validate();
  const double tol = opts.tol.value_or(default_tol(ctx));
  const PrecisionContext wctx = working_context(ctx, opts.cutoff);
  const mpfr_prec_t prec = wctx.bits();
  const Kernel ker = to_kernel(family);

  const long M = std::max<long>(40, wctx.total_digits());
  const long K0 = opts.cutoff;

  FloatStream st{prec, false};
  mpfr_t acc, term;
  mpfr_inits2(prec, acc, term, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_zero(acc, 1);
  std::vector<Real> partials;  // S_{K0} .. S_{K0+2M}
  partials.reserve(2 * M + 1);
  for (long k = 1; k <= K0 + 2 * M; ++k) {
    st.advance();
    st.term_value(ker, term);
    mpfr_add(acc, acc, term, MPFR_RNDN);
    if (k >= K0) {
      Real p{wctx};
      mpfr_set(p.mutable_raw(), acc, MPFR_RNDN);
      partials.push_back(p);
    }
  }
  mpfr_clears(acc, term, static_cast<mpfr_ptr>(nullptr));

  auto folded = [&](long order) {
    std::vector<Real> s(partials.begin(), partials.begin() + order + 1);
    for (long len = order + 1; len > 1; --len)
      for (long i = 0; i + 1 < len; ++i) s[i] = (s[i] + s[i + 1]) / 2;
    return s[0];
  };

  const Real v1 = folded(M);
  const Real v2 = folded(2 * M);

  EvalResult out{Real{ctx}, K0 + 2 * M, Real{ctx}, false, Real{ctx}};
  out.value = round_to(ctx, v2);
  out.self_error = round_to(ctx, (v1 - v2).abs());
  out.tail_estimate = round_to(ctx, (v2 - partials[0]).abs());
  out.converged = mpfr_cmp_d(out.self_error.raw(), tol) <= 0;
  return out;
}

TailBracket tail_bracket(const SeriesFamily& family, long K, PrecisionContext ctx) {
  return bracket_kernel(to_kernel(family), K, ctx);
}

// ------------------------------------------------------------ shifted kernels

Rational term(const ShiftedKernel& kernel, long k) {
  if (k < 1) throw std::invalid_argument("term: k must be >= 1");
  const Kernel ker = to_kernel(kernel);
  SequenceTable& tab = SequenceTable::shared();
  using K = Kernel::K;
  switch (ker.k) {
    case K::CShiftSq: return tab.central(k) / int_pow(k + ker.q, 2);
    case K::HcShift: return tab.odd_harm(k) * tab.central(k) / int_pow(k + ker.q, 1);
    case K::HSqCube: return tab.harm(k) * tab.harm(k) / int_pow(k, 3);
    default: break;
  }
  throw std::logic_error("term: unreachable");
}

Rational partial_sum(const ShiftedKernel& kernel, long K) {
  return exact_partial_sum(to_kernel(kernel), K);
}

EvalResult evaluate(const ShiftedKernel& kernel, PrecisionContext ctx, EvalOptions opts) {
  return evaluate_kernel(to_kernel(kernel), ctx, opts);
}

TailBracket tail_bracket(const ShiftedKernel& kernel, long K, PrecisionContext ctx) {
  return bracket_kernel(to_kernel(kernel), K, ctx);
}

}  // namespace cbsum
