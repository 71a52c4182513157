#pragma once

#include <mpfr.h>

#include <compare>
#include <stdexcept>
#include <string>

#include "cbsum/rational.hpp"

namespace cbsum {

/// Decimal working precision: `digits` requested correct digits plus `guard`
/// internal guard digits.  Every Real carries the context it was produced
/// under; mixed-context arithmetic evaluates at the smaller context.
struct PrecisionContext {
  long digits;
  long guard;

  explicit PrecisionContext(long digits_ = 30, long guard_ = 12)
      : digits(digits_), guard(guard_) {
    if (digits < 10) throw std::invalid_argument("PrecisionContext: digits must be >= 10");
    if (guard < 5) throw std::invalid_argument("PrecisionContext: guard must be >= 5");
  }

  long total_digits() const { return digits + guard; }

  /// Binary working precision covering digits+guard decimal digits.
  mpfr_prec_t bits() const {
    return static_cast<mpfr_prec_t>(static_cast<double>(total_digits()) * 3.3219280948873626) + 8;
  }

  friend bool operator==(const PrecisionContext&, const PrecisionContext&) = default;
};

/// Arbitrary-precision real value bound to a PrecisionContext.
class Real {
 public:
  Real() : ctx_(10, 5) { mpfr_init2(v_, ctx_.bits()); mpfr_set_zero(v_, 1); }

  explicit Real(PrecisionContext ctx) : ctx_(ctx) {
    mpfr_init2(v_, ctx_.bits());
    mpfr_set_zero(v_, 1);
  }

  Real(long value, PrecisionContext ctx) : ctx_(ctx) {
    mpfr_init2(v_, ctx_.bits());
    mpfr_set_si(v_, value, MPFR_RNDN);
  }

  Real(int value, PrecisionContext ctx) : Real(static_cast<long>(value), ctx) {}

  Real(const Rational& value, PrecisionContext ctx) : ctx_(ctx) {
    mpfr_init2(v_, ctx_.bits());
    mpfr_set_q(v_, value.raw(), MPFR_RNDN);
  }

  Real(double value, PrecisionContext ctx) : ctx_(ctx) {
    mpfr_init2(v_, ctx_.bits());
    mpfr_set_d(v_, value, MPFR_RNDN);
  }

  /// Parses a decimal string (e.g. "1e-25" or "3.14") at the given context.
  static Real from_decimal(const std::string& text, PrecisionContext ctx) {
    Real r{ctx};
    if (mpfr_set_str(r.v_, text.c_str(), 10, MPFR_RNDN) != 0)
      throw std::invalid_argument("Real: cannot parse '" + text + "'");
    return r;
  }

  Real(const Real& o) : ctx_(o.ctx_) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }

  Real(Real&& o) noexcept : ctx_(o.ctx_) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }

  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
      ctx_ = o.ctx_;
    }
    return *this;
  }

  Real& operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    ctx_ = o.ctx_;
    return *this;
  }

  ~Real() { mpfr_clear(v_); }

  const PrecisionContext& context() const { return ctx_; }

  friend Real operator+(const Real& a, const Real& b) { return binary(a, b, mpfr_add); }
  friend Real operator-(const Real& a, const Real& b) { return binary(a, b, mpfr_sub); }
  friend Real operator*(const Real& a, const Real& b) { return binary(a, b, mpfr_mul); }
  friend Real operator/(const Real& a, const Real& b) { return binary(a, b, mpfr_div); }

  Real operator-() const {
    Real r{ctx_};
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }

  Real& operator+=(const Real& o) { return *this = *this + o; }
  Real& operator-=(const Real& o) { return *this = *this - o; }
  Real& operator*=(const Real& o) { return *this = *this * o; }
  Real& operator/=(const Real& o) { return *this = *this / o; }

  friend Real operator*(const Real& a, long b) {
    Real r{a.ctx_};
    mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend Real operator/(const Real& a, long b) {
    Real r{a.ctx_};
    mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend Real operator*(const Real& a, const Rational& b) {
    Real r{a.ctx_};
    mpfr_mul_q(r.v_, a.v_, b.raw(), MPFR_RNDN);
    return r;
  }

  friend bool operator==(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) == 0; }
  friend std::partial_ordering operator<=>(const Real& a, const Real& b) {
    if (mpfr_nan_p(a.v_) || mpfr_nan_p(b.v_)) return std::partial_ordering::unordered;
    const int c = mpfr_cmp(a.v_, b.v_);
    return c < 0 ? std::partial_ordering::less
         : c > 0 ? std::partial_ordering::greater
                 : std::partial_ordering::equivalent;
  }

  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }

  Real abs() const {
    Real r{ctx_};
    mpfr_abs(r.v_, v_, MPFR_RNDN);
    return r;
  }

  /// |*this| <= 10^-e
  bool abs_below_pow10(long e) const {
    Real bound{ctx_};
    mpfr_set_ui(bound.v_, 10, MPFR_RNDN);
    mpfr_pow_si(bound.v_, bound.v_, -e, MPFR_RNDN);
    Real a = abs();
    return mpfr_cmp(a.v_, bound.v_) <= 0;
  }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  /// Scientific-notation decimal string with the context's digit count.
  std::string to_string() const { return to_string(ctx_.digits); }

  std::string to_string(long significant) const {
    if (significant < 2) significant = 2;
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Re", static_cast<int>(significant - 1), v_);
    std::string out{s};
    mpfr_free_str(s);
    return out;
  }

  mpfr_srcptr raw() const { return v_; }
  mpfr_ptr mutable_raw() { return v_; }

 private:
  using BinOp = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);

  static Real binary(const Real& a, const Real& b, BinOp op) {
    // Mixed contexts evaluate at the smaller precision and record it.
    const PrecisionContext& ctx = a.ctx_.digits <= b.ctx_.digits ? a.ctx_ : b.ctx_;
    Real r{ctx};
    op(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }

  mpfr_t v_;
  PrecisionContext ctx_;
};

}  // namespace cbsum
