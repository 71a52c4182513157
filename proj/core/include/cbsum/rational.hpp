#pragma once

#include <gmp.h>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cbsum {

/// Exact arbitrary-size rational number, always reduced to lowest terms with
/// a positive denominator.  Thin value-semantic wrapper around GMP's mpq_t.
class Rational {
 public:
  Rational() { mpq_init(q_); }

  Rational(long n) {  // NOLINT(google-explicit-constructor) -- integers embed
    mpq_init(q_);
    mpq_set_si(q_, n, 1);
  }

  Rational(long num, unsigned long den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    mpq_init(q_);
    mpq_set_si(q_, num, den);
    mpq_canonicalize(q_);
  }

  /// Parses "p", "-p" or "p/q" (no whitespace).
  explicit Rational(std::string_view text) {
    mpq_init(q_);
    if (mpq_set_str(q_, std::string(text).c_str(), 10) != 0 ||
        mpz_sgn(mpq_denref(q_)) == 0) {
      mpq_clear(q_);
      throw std::invalid_argument("Rational: cannot parse '" + std::string(text) + "'");
    }
    mpq_canonicalize(q_);
  }

  Rational(const Rational& o) {
    mpq_init(q_);
    mpq_set(q_, o.q_);
  }

  Rational(Rational&& o) noexcept {
    mpq_init(q_);
    mpq_swap(q_, o.q_);
  }

  Rational& operator=(const Rational& o) {
    if (this != &o) mpq_set(q_, o.q_);
    return *this;
  }

  Rational& operator=(Rational&& o) noexcept {
    mpq_swap(q_, o.q_);
    return *this;
  }

  ~Rational() { mpq_clear(q_); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    Rational r;
    mpq_add(r.q_, a.q_, b.q_);
    return r;
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    Rational r;
    mpq_sub(r.q_, a.q_, b.q_);
    return r;
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    Rational r;
    mpq_mul(r.q_, a.q_, b.q_);
    return r;
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::domain_error("Rational: division by zero");
    Rational r;
    mpq_div(r.q_, a.q_, b.q_);
    return r;
  }
  Rational operator-() const {
    Rational r;
    mpq_neg(r.q_, q_);
    return r;
  }

  Rational& operator+=(const Rational& o) {
    mpq_add(q_, q_, o.q_);
    return *this;
  }
  Rational& operator-=(const Rational& o) {
    mpq_sub(q_, q_, o.q_);
    return *this;
  }
  Rational& operator*=(const Rational& o) {
    mpq_mul(q_, q_, o.q_);
    return *this;
  }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    mpq_div(q_, q_, o.q_);
    return *this;
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return mpq_equal(a.q_, b.q_) != 0;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = mpq_cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
         : c > 0 ? std::strong_ordering::greater
                 : std::strong_ordering::equal;
  }

  int sign() const { return mpq_sgn(q_); }
  bool is_zero() const { return mpq_sgn(q_) == 0; }
  bool is_integer() const { return mpz_cmp_ui(mpq_denref(q_), 1) == 0; }

  Rational abs() const {
    Rational r;
    mpq_abs(r.q_, q_);
    return r;
  }

  Rational inverse() const {
    if (is_zero()) throw std::domain_error("Rational: inverse of zero");
    Rational r;
    mpq_inv(r.q_, q_);
    return r;
  }

  Rational pow(unsigned long e) const {
    Rational r{1};
    mpz_pow_ui(mpq_numref(r.q_), mpq_numref(q_), e);
    mpz_pow_ui(mpq_denref(r.q_), mpq_denref(q_), e);
    return r;  // powers of a canonical rational stay canonical
  }

  /// "p" for integers, otherwise "p/q".
  std::string to_string() const {
    char* s = mpq_get_str(nullptr, 10, q_);
    std::string out{s};
    void (*freef)(void*, size_t);
    mp_get_memory_functions(nullptr, nullptr, &freef);
    freef(s, out.size() + 1);
    return out;
  }

  double to_double() const { return mpq_get_d(q_); }

  mpq_srcptr raw() const { return q_; }
  mpq_ptr mutable_raw() { return q_; }

 private:
  mpq_t q_;
};

}  // namespace cbsum
