#pragma once

#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cbsum/precision.hpp"
#include "cbsum/rational.hpp"

namespace cbsum {

/// Basis constant: pi, ln 2, zeta(m) for m >= 2, or Li_m(1/2) for m >= 2.
/// Li_1(1/2) is normalized away (it equals ln 2) and zeta(1) is rejected.
class ConstSymbol {
 public:
  enum class Kind { Pi, Ln2, Zeta, LiHalf };

  static ConstSymbol pi() { return {Kind::Pi, 0}; }
  static ConstSymbol ln2() { return {Kind::Ln2, 0}; }
  static ConstSymbol zeta(int m);
  static ConstSymbol li_half(int m);

  Kind kind() const { return kind_; }
  int order() const { return order_; }

  /// Total ordering: Pi < Ln2 < Zeta(2) < Zeta(3) < ... < LiHalf(2) < ...
  long rank() const;

  std::string to_string() const;  // grammar atom: "pi", "ln2", "z4", "Li5"

  friend bool operator==(const ConstSymbol&, const ConstSymbol&) = default;
  friend std::strong_ordering operator<=>(const ConstSymbol& a, const ConstSymbol& b) {
    return a.rank() <=> b.rank();
  }

 private:
  ConstSymbol(Kind k, int m) : kind_(k), order_(m) {}
  Kind kind_;
  int order_;
};

/// coeff * product of symbol^exponent; powers sorted by symbol rank,
/// exponents positive, coeff nonzero (enforced by ClosedForm).
struct Monomial {
  Rational coeff;
  std::vector<std::pair<ConstSymbol, int>> powers;

  bool is_constant() const { return powers.empty(); }
};

/// Exact rational linear combination of monomials over the constant basis,
/// kept in a unique canonical order so structural equality coincides with
/// equality of representations.
class ClosedForm {
 public:
  ClosedForm() = default;
  explicit ClosedForm(std::vector<Monomial> monomials);

  static ClosedForm zero() { return {}; }
  static ClosedForm constant(Rational value);
  static ClosedForm symbol(ConstSymbol s, Rational coeff = Rational{1}, int exponent = 1);

  const std::vector<Monomial>& monomials() const { return monomials_; }
  bool is_zero() const { return monomials_.empty(); }

  friend ClosedForm operator+(const ClosedForm& a, const ClosedForm& b);
  friend ClosedForm operator-(const ClosedForm& a, const ClosedForm& b);
  friend ClosedForm operator*(const Rational& s, const ClosedForm& a);

  bool operator==(const ClosedForm& o) const;

 private:
  void normalize();
  std::vector<Monomial> monomials_;
};

struct ParseError : std::runtime_error {
  ParseError(std::size_t position_, const std::string& message)
      : std::runtime_error("parse error at position " + std::to_string(position_) + ": " +
                           message),
        position(position_) {}
  std::size_t position;
};

/// Grammar (whitespace insignificant):
///   expr   := term (('+'|'-') term)*
///   term   := coeff ('*' factor)* | factor ('*' factor)*
///   factor := atom ('^' uint)?
///   atom   := 'pi' | 'ln2' | 'z'uint | 'Li'uint
///   coeff  := int | int'/'uint
ClosedForm cf_parse(std::string_view text);

/// Canonical text form; cf_parse(cf_format(e)) == e.
std::string cf_format(const ClosedForm& form);

/// Numeric value with each constant computed at ctx.digits + guard.
Real cf_evaluate(const ClosedForm& form, PrecisionContext ctx);

}  // namespace cbsum
