#include "cbsum/closed_form.hpp"

#include <algorithm>
#include <cctype>

#include "cbsum/constants.hpp"

namespace cbsum {

ConstSymbol ConstSymbol::zeta(int m) {
  if (m < 2) throw std::invalid_argument("ConstSymbol: zeta(1) diverges; zeta needs m >= 2");
  return {Kind::Zeta, m};
}

ConstSymbol ConstSymbol::li_half(int m) {
  if (m < 2)
    throw std::invalid_argument("ConstSymbol: Li1(1/2) is ln 2; li_half needs m >= 2");
  return {Kind::LiHalf, m};
}

long ConstSymbol::rank() const {
  switch (kind_) {
    case Kind::Pi: return 0;
    case Kind::Ln2: return 1;
    case Kind::Zeta: return order_;                 // 2, 3, 4, ...
    case Kind::LiHalf: return 1'000'000 + order_;   // after every zeta
  }
  return -1;
}

std::string ConstSymbol::to_string() const {
  switch (kind_) {
    case Kind::Pi: return "pi";
    case Kind::Ln2: return "ln2";
    case Kind::Zeta: return "z" + std::to_string(order_);
    case Kind::LiHalf: return "Li" + std::to_string(order_);
  }
  return "?";
}

namespace {

// Ordering key: the monomial's symbols expanded by exponent, highest rank
// first; monomials are listed in descending key order with the rational
// constant last.
std::vector<long> order_key(const Monomial& m) {
  std::vector<long> key;
  for (auto it = m.powers.rbegin(); it != m.powers.rend(); ++it)
    key.insert(key.end(), static_cast<size_t>(it->second), it->first.rank());
  return key;
}

bool monomial_before(const Monomial& a, const Monomial& b) {
  return order_key(a) > order_key(b);
}

}  // namespace

ClosedForm::ClosedForm(std::vector<Monomial> monomials) : monomials_(std::move(monomials)) {
  normalize();
}

ClosedForm ClosedForm::constant(Rational value) {
  if (value.is_zero()) return {};
  ClosedForm f;
  f.monomials_.push_back({std::move(value), {}});
  return f;
}

ClosedForm ClosedForm::symbol(ConstSymbol s, Rational coeff, int exponent) {
  if (coeff.is_zero() || exponent == 0) return constant(std::move(coeff));
  ClosedForm f;
  f.monomials_.push_back({std::move(coeff), {{s, exponent}}});
  return f;
}

void ClosedForm::normalize() {
  for (auto& m : monomials_) {
    std::sort(m.powers.begin(), m.powers.end(),
              [](const auto& a, const auto& b) { return a.first.rank() < b.first.rank(); });
    // merge repeated symbols
    std::vector<std::pair<ConstSymbol, int>> merged;
    for (const auto& [sym, exp] : m.powers) {
      if (exp == 0) continue;
      if (!merged.empty() && merged.back().first == sym)
        merged.back().second += exp;
      else
        merged.emplace_back(sym, exp);
    }
    m.powers = std::move(merged);
  }
  std::sort(monomials_.begin(), monomials_.end(), monomial_before);
  std::vector<Monomial> out;
  for (auto& m : monomials_) {
    if (!out.empty() && out.back().powers == m.powers)
      out.back().coeff += m.coeff;
    else
      out.push_back(std::move(m));
  }
  out.erase(std::remove_if(out.begin(), out.end(),
                           [](const Monomial& m) { return m.coeff.is_zero(); }),
            out.end());
  monomials_ = std::move(out);
}

ClosedForm operator+(const ClosedForm& a, const ClosedForm& b) {
  std::vector<Monomial> all = a.monomials_;
  all.insert(all.end(), b.monomials_.begin(), b.monomials_.end());
  return ClosedForm{std::move(all)};
}

ClosedForm operator-(const ClosedForm& a, const ClosedForm& b) {
  return a + Rational{-1} * b;
}

ClosedForm operator*(const Rational& s, const ClosedForm& a) {
  if (s.is_zero()) return {};
  std::vector<Monomial> out = a.monomials_;
  for (auto& m : out) m.coeff *= s;
  return ClosedForm{std::move(out)};
}

bool ClosedForm::operator==(const ClosedForm& o) const {
  if (monomials_.size() != o.monomials_.size()) return false;
  for (size_t i = 0; i < monomials_.size(); ++i) {
    if (monomials_[i].coeff != o.monomials_[i].coeff) return false;
    if (monomials_[i].powers != o.monomials_[i].powers) return false;
  }
  return true;
}

// ---------------------------------------------------------------------- parse

namespace {

struct Parser {
  std::string_view text;
  size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  bool consume(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& message) { throw ParseError(pos, message); }

  unsigned long parse_uint() {
    skip_ws();
    const size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) fail("expected an unsigned integer");
    return std::stoul(std::string(text.substr(start, pos - start)));
  }

  Rational parse_coeff() {
    skip_ws();
    const size_t start = pos;
    if (pos < text.size() && text[pos] == '-') ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start || (text[start] == '-' && pos == start + 1)) fail("expected an integer");
    std::string num{text.substr(start, pos - start)};
    if (pos < text.size() && text[pos] == '/') {
      ++pos;
      const size_t dstart = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (pos == dstart) fail("expected a denominator");
      std::string den{text.substr(dstart, pos - dstart)};
      return Rational{num + "/" + den};
    }
    return Rational{num};
  }

  ConstSymbol parse_atom() {
    skip_ws();
    const size_t at = pos;
    if (text.substr(pos).starts_with("pi")) {
      pos += 2;
      return ConstSymbol::pi();
    }
    if (text.substr(pos).starts_with("ln2")) {
      pos += 3;
      return ConstSymbol::ln2();
    }
    if (text.substr(pos).starts_with("Li")) {
      pos += 2;
      const unsigned long m = parse_uint();
      if (m == 1) throw ParseError(at, "Li1 is ln 2: use ln2");
      if (m == 0) throw ParseError(at, "Li0 is not in the constant basis");
      return ConstSymbol::li_half(static_cast<int>(m));
    }
    if (pos < text.size() && text[pos] == 'z') {
      ++pos;
      const unsigned long m = parse_uint();
      if (m < 2) throw ParseError(at, "zeta(1) diverges");
      return ConstSymbol::zeta(static_cast<int>(m));
    }
    fail("expected 'pi', 'ln2', 'z<m>' or 'Li<m>'");
  }

  // factor := atom ('^' uint)?
  std::pair<ConstSymbol, int> parse_factor() {
    ConstSymbol s = parse_atom();
    int exp = 1;
    if (consume('^')) exp = static_cast<int>(parse_uint());
    return {s, exp};
  }

  Monomial parse_term() {
    skip_ws();
    Monomial m;
    const char c = peek();
    if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
      m.coeff = parse_coeff();
    } else {
      m.coeff = Rational{1};
      auto [sym, exp] = parse_factor();
      if (exp > 0) m.powers.emplace_back(sym, exp);
    }
    while (consume('*')) {
      auto [sym, exp] = parse_factor();
      if (exp > 0) m.powers.emplace_back(sym, exp);
    }
    return m;
  }

  ClosedForm parse_expr() {
    std::vector<Monomial> terms;
    terms.push_back(parse_term());
    while (!at_end()) {
      bool negate = false;
      if (consume('+')) {
        negate = false;
      } else if (consume('-')) {
        negate = true;
      } else {
        fail("expected '+' or '-'");
      }
      Monomial t = parse_term();
      if (negate) t.coeff = -t.coeff;
      terms.push_back(std::move(t));
    }
    return ClosedForm{std::move(terms)};
  }
};

}  // namespace

ClosedForm cf_parse(std::string_view text) {
  Parser p{text};
  if (p.at_end()) throw ParseError(0, "empty expression");
  return p.parse_expr();
}

std::string cf_format(const ClosedForm& form) {
  if (form.monomials().empty()) return "0";
  std::string out;
  bool first = true;
  for (const Monomial& m : form.monomials()) {
    const bool negative = m.coeff.sign() < 0;
    const Rational mag = m.coeff.abs();
    if (first) {
      if (negative) out += "-";
      first = false;
    } else {
      out += negative ? " - " : " + ";
    }
    std::string body;
    const bool unit = mag == Rational{1};
    if (!unit || m.powers.empty()) body += mag.to_string();
    for (const auto& [sym, exp] : m.powers) {
      if (!body.empty()) body += "*";
      body += sym.to_string();
      if (exp > 1) body += "^" + std::to_string(exp);
    }
    out += body;
  }
  return out;
}

Real cf_evaluate(const ClosedForm& form, PrecisionContext ctx) {
  const PrecisionContext inner{ctx.digits + ctx.guard, ctx.guard};
  Real total{inner};
  for (const Monomial& m : form.monomials()) {
    Real prod{m.coeff, inner};
    for (const auto& [sym, exp] : m.powers) {
      Real base{inner};
      switch (sym.kind()) {
        case ConstSymbol::Kind::Pi: base = const_pi(inner); break;
        case ConstSymbol::Kind::Ln2: base = const_ln2(inner); break;
        case ConstSymbol::Kind::Zeta: base = const_zeta(sym.order(), inner); break;
        case ConstSymbol::Kind::LiHalf: base = const_li_half(sym.order(), inner); break;
      }
      Real powed{inner};
      mpfr_pow_ui(powed.mutable_raw(), base.raw(), static_cast<unsigned long>(exp), MPFR_RNDN);
      prod *= powed;
    }
    total += prod;
  }
  Real out{ctx};
  mpfr_set(out.mutable_raw(), total.raw(), MPFR_RNDN);
  return out;
}

}  // namespace cbsum
