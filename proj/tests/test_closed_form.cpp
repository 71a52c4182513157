#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>

#include "cbsum/catalog.hpp"
#include "cbsum/closed_form.hpp"
#include "cbsum/constants.hpp"
#include "cbsum/series.hpp"
#include "test_util.hpp"

using namespace cbsum;
using cbsum::test::agree_to;
using cbsum::test::matches_decimal;

TEST_CASE("parsing a full catalog string") {
  const ClosedForm f = cf_parse("9/4*z4 - 4*ln2*z3 + 2*ln2^2*z2 - 2/3*ln2^4");
  REQUIRE(f.monomials().size() == 4);
  CHECK(f.monomials()[0].coeff == Rational{9, 4});
  CHECK(f.monomials()[0].powers.size() == 1);
  CHECK(f.monomials()[0].powers[0].first == ConstSymbol::zeta(4));
  CHECK(f.monomials()[3].coeff == Rational{-2, 3});
  CHECK(f.monomials()[3].powers[0].second == 4);
}

TEST_CASE("format emits canonical order and parse round-trips") {
  const char* canonical = "9/4*z4 - 4*ln2*z3 + 2*ln2^2*z2 - 2/3*ln2^4";
  CHECK(cf_format(cf_parse(canonical)) == canonical);
  CHECK(cf_format(cf_parse("1/2*pi - 1")) == "1/2*pi - 1");
  // scrambled input canonicalizes
  CHECK(cf_format(cf_parse("-2/3*ln2^4 + 2*z2*ln2^2 + 9/4*z4 - 4*z3*ln2")) == canonical);
}

TEST_CASE("round-trip holds on every catalog entry") {
  for (const CatalogEntry& e : catalog_all()) {
    const std::string text = cf_format(e.closed_form);
    const ClosedForm reparsed = cf_parse(text);
    CHECK(reparsed == e.closed_form);
    CHECK(cf_format(reparsed) == text);
  }
}

TEST_CASE("like terms merge and cancel") {
  CHECK(cf_format(cf_parse("ln2*pi + pi*ln2")) == "2*pi*ln2");
  CHECK(cf_parse("z3 - z3").is_zero());
  CHECK(cf_format(cf_parse("pi^0")) == "1");
  CHECK(cf_format(ClosedForm::zero()) == "0");
}

TEST_CASE("algebra is congruent with canonical equality") {
  const ClosedForm a = cf_parse("2*z3 - ln2");
  const ClosedForm b = cf_parse("1/2*pi + ln2");
  CHECK(a + b == b + a);
  CHECK(cf_format(a + b) == "2*z3 + 1/2*pi");
  CHECK(Rational{2} * a == a + a);
  CHECK((a - a).is_zero());
}

TEST_CASE("guarded inputs are rejected with positions") {
  auto message_of = [](const char* text) -> std::string {
    try {
      cf_parse(text);
    } catch (const ParseError& e) {
      return e.what();
    }
    return "";
  };
  CHECK(message_of("z1").find("diverges") != std::string::npos);
  CHECK(message_of("Li1").find("use ln2") != std::string::npos);
  CHECK_THROWS_AS(cf_parse("2**pi"), ParseError);
  CHECK_THROWS_AS(cf_parse(""), ParseError);
  CHECK_THROWS_AS(cf_parse("3 + "), ParseError);
  CHECK_THROWS_AS(cf_parse("sin(1)"), ParseError);
  try {
    cf_parse("2*z3 + qq");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.position == 7);
  }
}

TEST_CASE("numeric evaluation") {
  const PrecisionContext ctx{15};
  CHECK(matches_decimal(cf_evaluate(cf_parse("2*ln2"), ctx), "1.38629436111989", 14));
  CHECK(cf_evaluate(ClosedForm::zero(), ctx).is_zero());

  const PrecisionContext wide{30};
  const Real s2 = evaluate(SeriesFamily::s(2), wide).value;
  CHECK(agree_to(cf_evaluate(cf_parse("z2 - 2*ln2^2"), wide), s2, 28));
}

TEST_CASE("evaluation is stable under precision doubling") {
  const ClosedForm f = catalog_get(SeriesFamily::s(6)).closed_form;
  for (long d : {15L, 25L}) {
    const Real lo = cf_evaluate(f, PrecisionContext{d});
    const Real hi = cf_evaluate(f, PrecisionContext{2 * d});
    CHECK(agree_to(lo, hi, d - 2));
  }
}

TEST_CASE("catalog composition") {
  CHECK(catalog_all().size() == 31);
  CHECK(catalog_has(SeriesFamily::s(4)));
  CHECK_FALSE(catalog_has(SeriesFamily::s(8)));
  CHECK_THROWS_AS(catalog_get(SeriesFamily::s(8)), std::out_of_range);
  CHECK_THROWS_AS(catalog_get(SeriesFamily::fixed(FamilyTag::SqH2k)), std::out_of_range);
  for (const CatalogEntry& e : catalog_all()) {
    CHECK(e.label == e.family.id());
    CHECK_FALSE(e.closed_form.is_zero());
  }
}

TEST_CASE("the order-four entry evaluates consistently with its series") {
  const PrecisionContext ctx{30};
  const CatalogEntry& entry = catalog_get(SeriesFamily::s(4));
  const Real closed = cf_evaluate(entry.closed_form, ctx);
  const Real series = evaluate(entry.family, ctx).value;
  CHECK(matches_decimal(closed, "0.529154857165146540082127724754", 28));
  CHECK(agree_to(closed, series, 28));
}
