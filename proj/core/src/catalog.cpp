#include "cbsum/catalog.hpp"

#include <stdexcept>
#include <vector>

namespace cbsum {

namespace {

std::vector<CatalogEntry> build_catalog() {
  struct Row {
    SeriesFamily family;
    const char* form;
  };
  const Row rows[] = {
      {SeriesFamily::s(1), "2*ln2"},
      {SeriesFamily::s(2), "z2 - 2*ln2^2"},
      {SeriesFamily::s(3), "2*z3 - 2*ln2*z2 + 4/3*ln2^3"},
      {SeriesFamily::s(4), "9/4*z4 - 4*ln2*z3 + 2*ln2^2*z2 - 2/3*ln2^4"},
      {SeriesFamily::s(5),
       "6*z5 - 2*z2*z3 - 9/2*ln2*z4 + 4*ln2^2*z3 - 4/3*ln2^3*z2 + 4/15*ln2^5"},
      {SeriesFamily::s(6),
       "79/16*z6 - 12*ln2*z5 + 4*ln2*z2*z3 - 2*z3^2 + 9/2*ln2^2*z4 - 8/3*ln2^3*z3 + "
       "2/3*ln2^4*z2 - 4/45*ln2^6"},
      {SeriesFamily::s(7),
       "18*z7 - 79/8*ln2*z6 - 6*z2*z5 + 12*ln2^2*z5 - 9/2*z3*z4 - 3*ln2^3*z4 + 4*ln2*z3^2 - "
       "4*ln2^2*z2*z3 + 4/3*ln2^4*z3 - 4/15*ln2^5*z2 + 8/315*ln2^7"},
      {SeriesFamily::l(1), "1/2*pi - 1"},
      {SeriesFamily::l(2), "1/2*pi*ln2 - 1"},
      {SeriesFamily::l(3), "1/8*pi*z2 + 1/4*pi*ln2^2 - 1"},
      {SeriesFamily::l(4), "1/8*pi*z3 + 1/48*pi^3*ln2 + 1/12*pi*ln2^3 - 1"},
      {SeriesFamily::l(5),
       "19/128*pi*z4 + 1/8*pi*ln2*z3 + 1/96*pi^3*ln2^2 + 1/48*pi*ln2^4 - 1"},
      {SeriesFamily::v(1), "3/2*z2"},
      {SeriesFamily::v(2), "7/2*z3 - 3*ln2*z2"},
      {SeriesFamily::v(3), "15/4*z4 - 7*ln2*z3 + 3*ln2^2*z2"},
      {SeriesFamily::v(4), "31/2*z5 - 15/2*ln2*z4 - 13/2*z2*z3 + 7*ln2^2*z3 - 2*ln2^3*z2"},
      {SeriesFamily::v(5),
       "399/32*z6 - 31*ln2*z5 + 15/2*ln2^2*z4 + 13*ln2*z2*z3 - 7*z3^2 - 14/3*ln2^3*z3 + "
       "ln2^4*z2"},
      {SeriesFamily::z(1), "1/2*pi"},
      {SeriesFamily::z(2), "pi*ln2 - 1/2*pi"},
      {SeriesFamily::z(3), "3/4*pi*ln2^2 - pi*ln2 + 1/2*pi"},
      {SeriesFamily::z(4),
       "1/16*pi*z3 + 1/8*pi*ln2*z2 + 1/3*pi*ln2^3 - 3/4*pi*ln2^2 + pi*ln2 - 1/2*pi"},
      {SeriesFamily::w(1), "45/16*z4"},
      {SeriesFamily::w(2), "315/32*z6 - 49/8*z3^2"},
      {SeriesFamily::w(3), "315/8*z8 - 217/4*z3*z5 + 49/4*z2*z3^2"},
      {SeriesFamily::lin_H(2), "2*z3"},
      {SeriesFamily::lin_h(2), "7/4*z3"},
      {SeriesFamily::lin_h(3), "-53/8*z4 + 7*ln2*z3 - 2*ln2^2*z2 + 1/3*ln2^4 + 8*Li4"},
      {SeriesFamily::fixed(FamilyTag::OddHSq3), "7/4*z2*z3 - 31/16*z5"},
      {SeriesFamily::fixed(FamilyTag::WeightedH2k),
       "307/128*z5 - 1/16*z2*z3 + 1/3*ln2^3*z2 - 7/8*ln2^2*z3 - 1/15*ln2^5 - 2*ln2*Li4 - "
       "2*Li5"},
      {SeriesFamily::fixed(FamilyTag::AltHSq3),
       "2/15*ln2^5 - 11/8*z2*z3 - 19/32*z5 + 7/4*ln2^2*z3 - 2/3*ln2^3*z2 + 4*ln2*Li4 + "
       "4*Li5"},
      {SeriesFamily::fixed(FamilyTag::MixHOddH3),
       "279/16*z5 - 7*ln2^2*z3 + 8/3*ln2^3*z2 - 8/15*ln2^5 - 16*ln2*Li4 - 16*Li5"},
  };

  std::vector<CatalogEntry> out;
  out.reserve(std::size(rows));
  for (const Row& row : rows)
    out.push_back({row.family, cf_parse(row.form), row.family.id()});
  return out;
}

}  // namespace

std::span<const CatalogEntry> catalog_all() {
  static const std::vector<CatalogEntry> entries = build_catalog();
  return entries;
}

const CatalogEntry& catalog_get(const SeriesFamily& family) {
  for (const CatalogEntry& e : catalog_all())
    if (e.family == family) return e;
  throw std::out_of_range("catalog: no entry for " + family.id());
}

bool catalog_has(const SeriesFamily& family) {
  for (const CatalogEntry& e : catalog_all())
    if (e.family == family) return true;
  return false;
}

}  // namespace cbsum
