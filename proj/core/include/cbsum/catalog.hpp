#pragma once

#include <span>
#include <string>

#include "cbsum/closed_form.hpp"
#include "cbsum/series.hpp"

namespace cbsum {

/// One verified identity: a series family paired with its exact closed form.
struct CatalogEntry {
  SeriesFamily family;
  ClosedForm closed_form;
  std::string label;  // stable id, equals family.id()
};

/// Entry lookup; throws std::out_of_range for pairs outside the catalog.
const CatalogEntry& catalog_get(const SeriesFamily& family);

bool catalog_has(const SeriesFamily& family);

/// All 31 entries in fixed order.
std::span<const CatalogEntry> catalog_all();

}  // namespace cbsum
