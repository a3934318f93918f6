#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "wrep/complex_core.hpp"
#include "wrep/mesh.hpp"
#include "wrep/weierstrass.hpp"

namespace wrep {

/// Named, pre-validated data set with a sensible default domain. The
/// implicit_check field names a residual function (see implicit_residual)
/// vanishing on the exact surface; empty when none is recorded.
struct CatalogEntry {
  std::string name;
  WeierstrassData data;
  ParamDomain default_domain;
  std::string closed_form;     // textual antiderivative/immersion note
  std::string implicit_check;  // residual function name, "" if none
  std::string note;            // extra metadata (e.g. originating f, g)
};

/// The built-in surfaces: plane, enneper, catenoid, helicoid, pole-demo.
const std::vector<CatalogEntry>& catalog_entries();

/// Entry by name; nullptr when unknown.
const CatalogEntry* find_entry(std::string_view name);

/// Resolve an implicit_check name to its residual over exported points.
/// Known names: "planarity" (x3), "catenoid-implicit"
/// ((x1-2)^2 + x2^2 - 4 cosh^2(x3/2); the immersion is anchored at the
/// basepoint, hence the shift), "helicoid-ruling"
/// (x1 cos(x3/2) - x2 sin(x3/2)). Throws Error for unknown names.
std::function<double(const RealVec3&)> implicit_residual(std::string_view name);

}  // namespace wrep
