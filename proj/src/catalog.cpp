#include "wrep/catalog.hpp"

#include <cmath>

#include "wrep/errors.hpp"
#include "wrep/expr.hpp"

namespace wrep {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;
constexpr std::size_t kRes = 64;

std::vector<CatalogEntry> build_entries() {
  std::vector<CatalogEntry> entries;

  entries.push_back(CatalogEntry{
      "plane",
      WeierstrassData::make_phi(parse("1"), parse("0")),
      ParamDomain::rectangle(-1, 1, -1, 1, kRes, kRes),
      "Phi = (z, i*z, 0); x = (u, -v, 0)",
      "planarity",
      ""});

  entries.push_back(CatalogEntry{
      "enneper",
      WeierstrassData::make_phi(parse("1"), parse("z")),
      ParamDomain::disk(1.0, Complex{0, 0}, kRes, kRes),
      "Phi = (z - z^3/3, i*(z + z^3/3), z^2)",
      "",
      ""});

  entries.push_back(CatalogEntry{
      "catenoid",
      WeierstrassData::make_phi(parse("exp(-z)"), parse("exp(z)")),
      ParamDomain::rectangle(-1, 1, -kPi, kPi, kRes, kRes),
      "Phi = (2 - 2*cosh(z), 2*i*sinh(z), 2*z); "
      "x = (2 - 2*cosh(u)*cos(v), -2*cosh(u)*sin(v), 2*u)",
      "catenoid-implicit",
      ""});

  entries.push_back(CatalogEntry{
      "helicoid",
      WeierstrassData::make_phi(parse("i*exp(-z)"), parse("exp(z)")),
      ParamDomain::rectangle(-1, 1, -kPi, kPi, kRes, kRes),
      "Phi = (2*i - 2*i*cosh(z), -2*sinh(z), 2*i*z); "
      "x = (2*sinh(u)*sin(v), -2*sinh(u)*cos(v), -2*v)",
      "helicoid-ruling",
      ""});

  entries.push_back(CatalogEntry{
      "pole-demo",
      WeierstrassData::from_phi(parse("z^2 - 1"), parse("i*(z^2 + 1)"), parse("2*z")),
      ParamDomain::disk(1.0, Complex{0, 0}, kRes, kRes),
      "Phi = (z^3/3 - z, i*(z^3/3 + z), z^2)",
      "",
      "f=z^2, g=1/z; f*g^2=1 analytic"});

  return entries;
}

}  // namespace

const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries = build_entries();
  return entries;
}

const CatalogEntry* find_entry(std::string_view name) {
  for (const CatalogEntry& e : catalog_entries())
    if (e.name == name) return &e;
  return nullptr;
}

std::function<double(const RealVec3&)> implicit_residual(std::string_view name) {
  if (name == "planarity")
    return [](const RealVec3& x) { return x.x3; };
  if (name == "catenoid-implicit")
    return [](const RealVec3& x) {
      const double c = std::cosh(x.x3 / 2.0);
      return (x.x1 - 2.0) * (x.x1 - 2.0) + x.x2 * x.x2 - 4.0 * c * c;
    };
  if (name == "helicoid-ruling")
    return [](const RealVec3& x) {
      return x.x1 * std::cos(x.x3 / 2.0) - x.x2 * std::sin(x.x3 / 2.0);
    };
  throw Error("unknown implicit check: " + std::string(name));
}

}  // namespace wrep
