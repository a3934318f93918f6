#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "wrep/geometry.hpp"
#include "wrep/weierstrass.hpp"

namespace wrep {

/// Sampling window in the parameter plane with grid resolution and an
/// exclusion list. Grid layouts (fixed; vertex order is the grid order):
///   rectangle: row-major, index iv*nu + iu, uniform steps, endpoints hit
///              exactly;
///   disk:      index 0 is the center (sampled once), then nu-1 concentric
///              rings of nv angles each, ring-major; ring j has radius
///              R*j/(nu-1), angle m is 2*pi*m/nv.
struct ParamDomain {
  enum class Shape { rectangle, disk };

  /// Requires u0 < u1, v0 < v1, nu >= 2, nv >= 2; throws DomainError.
  static ParamDomain rectangle(double u0, double u1, double v0, double v1,
                               std::size_t nu, std::size_t nv);
  /// Requires radius > 0, nu >= 2, nv >= 3 (the center fan needs three
  /// angles); throws DomainError.
  static ParamDomain disk(double radius, Complex center, std::size_t nu,
                          std::size_t nv);

  Shape shape = Shape::rectangle;
  double u0 = 0, u1 = 0, v0 = 0, v1 = 0;  // rectangle
  double radius = 0;                      // disk
  Complex center{};                       // disk
  std::size_t nu = 2, nv = 2;
  std::vector<ExclusionZone> excluded;

  std::size_t sample_count() const;
  Complex grid_point(std::size_t index) const;
};

/// Grid of samples in domain order; skipped entries (inside an exclusion
/// zone, or singular evaluation under the skip policy) are disengaged.
struct SurfaceGrid {
  ParamDomain domain;
  std::vector<std::optional<SurfaceSample>> samples;
  std::size_t skipped_count() const;
};

struct Mesh {
  std::vector<RealVec3> vertices;
  std::vector<RealVec3> normals;  // empty, or parallel to vertices
  std::vector<std::array<std::uint32_t, 3>> faces;  // ccw w.r.t. normals
  std::vector<std::size_t> skipped;  // grid indices dropped
};

/// Evaluate every grid point. Samples inside an exclusion zone (domain's
/// list or the data's own) are skipped or abort per the data's policy, as
/// are singular evaluations and samples whose integration path is blocked
/// by a data-level zone. Quadrature non-convergence always aborts: it is a
/// numerical failure, not a declared singularity. Work is striped across
/// `workers` threads with index-addressed writes, so the result is
/// identical for any worker count. Throws MeshError if every sample is
/// skipped.
SurfaceGrid sample_grid(const WeierstrassData& d, const ParamDomain& dom,
                        unsigned workers = 1);

/// Two triangles per complete cell; cells touching a skipped or degenerate
/// grid point are omitted; the disk center is fan-triangulated. Vertices
/// are the surviving samples in grid order (indices remapped). Throws
/// MeshError when no triangle survives.
Mesh triangulate(const SurfaceGrid& grid, bool with_normals = false);

/// Wavefront OBJ: `v x y z` (17 significant digits, '.' radix, LF), then
/// optional `vn` lines, then 1-based `f` lines. Byte-identical for equal
/// input. Throws MeshError on non-finite data before writing anything.
void export_obj(const Mesh& m, std::ostream& out);

/// PLY ASCII 1.0, double vertex properties, 0-based face indices. Same
/// determinism and finiteness guarantees as export_obj.
void export_ply(const Mesh& m, std::ostream& out);

}  // namespace wrep
