#include "wrep/mesh.hpp"

#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <string>
#include <thread>

#include "wrep/errors.hpp"

namespace wrep {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool inside_any_zone(Complex z, const std::vector<ExclusionZone>& zones) {
  for (const ExclusionZone& e : zones)
    if (std::abs(z - e.center) <= e.radius) return true;
  return false;
}

void require_finite(const RealVec3& v, const char* what, std::size_t idx) {
  if (!all_finite(v))
    throw MeshError(std::string("non-finite ") + what + " at index " +
                    std::to_string(idx) + "; refusing to write");
}

}  // namespace

ParamDomain ParamDomain::rectangle(double u0, double u1, double v0, double v1,
                                   std::size_t nu, std::size_t nv) {
  if (!(u0 < u1) || !(v0 < v1))
    throw DomainError("rectangle bounds must satisfy u0 < u1 and v0 < v1");
  if (nu < 2 || nv < 2) throw DomainError("rectangle resolution must be at least 2x2");
  ParamDomain d;
  d.shape = Shape::rectangle;
  d.u0 = u0;
  d.u1 = u1;
  d.v0 = v0;
  d.v1 = v1;
  d.nu = nu;
  d.nv = nv;
  return d;
}

ParamDomain ParamDomain::disk(double radius, Complex center, std::size_t nu,
                              std::size_t nv) {
  if (!(radius > 0)) throw DomainError("disk radius must be positive");
  if (nu < 2) throw DomainError("disk needs at least 2 radial stations");
  if (nv < 3) throw DomainError("disk needs at least 3 angular samples");
  ParamDomain d;
  d.shape = Shape::disk;
  d.radius = radius;
  d.center = center;
  d.nu = nu;
  d.nv = nv;
  return d;
}

std::size_t ParamDomain::sample_count() const {
  if (shape == Shape::rectangle) return nu * nv;
  return 1 + (nu - 1) * nv;
}

Complex ParamDomain::grid_point(std::size_t index) const {
  if (shape == Shape::rectangle) {
    const std::size_t iu = index % nu;
    const std::size_t iv = index / nu;
    const double tu = static_cast<double>(iu) / static_cast<double>(nu - 1);
    const double tv = static_cast<double>(iv) / static_cast<double>(nv - 1);
    return {u0 + (u1 - u0) * tu, v0 + (v1 - v0) * tv};
  }
  if (index == 0) return center;
  const std::size_t ring = (index - 1) / nv + 1;
  const std::size_t m = (index - 1) % nv;
  const double r = radius * static_cast<double>(ring) / static_cast<double>(nu - 1);
  const double theta = kTwoPi * static_cast<double>(m) / static_cast<double>(nv);
  return center + std::polar(r, theta);
}

std::size_t SurfaceGrid::skipped_count() const {
  std::size_t n = 0;
  for (const auto& s : samples)
    if (!s.has_value()) ++n;
  return n;
}

SurfaceGrid sample_grid(const WeierstrassData& d, const ParamDomain& dom,
                        unsigned workers) {
  const std::size_t n = dom.sample_count();
  std::vector<ExclusionZone> zones = dom.excluded;
  zones.insert(zones.end(), d.exclusions().begin(), d.exclusions().end());
  const bool abort_on_skip = d.policy().behavior == SingularityPolicy::Behavior::error;

  SurfaceGrid grid{dom, std::vector<std::optional<SurfaceSample>>(n)};

  const unsigned nworkers =
      static_cast<unsigned>(std::min<std::size_t>(std::max(1u, workers), n));
  // One failure slot per worker; after joining, the failure at the lowest
  // grid index wins so the outcome does not depend on thread scheduling.
  std::vector<std::exception_ptr> errors(nworkers);
  std::vector<std::size_t> error_index(nworkers, n);

  auto run = [&](unsigned w) {
    for (std::size_t i = w; i < n; i += nworkers) {
      const Complex z = dom.grid_point(i);
      try {
        if (inside_any_zone(z, zones)) {
          if (abort_on_skip)
            throw EvalError("grid sample inside a declared exclusion zone", z, "");
          continue;  // skipped
        }
        grid.samples[i] = sample_at(d, z);
      } catch (...) {
        if (!abort_on_skip) {
          try {
            throw;
          } catch (const EvalError&) {
            continue;  // singular evaluation skipped per policy
          } catch (const PathError&) {
            continue;  // integration path blocked by an exclusion zone
          } catch (...) {
            // QuadratureError and the rest are numerical failures, not
            // declared singularities; they abort even under skip_sample.
          }
        }
        errors[w] = std::current_exception();
        error_index[w] = i;
        return;
      }
    }
  };

  if (nworkers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nworkers);
    for (unsigned w = 0; w < nworkers; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
  }

  std::size_t first = n;
  for (unsigned w = 0; w < nworkers; ++w)
    if (errors[w] && error_index[w] < first) first = error_index[w];
  if (first < n)
    for (unsigned w = 0; w < nworkers; ++w)
      if (errors[w] && error_index[w] == first) std::rethrow_exception(errors[w]);

  if (grid.skipped_count() == n)
    throw MeshError("every grid sample was skipped; nothing to mesh");
  return grid;
}

Mesh triangulate(const SurfaceGrid& grid, bool with_normals) {
  const ParamDomain& dom = grid.domain;
  const std::size_t n = dom.sample_count();
  Mesh mesh;

  // Degenerate samples cannot orient a face; drop them like skipped ones.
  std::vector<std::uint32_t> remap(n, std::numeric_limits<std::uint32_t>::max());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& s = grid.samples[i];
    if (!s.has_value() || s->degenerate) {
      mesh.skipped.push_back(i);
      continue;
    }
    remap[i] = static_cast<std::uint32_t>(mesh.vertices.size());
    mesh.vertices.push_back(s->x);
    if (with_normals) mesh.normals.push_back(s->normal);
  }

  auto present = [&](std::size_t i) {
    return remap[i] != std::numeric_limits<std::uint32_t>::max();
  };
  auto emit = [&](std::size_t a, std::size_t b, std::size_t c) {
    if (present(a) && present(b) && present(c))
      mesh.faces.push_back({remap[a], remap[b], remap[c]});
  };
  auto emit_quad = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
    // a -> b -> c -> d counterclockwise in the parameter plane; the
    // immersion is conformal, so this is ccw w.r.t. cross(x_u, x_v).
    if (present(a) && present(b) && present(c) && present(d)) {
      emit(a, b, c);
      emit(a, c, d);
    }
  };

  if (dom.shape == ParamDomain::Shape::rectangle) {
    for (std::size_t iv = 0; iv + 1 < dom.nv; ++iv)
      for (std::size_t iu = 0; iu + 1 < dom.nu; ++iu) {
        const std::size_t i00 = iv * dom.nu + iu;
        emit_quad(i00, i00 + 1, i00 + dom.nu + 1, i00 + dom.nu);
      }
  } else {
    auto ring_idx = [&](std::size_t ring, std::size_t m) {
      return 1 + (ring - 1) * dom.nv + (m % dom.nv);
    };
    for (std::size_t m = 0; m < dom.nv; ++m) emit(0, ring_idx(1, m), ring_idx(1, m + 1));
    for (std::size_t ring = 1; ring + 1 < dom.nu; ++ring)
      for (std::size_t m = 0; m < dom.nv; ++m)
        emit_quad(ring_idx(ring, m), ring_idx(ring + 1, m), ring_idx(ring + 1, m + 1),
                  ring_idx(ring, m + 1));
  }

  if (mesh.faces.empty())
    throw MeshError("triangulation is empty: no cell has all corners usable");
  return mesh;
}

void export_obj(const Mesh& m, std::ostream& out) {
  const bool with_normals = !m.normals.empty();
  for (std::size_t i = 0; i < m.vertices.size(); ++i) {
    require_finite(m.vertices[i], "vertex", i);
    if (with_normals) require_finite(m.normals[i], "normal", i);
  }
  for (const RealVec3& v : m.vertices)
    out << "v " << fmt17(v.x1) << ' ' << fmt17(v.x2) << ' ' << fmt17(v.x3) << '\n';
  for (const RealVec3& nrm : m.normals)
    out << "vn " << fmt17(nrm.x1) << ' ' << fmt17(nrm.x2) << ' ' << fmt17(nrm.x3) << '\n';
  for (const auto& f : m.faces) {
    const std::uint32_t a = f[0] + 1, b = f[1] + 1, c = f[2] + 1;
    if (with_normals)
      out << "f " << a << "//" << a << ' ' << b << "//" << b << ' ' << c << "//" << c
          << '\n';
    else
      out << "f " << a << ' ' << b << ' ' << c << '\n';
  }
  if (!out) throw Error("mesh export: sink write failure");
}

void export_ply(const Mesh& m, std::ostream& out) {
  const bool with_normals = !m.normals.empty();
  for (std::size_t i = 0; i < m.vertices.size(); ++i) {
    require_finite(m.vertices[i], "vertex", i);
    if (with_normals) require_finite(m.normals[i], "normal", i);
  }
  out << "ply\nformat ascii 1.0\n";
  out << "element vertex " << m.vertices.size() << '\n';
  out << "property double x\nproperty double y\nproperty double z\n";
  if (with_normals) out << "property double nx\nproperty double ny\nproperty double nz\n";
  out << "element face " << m.faces.size() << '\n';
  out << "property list uchar int vertex_indices\n";
  out << "end_header\n";
  for (std::size_t i = 0; i < m.vertices.size(); ++i) {
    const RealVec3& v = m.vertices[i];
    out << fmt17(v.x1) << ' ' << fmt17(v.x2) << ' ' << fmt17(v.x3);
    if (with_normals) {
      const RealVec3& nrm = m.normals[i];
      out << ' ' << fmt17(nrm.x1) << ' ' << fmt17(nrm.x2) << ' ' << fmt17(nrm.x3);
    }
    out << '\n';
  }
  for (const auto& f : m.faces)
    out << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
  if (!out) throw Error("mesh export: sink write failure");
}

}  // namespace wrep
