#include "wrep/verification.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <exception>
#include <limits>
#include <thread>

#include <json.hpp>

#include "wrep/errors.hpp"

namespace wrep {

namespace {

enum CheckId {
  kPhiSquare,
  kLemma1,
  kLemma2,
  kOrtho,
  kEqualNorms,
  kHarmonicity,
  kHZero,
  kCrossZero,
  kFd,
  kPath,
  kNumChecks
};

constexpr const char* kCheckNames[kNumChecks] = {
    "phi_square_zero", "lemma_1",     "lemma_2",
    "orthogonality",   "equal_norms", "harmonicity",
    "mean_curvature_zero", "crosscheck_zero", "fd_consistency",
    "path_independence"};

double tolerance_for(int id, const Tolerances& t) {
  if (id <= kHarmonicity) return t.algebraic;
  if (id <= kCrossZero) return t.mean_curvature;
  if (id == kFd) return t.fd;
  return t.path;
}

/// Running (max residual, scale at argmax) with deterministic ties: the
/// smallest grid index wins, so any striping of the loop gives one answer.
struct Acc {
  double residual = 0.0;
  double scale = 0.0;
  std::size_t idx = std::numeric_limits<std::size_t>::max();
  std::size_t checked = 0;
  std::size_t skipped = 0;

  void add(double r, double s, std::size_t i) {
    ++checked;
    if (!std::isfinite(r)) r = std::numeric_limits<double>::max();
    if (r > residual || (r == residual && i < idx)) {
      residual = r;
      scale = s;
      idx = i;
    }
  }
  void skip() { ++skipped; }
  void merge(const Acc& o) {
    checked += o.checked;
    skipped += o.skipped;
    if (o.residual > residual || (o.residual == residual && o.idx < idx)) {
      residual = o.residual;
      scale = o.scale;
      idx = o.idx;
    }
  }
};

double max_abs_component(const ComplexVec3& v) {
  return std::max({std::abs(v.c1), std::abs(v.c2), std::abs(v.c3)});
}

bool inside_any_zone(Complex z, const std::vector<ExclusionZone>& zones) {
  for (const ExclusionZone& e : zones)
    if (std::abs(z - e.center) <= e.radius) return true;
  return false;
}

/// First-form, harmonicity, and curvature residuals shared by Weierstrass
/// verification and the sphere control.
void add_form_checks(const SurfaceSample& s, std::size_t i, Acc* acc) {
  acc[kOrtho].add(std::abs(s.F) / (1.0 + s.E), s.E, i);
  acc[kEqualNorms].add(std::abs(s.E - s.G) / (1.0 + s.E), s.E, i);
  const double nuu = norm(s.x_uu);
  acc[kHarmonicity].add(norm(s.x_uu + s.x_vv) / (1.0 + nuu), nuu, i);
  if (s.degenerate) {
    acc[kHZero].skip();
    acc[kCrossZero].skip();
  } else {
    acc[kHZero].add(norm(s.H_vec), 0.0, i);
    acc[kCrossZero].add(std::abs(mean_curvature_crosscheck(s)), 0.0, i);
  }
}

CheckRecord make_record(int id, const Acc& a, const Tolerances& tol) {
  CheckRecord r;
  r.name = kCheckNames[id];
  r.max_abs_residual = a.residual;
  r.relative_scale = a.scale;
  r.tolerance = tolerance_for(id, tol);
  r.samples_checked = a.checked;
  r.samples_skipped = a.skipped;
  r.pass = a.residual <= r.tolerance;
  return r;
}

RealVec3 sphere_position(double R, double u, double v) {
  return {R * std::cos(u) * std::cos(v), R * std::sin(u) * std::cos(v),
          R * std::sin(v)};
}

}  // namespace

const CheckRecord* VerificationReport::find(std::string_view name) const {
  for (const CheckRecord& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

VerificationReport verify(const WeierstrassData& d, const ParamDomain& dom,
                          const Tolerances& tol, unsigned workers) {
  const std::size_t n = dom.sample_count();
  std::vector<ExclusionZone> zones = dom.excluded;
  zones.insert(zones.end(), d.exclusions().begin(), d.exclusions().end());
  const bool abort_on_skip = d.policy().behavior == SingularityPolicy::Behavior::error;
  const double h = tol.fd_step;

  const unsigned nworkers =
      static_cast<unsigned>(std::min<std::size_t>(std::max(1u, workers), n));
  std::vector<std::array<Acc, kNumChecks>> per_worker(nworkers);
  std::vector<std::exception_ptr> errors(nworkers);
  std::vector<std::size_t> error_index(nworkers, n);

  auto run = [&](unsigned w) {
    std::array<Acc, kNumChecks>& acc = per_worker[w];
    auto skip_all = [&] {
      for (Acc& a : acc) a.skip();
    };
    for (std::size_t i = w; i < n; i += nworkers) {
      const Complex z = dom.grid_point(i);
      try {
        if (inside_any_zone(z, zones)) {
          if (abort_on_skip)
            throw EvalError("grid sample inside a declared exclusion zone", z, "");
          skip_all();
          continue;
        }
        ComplexVec3 phi, dphi;
        try {
          phi = d.phi_at(z);
          dphi = d.phi_prime_at(z);
        } catch (const EvalError&) {
          if (abort_on_skip) throw;
          skip_all();
          continue;
        }

        const RealVec3 re = re_vec(phi);
        const RealVec3 im = im_vec(phi);
        const double a = norm_sq(re);
        const double herm = hermitian_norm_sq(phi);
        acc[kPhiSquare].add(std::abs(cvec_square(phi)) / (1.0 + herm), herm, i);
        acc[kLemma1].add(std::abs(a - norm_sq(im)) / (1.0 + a), a, i);
        acc[kLemma2].add(std::abs(dot_real(re, im)) / (1.0 + a), a, i);

        const RealVec3 x_uu = re_vec(dphi);
        const SurfaceSample s =
            make_sample(z, RealVec3{}, FirstDerivs{re, -im},
                        SecondDerivs{x_uu, -x_uu, -im_vec(dphi)});
        add_form_checks(s, i, acc.data());

        try {
          const FirstDerivs f1 = d.fd_first_derivs(z, h);
          const SecondDerivs f2 = d.fd_second_derivs(z, h);
          const double r = std::max({norm(s.x_u - f1.x_u), norm(s.x_v - f1.x_v),
                                     norm(s.x_uu - f2.x_uu), norm(s.x_vv - f2.x_vv),
                                     norm(s.x_uv - f2.x_uv)});
          acc[kFd].add(r, 0.0, i);
        } catch (const EvalError&) {
          if (abort_on_skip) throw;
          acc[kFd].skip();
        }

        try {
          const ComplexVec3 straight =
              d.integrate_phi(z, IntegrationPath::straight(d.basepoint(), z));
          const ComplexVec3 bent =
              d.integrate_phi(z, IntegrationPath::axis_aligned(d.basepoint(), z));
          acc[kPath].add(max_abs_component(straight - bent), 0.0, i);
        } catch (const PathError&) {
          if (abort_on_skip) throw;
          acc[kPath].skip();
        } catch (const EvalError&) {
          if (abort_on_skip) throw;
          acc[kPath].skip();
        }
      } catch (...) {
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

  std::array<Acc, kNumChecks> total;
  for (const auto& pw : per_worker)
    for (int id = 0; id < kNumChecks; ++id) total[id].merge(pw[id]);

  if (total[kPhiSquare].checked == 0)
    throw MeshError("every grid sample was skipped; nothing to verify");

  VerificationReport rep;
  for (int id = 0; id < kNumChecks; ++id)
    rep.checks.push_back(make_record(id, total[id], tol));
  rep.convention_constant = measure_convention_constant();
  rep.overall = true;
  for (const CheckRecord& c : rep.checks) rep.overall = rep.overall && c.pass;
  return rep;
}

std::string report_to_json(const VerificationReport& r) {
  nlohmann::ordered_json j;
  j["schema_version"] = "wrep-report/1";
  j["checks"] = nlohmann::ordered_json::array();
  for (const CheckRecord& c : r.checks) {
    nlohmann::ordered_json jc;
    jc["name"] = c.name;
    jc["max_abs_residual"] = c.max_abs_residual;
    jc["relative_scale"] = c.relative_scale;
    jc["tolerance"] = c.tolerance;
    jc["samples_checked"] = c.samples_checked;
    jc["samples_skipped"] = c.samples_skipped;
    jc["pass"] = c.pass;
    j["checks"].push_back(std::move(jc));
  }
  j["convention_constant"] = r.convention_constant;
  j["overall"] = r.overall;
  return j.dump(2) + "\n";
}

SurfaceSample sphere_sample(double R, double u, double v) {
  const double cu = std::cos(u), su = std::sin(u);
  const double cv = std::cos(v), sv = std::sin(v);
  const RealVec3 x = sphere_position(R, u, v);
  const FirstDerivs d1{{-R * su * cv, R * cu * cv, 0.0},
                       {-R * cu * sv, -R * su * sv, R * cv}};
  const SecondDerivs d2{{-R * cu * cv, -R * su * cv, 0.0},
                        {-R * cu * cv, -R * su * cv, -R * sv},
                        {R * su * sv, -R * cu * sv, 0.0}};
  return make_sample(Complex{u, v}, x, d1, d2);
}

SurfaceSample sphere_fd_sample(double R, double u, double v, double h) {
  auto p = [R](double uu, double vv) { return sphere_position(R, uu, vv); };
  const double s1 = 1.0 / (2.0 * h), s2 = 1.0 / (h * h);
  const FirstDerivs d1{s1 * (p(u + h, v) - p(u - h, v)),
                       s1 * (p(u, v + h) - p(u, v - h))};
  const RealVec3 mid = 2.0 * p(u, v);
  const SecondDerivs d2{
      s2 * (p(u + h, v) - mid + p(u - h, v)),
      s2 * (p(u, v + h) - mid + p(u, v - h)),
      (0.25 * s2) * (p(u + h, v + h) - p(u + h, v - h) - p(u - h, v + h) +
                     p(u - h, v - h))};
  return make_sample(Complex{u, v}, p(u, v), d1, d2);
}

double measure_convention_constant() {
  const SurfaceSample s = sphere_sample(1.0, 0.3, 0.2);
  return s.H_scalar / mean_curvature_crosscheck(s);
}

VerificationReport sphere_control_report(double R, std::size_t n,
                                         const Tolerances& tol) {
  std::array<Acc, kNumChecks> acc;
  std::size_t i = 0;
  for (std::size_t iv = 0; iv < n; ++iv)
    for (std::size_t iu = 0; iu < n; ++iu, ++i) {
      const double u = 0.1 + 0.9 * static_cast<double>(iu) / static_cast<double>(n - 1);
      const double v = 0.1 + 0.7 * static_cast<double>(iv) / static_cast<double>(n - 1);
      add_form_checks(sphere_sample(R, u, v), i, acc.data());
    }

  VerificationReport rep;
  for (int id = kOrtho; id <= kCrossZero; ++id)
    rep.checks.push_back(make_record(id, acc[id], tol));
  rep.convention_constant = measure_convention_constant();
  rep.overall = true;
  for (const CheckRecord& c : rep.checks) rep.overall = rep.overall && c.pass;
  return rep;
}

}  // namespace wrep
