#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wrep/catalog.hpp"
#include "wrep/errors.hpp"
#include "wrep/expr.hpp"
#include "wrep/geometry.hpp"
#include "wrep/mesh.hpp"
#include "wrep/verification.hpp"
#include "wrep/weierstrass.hpp"

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

/// Bad flags, bad config, bad combinations: exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Raw {
  std::string f, g, phi1, phi2, phi3, surface;
  std::string domain, res, basepoint, out, format, report, at;
  std::vector<std::string> exclude;
  std::vector<std::string> tol;
  std::map<std::string, double> config_tol;
  unsigned workers = 1;
  bool normals = false;
  std::string config;
};

double parse_double(const std::string& flag, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw UsageError(flag + ": expected a number, got '" + text + "'");
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t p = s.find(sep, start);
    parts.push_back(s.substr(start, p - start));
    if (p == std::string::npos) break;
    start = p + 1;
  }
  return parts;
}

wrep::Complex parse_complex(const std::string& flag, const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 2) throw UsageError(flag + ": expected RE,IM, got '" + text + "'");
  return {parse_double(flag, parts[0]), parse_double(flag, parts[1])};
}

wrep::Expr parse_expr_flag(const std::string& flag, const std::string& text) {
  try {
    return wrep::parse(text);
  } catch (const wrep::UnknownIdentifierError& e) {
    throw UsageError(flag + ": " + e.what());
  } catch (const wrep::ParseError& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

std::pair<std::size_t, std::size_t> parse_res(const std::string& text) {
  const auto parts = split(text, 'x');
  if (parts.size() == 2) {
    try {
      const long nu = std::stol(parts[0]);
      const long nv = std::stol(parts[1]);
      if (nu >= 2 && nv >= 2) return {static_cast<std::size_t>(nu), static_cast<std::size_t>(nv)};
    } catch (const std::exception&) {
    }
  }
  throw UsageError("--res: expected NUxNV with NU, NV >= 2, got '" + text + "'");
}

bool flag_given(CLI::App* sub, const std::string& name) {
  auto* opt = sub->get_option_no_throw(name);
  return opt != nullptr && opt->count() > 0;
}

void merge_config(CLI::App* sub, Raw& raw) {
  if (raw.config.empty()) return;
  std::ifstream in(raw.config);
  if (!in) throw UsageError("--config: cannot open '" + raw.config + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw UsageError("--config: " + std::string(e.what()));
  }
  if (!j.is_object()) throw UsageError("--config: top level must be a JSON object");

  auto take_string = [&](const char* key, std::string& out) {
    if (!j.contains(key)) return;
    const std::string flag = std::string("--") + key;
    if (sub->get_option_no_throw(flag) == nullptr) return;  // not valid for this mode
    if (flag_given(sub, flag)) return;                      // command line wins
    if (!j[key].is_string())
      throw UsageError("--config: key '" + std::string(key) + "' must be a string");
    out = j[key].get<std::string>();
  };
  take_string("f", raw.f);
  take_string("g", raw.g);
  take_string("phi1", raw.phi1);
  take_string("phi2", raw.phi2);
  take_string("phi3", raw.phi3);
  take_string("surface", raw.surface);
  take_string("domain", raw.domain);
  take_string("res", raw.res);
  take_string("basepoint", raw.basepoint);
  take_string("out", raw.out);
  take_string("format", raw.format);
  take_string("report", raw.report);
  take_string("at", raw.at);

  if (j.contains("exclude") && sub->get_option_no_throw("--exclude") &&
      !flag_given(sub, "--exclude")) {
    if (!j["exclude"].is_array())
      throw UsageError("--config: key 'exclude' must be an array of strings");
    for (const auto& item : j["exclude"]) {
      if (!item.is_string())
        throw UsageError("--config: 'exclude' entries must be strings");
      raw.exclude.push_back(item.get<std::string>());
    }
  }
  if (j.contains("tol") && sub->get_option_no_throw("--tol")) {
    if (!j["tol"].is_object())
      throw UsageError("--config: key 'tol' must be an object of numbers");
    for (const auto& [k, val] : j["tol"].items()) {
      if (!val.is_number())
        throw UsageError("--config: 'tol' values must be numbers");
      raw.config_tol[k] = val.get<double>();
    }
  }
  if (j.contains("workers") && sub->get_option_no_throw("--workers") &&
      !flag_given(sub, "--workers")) {
    if (!j["workers"].is_number_unsigned())
      throw UsageError("--config: key 'workers' must be a non-negative integer");
    raw.workers = j["workers"].get<unsigned>();
  }
  if (j.contains("normals") && sub->get_option_no_throw("--normals") &&
      !flag_given(sub, "--normals")) {
    if (!j["normals"].is_boolean())
      throw UsageError("--config: key 'normals' must be a boolean");
    raw.normals = j["normals"].get<bool>();
  }
}

wrep::Tolerances build_tolerances(const Raw& raw) {
  std::map<std::string, double> values = raw.config_tol;
  for (const std::string& kv : raw.tol) {
    const std::size_t eq = kv.find('=');
    if (eq == std::string::npos)
      throw UsageError("--tol: expected key=value, got '" + kv + "'");
    values[kv.substr(0, eq)] = parse_double("--tol", kv.substr(eq + 1));
  }
  wrep::Tolerances t;
  for (const auto& [k, v] : values) {
    if (k == "algebraic")
      t.algebraic = v;
    else if (k == "mean_curvature")
      t.mean_curvature = v;
    else if (k == "fd")
      t.fd = v;
    else if (k == "path")
      t.path = v;
    else if (k == "fd_step")
      t.fd_step = v;
    else
      throw UsageError("--tol: unknown key '" + k +
                       "' (known: algebraic, mean_curvature, fd, path, fd_step)");
  }
  return t;
}

unsigned effective_workers(const Raw& raw) {
  if (raw.workers != 0) return raw.workers;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

wrep::WeierstrassData build_data(const Raw& raw) {
  const bool has_fg = !raw.f.empty() || !raw.g.empty();
  const bool has_phi = !raw.phi1.empty() || !raw.phi2.empty() || !raw.phi3.empty();
  const bool has_surface = !raw.surface.empty();
  const int sources = int(has_fg) + int(has_phi) + int(has_surface);
  if (sources == 0)
    throw UsageError("no data source: give --f/--g, --phi1/--phi2/--phi3, or --surface");
  if (sources > 1)
    throw UsageError("give exactly one data source (--f/--g, --phi triple, or --surface)");

  wrep::WeierstrassOptions opts;
  if (!raw.basepoint.empty())
    opts.basepoint = parse_complex("--basepoint", raw.basepoint);

  if (has_fg) {
    if (raw.f.empty()) throw UsageError("--g given without --f");
    if (raw.g.empty()) throw UsageError("--f given without --g");
    return wrep::WeierstrassData::make_phi(parse_expr_flag("--f", raw.f),
                                           parse_expr_flag("--g", raw.g), opts);
  }
  if (has_phi) {
    if (raw.phi1.empty() || raw.phi2.empty() || raw.phi3.empty())
      throw UsageError("--phi1, --phi2, --phi3 must be given together");
    return wrep::WeierstrassData::from_phi(parse_expr_flag("--phi1", raw.phi1),
                                           parse_expr_flag("--phi2", raw.phi2),
                                           parse_expr_flag("--phi3", raw.phi3), opts);
  }
  const wrep::CatalogEntry* entry = wrep::find_entry(raw.surface);
  if (entry == nullptr) {
    std::string names;
    for (const auto& e : wrep::catalog_entries())
      names += (names.empty() ? "" : ", ") + e.name;
    throw UsageError("--surface: unknown surface '" + raw.surface + "' (known: " + names +
                     ")");
  }
  if (raw.basepoint.empty()) return entry->data;
  // Rebuild the entry's data around the requested basepoint.
  if (entry->data.has_fg())
    return wrep::WeierstrassData::make_phi(entry->data.f(), entry->data.g(), opts);
  return wrep::WeierstrassData::from_phi(entry->data.phi()[0], entry->data.phi()[1],
                                         entry->data.phi()[2], opts);
}

void apply_excludes(const Raw& raw, const wrep::WeierstrassData& data,
                    wrep::ParamDomain& dom) {
  for (const std::string& ex : raw.exclude) {
    const auto parts = split(ex, ',');
    if (parts.size() != 2 && parts.size() != 3)
      throw UsageError("--exclude: expected RE,IM or RE,IM,RADIUS, got '" + ex + "'");
    wrep::ExclusionZone zone;
    zone.center = {parse_double("--exclude", parts[0]),
                   parse_double("--exclude", parts[1])};
    zone.radius = parts.size() == 3 ? parse_double("--exclude", parts[2])
                                    : data.policy().exclusion_radius;
    dom.excluded.push_back(zone);
  }
}

wrep::ParamDomain build_domain(const Raw& raw, const wrep::WeierstrassData& data) {
  wrep::ParamDomain dom;
  std::size_t nu = 64, nv = 64;
  const bool res_given = !raw.res.empty();
  if (res_given) std::tie(nu, nv) = parse_res(raw.res);

  if (raw.domain.empty() && !raw.surface.empty()) {
    const wrep::CatalogEntry* entry = wrep::find_entry(raw.surface);
    if (entry != nullptr) {
      dom = entry->default_domain;
      if (res_given) {
        if (dom.shape == wrep::ParamDomain::Shape::rectangle)
          dom = wrep::ParamDomain::rectangle(dom.u0, dom.u1, dom.v0, dom.v1, nu, nv);
        else
          dom = wrep::ParamDomain::disk(dom.radius, dom.center, nu, nv);
      }
      apply_excludes(raw, data, dom);
      return dom;
    }
  }

  const std::string spec = raw.domain.empty() ? "rect:-1,1,-1,1" : raw.domain;
  const std::size_t colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (kind == "rect") {
    const auto parts = split(args, ',');
    if (parts.size() != 4)
      throw UsageError("--domain: expected rect:u0,u1,v0,v1, got '" + spec + "'");
    dom = wrep::ParamDomain::rectangle(
        parse_double("--domain", parts[0]), parse_double("--domain", parts[1]),
        parse_double("--domain", parts[2]), parse_double("--domain", parts[3]), nu, nv);
  } else if (kind == "disk") {
    if (args.empty() || args.find(',') != std::string::npos)
      throw UsageError("--domain: expected disk:R, got '" + spec + "'");
    dom = wrep::ParamDomain::disk(parse_double("--domain", args), wrep::Complex{0, 0},
                                  nu, nv);
  } else {
    throw UsageError("--domain: expected rect:u0,u1,v0,v1 or disk:R, got '" + spec + "'");
  }
  apply_excludes(raw, data, dom);
  return dom;
}

json vec_json(const wrep::RealVec3& v) { return json::array({v.x1, v.x2, v.x3}); }

void print_summary(const wrep::VerificationReport& rep) {
  for (const wrep::CheckRecord& c : rep.checks) {
    std::fprintf(stderr, "[%s] %-19s max residual %.3e  tol %.1e  (%zu checked, %zu skipped)\n",
                 c.pass ? "PASS" : "FAIL", c.name.c_str(), c.max_abs_residual,
                 c.tolerance, c.samples_checked, c.samples_skipped);
  }
  std::fprintf(stderr, "overall: %s  (curvature convention constant %.6g)\n",
               rep.overall ? "pass" : "FAIL", rep.convention_constant);
}

void write_text_file(const std::string& flag, const std::string& path,
                     const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError(flag + ": cannot open '" + path + "' for writing");
  out << body;
  if (!out) throw wrep::Error("write failure on '" + path + "'");
}

int run_generate(const Raw& raw) {
  const wrep::WeierstrassData data = build_data(raw);
  const wrep::ParamDomain dom = build_domain(raw, data);
  if (raw.out.empty()) throw UsageError("--out is required for generate");

  std::string fmt = raw.format;
  if (fmt.empty()) {
    const std::size_t dot = raw.out.rfind('.');
    if (dot != std::string::npos) {
      const std::string ext = raw.out.substr(dot + 1);
      if (ext == "obj" || ext == "ply") fmt = ext;
    }
    if (fmt.empty())
      throw UsageError("--format: not given and not inferable from --out '" + raw.out +
                       "'");
  }
  if (fmt != "obj" && fmt != "ply")
    throw UsageError("--format: expected obj or ply, got '" + fmt + "'");

  const wrep::SurfaceGrid grid = wrep::sample_grid(data, dom, effective_workers(raw));
  const wrep::Mesh mesh = wrep::triangulate(grid, raw.normals);

  std::ostringstream body;
  if (fmt == "obj")
    wrep::export_obj(mesh, body);
  else
    wrep::export_ply(mesh, body);
  write_text_file("--out", raw.out, body.str());
  std::fprintf(stderr, "wrote %zu vertices, %zu faces (%zu grid samples skipped) to %s\n",
               mesh.vertices.size(), mesh.faces.size(), mesh.skipped.size(),
               raw.out.c_str());

  if (!raw.report.empty()) {
    const wrep::VerificationReport rep =
        wrep::verify(data, dom, build_tolerances(raw), effective_workers(raw));
    print_summary(rep);
    write_text_file("--report", raw.report, wrep::report_to_json(rep));
  }
  return 0;
}

int run_verify(const Raw& raw) {
  const wrep::WeierstrassData data = build_data(raw);
  const wrep::ParamDomain dom = build_domain(raw, data);
  const wrep::VerificationReport rep =
      wrep::verify(data, dom, build_tolerances(raw), effective_workers(raw));
  print_summary(rep);
  const std::string body = wrep::report_to_json(rep);
  if (raw.report.empty())
    std::cout << body;
  else
    write_text_file("--report", raw.report, body);
  return rep.overall ? 0 : 1;
}

int run_eval(const Raw& raw) {
  const wrep::WeierstrassData data = build_data(raw);
  if (raw.at.empty()) throw UsageError("--at is required for eval");
  const wrep::Complex z = parse_complex("--at", raw.at);
  const wrep::SurfaceSample s = wrep::sample_at(data, z);
  if (s.degenerate)
    throw wrep::DegenerateError("eval point (" + std::to_string(z.real()) + ", " +
                                    std::to_string(z.imag()) +
                                    ") is a branch point; H is undefined there",
                                s.E * s.G - s.F * s.F);
  ordered_json j;
  j["z"] = json::array({z.real(), z.imag()});
  j["x"] = vec_json(s.x);
  j["x_u"] = vec_json(s.x_u);
  j["x_v"] = vec_json(s.x_v);
  j["H"] = vec_json(s.H_vec);
  std::cout << j.dump(2) << "\n";
  return 0;
}

std::string domain_string(const wrep::ParamDomain& dom) {
  char buf[160];
  if (dom.shape == wrep::ParamDomain::Shape::rectangle)
    std::snprintf(buf, sizeof buf, "rect:%.17g,%.17g,%.17g,%.17g", dom.u0, dom.u1,
                  dom.v0, dom.v1);
  else
    std::snprintf(buf, sizeof buf, "disk:%.17g", dom.radius);
  return buf;
}

int run_catalog() {
  ordered_json arr = ordered_json::array();
  for (const wrep::CatalogEntry& e : wrep::catalog_entries()) {
    ordered_json j;
    j["name"] = e.name;
    if (e.data.has_fg()) {
      j["f"] = to_string(e.data.f());
      j["g"] = to_string(e.data.g());
    } else {
      j["phi"] = json::array({to_string(e.data.phi()[0]), to_string(e.data.phi()[1]),
                              to_string(e.data.phi()[2])});
    }
    j["domain"] = domain_string(e.default_domain);
    j["res"] = std::to_string(e.default_domain.nu) + "x" +
               std::to_string(e.default_domain.nv);
    if (!e.closed_form.empty()) j["closed_form"] = e.closed_form;
    if (!e.implicit_check.empty()) j["implicit_check"] = e.implicit_check;
    if (!e.note.empty()) j["note"] = e.note;
    arr.push_back(std::move(j));
  }
  std::cout << arr.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weierstrass-data minimal surface generator and verifier"};
  app.require_subcommand(1);
  Raw raw;

  auto add_source = [&](CLI::App* sub) {
    sub->add_option("--f", raw.f, "generator expression f(z)");
    sub->add_option("--g", raw.g, "generator expression g(z)");
    sub->add_option("--phi1", raw.phi1, "first phi component (direct-phi mode)");
    sub->add_option("--phi2", raw.phi2, "second phi component (direct-phi mode)");
    sub->add_option("--phi3", raw.phi3, "third phi component (direct-phi mode)");
    sub->add_option("--surface", raw.surface, "built-in surface name (see catalog)");
    sub->add_option("--basepoint", raw.basepoint,
                    "integration basepoint RE,IM (default 0,0)");
    sub->add_option("--config", raw.config,
                    "JSON config file; keys mirror flags, flags win");
  };
  auto add_domain = [&](CLI::App* sub) {
    sub->add_option("--domain", raw.domain,
                    "rect:u0,u1,v0,v1 or disk:R (default rect:-1,1,-1,1)");
    sub->add_option("--res", raw.res, "grid resolution NUxNV (default 64x64)");
    sub->add_option("--exclude", raw.exclude,
                    "exclusion zone RE,IM or RE,IM,RADIUS (repeatable)");
    sub->add_option("--tol", raw.tol,
                    "tolerance override key=value (algebraic, mean_curvature, fd, "
                    "path, fd_step; repeatable)");
    sub->add_option("--workers", raw.workers,
                    "worker threads for grid sampling; 0 = all cores (default 1)");
  };

  CLI::App* cmd_generate =
      app.add_subcommand("generate", "sample a surface and write an OBJ/PLY mesh");
  add_source(cmd_generate);
  add_domain(cmd_generate);
  cmd_generate->add_option("--out", raw.out, "output mesh path (required)");
  cmd_generate->add_option("--format", raw.format,
                           "obj or ply (default: from --out extension)");
  cmd_generate->add_option("--report", raw.report,
                           "also verify and write a JSON report here");
  cmd_generate->add_flag("--normals", raw.normals, "export per-vertex normals");

  CLI::App* cmd_verify =
      app.add_subcommand("verify", "check every identity on a sampled domain");
  add_source(cmd_verify);
  add_domain(cmd_verify);
  cmd_verify->add_option("--report", raw.report,
                         "write the JSON report here (default: stdout)");

  CLI::App* cmd_eval =
      app.add_subcommand("eval", "evaluate x, x_u, x_v, H at one parameter point");
  add_source(cmd_eval);
  cmd_eval->add_option("--at", raw.at, "parameter point RE,IM (required)");

  app.add_subcommand("catalog", "list built-in surfaces as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  try {
    merge_config(sub, raw);
    if (sub == cmd_generate) return run_generate(raw);
    if (sub == cmd_verify) return run_verify(raw);
    if (sub == cmd_eval) return run_eval(raw);
    return run_catalog();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const wrep::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const wrep::UnknownIdentifierError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const wrep::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const wrep::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
