#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

// WREP_CLI_PATH is injected by the build: the freshly built executable.

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(WREP_CLI_PATH) + " " + args;
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  if (WIFEXITED(status)) return WEXITSTATUS(status);
  return -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  REQUIRE(out.good());
  out << text;
}

struct TempFile {
  explicit TempFile(std::string p) : path(std::move(p)) {}
  ~TempFile() { std::remove(path.c_str()); }
  std::string path;
};

}  // namespace

TEST_CASE("verify on a catalog surface exits 0 and writes a passing report") {
  TempFile report("cli_verify_report.json");
  const int rc = run("verify --surface enneper --res 8x8 --report " +
                     report.path + " 2>/dev/null");
  CHECK(rc == 0);

  const nlohmann::json j = nlohmann::json::parse(slurp(report.path));
  CHECK(j.at("overall").get<bool>());
  CHECK(j.at("schema_version").get<std::string>() == "wrep-report/1");
  CHECK(j.at("checks").size() == 10);
}

TEST_CASE("verify exits 1 when a check fails") {
  const int rc = run(
      "verify --phi1 \"1 - z^2\" --phi2 \"i*(1 - z^2)\" --phi3 \"2*z\" "
      "--domain disk:1 --res 8x8 >/dev/null 2>/dev/null");
  CHECK(rc == 1);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run("verify --surface enneper --bogus 2>/dev/null") == 2);
  CHECK(run("verify --res 8x8 2>/dev/null") == 2);  // no data source
  CHECK(run("verify --surface no-such-surface 2>/dev/null") == 2);
  CHECK(run("verify --surface enneper --res 8 2>/dev/null") == 2);
  CHECK(run("verify --f 1 2>/dev/null") == 2);  // --f without --g
  CHECK(run("verify --surface enneper --f 1 --g z 2>/dev/null") == 2);
  CHECK(run("eval --surface enneper 2>/dev/null") == 2);  // missing --at
  CHECK(run("verify --f \"1 +\" --g z 2>/dev/null") == 2);  // parse error
  CHECK(run("2>/dev/null") == 2);  // no subcommand
}

TEST_CASE("numerical failures exit 3") {
  // Singular evaluation at the requested point.
  CHECK(run("eval --f \"1/z\" --g z --at 0,0 2>/dev/null") == 3);
  // Branch point: H is undefined.
  CHECK(run("eval --f z --g z --at 0,0 2>/dev/null") == 3);
}

TEST_CASE("eval prints the sample as JSON") {
  TempFile out("cli_eval_out.json");
  const int rc =
      run("eval --surface enneper --at 1,0 > " + out.path + " 2>/dev/null");
  CHECK(rc == 0);

  const nlohmann::json j = nlohmann::json::parse(slurp(out.path));
  CHECK(j.at("z")[0].get<double>() == 1.0);
  CHECK(j.at("x")[0].get<double>() == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
  CHECK(j.at("x")[1].get<double>() == doctest::Approx(0.0));
  CHECK(j.at("x")[2].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
  // phi(1) = (0, 2i, 2), so x_u = Re phi = (0, 0, 2).
  CHECK(j.at("x_u")[0].get<double>() == doctest::Approx(0.0));
  CHECK(j.at("x_u")[2].get<double>() == doctest::Approx(2.0));
  CHECK(j.at("H")[0].get<double>() == doctest::Approx(0.0));
}

TEST_CASE("catalog lists five entries") {
  TempFile out("cli_catalog_out.json");
  const int rc = run("catalog > " + out.path + " 2>/dev/null");
  CHECK(rc == 0);
  const nlohmann::json j = nlohmann::json::parse(slurp(out.path));
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 5);
  CHECK(j[0].at("name") == "plane");
  CHECK(j[1].at("name") == "enneper");
  CHECK(j[1].at("f") == "1");
  CHECK(j[1].at("g") == "z");
  CHECK(j[4].at("name") == "pole-demo");
  CHECK(j[4].contains("phi"));
}

TEST_CASE("generate writes a deterministic mesh") {
  TempFile a("cli_gen_a.obj");
  TempFile b("cli_gen_b.obj");
  const std::string base =
      "generate --surface catenoid --res 12x12 --normals ";
  CHECK(run(base + "--workers 1 --out " + a.path + " 2>/dev/null") == 0);
  CHECK(run(base + "--workers 3 --out " + b.path + " 2>/dev/null") == 0);

  const std::string ta = slurp(a.path);
  CHECK(ta == slurp(b.path));
  CHECK(ta.compare(0, 2, "v ") == 0);
  CHECK(ta.find("vn ") != std::string::npos);
  CHECK(ta.find("f 1//1") != std::string::npos);
}

TEST_CASE("generate picks the format from the extension or flag") {
  TempFile ply("cli_gen_c.ply");
  CHECK(run("generate --surface enneper --res 6x6 --out " + ply.path +
            " 2>/dev/null") == 0);
  const std::string text = slurp(ply.path);
  CHECK(text.compare(0, 4, "ply\n") == 0);

  TempFile forced("cli_gen_d.mesh");
  CHECK(run("generate --surface enneper --res 6x6 --format ply --out " +
            forced.path + " 2>/dev/null") == 0);
  CHECK(slurp(forced.path).compare(0, 4, "ply\n") == 0);

  TempFile unknown("cli_gen_e.xyz");
  CHECK(run("generate --surface enneper --res 6x6 --out " + unknown.path +
            " 2>/dev/null") == 2);
}

TEST_CASE("config file fills in flags; explicit flags win") {
  TempFile cfg("cli_cfg.json");
  spit(cfg.path, "{\"f\": \"1\", \"g\": \"z\", \"at\": \"1,0\"}\n");

  TempFile out1("cli_cfg_out1.json");
  CHECK(run("eval --config " + cfg.path + " > " + out1.path + " 2>/dev/null") ==
        0);
  const nlohmann::json j1 = nlohmann::json::parse(slurp(out1.path));
  CHECK(j1.at("x")[0].get<double>() == doctest::Approx(2.0 / 3.0).epsilon(1e-9));

  TempFile out2("cli_cfg_out2.json");
  CHECK(run("eval --config " + cfg.path + " --at 0,0 > " + out2.path +
            " 2>/dev/null") == 0);
  const nlohmann::json j2 = nlohmann::json::parse(slurp(out2.path));
  CHECK(j2.at("x")[0].get<double>() == doctest::Approx(0.0));
  CHECK(j2.at("z")[0].get<double>() == 0.0);
}

TEST_CASE("verify honors tolerance overrides") {
  // An impossible algebraic tolerance turns a passing surface into exit 1.
  CHECK(run("verify --surface enneper --res 8x8 --tol algebraic=1e-30 "
            ">/dev/null 2>/dev/null") == 1);
  CHECK(run("verify --surface enneper --res 8x8 --tol bogus=1 "
            ">/dev/null 2>/dev/null") == 2);
}
