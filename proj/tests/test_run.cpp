#include <cstdio>
#include <filesystem>
#include <fstream>

#include <doctest.h>
#include <json.hpp>

#include "qcmod/report_json.hpp"
#include "qcmod/run.hpp"

using namespace qcmod;
using nlohmann::json;

namespace {

RunConfig small_ring_config() {
  RunConfig cfg;
  cfg.command = "modulus-ring";
  cfg.r1 = 1.0;
  cfg.r2 = 2.0;
  cfg.curves = 96;
  cfg.subdiv = 12;
  cfg.grid = 64;
  return cfg;
}

}  // namespace

TEST_CASE("radii parsing") {
  const auto geo = parse_radii("1e-2:1e-6");
  REQUIRE(geo.size() == 5);
  CHECK(geo.front() == doctest::Approx(1e-2));
  CHECK(geo.back() == doctest::Approx(1e-6));
  for (std::size_t i = 0; i + 1 < geo.size(); ++i) {
    CHECK(geo[i + 1] == doctest::Approx(geo[i] * 0.1));
  }

  const auto listed = parse_radii("0.5,0.25,0.125");
  CHECK(listed == std::vector<double>{0.5, 0.25, 0.125});

  CHECK_THROWS(parse_radii("1e-6:1e-2"));  // must decrease
  CHECK_THROWS(parse_radii(""));
  CHECK_THROWS(parse_double_list("1.0,abc"));
}

TEST_CASE("reports are deterministic and echo the config") {
  RunConfig cfg = small_ring_config();
  cfg.seed = 7;
  const RunResult r1 = run(cfg);
  const RunResult r2 = run(cfg);
  CHECK(r1.exit_code == 0);
  CHECK(r1.text == r2.text);  // byte-identical

  const json j = json::parse(r1.text);
  CHECK(j.at("config").at("command") == "modulus-ring");
  CHECK(j.at("config").at("seed") == 7);
  CHECK(j.at("config").at("grid") == 64);
  CHECK(j.at("analytic").get<double>() == doctest::Approx(2.0 * M_PI / std::log(2.0)));
  CHECK(j.at("discrete").at("converged").get<bool>());
}

TEST_CASE("validation failures exit with code 2") {
  RunConfig cfg = small_ring_config();
  cfg.command = "no-such-command";
  CHECK(run(cfg).exit_code == 2);

  cfg = small_ring_config();
  cfg.r1 = 2.0;
  cfg.r2 = 1.0;
  const RunResult bad = run(cfg);
  CHECK(bad.exit_code == 2);
  CHECK(bad.text.find("error") != std::string::npos);

  RunConfig cl;
  cl.command = "cluster";  // no radii given
  CHECK(run(cl).exit_code == 2);

  RunConfig fmt = small_ring_config();
  fmt.format = "yaml";
  CHECK(run(fmt).exit_code == 2);
}

TEST_CASE("solver non-convergence exits with code 3") {
  RunConfig cfg = small_ring_config();
  cfg.tol = 1e-15;
  cfg.max_iter = 3;
  const RunResult r = run(cfg);
  CHECK(r.exit_code == 3);
  const json j = json::parse(r.text);
  CHECK_FALSE(j.at("discrete").at("converged").get<bool>());
}

TEST_CASE("csv output is one flat row per report") {
  RunConfig cfg = small_ring_config();
  cfg.format = "csv";
  const RunResult r = run(cfg);
  REQUIRE(r.exit_code == 0);
  std::size_t lines = 0;
  for (char c : r.text) lines += c == '\n';
  CHECK(lines == 2);  // header + one row
  CHECK(r.text.find("discrete.value") != std::string::npos);
  CHECK(r.text.find("config.seed") != std::string::npos);

  RunConfig sweep;
  sweep.command = "integrability";
  sweep.alphas = {0.5, 1.0, 1.5};
  sweep.p = 1.0;
  sweep.format = "csv";
  const RunResult s = run(sweep);
  REQUIRE(s.exit_code == 0);
  lines = 0;
  for (char c : s.text) lines += c == '\n';
  CHECK(lines == 4);  // header + three rows
}

TEST_CASE("integrability command") {
  RunConfig cfg;
  cfg.command = "integrability";
  cfg.alpha = 1.0;
  cfg.p = 1.0;
  cfg.n = 2;
  const RunResult r = run(cfg);
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.text);
  const json& item = j.at("results").at(0);
  CHECK(item.at("finite").get<bool>());
  CHECK(item.at("threshold").get<double>() == doctest::Approx(2.0));
}

TEST_CASE("cluster command resolves symbolic targets") {
  RunConfig cfg;
  cfg.command = "cluster";
  cfg.map = "radial-inverse";
  cfg.alpha = 1.0;
  cfg.target = "e2";
  cfg.radii = {1e-2, 1e-3, 1e-4};
  cfg.dirs = 32;
  const RunResult r = run(cfg);
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.text);
  CHECK(j.at("extends").get<bool>());
  const auto limit = j.at("limit").get<std::vector<double>>();
  CHECK(limit[1] == doctest::Approx(0.5).epsilon(1e-2));
}

TEST_CASE("family files round trip and feed verify-general") {
  const Annulus a(Vec{0.0, 0.0}, 0.5, 1.0);
  const CurveFamily fam = ring_family(a, 48, 8);
  const auto path =
      (std::filesystem::temp_directory_path() / "qcmod_test_family.json").string();
  save_family(fam, path);
  const CurveFamily back = load_family(path);
  REQUIRE(back.curves.size() == fam.curves.size());
  for (std::size_t i = 0; i < fam.curves.size(); ++i) {
    CHECK(back.curves[i].vertices == fam.curves[i].vertices);
  }

  RunConfig cfg;
  cfg.command = "verify-general";
  cfg.family_file = path;
  cfg.map = "identity";
  cfg.Q = "one";
  cfg.grid = 64;
  const RunResult r = run(cfg);
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.text);
  CHECK(j.at("verdict") == "satisfied");
  CHECK(j.at("satisfied").get<bool>());
  std::remove(path.c_str());
}

TEST_CASE("weakflat and recenter commands") {
  RunConfig wf;
  wf.command = "weakflat";
  wf.eps0 = 0.5;
  wf.P = 1.0;
  wf.cn = 1.0;
  wf.curves = 64;
  wf.grid = 64;
  wf.max_iter = 4000;
  const RunResult r = run(wf);
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.text);
  CHECK(j.at("bound").get<double>() > 1.0);
  CHECK(j.at("eps").get<double>() < 0.5);

  RunConfig rc;
  rc.command = "recenter";
  rc.eps1 = 1.0;
  rc.eps1_star = 2.0;
  const RunResult r2 = run(rc);
  REQUIRE(r2.exit_code == 0);
  const json j2 = json::parse(r2.text);
  CHECK(j2.at("k0") == 3);
  CHECK(j2.at("eps_t1").get<double>() == doctest::Approx(1.25));
  CHECK(j2.at("eps_t2").get<double>() == doctest::Approx(1.5));
  CHECK(j2.at("centers_checked").get<bool>());
}
