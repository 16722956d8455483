#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "angdil/commands.hpp"
#include "angdil/ingest.hpp"
#include "angdil/mapping.hpp"

using namespace angdil;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "angdil");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("angdil_cli_" + name)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& leaf) const { return (path / leaf).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

/// Header-indexed rows of a CSV file without quoted fields.
std::vector<std::vector<std::string>> read_csv(const std::string& path, std::vector<std::string>& header) {
  std::istringstream in(slurp(path));
  std::string line;
  std::vector<std::vector<std::string>> rows;
  bool first = true;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    if (first) header = cells;
    else rows.push_back(cells);
    first = false;
  }
  return rows;
}

std::size_t column(const std::vector<std::string>& header, const std::string& name) {
  for (std::size_t k = 0; k < header.size(); ++k)
    if (header[k] == name) return k;
  FAIL("missing column " << name);
  return 0;
}

void write_sampled(const Mapping& map, const std::string& path, int n_r, int n_theta) {
  std::vector<double> radii;
  for (int i = 1; i <= n_r; ++i) radii.push_back(double(i) / n_r);
  std::ofstream out(path);
  write_sampled_csv(map, radii, n_theta, out);
}

void expect_config_error(std::vector<std::string> args, const std::string& field, const TempDir& dir) {
  args.push_back("--out");
  args.push_back(dir / "rejected");
  const Run r = run(args);
  INFO(r.err);
  CHECK(r.code == cli::kExitUsage);
  CHECK(r.err.find(field + ":") != std::string::npos);
  CHECK_FALSE(fs::exists(dir / "rejected"));
}

}  // namespace

TEST_CASE("cli: invalid configurations name the offending field and write nothing") {
  TempDir dir("validation");
  expect_config_error({"check", "--r-min", "0"}, "grid.r_min", dir);
  expect_config_error({"check", "--r-max", "1.5"}, "grid.r_max", dir);
  expect_config_error({"check", "--r-min", "0.5", "--r-max", "0.4"}, "grid.r_max", dir);
  expect_config_error({"profile", "--r-count", "1"}, "grid.count", dir);
  expect_config_error({"profile", "--spacing", "cubic"}, "grid.spacing", dir);
  expect_config_error({"check", "--p", "2,1.5"}, "p[1]", dir);
  expect_config_error({"check", "--checks", "lemma1,lemma9"}, "checks[1]", dir);
  expect_config_error({"check", "--format", "csv,xml"}, "output.formats[1]", dir);
  expect_config_error({"check", "--circle-nodes", "101"}, "quadrature.circle_nodes", dir);
  expect_config_error({"check", "--map", "radial_power"}, "map.alpha", dir);
  expect_config_error({"check", "--map", "radial_power", "--alpha", "-1"}, "map.alpha", dir);
  expect_config_error({"check", "--map", "mobius", "--a", "1.2,0"}, "map.a", dir);
  expect_config_error({"check", "--map", "spiral"}, "map.family", dir);
  expect_config_error({"check", "--input", dir / "absent.csv"}, "map.path", dir);
  expect_config_error({"ingest-verify", "--map", "identity"}, "map.family", dir);

  std::ofstream(dir / "p_empty.json") << R"({"p": []})";
  expect_config_error({"check", "--config", dir / "p_empty.json"}, "p", dir);
  std::ofstream(dir / "unknown.json") << R"({"grid": {"r_min": 0.1, "step": 2}})";
  expect_config_error({"check", "--config", dir / "unknown.json"}, "grid.step", dir);
  std::ofstream(dir / "nested.json")
      << R"({"map": {"family": "composition", "members": [{"family": "identity"}, {"family": "rotation", "phi": "x"}]}})";
  expect_config_error({"check", "--config", dir / "nested.json"}, "map.members[1].phi", dir);
  std::ofstream(dir / "broken.json") << "{ not json";
  expect_config_error({"check", "--config", dir / "broken.json"}, "config", dir);
}

TEST_CASE("cli: flags override the file, which overrides defaults") {
  TempDir dir("precedence");
  std::ofstream(dir / "run.json")
      << R"({"map": {"family": "radial_power", "alpha": 2}, "p": [3], "grid": {"count": 4, "r_min": 0.2}})";
  const Run r = run({"profile", "--config", dir / "run.json", "--p", "2", "--r-count", "6", "--out",
                     dir / "out", "--format", "csv"});
  REQUIRE(r.code == 0);
  std::vector<std::string> header;
  const auto rows = read_csv(dir / "out/profile.csv", header);
  REQUIRE(rows.size() == 6);
  CHECK(std::stod(rows[0][column(header, "p")]) == 2.0);
  CHECK(std::stod(rows[0][column(header, "r")]) == 0.2);
  CHECK(std::stod(rows[0][column(header, "S_green")]) == doctest::Approx(kPi * 0.0016).epsilon(1e-12));
  CHECK_FALSE(fs::exists(dir / "out/profile.json"));
}

TEST_CASE("cli: output directory defaults to the environment variable") {
  TempDir dir("env");
  ::setenv("ANGDIL_OUT", (dir / "from_env").c_str(), 1);
  const Run r = run({"profile", "--r-count", "3"});
  ::unsetenv("ANGDIL_OUT");
  CHECK(r.code == 0);
  CHECK(fs::exists(dir / "from_env/profile.csv"));
}

TEST_CASE("cli: profile tables") {
  TempDir dir("profile");
  Run r = run({"profile", "--map", "identity", "--p", "2", "--r-count", "5", "--out", dir / "id"});
  REQUIRE(r.code == 0);
  std::vector<std::string> header;
  auto rows = read_csv(dir / "id/profile.csv", header);
  REQUIRE(rows.size() == 5);
  for (const auto& row : rows) {
    const double rad = std::stod(row[column(header, "r")]);
    CHECK(std::abs(std::stod(row[column(header, "delta_p")]) - kTwoPi * rad) <= 1e-10);
  }

  r = run({"profile", "--map", "radial_power", "--alpha", "2", "--p", "2", "--out", dir / "rp"});
  REQUIRE(r.code == 0);
  rows = read_csv(dir / "rp/profile.csv", header);
  REQUIRE(rows.size() == 20);
  for (const auto& row : rows) {
    const double rad = std::stod(row[column(header, "r")]);
    CHECK(std::abs(std::stod(row[column(header, "S_green")]) - kPi * std::pow(rad, 4)) <= 1e-8);
    CHECK(std::abs(std::stod(row[column(header, "S_jacobian")]) - kPi * std::pow(rad, 4)) <= 1e-8);
  }
  const auto doc = nlohmann::json::parse(slurp(dir / "rp/profile.json"));
  CHECK(doc["rows"].size() == 20);
  CHECK(doc["rows"][0].contains("delta_p_error"));
}

TEST_CASE("cli: output directories are created, unwritable ones are I/O errors") {
  TempDir dir("io");
  CHECK(run({"profile", "--r-count", "2", "--out", dir / "a/b/c"}).code == 0);
  CHECK(fs::exists(dir / "a/b/c/profile.csv"));
  std::ofstream(dir / "plain_file") << "x";
  const Run r = run({"profile", "--r-count", "2", "--out", dir / "plain_file/sub"});
  CHECK(r.code == cli::kExitRuntime);
  CHECK(r.err.find("io") != std::string::npos);
}

TEST_CASE("cli: check exit status and rows") {
  TempDir dir("check");
  Run r = run({"check", "--map", "identity", "--p", "2,3", "--out", dir / "id"});
  CHECK(r.code == 0);
  CHECK(r.out.find("min margin") != std::string::npos);

  r = run({"check", "--map", "radial_power", "--alpha", "2", "--p", "2", "--checks", "theorem1_p2",
           "--out", dir / "rp"});
  CHECK(r.code == 0);
  std::vector<std::string> header;
  const auto rows = read_csv(dir / "rp/checks.csv", header);
  REQUIRE(rows.size() == 20);
  for (const auto& row : rows) {
    CHECK(row[column(header, "inequality_id")] == "theorem1_p2");
    CHECK(row[column(header, "sharp")] == "true");
    CHECK(row[column(header, "pass")] == "true");
  }
  const auto doc = nlohmann::json::parse(slurp(dir / "rp/checks.json"));
  CHECK(doc["summary"]["failed"] == 0);
  CHECK(doc["rows"][0]["r2"].is_null());
}

TEST_CASE("cli: a folded sampled map fails with a located violation row") {
  TempDir dir("folded");
  write_sampled(Mapping::angular_reparam({{1.5}, {}}), dir / "folded.csv", 32, 128);
  const Run r = run({"check", "--input", dir / "folded.csv", "--out", dir / "out"});
  CHECK(r.code == cli::kExitFailed);
  std::vector<std::string> header;
  const auto rows = read_csv(dir / "out/checks.csv", header);
  REQUIRE_FALSE(rows.empty());
  CHECK(rows[0][column(header, "inequality_id")] == "regularity");
  CHECK(rows[0][column(header, "pass")] == "false");
  CHECK(std::stod(rows[0][column(header, "r1")]) > 0.0);
  const std::string csv = slurp(dir / "out/checks.csv");
  const std::string first_row = csv.substr(csv.find('\n') + 1);
  CHECK(first_row.find("theta = ") != std::string::npos);

  const Run verify = run({"ingest-verify", "--input", dir / "folded.csv", "--out", dir / "verify"});
  CHECK(verify.code == cli::kExitFailed);
  CHECK(fs::exists(dir / "verify/regularity.json"));
}

TEST_CASE("cli: sampled maps pass within their hull") {
  TempDir dir("sampled");
  write_sampled(Mapping::radial_power(2.0), dir / "rp.csv", 32, 128);
  CHECK(run({"ingest-verify", "--input", dir / "rp.csv", "--out", dir / "v"}).code == 0);
  // finite-difference jets carry ~2e-7 relative error at 128 nodes, above the default tolerance
  const Run r = run({"check", "--input", dir / "rp.csv", "--p", "2", "--checks",
                     "lemma1,isoperimetric,lemma2", "--r-min", "0.1", "--tol-rel", "1e-5", "--out",
                     dir / "c"});
  INFO(r.out << r.err);
  CHECK(r.code == 0);
}

TEST_CASE("cli: identical configs give byte-identical outputs") {
  TempDir dir("determinism");
  for (const char* sub : {"a", "b"}) {
    REQUIRE(run({"check", "--map", "angular_reparam", "--coeffs", "0.3", "--p", "2,2.5", "--out",
                 dir / sub, "--plots"})
                .code == 0);
    REQUIRE(run({"schwarz", "--map", "twist", "--coeffs", "1", "--out", dir / sub}).code == 0);
    REQUIRE(run({"profile", "--map", "mobius", "--a", "0.3,0.2", "--out", dir / sub}).code == 0);
  }
  for (const char* f : {"checks.csv", "checks.json", "margins.svg", "schwarz.csv", "schwarz.json",
                        "profile.csv", "profile.json"}) {
    INFO(f);
    const std::string a = slurp(dir / (std::string("a/") + f));
    CHECK_FALSE(a.empty());
    CHECK(a == slurp(dir / (std::string("b/") + f)));
  }
}

TEST_CASE("cli: schwarz") {
  TempDir dir("schwarz");
  Run r = run({"schwarz", "--map", "radial_power", "--alpha", "2", "--p", "2", "--out", dir / "rp"});
  REQUIRE(r.code == 0);
  std::vector<std::string> header;
  for (const auto& row : read_csv(dir / "rp/schwarz.csv", header))
    CHECK(std::abs(std::stod(row[column(header, "functional")]) - 1.0) <= 1e-6);

  r = run({"schwarz", "--map", "identity", "--p", "2,3", "--out", dir / "id"});
  REQUIRE(r.code == 0);
  const auto proxy = read_csv(dir / "id/schwarz_proxy.csv", header);
  REQUIRE(proxy.size() == 2);
  for (const auto& row : proxy)
    CHECK(std::abs(std::stod(row[column(header, "proxy_liminf")]) - 1.0) <= 1e-6);

  r = run({"schwarz", "--map", "mobius", "--a", "0.3,0.2", "--out", dir / "mob"});
  CHECK(r.code == cli::kExitRuntime);
  CHECK(r.err.find("hypothesis_violation") != std::string::npos);
}

TEST_CASE("cli: plots") {
  TempDir dir("plots");
  REQUIRE(run({"profile", "--map", "radial_power", "--alpha", "2", "--p", "2", "--plots", "--out",
               dir / "p"})
              .code == 0);
  const std::string svg = slurp(dir / "p/area_bound.svg");
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("bound p=2") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);

  REQUIRE(run({"schwarz", "--plots", "--out", dir / "s"}).code == 0);
  CHECK(fs::file_size(dir / "s/schwarz.svg") > 0);

  const Run r = run({"check", "--checks", "none", "--plots", "--out", dir / "empty"});
  CHECK(r.code == 0);
  CHECK(fs::exists(dir / "empty/checks.csv"));
  CHECK_FALSE(fs::exists(dir / "empty/margins.svg"));
}

TEST_CASE("cli: selftest and usage") {
  const Run st = run({"selftest"});
  CHECK(st.code == 0);
  CHECK(st.out.find("FAIL") == std::string::npos);
  CHECK(run({}).code == cli::kExitUsage);
  CHECK(run({"frobnicate"}).code == cli::kExitUsage);
  CHECK(run({"check", "--alpha", "notanumber"}).code == cli::kExitUsage);
  CHECK(run({"--help"}).code == 0);
}
