#include <doctest.h>

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "app/commands.hpp"

using namespace qlimit::app;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("qlimit_test_cli_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("criterion: box n=4 is unresolvable") {
  const auto r = run({"criterion", "--model", "box", "--n", "4"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("0.458") != std::string::npos);
  CHECK(r.out.find("unresolvable") != std::string::npos);
}

TEST_CASE("criterion: harmonic is period-blind and exits 2") {
  const auto r = run({"criterion", "--model", "harmonic", "--n", "7"});
  CHECK(r.code == kExitBadArguments);
  CHECK(r.out.find("period-blind") != std::string::npos);
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("criterion: quartic json") {
  const auto r = run({"criterion", "--model", "quartic", "--omega", "1", "--lambda", "1", "--n", "2", "--format", "json"});
  REQUIRE(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["records"][0]["y_over_hbar"].get<double>() == doctest::Approx(4.0 * 3.141592653589793 / 15.0).epsilon(1e-14));
  CHECK(j["records"][0]["verdict"] == "resolvable");
}

TEST_CASE("scan: hydrogen preset reports n=10 with a note") {
  const auto r = run({"scan", "--preset", "hydrogen", "--preset-dir", QLIMIT_PRESET_DIR});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.find("# first_unresolvable: 10") != std::string::npos);
  CHECK(r.out.find("# note: ") != std::string::npos);
}

TEST_CASE("scan: h2 preset is unresolvable everywhere") {
  const auto r = run({"scan", "--preset", "h2", "--preset-dir", QLIMIT_PRESET_DIR, "--format", "json"});
  REQUIRE(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["records"].size() >= 10);
  for (const auto& rec : j["records"]) CHECK(rec["verdict"] == "unresolvable");
}

TEST_CASE("bad arguments exit 2") {
  CHECK(run({}).code == kExitBadArguments);
  CHECK(run({"criterion", "--model", "box"}).code == kExitBadArguments);
  CHECK(run({"criterion", "--model", "box", "--n", "1"}).code == kExitBadArguments);
  CHECK(run({"criterion", "--model", "rotor", "--n", "3"}).code == kExitBadArguments);
  CHECK(run({"criterion", "--model", "box", "--mass", "-1", "--n", "3"}).code == kExitBadArguments);
  CHECK(run({"criterion", "--preset", "box", "--model", "harmonic", "--n", "3"}).code == kExitBadArguments);
  CHECK(run({"criterion", "--preset", "box", "--mass", "2", "--n", "3"}).code == kExitBadArguments);
  CHECK(run({"criterion", "--preset", "absent", "--n", "3"}).code == kExitBadArguments);
  CHECK(run({"evolve", "--grid", "lin:0:1:3"}).code == kExitBadArguments);
  CHECK(run({"evolve", "--kappa", "0"}).code == kExitBadArguments);
  CHECK(run({"ymean", "--b", "0"}).code == kExitBadArguments);
  CHECK(run({"figures", "7"}).code == kExitBadArguments);
  CHECK(run({"scan", "--model", "box", "--n-min", "5", "--n-max", "4"}).code == kExitBadArguments);
}

TEST_CASE("help exits 0") { CHECK(run({"--help"}).code == kExitOk); }

TEST_CASE("non-convergence exits 3") {
  const auto r = run({"evolve", "--b", "2", "--max-terms", "5", "--grid", "log:10:100:2"});
  CHECK(r.code == kExitNonConvergent);
  CHECK(r.err.find("error") != std::string::npos);
}

TEST_CASE("unwritable output exits 4") {
  CHECK(run({"scan", "--model", "box", "--out", "/proc/nope/x.csv"}).code == kExitIo);
}

TEST_CASE("evolve: t=0 delta, geometric b=0, trace column") {
  const auto r = run({"evolve", "--b", "0", "--grid", "log:0.5:1:2", "--format", "json", "--print-n-max", "40"});
  REQUIRE(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  for (const auto& rec : j["records"]) {
    const double kt = rec["kt"];
    const int n = rec["n"];
    const double w = rec["weight"];
    CHECK(std::abs(rec["trace"].get<double>() - 1.0) <= 1e-8);
    if (kt == 0.0) {
      CHECK(w == (n == 0 ? 1.0 : 0.0));
    } else {
      const double s = 2 * kt;
      CHECK(w == doctest::Approx(std::pow(s / (1 + s), n) / (1 + s)).epsilon(1e-12));
    }
  }
}

TEST_CASE("fidelity: audit verdict in the footer") {
  const auto r = run({"fidelity", "--b", "3", "--grid", "log:0.01:10:4"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.find("# closed_form_audit: agree") != std::string::npos);
}

TEST_CASE("ymean: closed-system footer") {
  const auto r = run({"ymean", "--b", "5", "--omega", "10", "--grid", "log:1e-6:1:5"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.find("# closed_system_delta_energy: 9.5") != std::string::npos);
}

TEST_CASE("file output is deterministic and has a manifest sidecar") {
  const auto dir = scratch("det");
  const auto a = (dir / "a.csv").string();
  const auto b = (dir / "b.csv").string();
  REQUIRE(run({"ymean", "--b", "3", "--grid", "log:0.001:100:20", "--out", a}).code == kExitOk);
  REQUIRE(run({"ymean", "--b", "3", "--grid", "log:0.001:100:20", "--out", b}).code == kExitOk);
  CHECK(read_file(a) == read_file(b));
  const auto sidecar = nlohmann::json::parse(read_file(a + ".manifest.json"));
  CHECK(sidecar["command"] == "ymean");
  CHECK(sidecar.contains("timestamp"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("figures: writes csv, sidecar and svg") {
  const auto dir = scratch("figs");
  const auto r = run({"figures", "all", "--out", dir.string(), "--grid", "log:0.001:100:12"});
  REQUIRE(r.code == kExitOk);
  for (int i = 1; i <= 4; ++i) {
    const auto stem = dir / ("fig" + std::to_string(i));
    CHECK(std::filesystem::exists(stem.string() + ".csv"));
    CHECK(std::filesystem::exists(stem.string() + ".csv.manifest.json"));
    CHECK(read_file(stem.string() + ".svg").find("</svg>") != std::string::npos);
  }
  CHECK(read_file(dir / "fig1.csv").find("F_b15") != std::string::npos);
  std::filesystem::remove_all(dir);
}
