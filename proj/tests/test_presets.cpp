#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "qlimit/errors.hpp"
#include "qlimit/presets.hpp"

using namespace qlimit;

namespace {

constexpr double kHartreeEv = 27.211386245988;
constexpr double kBohrAngstrom = 0.529177210903;

}  // namespace

TEST_CASE("parse_preset: atomic units pass through") {
  const auto p = parse_preset(
      "# comment line\n"
      "model = quartic   # trailing comment\n"
      "units = atomic\n"
      "\n"
      "omega = 0.5\n"
      "lambda = 2\n",
      "fallback");
  CHECK(p.name == "fallback");
  CHECK(p.units == UnitSystem::Atomic);
  const auto& q = std::get<Quartic>(p.model);
  CHECK(q.omega == 0.5);
  CHECK(q.lambda == 2.0);
  CHECK(p.raw.at("lambda") == 2.0);
}

TEST_CASE("parse_preset: name and description") {
  const auto p = parse_preset("name = x\ndescription = some words here\nmodel = box\nunits = atomic\nmass = 1\nwidth = 2\n");
  CHECK(p.name == "x");
  CHECK(p.description == "some words here");
  CHECK(std::get<Box>(p.model).width == 2.0);
}

TEST_CASE("parse_preset: SI conversion") {
  const auto box = parse_preset("model = box\nunits = si\nmass = 9.1093837015e-31\nwidth = 5.29177210903e-11\n");
  CHECK(std::get<Box>(box.model).mass == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::get<Box>(box.model).width == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(box.raw.at("mass") == 9.1093837015e-31);

  const auto osc = parse_preset("model = harmonic\nunits = si\nmass = 9.1093837015e-31\nomega = 4.1341373335e16\n");
  CHECK(std::get<Harmonic>(osc.model).omega == doctest::Approx(1.0).epsilon(1e-9));

  // lambda hbar^2 has units of energy: one Hartree per hbar^2.
  const double hbar = 1.054571817e-34;
  const double eh = 4.3597447222071e-18;
  const auto q = parse_preset("model = quartic\nunits = si\nomega = 1e15\nlambda = " + std::to_string(eh / (hbar * hbar)) + "\n");
  CHECK(std::get<Quartic>(q.model).lambda == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("parse_preset: errors") {
  CHECK_THROWS_AS(parse_preset("units = atomic\nmass = 1\n"), PresetError);
  CHECK_THROWS_AS(parse_preset("model = box\nmass = 1\nwidth = 1\n"), PresetError);
  CHECK_THROWS_AS(parse_preset("model = box\nunits = cgs\nmass = 1\nwidth = 1\n"), PresetError);
  CHECK_THROWS_AS(parse_preset("model = rotor\nunits = atomic\n"), PresetError);
  CHECK_THROWS_AS(parse_preset("model = box\nunits = atomic\nmass = 1\n"), PresetError);
  CHECK_THROWS_AS(parse_preset("model = box\nunits = atomic\nmass = 1\nwidth = 1\nomega = 2\n"), PresetError);
  CHECK_THROWS_AS(parse_preset("model = box\nunits = atomic\nmass = 1\nmass = 2\nwidth = 1\n"), PresetError);
  CHECK_THROWS_AS(parse_preset("model = box\nunits = atomic\nmass = one\nwidth = 1\n"), PresetError);
  CHECK_THROWS_AS(parse_preset("model = box\nunits = atomic\nmass = 1x\nwidth = 1\n"), PresetError);
  CHECK_THROWS_AS(parse_preset("model = box\nunits = atomic\nmass\nwidth = 1\n"), PresetError);
  CHECK_THROWS_AS(parse_preset("model = box\nunits = atomic\nmass = -1\nwidth = 1\n"), PresetError);
  CHECK_THROWS_AS(parse_preset("model = hydrogenoid\nunits = atomic\nreduced_mass = 1\ncharge_number = 1.5\nelementary_charge = 1\n"),
                  PresetError);
}

TEST_CASE("PresetError is a qlimit::Error") {
  try {
    parse_preset("");
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("model") != std::string::npos);
  }
}

TEST_CASE("bundled h2 preset reproduces its source values") {
  const auto p = find_preset("h2", QLIMIT_PRESET_DIR);
  CHECK(p.name == "h2");
  const auto& m = std::get<Morse>(p.model);
  CHECK(m.depth * kHartreeEv == doctest::Approx(4.75).epsilon(1e-12));
  CHECK(m.range / kBohrAngstrom == doctest::Approx(1.94).epsilon(1e-12));
  CHECK(m.omega * kHartreeEv == doctest::Approx(0.545680).epsilon(1e-5));
  CHECK(m.mass / 1822.888486209 == doctest::Approx(0.503912516).epsilon(1e-9));
  CHECK(m.anharmonicity == 34.6);
  CHECK(m.length_scale == 1.0);
}

TEST_CASE("bundled hydrogen preset converts to unit charge and reduced mass") {
  const auto p = find_preset("hydrogen", QLIMIT_PRESET_DIR);
  CHECK(p.units == UnitSystem::SI);
  const auto& h = std::get<Hydrogenoid>(p.model);
  CHECK(h.charge_number == 1);
  CHECK(h.elementary_charge == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(h.reduced_mass == doctest::Approx(1.0 / (1.0 + 1.0 / 1836.15267343)).epsilon(1e-9));
}

TEST_CASE("find_preset: path, name and missing") {
  const auto dir = std::filesystem::temp_directory_path() / "qlimit_test_presets";
  std::filesystem::create_directories(dir);
  const auto file = dir / "mine.conf";
  {
    std::ofstream out(file);
    out << "model = box\nunits = atomic\nmass = 2\nwidth = 3\n";
  }
  CHECK(find_preset(file.string(), "/nonexistent").name == "mine");
  CHECK(find_preset("mine", dir).name == "mine");
  CHECK_THROWS_AS(find_preset("absent", dir), PresetError);
  CHECK_THROWS_AS(load_preset(dir / "absent.conf"), PresetError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("to_string(UnitSystem)") {
  CHECK(to_string(UnitSystem::Atomic) == "atomic");
  CHECK(to_string(UnitSystem::SI) == "si");
}
