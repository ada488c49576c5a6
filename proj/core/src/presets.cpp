#include "qlimit/presets.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include "qlimit/errors.hpp"

namespace qlimit {

namespace {

// CODATA 2018.
constexpr double kHartreeJoule = 4.3597447222071e-18;
constexpr double kBohrMetre = 5.29177210903e-11;
constexpr double kElectronMassKg = 9.1093837015e-31;
constexpr double kAtomicTimeSecond = 2.4188843265857e-17;
constexpr double kElementaryChargeCoulomb = 1.602176634e-19;

enum class Dim { None, Mass, Frequency, Length, InverseLength, Energy, Charge, Nonlinearity };

double to_atomic(double v, Dim d) {
  switch (d) {
    case Dim::None:
      return v;
    case Dim::Mass:
      return v / kElectronMassKg;
    case Dim::Frequency:
      return v * kAtomicTimeSecond;
    case Dim::Length:
      return v / kBohrMetre;
    case Dim::InverseLength:
      return v * kBohrMetre;
    case Dim::Energy:
      return v / kHartreeJoule;
    case Dim::Charge:
      return v / kElementaryChargeCoulomb;
    case Dim::Nonlinearity:
      // lambda hbar^2 is an energy, so lambda ~ 1 / (J s^2).
      return v * kHartreeJoule * kAtomicTimeSecond * kAtomicTimeSecond;
  }
  return v;
}

struct ParamSpec {
  std::string_view key;
  Dim dim;
};

const std::vector<ParamSpec>& params_for(std::string_view model) {
  static const std::map<std::string_view, std::vector<ParamSpec>> table = {
      {"harmonic", {{"mass", Dim::Mass}, {"omega", Dim::Frequency}}},
      {"box", {{"mass", Dim::Mass}, {"width", Dim::Length}}},
      {"hydrogenoid",
       {{"reduced_mass", Dim::Mass}, {"charge_number", Dim::None}, {"elementary_charge", Dim::Charge}}},
      {"morse",
       {{"depth", Dim::Energy},
        {"range", Dim::InverseLength},
        {"anharmonicity", Dim::None},
        {"mass", Dim::Mass},
        {"length_scale", Dim::None},
        {"omega", Dim::Frequency}}},
      {"quartic", {{"omega", Dim::Frequency}, {"lambda", Dim::Nonlinearity}}},
  };
  const auto it = table.find(model);
  if (it == table.end()) throw PresetError("preset: unknown model '" + std::string(model) + "'");
  return it->second;
}

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

double parse_number(std::string_view text, std::string_view key, int line) {
  double v = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || !std::isfinite(v)) {
    throw PresetError("preset line " + std::to_string(line) + ": '" + std::string(key) +
                      "' is not a finite number: '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace

std::string_view to_string(UnitSystem u) { return u == UnitSystem::SI ? "si" : "atomic"; }

Preset parse_preset(std::string_view text, std::string_view fallback_name) {
  Preset preset;
  preset.name = std::string(fallback_name);
  std::string model;
  bool have_units = false;
  std::vector<std::pair<std::string, std::pair<std::string, int>>> params;

  std::istringstream in{std::string(text)};
  std::string raw_line;
  int line_no = 0;
  std::set<std::string> seen;
  while (std::getline(in, raw_line)) {
    ++line_no;
    std::string_view line = raw_line;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw PresetError("preset line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key{trim(line.substr(0, eq))};
    const std::string value{trim(line.substr(eq + 1))};
    if (key.empty() || value.empty()) {
      throw PresetError("preset line " + std::to_string(line_no) + ": empty key or value");
    }
    if (!seen.insert(key).second) {
      throw PresetError("preset line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
    if (key == "model") {
      model = value;
    } else if (key == "units") {
      if (value == "atomic") {
        preset.units = UnitSystem::Atomic;
      } else if (value == "si") {
        preset.units = UnitSystem::SI;
      } else {
        throw PresetError("preset line " + std::to_string(line_no) + ": units must be 'atomic' or 'si'");
      }
      have_units = true;
    } else if (key == "name") {
      preset.name = value;
    } else if (key == "description") {
      preset.description = value;
    } else {
      params.push_back({key, {value, line_no}});
    }
  }
  if (model.empty()) throw PresetError("preset: missing 'model'");
  if (!have_units) throw PresetError("preset: missing 'units'");

  const auto& spec = params_for(model);
  std::map<std::string, double> atomic;
  for (const auto& [key, vl] : params) {
    const auto it = std::find_if(spec.begin(), spec.end(), [&](const ParamSpec& p) { return p.key == key; });
    if (it == spec.end()) {
      throw PresetError("preset line " + std::to_string(vl.second) + ": '" + key +
                        "' is not a parameter of model '" + model + "'");
    }
    const double v = parse_number(vl.first, key, vl.second);
    preset.raw[key] = v;
    atomic[key] = preset.units == UnitSystem::SI ? to_atomic(v, it->dim) : v;
  }
  for (const auto& p : spec) {
    if (!atomic.contains(std::string(p.key))) {
      throw PresetError("preset: model '" + model + "' requires '" + std::string(p.key) + "'");
    }
  }

  const auto get = [&](const char* k) { return atomic.at(k); };
  if (model == "harmonic") {
    preset.model = Harmonic{get("mass"), get("omega")};
  } else if (model == "box") {
    preset.model = Box{get("mass"), get("width")};
  } else if (model == "hydrogenoid") {
    const double z = get("charge_number");
    if (z != std::floor(z)) throw PresetError("preset: charge_number must be an integer");
    preset.model = Hydrogenoid{get("reduced_mass"), static_cast<int>(z), get("elementary_charge")};
  } else if (model == "morse") {
    preset.model = Morse{get("depth"), get("range"), get("anharmonicity"),
                         get("mass"),  get("length_scale"), get("omega")};
  } else {
    preset.model = Quartic{get("omega"), get("lambda")};
  }
  try {
    validate(preset.model);
  } catch (const InvalidArgument& e) {
    throw PresetError(std::string("preset: ") + e.what());
  }
  return preset;
}

Preset load_preset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw PresetError("preset: cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_preset(buf.str(), path.stem().string());
}

Preset find_preset(std::string_view ref, const std::filesystem::path& dir) {
  const std::filesystem::path direct{std::string(ref)};
  if (std::filesystem::is_regular_file(direct)) return load_preset(direct);
  const auto candidate = dir / (std::string(ref) + ".conf");
  if (std::filesystem::is_regular_file(candidate)) return load_preset(candidate);
  throw PresetError("preset: '" + std::string(ref) + "' not found (looked for " + candidate.string() + ")");
}

}  // namespace qlimit
