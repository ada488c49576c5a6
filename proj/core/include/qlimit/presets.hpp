#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "qlimit/spectra.hpp"

namespace qlimit {

// Unit system a preset file declares with `units = ...`. Parameters are
// converted to Hartree atomic units (hbar = m_e = e = 4 pi eps0 = 1) on load.
enum class UnitSystem { Atomic, SI };

struct Preset {
  std::string name;
  std::string description;
  UnitSystem units = UnitSystem::Atomic;
  ModelParams model;
  // Parameters exactly as written in the file, before unit conversion.
  std::map<std::string, double> raw;
};

/// Parses a preset from key/value text.
///
/// Format: one `key = value` per line, `#` starts a comment. Required keys are
/// `model` (harmonic | box | hydrogenoid | morse | quartic) and `units`
/// (atomic | si); `name` and `description` are optional. Every remaining key is
/// a model parameter and must belong to the chosen model:
///
///   harmonic:     mass, omega
///   box:          mass, width
///   hydrogenoid:  reduced_mass, charge_number, elementary_charge
///   morse:        depth, range, anharmonicity, mass, length_scale, omega
///   quartic:      omega, lambda
///
/// SI dimensions: mass kg, omega rad/s, width m, range 1/m, depth J,
/// elementary_charge C, lambda 1/(J s^2). charge_number, anharmonicity and
/// length_scale are dimensionless. Missing parameters are an error.
Preset parse_preset(std::string_view text, std::string_view fallback_name = {});

// Reads and parses a preset file. The file stem is used when `name` is absent.
Preset load_preset(const std::filesystem::path& path);

// Resolves a preset reference: an existing file path is loaded directly,
// otherwise `<dir>/<ref>.conf` is tried.
Preset find_preset(std::string_view ref, const std::filesystem::path& dir);

std::string_view to_string(UnitSystem u);

}  // namespace qlimit
