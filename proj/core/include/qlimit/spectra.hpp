#pragma once

#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace qlimit {

// Closed-system models. Units are whatever the caller uses with hbar = 1;
// presets loaded from file are converted to Hartree atomic units.

struct Harmonic {
  double mass = 1.0;
  double omega = 1.0;
};

struct Box {
  double mass = 1.0;
  double width = 1.0;
};

struct Hydrogenoid {
  double reduced_mass = 1.0;
  int charge_number = 1;
  double elementary_charge = 1.0;
};

// E(n) = -D + omega [(n + 1/2) - (n + 1/2)^2 / anharmonicity],
// tau(n) = 2 pi sqrt(mass * length_scale^2 / (2 |E(n)| range^2)).
// length_scale is a dimensionless multiplier; 1 gives the exact classical
// period of the Morse well.
struct Morse {
  double depth = 1.0;
  double range = 1.0;
  double anharmonicity = 10.0;
  double mass = 1.0;
  double length_scale = 1.0;
  double omega = 1.0;
};

// H0 = omega N + lambda N^2.
struct Quartic {
  double omega = 1.0;
  double lambda = 0.0;
};

using ModelParams = std::variant<Harmonic, Box, Hydrogenoid, Morse, Quartic>;

std::string_view model_name(const ModelParams& model);

// Throws InvalidArgument when a parameter violates its invariant.
void validate(const ModelParams& model);

// Smallest quantum number of the spectrum (1 for Box and Hydrogenoid, else 0).
int min_level(const ModelParams& model);

// Largest bound level for Morse; empty for the unbounded spectra.
std::optional<int> max_level(const ModelParams& model);

// Eigenvalue E_n. Throws IndexOutOfSpectrum for an n outside the spectrum.
double energy(const ModelParams& model, int n);

// Classical orbit period at energy E_n. Same domain as energy().
double period(const ModelParams& model, int n);

enum class Verdict {
  Resolvable,    // y >= hbar/2
  Unresolvable,  // y < hbar/2
  PeriodBlind,   // period independent of energy, y == 0 identically
};

std::string_view to_string(Verdict v);

// One row of a threshold scan. delta_energy = (E_n - E_{n-1})/2,
// delta_period = (tau_n - tau_{n-1})/2, y = |delta_energy * delta_period|.
struct CriterionPoint {
  int n = 0;
  double energy = 0.0;
  double period = 0.0;
  double delta_energy = 0.0;
  double delta_period = 0.0;
  double y = 0.0;
  bool resolvable = false;
  Verdict verdict = Verdict::Unresolvable;
};

/// Evaluates y(n) from raw level and period differences.
///
/// Needs a lower neighbour, so n >= min_level + 1. The harmonic oscillator is
/// reported with Verdict::PeriodBlind (y = 0, resolvable = false) rather than
/// as an ordinary unresolvable level.
CriterionPoint criterion_point(const ModelParams& model, int n);

// Published closed forms of y(n) for Box, Hydrogenoid and Quartic. Empty for
// the other models. Used to cross-check the generic difference computation.
std::optional<double> closed_form_y(const ModelParams& model, int n);

struct SuperpositionSpec {
  std::complex<double> a;
  std::complex<double> b;
  int n = 1;
};

// Energy spread |a||b|(E_n - E_{n-1}) of a|E_n> + b|E_{n-1}>. Throws
// NotNormalized if |a|^2 + |b|^2 differs from 1 by more than 1e-9.
double superposition_delta_energy(const ModelParams& model, const SuperpositionSpec& s);

struct ScanResult {
  std::vector<CriterionPoint> points;
  std::optional<int> first_unresolvable;
  // Every n where the verdict differs from the verdict at n - 1.
  std::vector<int> crossings;
  std::vector<std::string> notes;
};

/// Scans n_min..n_max inclusive. Monotonicity in n is not assumed. When the
/// model has a commonly quoted threshold (see quoted_threshold) that differs
/// from the computed crossing, a note with both values is attached.
ScanResult threshold_scan(const ModelParams& model, int n_min, int n_max);

// Threshold level usually quoted for the model: 4 for Box, 9 for Hydrogenoid.
std::optional<int> quoted_threshold(const ModelParams& model);

// Required measurement resolution dp*dq = 1 / (4 ((n + 1/2) + |p q|)) for a
// simultaneous (q, p) energy measurement of an oscillator level; compare to 1/2.
double harmonic_dpdq(const Harmonic& model, int n, double q, double p);

struct QuarticLimits {
  double low_nonlinearity;   // lambda/omega -> 0: pi lambda / omega
  double high_nonlinearity;  // lambda/omega -> inf: pi (2n-1) / (4 (n-1) n)
};

QuarticLimits quartic_limits(const Quartic& model, int n);

}  // namespace qlimit
