#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qlimit/open_system.hpp"

namespace qlimit {

// (kappa*t, value) samples with strictly increasing kappa*t.
struct TimeSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;

  // Throws InvalidArgument if kt is not strictly increasing or a value is not finite.
  void validate() const;
};

// First three moments of the evolved Fock distribution, each with its own
// certified truncation.
struct Moments {
  double trace = 0.0;
  double mean_n = 0.0;
  double mean_n2 = 0.0;
  std::size_t n_cut = 0;
  double tail_bound = 0.0;  // largest relative tail of the three sums
};

Moments moments(const DiffusiveConfig& cfg, double t);

// F(b,t) = Tr[rho(t,b) rho(t,b-1)] = sum_n P_b(n,t) P_{b-1}(n,t). Both states
// are diagonal, so this is the reference value for the neighbour fidelity.
// Throws MismatchedConfig unless cfg_bm1.b == cfg_b.b - 1 and kappa, omega,
// lambda agree.
double fidelity_overlap(const DiffusiveConfig& cfg_b, const DiffusiveConfig& cfg_bm1, double t);

/// Neighbour fidelity from the expanded triple series
///
///   sum_{l>=0} sum_{p=0}^{b} sum_{p'=0}^{min(b-1,p+l)}
///     b ((b-1)!)^2 ((p+l)!)^2 / [(p'!)^2 (p!)^2 l! (b-p)! (p+l-p')! (b-p'-1)!]
///     * gamma^{2b+2l-2p'-1} zeta^{2(p+p')+2}
///
/// evaluated term by term. Kept as an independent route for auditing
/// fidelity_overlap; requires b >= 1.
double fidelity_closed_form(const DiffusiveConfig& cfg_b, double t);

// P_b(b, t): probability of still finding the prepared level.
double survival(const DiffusiveConfig& cfg, double t);

// sum_n P_b(n,t)^2.
double purity(const DiffusiveConfig& cfg, double t);

double mean_N(const DiffusiveConfig& cfg, double t);

// <H0> = omega <N> + lambda <N^2>.
double mean_H0(const DiffusiveConfig& cfg, double t);

// <tau> ~ 2 pi <N> / <H0>. Throws ZeroEnergy when <H0> == 0 (b = 0 at t = 0).
double mean_tau(const DiffusiveConfig& cfg, double t);

struct YMeanPoint {
  double kt = 0.0;
  double mean_n_b = 0.0;
  double mean_n_bm1 = 0.0;
  double mean_h0_b = 0.0;
  double mean_h0_bm1 = 0.0;
  double mean_tau_b = 0.0;
  double mean_tau_bm1 = 0.0;
  double delta_energy = 0.0;  // (<H0(b)> - <H0(b-1)>)/2
  double delta_period = 0.0;  // (<tau_b> - <tau_{b-1}>)/2
  double y_mean = 0.0;        // |delta_energy * delta_period|, units of hbar
  int sign = 0;               // sign of delta_energy * delta_period
};

YMeanPoint mean_y_point(const DiffusiveConfig& cfg_b, double kt);

// Evaluates mean_y_point on every grid value (in parallel; output order
// follows the grid). Requires b >= 1 and a strictly increasing grid.
std::vector<YMeanPoint> mean_y_series(const DiffusiveConfig& cfg_b, std::span<const double> kt_grid);

// First kt in (kt_ref, kt_max] where <y(b)> drops to half its value at kt_ref,
// located on a log scan and refined by bisection. Empty if it never does.
std::optional<double> half_decay_kt(const DiffusiveConfig& cfg_b, double kt_ref = 1e-3,
                                    double kt_max = 1e2);

}  // namespace qlimit
