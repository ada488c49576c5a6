#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qlimit/numerics.hpp"

namespace qlimit {

// Quartic oscillator H0 = omega N + lambda N^2 prepared in the Fock state |b>
// and coupled to a diffusive bath with diffusion constant kappa.
struct DiffusiveConfig {
  int b = 0;
  double kappa = 1.0;
  double omega = 1.0;
  double lambda = 0.0;
  SeriesTolerance tol{};

  // Throws InvalidArgument on b < 0, kappa <= 0, omega < 0 or lambda < 0.
  void validate() const;
};

// Diagonal of rho(t, b) in the Fock basis, truncated at n_cut. weights[n] is
// P_b(n, t) for n = 0..n_cut; tail_bound certifies the mass above n_cut.
struct FockDistribution {
  double t = 0.0;
  std::vector<double> weights;
  std::size_t n_cut = 0;
  double tail_bound = 0.0;
  // Count of weights below zero that were clipped (|w| <= 1e-14).
  std::size_t clipped = 0;

  double trace() const;
};

/// Evaluates P_b(n, t) for one (b, t) and many n.
///
///   P_b(n,t) = sum_{p=0}^{min(b,n)} C(b,p) C(n,p) gamma^{b+n-2p} zeta^{2p+1}
///
/// with the n = 0 kernels gamma(0,t), zeta(0,t). This is the density-matrix
/// series over (p, l) collected on |n><n| with l = n - p; the factorial weight
/// b! n! / ((p!)^2 (n-p)! (b-p)!) equals C(b,p) C(n,p). Every term is built in
/// log space and the p-sum is a shifted log-sum-exp.
class FockWeights {
 public:
  FockWeights(const DiffusiveConfig& cfg, double t);

  double operator()(std::uint64_t n) const;

  const DiagonalKernel& kernel() const { return kernel_; }
  int b() const { return b_; }

 private:
  int b_;
  DiagonalKernel kernel_;
  double log_b_factorial_;
};

// P_b(n, t). Throws InvalidArgument for t < 0.
double fock_weight(const DiffusiveConfig& cfg, std::uint64_t n, double t);

// Weights for n = 0..n_cut with n_cut chosen adaptively (tail <= tol.rel_eps
// relative to the accumulated trace). Throws NonConvergent if the cut would
// exceed tol.max_terms.
FockDistribution distribution(const DiffusiveConfig& cfg, double t);

}  // namespace qlimit
