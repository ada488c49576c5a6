#include "qlimit/open_system.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include "qlimit/errors.hpp"

namespace qlimit {

void DiffusiveConfig::validate() const {
  if (b < 0) throw InvalidArgument("DiffusiveConfig: b must be >= 0");
  if (!(kappa > 0.0) || !std::isfinite(kappa)) throw InvalidArgument("DiffusiveConfig: kappa must be > 0");
  if (!(omega >= 0.0) || !std::isfinite(omega)) throw InvalidArgument("DiffusiveConfig: omega must be >= 0");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw InvalidArgument("DiffusiveConfig: lambda must be >= 0");
  tol.validate();
}

double FockDistribution::trace() const {
  return std::accumulate(weights.begin(), weights.end(), 0.0);
}

FockWeights::FockWeights(const DiffusiveConfig& cfg, double t)
    : b_(cfg.b), kernel_(), log_b_factorial_(0.0) {
  cfg.validate();
  kernel_ = diagonal_kernel(t, cfg.kappa);
  log_b_factorial_ = log_factorial(static_cast<std::uint64_t>(b_));
}

double FockWeights::operator()(std::uint64_t n) const {
  const auto b = static_cast<std::uint64_t>(b_);
  if (kernel_.gamma == 0.0) return n == b ? 1.0 : 0.0;

  const std::uint64_t p_max = std::min(b, n);
  // b is a small preparation index in practice; fall back to the heap for large b.
  std::array<double, 64> stack{};
  std::vector<double> heap;
  double* logs = stack.data();
  if (p_max + 1 > stack.size()) {
    heap.resize(p_max + 1);
    logs = heap.data();
  }
  const double log_n_factorial = log_factorial(n);
  for (std::uint64_t p = 0; p <= p_max; ++p) {
    const double log_coeff = log_b_factorial_ + log_n_factorial - 2.0 * log_factorial(p) -
                             log_factorial(n - p) - log_factorial(b - p);
    const double gamma_power = static_cast<double>(b + n - 2 * p);
    const double zeta_power = static_cast<double>(2 * p + 1);
    logs[p] = log_coeff + gamma_power * kernel_.log_gamma + zeta_power * kernel_.log_zeta;
  }
  return std::exp(log_sum_exp({logs, static_cast<std::size_t>(p_max + 1)}));
}

double fock_weight(const DiffusiveConfig& cfg, std::uint64_t n, double t) {
  return FockWeights(cfg, t)(n);
}

FockDistribution distribution(const DiffusiveConfig& cfg, double t) {
  const FockWeights w(cfg, t);
  FockDistribution out;
  out.t = t;
  const auto series = sum_adaptive(
      [&](std::size_t n) {
        double v = w(n);
        if (v < 0.0) {
          ++out.clipped;
          v = 0.0;
        }
        out.weights.push_back(v);
        return v;
      },
      cfg.tol, static_cast<std::size_t>(cfg.b) + 1);
  out.n_cut = out.weights.size() - 1;
  out.tail_bound = series.tail_bound;
  return out;
}

}  // namespace qlimit
