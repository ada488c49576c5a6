#include "qlimit/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qlimit/errors.hpp"
#include "qlimit/grid.hpp"
#include "qlimit/parallel.hpp"

namespace qlimit {

namespace {

// Lazily extended P_b(n,t) table so several sums over the same state share work.
class WeightCache {
 public:
  WeightCache(const DiffusiveConfig& cfg, double t) : weights_(cfg, t) {}

  double operator()(std::size_t n) {
    while (cache_.size() <= n) cache_.push_back(weights_(cache_.size()));
    return cache_[n];
  }

  std::size_t size() const { return cache_.size(); }

 private:
  FockWeights weights_;
  std::vector<double> cache_;
};

double relative_tail(const SeriesResult<double>& r) {
  return r.value != 0.0 ? r.tail_bound / std::abs(r.value) : r.tail_bound;
}

void check_neighbours(const DiffusiveConfig& cfg_b, const DiffusiveConfig& cfg_bm1) {
  if (cfg_b.b < 1 || cfg_bm1.b != cfg_b.b - 1) {
    throw MismatchedConfig("fidelity: need b >= 1 and the second state prepared in b - 1");
  }
  if (cfg_b.kappa != cfg_bm1.kappa || cfg_b.omega != cfg_bm1.omega || cfg_b.lambda != cfg_bm1.lambda) {
    throw MismatchedConfig("fidelity: kappa, omega and lambda must agree");
  }
}

std::size_t arm_index(const DiffusiveConfig& cfg) { return static_cast<std::size_t>(cfg.b) + 1; }

}  // namespace

void TimeSeries::validate() const {
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!std::isfinite(points[i].second)) throw InvalidArgument("TimeSeries '" + label + "': non-finite value");
    if (i > 0 && !(points[i].first > points[i - 1].first)) {
      throw InvalidArgument("TimeSeries '" + label + "': kt must be strictly increasing");
    }
  }
}

Moments moments(const DiffusiveConfig& cfg, double t) {
  WeightCache w(cfg, t);
  const auto arm = arm_index(cfg);
  const auto s0 = sum_adaptive([&](std::size_t n) { return w(n); }, cfg.tol, arm);
  const auto s1 = sum_adaptive([&](std::size_t n) { return static_cast<double>(n) * w(n); }, cfg.tol, arm);
  const auto s2 = sum_adaptive(
      [&](std::size_t n) {
        const double dn = static_cast<double>(n);
        return dn * dn * w(n);
      },
      cfg.tol, arm);
  Moments m;
  m.trace = s0.value;
  m.mean_n = s1.value;
  m.mean_n2 = s2.value;
  m.n_cut = w.size() - 1;
  m.tail_bound = std::max({relative_tail(s0), relative_tail(s1), relative_tail(s2)});
  return m;
}

double fidelity_overlap(const DiffusiveConfig& cfg_b, const DiffusiveConfig& cfg_bm1, double t) {
  check_neighbours(cfg_b, cfg_bm1);
  const FockWeights wb(cfg_b, t);
  const FockWeights wa(cfg_bm1, t);
  return sum_adaptive([&](std::size_t n) { return wb(n) * wa(n); }, cfg_b.tol, arm_index(cfg_b)).value;
}

double fidelity_closed_form(const DiffusiveConfig& cfg_b, double t) {
  cfg_b.validate();
  if (cfg_b.b < 1) throw InvalidArgument("fidelity_closed_form: b must be >= 1");
  const auto k = diagonal_kernel(t, cfg_b.kappa);
  const auto b = static_cast<std::uint64_t>(cfg_b.b);
  const double log_prefactor = std::log(static_cast<double>(b)) + 2.0 * log_factorial(b - 1);

  std::vector<double> logs;
  const auto term = [&](std::size_t l) {
    logs.clear();
    for (std::uint64_t p = 0; p <= b; ++p) {
      const std::uint64_t pl = p + l;
      const std::uint64_t q_max = std::min<std::uint64_t>(b - 1, pl);
      for (std::uint64_t q = 0; q <= q_max; ++q) {
        const double log_coeff = log_prefactor + 2.0 * log_factorial(pl) - 2.0 * log_factorial(q) -
                                 2.0 * log_factorial(p) - log_factorial(l) - log_factorial(b - p) -
                                 log_factorial(pl - q) - log_factorial(b - q - 1);
        const double gamma_power = static_cast<double>(2 * b + 2 * l - 2 * q - 1);
        const double zeta_power = static_cast<double>(2 * (p + q) + 2);
        logs.push_back(log_coeff + gamma_power * k.log_gamma + zeta_power * k.log_zeta);
      }
    }
    return std::exp(log_sum_exp(logs));
  };
  return sum_adaptive(term, cfg_b.tol, arm_index(cfg_b)).value;
}

double survival(const DiffusiveConfig& cfg, double t) {
  return fock_weight(cfg, static_cast<std::uint64_t>(cfg.b), t);
}

double purity(const DiffusiveConfig& cfg, double t) {
  const FockWeights w(cfg, t);
  return sum_adaptive(
             [&](std::size_t n) {
               const double v = w(n);
               return v * v;
             },
             cfg.tol, arm_index(cfg))
      .value;
}

double mean_N(const DiffusiveConfig& cfg, double t) {
  WeightCache w(cfg, t);
  return sum_adaptive([&](std::size_t n) { return static_cast<double>(n) * w(n); }, cfg.tol,
                      arm_index(cfg))
      .value;
}

double mean_H0(const DiffusiveConfig& cfg, double t) {
  const Moments m = moments(cfg, t);
  return cfg.omega * m.mean_n + cfg.lambda * m.mean_n2;
}

namespace {

double tau_from_moments(const DiffusiveConfig& cfg, const Moments& m, double t) {
  const double h0 = cfg.omega * m.mean_n + cfg.lambda * m.mean_n2;
  if (h0 == 0.0) {
    throw ZeroEnergy("mean_tau: <H0> = 0 for b=" + std::to_string(cfg.b) + " at t=" + std::to_string(t));
  }
  return 2.0 * std::numbers::pi * m.mean_n / h0;
}

}  // namespace

double mean_tau(const DiffusiveConfig& cfg, double t) { return tau_from_moments(cfg, moments(cfg, t), t); }

YMeanPoint mean_y_point(const DiffusiveConfig& cfg_b, double kt) {
  cfg_b.validate();
  if (cfg_b.b < 1) throw InvalidArgument("mean_y: b must be >= 1");
  DiffusiveConfig cfg_bm1 = cfg_b;
  cfg_bm1.b = cfg_b.b - 1;
  const double t = kt / cfg_b.kappa;

  const Moments mb = moments(cfg_b, t);
  const Moments ma = moments(cfg_bm1, t);
  YMeanPoint pt;
  pt.kt = kt;
  pt.mean_n_b = mb.mean_n;
  pt.mean_n_bm1 = ma.mean_n;
  pt.mean_h0_b = cfg_b.omega * mb.mean_n + cfg_b.lambda * mb.mean_n2;
  pt.mean_h0_bm1 = cfg_b.omega * ma.mean_n + cfg_b.lambda * ma.mean_n2;
  pt.mean_tau_b = tau_from_moments(cfg_b, mb, t);
  pt.mean_tau_bm1 = tau_from_moments(cfg_bm1, ma, t);
  pt.delta_energy = 0.5 * (pt.mean_h0_b - pt.mean_h0_bm1);
  pt.delta_period = 0.5 * (pt.mean_tau_b - pt.mean_tau_bm1);
  const double product = pt.delta_energy * pt.delta_period;
  pt.y_mean = std::abs(product);
  pt.sign = (product > 0.0) - (product < 0.0);
  return pt;
}

std::vector<YMeanPoint> mean_y_series(const DiffusiveConfig& cfg_b, std::span<const double> kt_grid) {
  cfg_b.validate();
  if (cfg_b.b < 1) throw InvalidArgument("mean_y: b must be >= 1");
  for (std::size_t i = 1; i < kt_grid.size(); ++i) {
    if (!(kt_grid[i] > kt_grid[i - 1])) throw InvalidArgument("mean_y: grid must be strictly increasing");
  }
  std::vector<YMeanPoint> out(kt_grid.size());
  parallel_for(kt_grid.size(), [&](std::size_t i) { out[i] = mean_y_point(cfg_b, kt_grid[i]); });
  return out;
}

std::optional<double> half_decay_kt(const DiffusiveConfig& cfg_b, double kt_ref, double kt_max) {
  const double target = 0.5 * mean_y_point(cfg_b, kt_ref).y_mean;
  const auto below = [&](double kt) { return mean_y_point(cfg_b, kt).y_mean <= target; };

  const auto grid = LogGrid{kt_ref, kt_max, 401}.values();
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!below(grid[i])) continue;
    double lo = std::log(grid[i - 1]);
    double hi = std::log(grid[i]);
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      (below(std::exp(mid)) ? hi : lo) = mid;
    }
    return std::exp(hi);
  }
  return std::nullopt;
}

}  // namespace qlimit
