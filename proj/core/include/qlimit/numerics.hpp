#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <type_traits>
#include <utility>

#include "qlimit/errors.hpp"

namespace qlimit {

using Complex = std::complex<double>;

// Stopping rule for sum_adaptive. The defaults are the ones used by every
// physics module unless a caller overrides them.
struct SeriesTolerance {
  double rel_eps = 1e-10;
  std::size_t max_terms = 1'000'000;
  double tail_ratio_guard = 0.99999;

  // Throws InvalidArgument unless rel_eps > 0, max_terms >= 1 and
  // 0 < tail_ratio_guard < 1.
  void validate() const;
};

/// Natural log of k!. Exact (rounded once) for k <= 20, Stirling series above.
double log_factorial(std::uint64_t k);

/// ln C(n, k) for k <= n.
double log_binomial(std::uint64_t n, std::uint64_t k);

// gamma(n,t), zeta(n,t) and Delta = sqrt((i lambda n + 2 kappa)^2 - 4 kappa^2),
// principal branch. delta has units of rate.
struct KernelValue {
  Complex gamma;
  Complex zeta;
  Complex delta;
};

// |Delta t| below this uses the analytic small-argument forms.
inline constexpr double kKernelSwitch = 1e-6;

// Evaluates the environment kernels. Throws InvalidArgument when t < 0 or
// kappa <= 0.
KernelValue kernel(std::uint64_t n, double t, double kappa, double lambda);

// The n = 0 kernel is real: gamma = s/(1+s), zeta = 1/(1+s) with s = 2 kappa t.
// The logs are computed with log1p so they stay accurate for s -> 0 and s -> inf.
struct DiagonalKernel {
  double gamma;
  double zeta;
  double log_gamma;  // -inf at t = 0
  double log_zeta;
};

DiagonalKernel diagonal_kernel(double t, double kappa);

namespace detail {

// Direct quotient 2 kappa sinh(x) / [Delta cosh(x) + c sinh(x)] with x = Delta t,
// rescaled by exp(-x) when Re(x) is large. Exposed for the continuity tests.
KernelValue kernel_quotient(Complex delta, Complex c, double kappa, double t);

// Second-order expansion in x = Delta t of the same quotient; exact when Delta = 0.
KernelValue kernel_limit(Complex delta, Complex c, double kappa, double t);

}  // namespace detail

template <class T>
struct SeriesResult {
  T value{};
  std::size_t terms_used = 0;
  double tail_bound = 0.0;
};

// Sums term(0) + term(1) + ... until the geometric tail estimate
//   |term_L| r / (1 - r),  r = |term_L| / |term_{L-1}|
// drops below tol.rel_eps * |S_L|. The bound is rigorous when the term ratios
// are non-increasing from L on, which the caller guarantees (for the Fock
// series the ratio decreases towards gamma < 1). The rule is armed only for
// L >= armed_from so leading runs of zero terms cannot stop the sum early.
template <class Generator>
auto sum_adaptive(Generator&& term, const SeriesTolerance& tol,
                  std::size_t armed_from = 1)
    -> SeriesResult<std::decay_t<decltype(term(std::size_t{0}))>> {
  using T = std::decay_t<decltype(term(std::size_t{0}))>;
  tol.validate();

  SeriesResult<T> result;
  T sum{};
  double prev_abs = 0.0;
  const std::size_t arm = armed_from < 1 ? 1 : armed_from;
  for (std::size_t l = 0; l < tol.max_terms; ++l) {
    const T t = term(l);
    sum += t;
    const double a = std::abs(t);
    if (!std::isfinite(a)) {
      throw NonConvergent("sum_adaptive: non-finite term at index " + std::to_string(l));
    }
    if (l >= arm) {
      double r;
      if (prev_abs > 0.0) {
        r = a / prev_abs;
      } else {
        r = (a == 0.0) ? 0.0 : std::numeric_limits<double>::infinity();
      }
      if (r < tol.tail_ratio_guard) {
        const double tail = a * r / (1.0 - r);
        if (tail <= tol.rel_eps * std::abs(sum)) {
          result.value = sum;
          result.terms_used = l + 1;
          result.tail_bound = tail;
          return result;
        }
      }
    }
    prev_abs = a;
  }
  throw NonConvergent("sum_adaptive: tail not certified after " +
                      std::to_string(tol.max_terms) + " terms");
}

// log(sum(exp(x_i))) over a small buffer; returns -inf for an empty or all -inf input.
double log_sum_exp(std::span<const double> xs);

}  // namespace qlimit
