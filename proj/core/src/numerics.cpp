#include "qlimit/numerics.hpp"

#include <algorithm>
#include <vector>

namespace qlimit {

void SeriesTolerance::validate() const {
  if (!(rel_eps > 0.0)) throw InvalidArgument("SeriesTolerance: rel_eps must be > 0");
  if (max_terms < 1) throw InvalidArgument("SeriesTolerance: max_terms must be >= 1");
  if (!(tail_ratio_guard > 0.0 && tail_ratio_guard < 1.0)) {
    throw InvalidArgument("SeriesTolerance: tail_ratio_guard must lie in (0,1)");
  }
}

namespace {

// ln Gamma(x) for x >= 22 by the Stirling series; the first omitted term is
// below 1e-16 relative there.
// Evaluated in long double so the table entries are rounded to double once.
double stirling_log_gamma(long double x) {
  constexpr long double half_log_two_pi = 0.918938533204672741780329736405617639861L;
  const long double inv = 1.0L / x;
  const long double inv2 = inv * inv;
  const long double series =
      inv * (1.0L / 12.0L -
             inv2 * (1.0L / 360.0L -
                     inv2 * (1.0L / 1260.0L - inv2 * (1.0L / 1680.0L - inv2 * (1.0L / 1188.0L)))));
  return static_cast<double>((x - 0.5L) * std::log(x) - x + half_log_two_pi + series);
}

constexpr std::size_t kExactLimit = 20;
constexpr std::size_t kTableSize = std::size_t{1} << 16;

const std::vector<double>& log_factorial_table() {
  static const std::vector<double> table = [] {
    std::vector<double> t(kTableSize);
    std::uint64_t f = 1;
    t[0] = 0.0;
    for (std::uint64_t k = 1; k <= kExactLimit; ++k) {
      f *= k;
      t[k] = std::log(static_cast<double>(f));
    }
    for (std::size_t k = kExactLimit + 1; k < kTableSize; ++k) {
      t[k] = stirling_log_gamma(static_cast<long double>(k) + 1.0L);
    }
    return t;
  }();
  return table;
}

}  // namespace

double log_factorial(std::uint64_t k) {
  if (k < kTableSize) return log_factorial_table()[k];
  return stirling_log_gamma(static_cast<long double>(k) + 1.0L);
}

double log_binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) throw InvalidArgument("log_binomial: k > n");
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

double log_sum_exp(std::span<const double> xs) {
  if (xs.empty()) return -std::numeric_limits<double>::infinity();
  const double m = *std::max_element(xs.begin(), xs.end());
  if (m == -std::numeric_limits<double>::infinity()) return m;
  double s = 0.0;
  for (double x : xs) s += std::exp(x - m);
  return m + std::log(s);
}

namespace detail {

KernelValue kernel_quotient(Complex delta, Complex c, double kappa, double t) {
  const Complex x = delta * t;
  if (x.real() <= 20.0) {
    const Complex sh = std::sinh(x);
    const Complex ch = std::cosh(x);
    const Complex den = delta * ch + c * sh;
    return {2.0 * kappa * sh / den, delta / den, delta};
  }
  // sinh x = e^x (1 - E)/2, cosh x = e^x (1 + E)/2 with E = e^{-2x}; the common
  // factor e^x/2 cancels in gamma and leaves 2 e^{-x} in zeta.
  const Complex e2 = std::exp(-2.0 * x);
  const Complex den = delta * (1.0 + e2) + c * (1.0 - e2);
  return {2.0 * kappa * (1.0 - e2) / den, 2.0 * delta * std::exp(-x) / den, delta};
}

KernelValue kernel_limit(Complex delta, Complex c, double kappa, double t) {
  // sinh(x)/Delta = t (1 + x^2/6), cosh(x) = 1 + x^2/2 through second order.
  const Complex x2 = delta * delta * t * t;
  const Complex sh_over_delta = t * (1.0 + x2 / 6.0);
  const Complex ch = 1.0 + x2 / 2.0;
  const Complex den = ch + c * sh_over_delta;
  return {2.0 * kappa * sh_over_delta / den, 1.0 / den, delta};
}

}  // namespace detail

KernelValue kernel(std::uint64_t n, double t, double kappa, double lambda) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidArgument("kernel: t must be finite and >= 0");
  if (!(kappa > 0.0)) throw InvalidArgument("kernel: kappa must be > 0");

  const Complex c{2.0 * kappa, lambda * static_cast<double>(n)};
  const Complex delta = std::sqrt(c * c - 4.0 * kappa * kappa);
  if (std::abs(delta) * t < kKernelSwitch) return detail::kernel_limit(delta, c, kappa, t);
  return detail::kernel_quotient(delta, c, kappa, t);
}

DiagonalKernel diagonal_kernel(double t, double kappa) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidArgument("diagonal_kernel: t must be finite and >= 0");
  if (!(kappa > 0.0)) throw InvalidArgument("diagonal_kernel: kappa must be > 0");
  const double s = 2.0 * kappa * t;
  DiagonalKernel k;
  k.gamma = s / (1.0 + s);
  k.zeta = 1.0 / (1.0 + s);
  k.log_zeta = -std::log1p(s);
  k.log_gamma = (s == 0.0) ? -std::numeric_limits<double>::infinity()
                           : -std::log1p(1.0 / s);
  return k;
}

}  // namespace qlimit
