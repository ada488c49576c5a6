#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracle/oracle.hpp"
#include "qlimit/numerics.hpp"

using namespace qlimit;

TEST_CASE("log_factorial: small exact values") {
  CHECK(log_factorial(0) == 0.0);
  CHECK(log_factorial(1) == 0.0);
  CHECK(log_factorial(5) == doctest::Approx(std::log(120.0)).epsilon(1e-15));
  CHECK(log_factorial(5) == doctest::Approx(4.787491742782046).epsilon(1e-15));
  double f = 1.0;
  for (unsigned k = 1; k <= 20; ++k) {
    f *= k;
    CHECK(log_factorial(k) == std::log(f));
  }
}

TEST_CASE("log_factorial: agrees with big-integer factorials") {
  for (unsigned k : {21u, 22u, 50u, 100u, 170u, 500u, 2000u}) {
    const double expected = oracle::log_factorial(k);
    CHECK(std::abs(log_factorial(k) - expected) <= 1e-12 * expected);
  }
}

TEST_CASE("log_factorial: large arguments stay accurate") {
  // ln(10^6 !) from the Stirling series at 50 digits via the oracle type.
  using oracle::Real;
  const Real x = Real(1000001);
  const Real expected = (x - Real(0.5)) * log(x) - x + log(2 * boost::math::constants::pi<Real>()) / 2 +
                        1 / (12 * x) - 1 / (360 * x * x * x);
  CHECK(std::abs(log_factorial(1'000'000) - static_cast<double>(expected)) <=
        1e-12 * static_cast<double>(expected));
  CHECK(std::isfinite(log_factorial(10'000'000)));
}

TEST_CASE("log_factorial: successive differences reproduce ln k") {
  // The difference of two doubles near ln(k!) cannot be better than their
  // spacing, so the tolerance is taken relative to ln(k!) and additionally
  // capped at two ulps of ln(k!).
  double worst_rel = 0.0;
  double worst_ulps = 0.0;
  for (std::uint64_t k = 2; k <= 10'000; ++k) {
    const double big = log_factorial(k);
    const double diff = big - log_factorial(k - 1);
    const double err = std::abs(diff - std::log(static_cast<double>(k)));
    worst_rel = std::max(worst_rel, err / big);
    worst_ulps = std::max(worst_ulps, err / (std::nextafter(big, INFINITY) - big));
  }
  CHECK(worst_rel <= 1e-12);
  CHECK(worst_ulps <= 2.0);
}

TEST_CASE("log_binomial") {
  CHECK(std::exp(log_binomial(10, 3)) == doctest::Approx(120.0).epsilon(1e-13));
  CHECK(log_binomial(7, 0) == 0.0);
  CHECK_THROWS_AS(log_binomial(3, 4), InvalidArgument);
}

TEST_CASE("kernel: t = 0 gives gamma = 0, zeta = 1") {
  const auto k = kernel(0, 0.0, 1.0, 1.0);
  CHECK(k.gamma == Complex(0.0, 0.0));
  CHECK(k.zeta == Complex(1.0, 0.0));
  const auto k3 = kernel(3, 0.0, 0.5, 2.0);
  CHECK(std::abs(k3.gamma) == 0.0);
  CHECK(std::abs(k3.zeta - 1.0) == 0.0);
}

TEST_CASE("kernel: n = 0 reduces to the real limiting forms") {
  for (double kappa : {0.3, 1.0, 4.0}) {
    for (double t : {1e-4, 0.01, 0.5, 2.0, 50.0, 1e4}) {
      const auto k = kernel(0, t, kappa, 1.7);
      const double s = 2 * kappa * t;
      CHECK(k.delta == Complex(0.0, 0.0));
      CHECK(k.gamma.real() == doctest::Approx(s / (1 + s)).epsilon(1e-15));
      CHECK(k.zeta.real() == doctest::Approx(1 / (1 + s)).epsilon(1e-15));
      CHECK(k.gamma.imag() == 0.0);
      CHECK(k.zeta.imag() == 0.0);
      CHECK(k.gamma.real() >= 0.0);
      CHECK(k.gamma.real() < 1.0);
      CHECK(k.zeta.real() > 0.0);
      CHECK(k.zeta.real() <= 1.0);
    }
  }
}

TEST_CASE("kernel: limiting and quotient branches agree at a surrogate Delta") {
  const double kappa = 1.0;
  const Complex c{2.0 * kappa, 0.0};
  const Complex delta{1e-6 * kappa, 0.0};
  for (double kt : {0.01, 0.1, 1.0, 10.0}) {
    const double t = kt / kappa;
    const auto direct = detail::kernel_quotient(delta, c, kappa, t);
    const auto limit = detail::kernel_limit(Complex{0.0, 0.0}, c, kappa, t);
    CHECK(std::abs(direct.gamma - limit.gamma) <= 1e-8 * std::abs(limit.gamma));
    CHECK(std::abs(direct.zeta - limit.zeta) <= 1e-8 * std::abs(limit.zeta));
  }
}

TEST_CASE("kernel: normalization seed zeta / (1 - gamma) = 1 for n = 0") {
  for (double kt : {1e-3, 0.1, 1.0, 10.0, 100.0}) {
    const auto k = kernel(0, kt, 1.0, 0.0);
    CHECK(std::abs(k.zeta.real() / (1.0 - k.gamma.real()) - 1.0) <= 1e-12);
    const auto d = diagonal_kernel(kt, 1.0);
    CHECK(std::abs(d.zeta / (1.0 - d.gamma) - 1.0) <= 1e-12);
  }
}

TEST_CASE("kernel: general n matches a 50-digit evaluation of the quotient") {
  struct Case {
    unsigned n;
    double t, kappa, lambda;
  };
  for (const auto& c : {Case{3, 0.7, 0.5, 1.0}, Case{1, 0.2, 1.0, 0.3}, Case{7, 2.5, 0.8, 2.0},
                        Case{15, 0.05, 1.0, 10.0}, Case{4, 30.0, 1.0, 0.1}}) {
    const auto got = kernel(c.n, c.t, c.kappa, c.lambda);
    const auto want = oracle::kernel(c.n, c.t, c.kappa, c.lambda);
    CAPTURE(c.n);
    CAPTURE(c.t);
    CHECK(std::abs(got.gamma - want.gamma) <= 1e-10 * std::abs(want.gamma));
    CHECK(std::abs(got.zeta - want.zeta) <= 1e-10 * std::abs(want.zeta));
  }
}

TEST_CASE("kernel: no overflow for large Re(Delta) t") {
  const auto k = kernel(5, 1e5, 1.0, 3.0);
  CHECK(std::isfinite(k.gamma.real()));
  CHECK(std::isfinite(k.gamma.imag()));
  CHECK(std::isfinite(k.zeta.real()));
  CHECK(std::isfinite(k.zeta.imag()));
  // At n = 0 the limit t -> inf is gamma -> 1, zeta -> 0.
  const auto k0 = kernel(0, 1e12, 1.0, 3.0);
  CHECK(k0.gamma.real() == doctest::Approx(1.0));
  CHECK(k0.zeta.real() < 1e-11);
}

TEST_CASE("kernel: invalid arguments") {
  CHECK_THROWS_AS(kernel(0, -1.0, 1.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(kernel(0, 1.0, 0.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(kernel(0, 1.0, -2.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(diagonal_kernel(-1e-3, 1.0), InvalidArgument);
}

TEST_CASE("diagonal_kernel logs") {
  const auto d0 = diagonal_kernel(0.0, 1.0);
  CHECK(d0.gamma == 0.0);
  CHECK(d0.zeta == 1.0);
  CHECK(std::isinf(d0.log_gamma));
  const auto d = diagonal_kernel(0.37, 2.0);
  CHECK(d.log_gamma == doctest::Approx(std::log(d.gamma)).epsilon(1e-14));
  CHECK(d.log_zeta == doctest::Approx(std::log(d.zeta)).epsilon(1e-14));
}

TEST_CASE("sum_adaptive: geometric series") {
  const auto r = sum_adaptive([](std::size_t l) { return std::pow(0.5, static_cast<double>(l)); }, SeriesTolerance{});
  CHECK(std::abs(r.value - 2.0) <= 1e-10 * 2.0);
  CHECK(r.tail_bound <= 1e-10 * r.value);
  CHECK(std::abs(r.value - 2.0) <= r.tail_bound + 1e-15);
}

TEST_CASE("sum_adaptive: b = 0 weight series sums to one") {
  for (double kt : {1e-3, 0.1, 1.0, 10.0, 100.0}) {
    const auto k = diagonal_kernel(kt, 1.0);
    const auto r = sum_adaptive(
        [&](std::size_t l) { return std::pow(k.gamma, static_cast<double>(l)) * k.zeta; }, SeriesTolerance{});
    CHECK(std::abs(r.value - 1.0) <= 1e-9);
  }
}

TEST_CASE("sum_adaptive: result lies within its tail bound of a 10x longer sum") {
  // Positive series with ratio (l+3)/(l+1) * 0.9 -> 0.9 from above.
  const auto term = [](std::size_t l) {
    const double dl = static_cast<double>(l);
    return (dl + 1.0) * (dl + 2.0) * std::pow(0.9, dl);
  };
  const auto r = sum_adaptive(term, SeriesTolerance{});
  CHECK(r.terms_used > 100);
  double longer = 0.0;
  for (std::size_t l = 0; l < 10 * r.terms_used; ++l) longer += term(l);
  CHECK(std::abs(longer - r.value) <= r.tail_bound);
  // Closed form: sum (l+1)(l+2) x^l = 2 / (1-x)^3.
  CHECK(longer == doctest::Approx(2.0 / std::pow(0.1, 3)).epsilon(1e-10));
}

TEST_CASE("sum_adaptive: complex terms") {
  const Complex q{0.3, 0.4};
  const auto r = sum_adaptive([&](std::size_t l) { return std::pow(q, static_cast<double>(l)); }, SeriesTolerance{});
  const Complex expected = 1.0 / (1.0 - q);
  CHECK(std::abs(r.value - expected) <= 1e-9 * std::abs(expected));
}

TEST_CASE("sum_adaptive: arming skips leading zeros") {
  const auto term = [](std::size_t l) { return l < 5 ? 0.0 : std::pow(0.5, static_cast<double>(l - 5)); };
  const auto r = sum_adaptive(term, SeriesTolerance{}, 6);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("sum_adaptive: non-convergent and bad tolerances") {
  SeriesTolerance tol;
  tol.max_terms = 100;
  CHECK_THROWS_AS(sum_adaptive([](std::size_t) { return 1.0; }, tol), NonConvergent);
  CHECK_THROWS_AS(sum_adaptive([](std::size_t l) { return std::pow(0.999999, static_cast<double>(l)); }, tol),
                  NonConvergent);
  SeriesTolerance bad;
  bad.rel_eps = 0.0;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  bad = {};
  bad.tail_ratio_guard = 1.0;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  bad = {};
  bad.max_terms = 0;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
}

TEST_CASE("log_sum_exp") {
  const std::vector<double> xs{std::log(1.0), std::log(2.0), std::log(3.0)};
  CHECK(log_sum_exp(xs) == doctest::Approx(std::log(6.0)).epsilon(1e-15));
  const std::vector<double> none{-INFINITY, -INFINITY};
  CHECK(std::isinf(log_sum_exp(none)));
  CHECK(std::isinf(log_sum_exp({})));
}
