#include "qlimit/spectra.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "qlimit/errors.hpp"

namespace qlimit {

namespace {

using std::numbers::pi;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw InvalidArgument(std::string(what) + " must be finite and > 0");
  }
}

double morse_energy_unchecked(const Morse& m, int n) {
  const double v = n + 0.5;
  return -m.depth + m.omega * (v - v * v / m.anharmonicity);
}

bool morse_level_bound(const Morse& m, int n) {
  if (n < 0) return false;
  const double e = morse_energy_unchecked(m, n);
  if (!(e < 0.0)) return false;
  return n == 0 || e > morse_energy_unchecked(m, n - 1);
}

void check_level(const ModelParams& model, int n) {
  if (n < min_level(model)) {
    throw IndexOutOfSpectrum(std::string(model_name(model)) + ": level n=" + std::to_string(n) +
                             " is below the ground level " + std::to_string(min_level(model)));
  }
  if (const auto* m = std::get_if<Morse>(&model); m && !morse_level_bound(*m, n)) {
    throw IndexOutOfSpectrum("morse: level n=" + std::to_string(n) +
                             " lies past the top of the well (last bound level " +
                             std::to_string(*max_level(model)) + ")");
  }
}

}  // namespace

std::string_view model_name(const ModelParams& model) {
  return std::visit(Overloaded{
                        [](const Harmonic&) { return std::string_view{"harmonic"}; },
                        [](const Box&) { return std::string_view{"box"}; },
                        [](const Hydrogenoid&) { return std::string_view{"hydrogenoid"}; },
                        [](const Morse&) { return std::string_view{"morse"}; },
                        [](const Quartic&) { return std::string_view{"quartic"}; },
                    },
                    model);
}

void validate(const ModelParams& model) {
  std::visit(Overloaded{
                 [](const Harmonic& h) {
                   require_positive(h.mass, "harmonic mass");
                   require_positive(h.omega, "harmonic omega");
                 },
                 [](const Box& b) {
                   require_positive(b.mass, "box mass");
                   require_positive(b.width, "box width");
                 },
                 [](const Hydrogenoid& h) {
                   require_positive(h.reduced_mass, "hydrogenoid reduced mass");
                   require_positive(h.elementary_charge, "hydrogenoid elementary charge");
                   if (h.charge_number < 1) throw InvalidArgument("hydrogenoid charge number must be >= 1");
                 },
                 [](const Morse& m) {
                   require_positive(m.depth, "morse depth");
                   require_positive(m.range, "morse range");
                   require_positive(m.anharmonicity, "morse anharmonicity");
                   require_positive(m.mass, "morse mass");
                   require_positive(m.length_scale, "morse length scale");
                   require_positive(m.omega, "morse omega");
                   if (!morse_level_bound(m, 0)) throw InvalidArgument("morse: well holds no bound level");
                 },
                 [](const Quartic& q) {
                   require_positive(q.omega, "quartic omega");
                   if (!(q.lambda >= 0.0) || !std::isfinite(q.lambda)) {
                     throw InvalidArgument("quartic lambda must be finite and >= 0");
                   }
                 },
             },
             model);
}

int min_level(const ModelParams& model) {
  return (std::holds_alternative<Box>(model) || std::holds_alternative<Hydrogenoid>(model)) ? 1 : 0;
}

std::optional<int> max_level(const ModelParams& model) {
  const auto* m = std::get_if<Morse>(&model);
  if (!m) return std::nullopt;
  int n = 0;
  while (morse_level_bound(*m, n + 1)) ++n;
  return n;
}

double energy(const ModelParams& model, int n) {
  validate(model);
  check_level(model, n);
  return std::visit(Overloaded{
                        [n](const Harmonic& h) { return h.omega * (n + 0.5); },
                        [n](const Box& b) {
                          return static_cast<double>(n) * n * pi * pi / (2.0 * b.mass * b.width * b.width);
                        },
                        [n](const Hydrogenoid& h) {
                          const double z = h.charge_number;
                          const double e2 = h.elementary_charge * h.elementary_charge;
                          return -h.reduced_mass * z * z * e2 * e2 / (2.0 * n * static_cast<double>(n));
                        },
                        [n](const Morse& m) { return morse_energy_unchecked(m, n); },
                        [n](const Quartic& q) { return q.omega * n + q.lambda * n * static_cast<double>(n); },
                    },
                    model);
}

double period(const ModelParams& model, int n) {
  const double e = energy(model, n);
  return std::visit(Overloaded{
                        [](const Harmonic& h) { return 2.0 * pi / h.omega; },
                        [n](const Box& b) { return 2.0 * b.width * b.width * b.mass / (n * pi); },
                        [n](const Hydrogenoid& h) {
                          const double z = h.charge_number;
                          const double e2 = h.elementary_charge * h.elementary_charge;
                          const double n3 = static_cast<double>(n) * n * n;
                          return 2.0 * pi * n3 / (h.reduced_mass * z * z * e2 * e2);
                        },
                        [e](const Morse& m) {
                          return 2.0 * pi *
                                 std::sqrt(m.mass * m.length_scale * m.length_scale /
                                           (2.0 * std::abs(e) * m.range * m.range));
                        },
                        [n](const Quartic& q) { return 2.0 * pi / (q.omega + 2.0 * q.lambda * n); },
                    },
                    model);
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Resolvable:
      return "resolvable";
    case Verdict::Unresolvable:
      return "unresolvable";
    case Verdict::PeriodBlind:
      return "period-blind";
  }
  return "unknown";
}

CriterionPoint criterion_point(const ModelParams& model, int n) {
  if (n < min_level(model) + 1) {
    throw IndexOutOfSpectrum(std::string(model_name(model)) + ": y(n) needs a lower neighbour, n >= " +
                             std::to_string(min_level(model) + 1));
  }
  CriterionPoint pt;
  pt.n = n;
  pt.energy = energy(model, n);
  pt.period = period(model, n);
  pt.delta_energy = 0.5 * (pt.energy - energy(model, n - 1));
  pt.delta_period = 0.5 * (pt.period - period(model, n - 1));
  pt.y = std::abs(pt.delta_energy * pt.delta_period);
  if (pt.delta_period == 0.0) {
    pt.verdict = Verdict::PeriodBlind;
    pt.resolvable = false;
  } else {
    pt.resolvable = pt.y >= 0.5;
    pt.verdict = pt.resolvable ? Verdict::Resolvable : Verdict::Unresolvable;
  }
  return pt;
}

std::optional<double> closed_form_y(const ModelParams& model, int n) {
  const double dn = n;
  if (std::holds_alternative<Box>(model)) {
    if (n < 2) return std::nullopt;
    return pi * (2.0 * dn - 1.0) / (4.0 * (dn - 1.0) * dn);
  }
  if (std::holds_alternative<Hydrogenoid>(model)) {
    if (n < 2) return std::nullopt;
    return pi * (2.0 * dn - 1.0) * (3.0 * dn * dn - 3.0 * dn + 1.0) /
           (4.0 * dn * dn * (dn - 1.0) * (dn - 1.0));
  }
  if (const auto* q = std::get_if<Quartic>(&model)) {
    if (n < 1) return std::nullopt;
    const double w = q->omega;
    const double l = q->lambda;
    return pi * l * (w + l * (2.0 * dn - 1.0)) / ((w + 2.0 * l * (dn - 1.0)) * (w + 2.0 * l * dn));
  }
  return std::nullopt;
}

double superposition_delta_energy(const ModelParams& model, const SuperpositionSpec& s) {
  const double norm = std::norm(s.a) + std::norm(s.b);
  if (std::abs(norm - 1.0) > 1e-9) {
    throw NotNormalized("superposition: |a|^2 + |b|^2 = " + std::to_string(norm));
  }
  if (s.n < min_level(model) + 1) {
    throw IndexOutOfSpectrum("superposition: level n needs a lower neighbour");
  }
  return std::abs(s.a) * std::abs(s.b) * (energy(model, s.n) - energy(model, s.n - 1));
}

std::optional<int> quoted_threshold(const ModelParams& model) {
  if (std::holds_alternative<Box>(model)) return 4;
  if (std::holds_alternative<Hydrogenoid>(model)) return 9;
  return std::nullopt;
}

ScanResult threshold_scan(const ModelParams& model, int n_min, int n_max) {
  validate(model);
  if (n_min < min_level(model) + 1) {
    throw IndexOutOfSpectrum("scan: n_min must be >= " + std::to_string(min_level(model) + 1));
  }
  if (n_max < n_min) throw InvalidArgument("scan: n_max < n_min");

  ScanResult out;
  out.points.reserve(static_cast<std::size_t>(n_max - n_min + 1));
  for (int n = n_min; n <= n_max; ++n) {
    const CriterionPoint pt = criterion_point(model, n);
    if (!out.points.empty() && out.points.back().verdict != pt.verdict) out.crossings.push_back(n);
    if (!out.first_unresolvable && pt.verdict == Verdict::Unresolvable) out.first_unresolvable = n;
    out.points.push_back(pt);
  }

  if (out.points.front().verdict == Verdict::PeriodBlind) {
    out.notes.emplace_back("period is energy independent: y(n) = 0 identically, the criterion cannot resolve the spectrum");
  }
  if (const auto quoted = quoted_threshold(model);
      quoted && out.first_unresolvable && *out.first_unresolvable != *quoted) {
    char buf[256];
    const int got = *out.first_unresolvable;
    const auto y_at = [&](int n) -> double {
      if (n < n_min || n > n_max) return std::nan("");
      return out.points[static_cast<std::size_t>(n - n_min)].y;
    };
    std::snprintf(buf, sizeof buf,
                  "first unresolvable level n=%d differs from the quoted threshold n=%d "
                  "(y(%d)=%.6f, y(%d)=%.6f)",
                  got, *quoted, *quoted, y_at(*quoted), got, y_at(got));
    out.notes.emplace_back(buf);
  }
  return out;
}

double harmonic_dpdq(const Harmonic& model, int n, double q, double p) {
  validate(model);
  if (n < 0) throw IndexOutOfSpectrum("harmonic: n must be >= 0");
  return 1.0 / (4.0 * ((n + 0.5) + std::abs(p * q)));
}

QuarticLimits quartic_limits(const Quartic& model, int n) {
  validate(model);
  if (n < 2) throw IndexOutOfSpectrum("quartic_limits: n must be >= 2");
  const double dn = n;
  return {pi * model.lambda / model.omega, pi * (2.0 * dn - 1.0) / (4.0 * (dn - 1.0) * dn)};
}

}  // namespace qlimit
