#include "qlimit/grid.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "qlimit/errors.hpp"

namespace qlimit {

void LogGrid::validate() const {
  if (!(start > 0.0) || !(stop > start) || !std::isfinite(stop)) {
    throw InvalidArgument("grid: need 0 < start < stop");
  }
  if (points < 2) throw InvalidArgument("grid: need at least 2 points");
}

std::vector<double> LogGrid::values() const {
  validate();
  std::vector<double> v(points);
  const double a = std::log(start);
  const double step = (std::log(stop) - a) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) v[i] = std::exp(a + step * static_cast<double>(i));
  v.front() = start;
  v.back() = stop;
  return v;
}

LogGrid LogGrid::parse(std::string_view spec) {
  const auto fail = [&] {
    return InvalidArgument("grid: expected log:START:STOP:POINTS, got '" + std::string(spec) + "'");
  };
  if (!spec.starts_with("log:")) throw fail();
  std::string_view rest = spec.substr(4);
  std::string_view fields[3];
  for (int i = 0; i < 3; ++i) {
    const auto colon = rest.find(':');
    if ((i < 2) != (colon != std::string_view::npos)) throw fail();
    fields[i] = rest.substr(0, colon);
    rest = colon == std::string_view::npos ? std::string_view{} : rest.substr(colon + 1);
  }
  LogGrid g;
  const auto num = [&](std::string_view s, auto& out) {
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw fail();
  };
  num(fields[0], g.start);
  num(fields[1], g.stop);
  num(fields[2], g.points);
  g.validate();
  return g;
}

std::string LogGrid::to_string() const {
  char buf[96];
  std::snprintf(buf, sizeof buf, "log:%.17g:%.17g:%zu", start, stop, points);
  return buf;
}

}  // namespace qlimit
