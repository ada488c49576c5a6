#include "app/output.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qlimit::app {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

namespace {

std::string cell_text(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          return format_double(v);
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else if constexpr (std::is_same_v<T, std::string>) {
          return v;
        } else {
          return std::to_string(v);
        }
      },
      c);
}

nlohmann::json cell_json(const Cell& c) {
  return std::visit(
      [](const auto& v) -> nlohmann::json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(v)) return nullptr;
        }
        return v;
      },
      c);
}

nlohmann::json manifest_json(const RunManifest& m, bool with_timestamp) {
  nlohmann::json j;
  j["command"] = m.command;
  j["tool_version"] = m.tool_version;
  j["schema_version"] = kCsvSchemaVersion;
  nlohmann::json params = nlohmann::json::array();
  for (const auto& [k, v] : m.parameters) params.push_back({{"key", k}, {"value", v}});
  j["parameters"] = params;
  j["tolerances"] = {{"rel_eps", m.tolerances.rel_eps},
                     {"max_terms", m.tolerances.max_terms},
                     {"tail_ratio_guard", m.tolerances.tail_ratio_guard}};
  if (with_timestamp) j["timestamp"] = m.timestamp;
  return j;
}

}  // namespace

std::string iso8601_now() {
  std::time_t now;
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"); epoch && *epoch) {
    now = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
  } else {
    now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  }
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_csv(std::ostream& os, const RunManifest& m, const Table& t) {
  os << "# qlimit " << m.command << "\n";
  os << "# tool_version: " << m.tool_version << "; schema_version: " << kCsvSchemaVersion << "\n";
  os << "# parameters:";
  for (const auto& [k, v] : m.parameters) os << ' ' << k << '=' << v << ';';
  os << "\n";
  os << "# tolerances: rel_eps=" << format_double(m.tolerances.rel_eps)
     << "; max_terms=" << m.tolerances.max_terms
     << "; tail_ratio_guard=" << format_double(m.tolerances.tail_ratio_guard) << "\n";
  os << "# units: hbar=1;";
  for (const auto& c : t.columns) os << ' ' << c.name << '[' << (c.unit.empty() ? "1" : c.unit) << "];";
  os << "\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i].name;
  os << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell_text(row[i]);
    os << "\n";
  }
  for (const auto& [k, v] : t.footer) os << "# " << k << ": " << v << "\n";
}

void write_json(std::ostream& os, const RunManifest& m, const Table& t) {
  nlohmann::json j;
  j["manifest"] = manifest_json(m, false);
  nlohmann::json cols = nlohmann::json::array();
  for (const auto& c : t.columns) cols.push_back({{"name", c.name}, {"unit", c.unit.empty() ? "1" : c.unit}});
  j["columns"] = cols;
  nlohmann::json records = nlohmann::json::array();
  for (const auto& row : t.rows) {
    nlohmann::json r = nlohmann::json::object();
    for (std::size_t i = 0; i < row.size() && i < t.columns.size(); ++i) r[t.columns[i].name] = cell_json(row[i]);
    records.push_back(std::move(r));
  }
  j["records"] = records;
  nlohmann::json footer = nlohmann::json::array();
  for (const auto& [k, v] : t.footer) footer.push_back({{"key", k}, {"value", v}});
  j["footer"] = footer;
  os << j.dump(2) << "\n";
}

void write_manifest_json(std::ostream& os, const RunManifest& m) { os << manifest_json(m, true).dump(2) << "\n"; }

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path.string() + "' for writing");
  f << text;
  f.flush();
  if (!f) throw IoError("write to '" + path.string() + "' failed");
}

void emit(const std::string& path, Format format, const RunManifest& manifest, const Table& table,
          std::ostream& out) {
  std::ostringstream body;
  if (format == Format::Json) {
    write_json(body, manifest, table);
  } else {
    write_csv(body, manifest, table);
  }
  if (path.empty() || path == "-") {
    out << body.str();
    return;
  }
  write_text_file(path, body.str());
  std::ostringstream side;
  write_manifest_json(side, manifest);
  write_text_file(path + ".manifest.json", side.str());
}

}  // namespace qlimit::app
