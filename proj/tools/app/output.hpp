#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qlimit/errors.hpp"
#include "qlimit/numerics.hpp"

namespace qlimit::app {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr int kCsvSchemaVersion = 1;

// Output file could not be opened or written.
class IoError : public Error {
 public:
  using Error::Error;
};

// Shortest round-trip decimal form; identical bits give identical text.
std::string format_double(double v);

using Cell = std::variant<std::int64_t, double, std::string, bool>;

struct Column {
  std::string name;
  std::string unit;  // empty for dimensionless / labels
};

struct Table {
  std::vector<Column> columns;
  std::vector<std::vector<Cell>> rows;
  // Summary lines written after the rows, e.g. first_unresolvable.
  std::vector<std::pair<std::string, std::string>> footer;
};

struct RunManifest {
  std::string command;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::string tool_version = kToolVersion;
  SeriesTolerance tolerances{};
  std::string timestamp;  // ISO-8601 UTC, only written to the sidecar
};

// Current UTC time, or SOURCE_DATE_EPOCH when that variable is set.
std::string iso8601_now();

/// CSV with '#'-prefixed manifest lines, a units line, the header row, the
/// data rows and '#'-prefixed footer lines. The timestamp is left out so that
/// identical runs produce byte-identical files.
void write_csv(std::ostream& os, const RunManifest& manifest, const Table& table);

// JSON mirror of write_csv: {"manifest", "columns", "records", "footer"}.
void write_json(std::ostream& os, const RunManifest& manifest, const Table& table);

// Full manifest including the timestamp.
void write_manifest_json(std::ostream& os, const RunManifest& manifest);

enum class Format { Table, Csv, Json };

/// Writes table to path ("-" means out). For files a `<path>.manifest.json`
/// sidecar with the timestamped manifest is written next to it. Throws IoError.
void emit(const std::string& path, Format format, const RunManifest& manifest, const Table& table,
          std::ostream& out);

// Writes text to a file, creating parent directories. Throws IoError.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace qlimit::app
