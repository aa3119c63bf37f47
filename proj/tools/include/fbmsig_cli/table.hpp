#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fbmsig::cli {

/// 17 significant digits; "nan", "inf" and "-inf" for non-finite values.
std::string format_number(double x);
std::string format_number(std::int64_t x);
std::string format_bool(bool b);

/// A named table of pre-formatted cells. CSV and JSON share the same strings,
/// so both encodings carry identical values.
struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
};

struct Report {
  std::vector<Table> tables;
  /// Written as a leading comment (CSV) or "generated" field (JSON) when set.
  std::optional<std::string> header;
};

std::string to_csv(const Report& report);
std::string to_json(const Report& report);

/// UTC wall-clock time, ISO 8601.
std::string utc_timestamp();

}  // namespace fbmsig::cli
