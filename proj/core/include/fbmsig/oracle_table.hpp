#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fbmsig/word.hpp"

namespace fbmsig {

/// Closed-form expected coefficient of time-augmented one-dimensional fBm,
/// stored as an arithmetic expression in H.
struct OracleEntry {
  Word word;
  std::string expression;
};

/// Evaluates an expression over numbers, the variable H, + - * / ^ and
/// parentheses. Throws std::invalid_argument on syntax errors.
double evaluate_expression(std::string_view expression, double hurst);

/// Table compiled into the library from data/expected_signature_oracle.json.
const std::vector<OracleEntry>& oracle_table();

/// Parses a table file in the same JSON layout.
std::vector<OracleEntry> load_oracle_table(const std::filesystem::path& path);
std::vector<OracleEntry> parse_oracle_table(std::string_view json_text);

/// Closed-form value if `word` is in the built-in table.
std::optional<double> oracle_value(const Word& word, double hurst);

}  // namespace fbmsig
