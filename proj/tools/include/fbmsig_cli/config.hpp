#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fbmsig/word.hpp"

namespace fbmsig::cli {

/// Bad flags, config entries or values; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flat `key = value` text. Blank lines and lines starting with '#' are
/// skipped; keys may be written with or without leading dashes.
std::vector<std::pair<std::string, std::string>> parse_key_value(std::string_view text);
std::vector<std::pair<std::string, std::string>> read_key_value_file(const std::filesystem::path& path);

/// Split on `sep`, trimming whitespace and dropping empty pieces.
std::vector<std::string> split_list(std::string_view text, char sep);

std::vector<double> parse_doubles(std::string_view key, std::string_view text);
std::vector<int> parse_ints(std::string_view key, std::string_view text);
double parse_double(std::string_view key, std::string_view text);
long long parse_integer(std::string_view key, std::string_view text);
std::uint64_t parse_u64(std::string_view key, std::string_view text);
bool parse_bool(std::string_view key, std::string_view text);

/// Words are comma-separated letters; several words are separated by ';'.
std::vector<Word> parse_words(std::string_view text);

}  // namespace fbmsig::cli
