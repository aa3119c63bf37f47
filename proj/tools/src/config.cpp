#include "fbmsig_cli/config.hpp"

#include <cerrno>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace fbmsig::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

UsageError bad_value(std::string_view key, std::string_view text, std::string_view expected) {
  return UsageError("--" + std::string(key) + ": expected " + std::string(expected) + ", got '" +
                    std::string(text) + "'");
}

}  // namespace

std::vector<std::pair<std::string, std::string>> parse_key_value(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    const std::string_view line = trim(text.substr(pos, end - pos));
    ++line_no;
    pos = end + 1;
    if (line.empty() || line.front() == '#') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw UsageError("config line " + std::to_string(line_no) + ": missing '='");
    }
    std::string_view key = trim(line.substr(0, eq));
    while (!key.empty() && key.front() == '-') key.remove_prefix(1);
    if (key.empty()) throw UsageError("config line " + std::to_string(line_no) + ": empty key");
    out.emplace_back(std::string(key), std::string(trim(line.substr(eq + 1))));
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> read_key_value_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_key_value(buf.str());
}

std::vector<std::string> split_list(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find(sep, pos), text.size());
    const std::string_view piece = trim(text.substr(pos, end - pos));
    if (!piece.empty()) out.emplace_back(piece);
    pos = end + 1;
  }
  return out;
}

double parse_double(std::string_view key, std::string_view text) {
  const std::string s(trim(text));
  if (s.empty()) throw bad_value(key, text, "a number");
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE) throw bad_value(key, text, "a number");
  return v;
}

long long parse_integer(std::string_view key, std::string_view text) {
  const std::string_view s = trim(text);
  long long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw bad_value(key, text, "an integer");
  }
  return v;
}

std::uint64_t parse_u64(std::string_view key, std::string_view text) {
  const std::string_view s = trim(text);
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw bad_value(key, text, "an unsigned 64-bit integer");
  }
  return v;
}

bool parse_bool(std::string_view key, std::string_view text) {
  const std::string_view s = trim(text);
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw bad_value(key, text, "true or false");
}

std::vector<double> parse_doubles(std::string_view key, std::string_view text) {
  std::vector<double> out;
  for (const std::string& piece : split_list(text, ',')) out.push_back(parse_double(key, piece));
  return out;
}

std::vector<int> parse_ints(std::string_view key, std::string_view text) {
  std::vector<int> out;
  for (const std::string& piece : split_list(text, ',')) {
    const long long v = parse_integer(key, piece);
    if (v < INT32_MIN || v > INT32_MAX) throw bad_value(key, piece, "a 32-bit integer");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

std::vector<Word> parse_words(std::string_view text) {
  std::vector<Word> out;
  for (const std::string& piece : split_list(text, ';')) {
    try {
      out.push_back(Word::parse(piece));
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("--words: ") + e.what());
    }
  }
  return out;
}

}  // namespace fbmsig::cli
