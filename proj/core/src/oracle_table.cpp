#include "fbmsig/oracle_table.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace fbmsig {

namespace detail {
extern const std::string_view kOracleTableJson;
}

namespace {

// Recursive descent:
//   expr   := term (('+'|'-') term)*
//   term   := unary (('*'|'/') unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' unary)?
//   atom   := number | 'H' | '(' expr ')'
class ExpressionParser {
 public:
  ExpressionParser(std::string_view text, double hurst) : text_(text), hurst_(hurst) {}

  double parse() {
    const double v = expr();
    skip_space();
    if (pos_ != text_.size()) fail("trailing characters");
    return v;
  }

 private:
  [[noreturn]] void fail(const char* what) const {
    throw std::invalid_argument(std::string("expression '") + std::string(text_) + "': " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  double expr() {
    double v = term();
    while (true) {
      if (accept('+')) {
        v += term();
      } else if (accept('-')) {
        v -= term();
      } else {
        return v;
      }
    }
  }

  double term() {
    double v = unary();
    while (true) {
      if (accept('*')) {
        v *= unary();
      } else if (accept('/')) {
        v /= unary();
      } else {
        return v;
      }
    }
  }

  double unary() {
    if (accept('-')) return -unary();
    return power();
  }

  double power() {
    const double base = atom();
    if (accept('^')) return std::pow(base, unary());
    return base;
  }

  double atom() {
    skip_space();
    if (accept('(')) {
      const double v = expr();
      if (!accept(')')) fail("missing ')'");
      return v;
    }
    if (pos_ < text_.size() && text_[pos_] == 'H') {
      ++pos_;
      return hurst_;
    }
    const std::string rest(text_.substr(pos_));
    char* end = nullptr;
    const double v = std::strtod(rest.c_str(), &end);
    if (end == rest.c_str()) fail("expected a number, 'H' or '('");
    pos_ += static_cast<std::size_t>(end - rest.c_str());
    return v;
  }

  std::string_view text_;
  double hurst_;
  std::size_t pos_ = 0;
};

}  // namespace

double evaluate_expression(std::string_view expression, double hurst) {
  return ExpressionParser(expression, hurst).parse();
}

std::vector<OracleEntry> parse_oracle_table(std::string_view json_text) {
  const nlohmann::json doc = nlohmann::json::parse(json_text);
  std::vector<OracleEntry> out;
  for (const auto& e : doc.at("entries")) {
    OracleEntry entry{Word::parse(e.at("word").get<std::string>()), e.at("value").get<std::string>()};
    evaluate_expression(entry.expression, 0.75);  // reject malformed entries early
    out.push_back(std::move(entry));
  }
  return out;
}

std::vector<OracleEntry> load_oracle_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open oracle table " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_oracle_table(buffer.str());
}

const std::vector<OracleEntry>& oracle_table() {
  static const std::vector<OracleEntry> table = parse_oracle_table(detail::kOracleTableJson);
  return table;
}

std::optional<double> oracle_value(const Word& word, double hurst) {
  for (const OracleEntry& e : oracle_table()) {
    if (e.word == word) return evaluate_expression(e.expression, hurst);
  }
  return std::nullopt;
}

}  // namespace fbmsig
