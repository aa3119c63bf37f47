#include "fbmsig/word.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <stdexcept>

namespace fbmsig {

namespace {

void check_letters(const std::vector<int>& letters) {
  for (int l : letters) {
    if (l < 0) throw std::invalid_argument("word letters must be non-negative");
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

Word::Word(std::initializer_list<int> letters) : letters_(letters) {
  check_letters(letters_);
}

Word::Word(std::vector<int> letters) : letters_(std::move(letters)) {
  check_letters(letters_);
}

Word Word::parse(std::string_view text) {
  text = trim(text);
  if (text.size() >= 2 && text.front() == '(' && text.back() == ')') {
    text = trim(text.substr(1, text.size() - 2));
  }
  std::vector<int> letters;
  if (text.empty()) return Word{};
  std::size_t pos = 0;
  while (true) {
    std::size_t comma = text.find(',', pos);
    std::string_view tok =
        trim(text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
    int value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size() || value < 0) {
      throw std::invalid_argument("malformed word: '" + std::string(text) + "'");
    }
    letters.push_back(value);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return Word(std::move(letters));
}

std::string Word::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(letters_[i]);
  }
  return out;
}

int Word::count(int letter) const {
  return static_cast<int>(std::count(letters_.begin(), letters_.end(), letter));
}

int Word::count_nonzero() const {
  return static_cast<int>(letters_.size()) - count(0);
}

int Word::max_letter() const {
  return letters_.empty() ? 0 : *std::max_element(letters_.begin(), letters_.end());
}

bool Word::fits_alphabet(int d) const { return max_letter() <= d; }

Word Word::spatial_part() const {
  std::vector<int> out;
  for (int l : letters_) {
    if (l != 0) out.push_back(l);
  }
  return Word(std::move(out));
}

Word Word::canonical_relabel() const {
  std::map<int, int> relabel;
  std::vector<int> out;
  out.reserve(letters_.size());
  for (int l : letters_) {
    if (l == 0) {
      out.push_back(0);
      continue;
    }
    auto [it, inserted] = relabel.emplace(l, static_cast<int>(relabel.size()) + 1);
    out.push_back(it->second);
  }
  return Word(std::move(out));
}

bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.letters() < b.letters();
}

}  // namespace fbmsig
