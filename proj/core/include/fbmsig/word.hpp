#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace fbmsig {

/// A multi-index into the tensor algebra of R^{d+1}.
///
/// Letter 0 is the time channel, letters 1..d are the spatial channels.
/// The first letter is the innermost (earliest) integration variable, so the
/// coefficient of (i_1,...,i_k) is the integral over 0 < t_1 < ... < t_k of
/// dX^{i_1}_{t_1} ... dX^{i_k}_{t_k}.
class Word {
 public:
  Word() = default;
  Word(std::initializer_list<int> letters);
  explicit Word(std::vector<int> letters);

  /// Parses comma separated letters, e.g. "1,0,1". Empty text or "()" is
  /// the empty word. Throws std::invalid_argument on malformed input.
  static Word parse(std::string_view text);
  std::string to_string() const;

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  int operator[](std::size_t i) const { return letters_[i]; }
  const std::vector<int>& letters() const { return letters_; }

  int count(int letter) const;
  int count_nonzero() const;
  int max_letter() const;
  bool fits_alphabet(int d) const;

  /// Word with all time letters removed.
  Word spatial_part() const;
  /// Nonzero letters renumbered 1,2,... in order of first appearance.
  Word canonical_relabel() const;

  auto operator<=>(const Word&) const = default;
  bool operator==(const Word&) const = default;

 private:
  std::vector<int> letters_;
};

/// Orders by length first, then lexicographically.
bool shortlex_less(const Word& a, const Word& b);

}  // namespace fbmsig
