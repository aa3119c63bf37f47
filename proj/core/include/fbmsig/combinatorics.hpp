#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "fbmsig/word.hpp"

namespace fbmsig {

/// A perfect matching of positions {0,...,2k-1}. Pairs are stored with
/// first < second and sorted by first element.
struct Matching {
  std::vector<std::pair<int, int>> pairs;
  bool operator==(const Matching&) const = default;
};

std::uint64_t factorial(int n);
std::uint64_t double_factorial(int n);

/// All (2k-1)!! perfect matchings of 2k positions, in a fixed order.
/// Requires 2 <= two_k <= 12 and two_k even.
std::vector<Matching> enumerate_matchings(int two_k);

/// Matchings in which every pair joins two equal nonzero letters.
/// The word must consist of nonzero letters only. Empty when some letter
/// occurs an odd number of times.
std::vector<Matching> compatible_matchings(const Word& word);

/// Number of permutations of {1..2k} under which the pairing
/// (1,2),(3,4),... lands on equal letters: k! 2^k |compatible matchings|.
std::uint64_t permutation_count(const Word& word);

/// Upper bound k! 2^{p-1} (2(k-p+1))! / (k-p+1)! on permutation_count for
/// words of length 2k with p distinct letters. For p > k every such word has
/// an odd letter count and the count is zero, reported via `vanishes`.
struct CountBound {
  bool vanishes = false;
  std::uint64_t value = 0;
};
CountBound refined_count_bound(int k, int p);

/// Outcome of the exhaustive check that peeling off (sigma(1), sigma(2)) and
/// compressing the remaining values is a bijection
/// G_{2k} -> {ordered pairs} x G_{2k-2} with fibres of size 2k(2k-1).
struct BijectionReport {
  bool holds = false;
  std::uint64_t domain_size = 0;
  std::uint64_t distinct_images = 0;
  std::uint64_t min_fibre = 0;
  std::uint64_t max_fibre = 0;
  bool round_trip_ok = false;
};
BijectionReport decomposition_bijection_check(int k);

/// Words over {1..d} of even length <= max_two_k whose permutation_count
/// exceeds the refined bound. Expected to be empty.
std::vector<Word> refined_bound_violations(int max_two_k, int d);

}  // namespace fbmsig
