#include "fbmsig/combinatorics.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace fbmsig {

std::uint64_t factorial(int n) {
  if (n < 0 || n > 20) throw std::out_of_range("factorial argument out of range");
  std::uint64_t r = 1;
  for (int i = 2; i <= n; ++i) r *= static_cast<std::uint64_t>(i);
  return r;
}

std::uint64_t double_factorial(int n) {
  if (n < -1 || n > 33) throw std::out_of_range("double factorial argument out of range");
  std::uint64_t r = 1;
  for (int i = n; i > 1; i -= 2) r *= static_cast<std::uint64_t>(i);
  return r;
}

namespace {

// Pairs the smallest unused position with every later unused position whose
// letter matches, recursively. With an all-equal label vector this yields
// every perfect matching.
void extend_matching(const std::vector<int>& labels, std::vector<bool>& used,
                     std::vector<std::pair<int, int>>& current, std::vector<Matching>& out) {
  const int n = static_cast<int>(labels.size());
  int first = 0;
  while (first < n && used[first]) ++first;
  if (first == n) {
    out.push_back(Matching{current});
    return;
  }
  used[first] = true;
  for (int j = first + 1; j < n; ++j) {
    if (used[j] || labels[j] != labels[first]) continue;
    used[j] = true;
    current.emplace_back(first, j);
    extend_matching(labels, used, current, out);
    current.pop_back();
    used[j] = false;
  }
  used[first] = false;
}

std::uint64_t lehmer_rank(const std::vector<int>& perm) {
  // perm holds values 1..n
  const int n = static_cast<int>(perm.size());
  std::uint64_t rank = 0;
  for (int i = 0; i < n; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < n; ++j) smaller += perm[j] < perm[i];
    rank = rank * static_cast<std::uint64_t>(n - i) + static_cast<std::uint64_t>(smaller);
  }
  return rank;
}

}  // namespace

std::vector<Matching> enumerate_matchings(int two_k) {
  if (two_k < 2 || two_k > 12 || two_k % 2 != 0) {
    throw std::invalid_argument("enumerate_matchings: need even 2 <= two_k <= 12");
  }
  std::vector<int> labels(two_k, 1);
  std::vector<bool> used(two_k, false);
  std::vector<std::pair<int, int>> current;
  std::vector<Matching> out;
  out.reserve(double_factorial(two_k - 1));
  extend_matching(labels, used, current, out);
  return out;
}

std::vector<Matching> compatible_matchings(const Word& word) {
  if (word.size() % 2 != 0) throw std::invalid_argument("compatible_matchings: odd word length");
  if (word.size() > 12) throw std::invalid_argument("compatible_matchings: word longer than 12");
  for (int l : word.letters()) {
    if (l == 0) throw std::invalid_argument("compatible_matchings: word contains a time letter");
  }
  std::vector<Matching> out;
  std::vector<bool> used(word.size(), false);
  std::vector<std::pair<int, int>> current;
  extend_matching(word.letters(), used, current, out);
  return out;
}

std::uint64_t permutation_count(const Word& word) {
  const int k = static_cast<int>(word.size() / 2);
  return factorial(k) * (std::uint64_t{1} << k) * compatible_matchings(word).size();
}

CountBound refined_count_bound(int k, int p) {
  if (k < 1 || p < 1) throw std::invalid_argument("refined_count_bound: need k, p >= 1");
  if (p > k) return CountBound{true, 0};
  const int r = k - p + 1;
  return CountBound{false, factorial(k) * (std::uint64_t{1} << (p - 1)) * factorial(2 * r) /
                               factorial(r)};
}

BijectionReport decomposition_bijection_check(int k) {
  if (k < 1 || k > 4) throw std::invalid_argument("decomposition_bijection_check: need 1 <= k <= 4");
  const int n = 2 * k;
  const std::uint64_t inner_count = factorial(n - 2);
  std::vector<int> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 1);

  BijectionReport report;
  report.round_trip_ok = true;
  std::set<std::uint64_t> images;
  std::vector<std::uint64_t> fibre(inner_count, 0);
  bool all_valid = true;

  do {
    ++report.domain_size;
    const int lo = std::min(sigma[0], sigma[1]);
    const int hi = std::max(sigma[0], sigma[1]);
    std::vector<int> tau(n - 2);
    for (int i = 2; i < n; ++i) {
      const int y = sigma[i];
      tau[i - 2] = y - (y > lo ? 1 : 0) - (y > hi ? 1 : 0);
    }
    std::vector<int> sorted = tau;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < n - 2; ++i) {
      if (sorted[i] != i + 1) all_valid = false;
    }
    if (!all_valid) break;

    // Forward modification rule applied to tau must give back sigma.
    for (int i = 0; i < n - 2; ++i) {
      const int x = tau[i];
      int y;
      if (x < lo) {
        y = x;
      } else if (x < hi - 1) {
        y = x + 1;
      } else {
        y = x + 2;
      }
      if (y != sigma[i + 2]) report.round_trip_ok = false;
    }

    const std::uint64_t rank = n > 2 ? lehmer_rank(tau) : 0;
    ++fibre[rank];
    const std::uint64_t pair_code =
        static_cast<std::uint64_t>(sigma[0]) * static_cast<std::uint64_t>(n + 1) +
        static_cast<std::uint64_t>(sigma[1]);
    images.insert(pair_code * inner_count + rank);
  } while (std::next_permutation(sigma.begin(), sigma.end()));

  report.distinct_images = images.size();
  report.min_fibre = *std::min_element(fibre.begin(), fibre.end());
  report.max_fibre = *std::max_element(fibre.begin(), fibre.end());
  const std::uint64_t expected_fibre = static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n - 1);
  report.holds = all_valid && report.round_trip_ok &&
                 report.distinct_images == report.domain_size &&
                 report.min_fibre == expected_fibre && report.max_fibre == expected_fibre;
  return report;
}

std::vector<Word> refined_bound_violations(int max_two_k, int d) {
  if (max_two_k > 12 || d < 1) throw std::invalid_argument("refined_bound_violations: bad range");
  std::vector<Word> violations;
  for (int two_k = 2; two_k <= max_two_k; two_k += 2) {
    std::vector<int> letters(two_k, 1);
    while (true) {
      Word w(letters);
      std::set<int> distinct(letters.begin(), letters.end());
      const CountBound bound = refined_count_bound(two_k / 2, static_cast<int>(distinct.size()));
      const std::uint64_t count = permutation_count(w);
      if (bound.vanishes ? count != 0 : count > bound.value) violations.push_back(w);
      int pos = two_k - 1;
      while (pos >= 0 && letters[pos] == d) letters[pos--] = 1;
      if (pos < 0) break;
      ++letters[pos];
    }
  }
  return violations;
}

}  // namespace fbmsig
