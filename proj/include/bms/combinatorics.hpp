#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace bms {

/// C(n, k) with overflow detection.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    const std::uint64_t num = n - k + i;
    const std::uint64_t g = std::gcd(r, i);
    const std::uint64_t rr = r / g, ii = i / g;
    if (rr > std::numeric_limits<std::uint64_t>::max() / num) throw std::overflow_error("binomial overflow");
    r = rr * num / ii;
  }
  return r;
}

/// Advances a sorted k-subset of {0..n-1} to its colexicographic successor.
/// Returns false after the last subset.
inline bool next_combination_colex(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t k = c.size();
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t limit = (i + 1 < k) ? c[i + 1] : n;
    if (c[i] + 1 < limit) {
      ++c[i];
      for (std::size_t j = 0; j < i; ++j) c[j] = j;
      return true;
    }
  }
  return false;
}

/// Calls fn(subset) for every k-subset of {0..n-1} in colexicographic order.
template <typename Fn>
void for_each_combination(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) return;
  std::vector<std::size_t> c(k);
  std::iota(c.begin(), c.end(), std::size_t{0});
  do {
    fn(static_cast<const std::vector<std::size_t>&>(c));
  } while (k > 0 && next_combination_colex(c, n));
}

}  // namespace bms
