#pragma once

// K-Smallest Subsets: enumerate the K cheapest subsets of a sized ground
// set by iterative extend-and-merge, plus an exhaustive oracle for tests.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace cpnb {

// Ground set with one size per element. Sizes are kept non-negative rather
// than strictly positive so that zero-priced statement flips can ride the
// same enumerator; the merge argument is unaffected.
struct SizedGround {
  std::vector<long long> sizes;
};

struct SizedSubset {
  std::uint64_t mask = 0;  // over the caller's element indices
  long long size = 0;
};

namespace detail {

struct WorkSubset {
  std::uint64_t mask;
  long long size;
};

}  // namespace detail

// Iterative extend-and-merge: maintain the up-to-K smallest subsets of the
// first i elements (sorted ascending by size), adjoin element i+1 to each,
// and two-way merge back to K entries. min(K, m) passes suffice; elements
// ranked past the K-th can never appear in a solution. Ties keep the
// left (element-free) run first, deterministically.
inline std::vector<SizedSubset> k_smallest_subsets(const SizedGround& ground, std::uint64_t k) {
  if (k == 0) throw std::invalid_argument("k_smallest_subsets: K must be >= 1");
  const std::size_t m = ground.sizes.size();
  if (m > 63) throw std::invalid_argument("k_smallest_subsets: too many elements");
  for (long long s : ground.sizes)
    if (s < 0) throw std::invalid_argument("k_smallest_subsets: negative size");
  if (m < 63) k = std::min<std::uint64_t>(k, std::uint64_t{1} << m);

  std::vector<std::size_t> by_size(m);
  std::iota(by_size.begin(), by_size.end(), 0);
  std::stable_sort(by_size.begin(), by_size.end(),
                   [&](std::size_t a, std::size_t b) { return ground.sizes[a] < ground.sizes[b]; });

  std::vector<detail::WorkSubset> acc{{0, 0}}, extended, merged;
  const std::size_t passes = std::min<std::uint64_t>(m, k);
  for (std::size_t i = 0; i < passes; ++i) {
    const std::uint64_t bit = std::uint64_t{1} << by_size[i];
    const long long s = ground.sizes[by_size[i]];
    extended.clear();
    for (const auto& w : acc) extended.push_back({w.mask | bit, w.size + s});
    merged.clear();
    std::size_t ia = 0, ib = 0;
    while (merged.size() < k && (ia < acc.size() || ib < extended.size())) {
      if (ia < acc.size() && (ib >= extended.size() || acc[ia].size <= extended[ib].size))
        merged.push_back(acc[ia++]);
      else
        merged.push_back(extended[ib++]);
    }
    acc.swap(merged);
  }

  std::vector<SizedSubset> out;
  out.reserve(acc.size());
  for (const auto& w : acc) out.push_back({w.mask, w.size});
  return out;
}

// Exhaustive reference: all 2^m subsets sorted by size.
inline std::vector<SizedSubset> k_smallest_subsets_oracle(const SizedGround& ground,
                                                          std::uint64_t k) {
  if (k == 0) throw std::invalid_argument("k_smallest_subsets_oracle: K must be >= 1");
  const std::size_t m = ground.sizes.size();
  if (m > 20) throw std::invalid_argument("k_smallest_subsets_oracle: ground set too large");
  std::vector<SizedSubset> all;
  all.reserve(std::size_t{1} << m);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    long long size = 0;
    for (std::size_t i = 0; i < m; ++i)
      if (mask & (std::uint64_t{1} << i)) size += ground.sizes[i];
    all.push_back({mask, size});
  }
  std::stable_sort(all.begin(), all.end(),
                   [](const SizedSubset& a, const SizedSubset& b) { return a.size < b.size; });
  all.resize(std::min<std::uint64_t>(k, all.size()));
  return all;
}

}  // namespace cpnb
