#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

#include "errors.hpp"

namespace hyperg {

inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / i;
  return r;
}

inline std::uint64_t bell_number(int n) {
  if (n < 0) throw ArityError("bell_number: negative argument");
  std::vector<std::uint64_t> row{1};
  for (int i = 0; i < n; ++i) {
    std::vector<std::uint64_t> next{row.back()};
    for (std::uint64_t v : row) next.push_back(next.back() + v);
    row = std::move(next);
  }
  return row.front();
}

// all k-subsets of {0..n-1} in lexicographic order
inline std::vector<std::vector<int>> combinations(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> c(k);
  std::iota(c.begin(), c.end(), 0);
  while (true) {
    out.push_back(c);
    int i = k - 1;
    while (i >= 0 && c[i] == n - k + i) --i;
    if (i < 0) break;
    ++c[i];
    for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  }
  return out;
}

// rank of an increasing k-subset within the lexicographic order above
inline int combination_rank(const std::vector<int>& c, int n) {
  int k = static_cast<int>(c.size());
  std::uint64_t r = 0;
  int prev = -1;
  for (int i = 0; i < k; ++i) {
    for (int v = prev + 1; v < c[i]; ++v) r += binomial(n - 1 - v, k - 1 - i);
    prev = c[i];
  }
  return static_cast<int>(r);
}

// partitions of {0..n-1} as restricted growth strings, lexicographic
inline void for_each_partition(int n, const std::function<void(const std::vector<std::uint8_t>&)>& fn) {
  std::vector<std::uint8_t> rgs(n, 0);
  std::vector<std::uint8_t> maxv(n, 0);
  int i = n - 1;
  if (n == 0) {
    fn(rgs);
    return;
  }
  while (true) {
    fn(rgs);
    for (i = n - 1; i > 0; --i) {
      if (rgs[i] <= maxv[i - 1]) break;
    }
    if (i == 0) return;
    ++rgs[i];
    maxv[i] = std::max(maxv[i - 1], rgs[i]);
    for (int j = i + 1; j < n; ++j) {
      rgs[j] = 0;
      maxv[j] = maxv[i];
    }
  }
}

inline int block_count(const std::vector<std::uint8_t>& kernel) {
  std::uint8_t m = 0;
  for (std::uint8_t b : kernel) m = std::max(m, b);
  return kernel.empty() ? 0 : m + 1;
}

// relabel blocks in order of first use so equal partitions compare equal;
// raw may be a sub-kernel whose labels exceed its own length
inline std::vector<std::uint8_t> canonical_kernel(const std::vector<std::uint8_t>& raw) {
  std::array<int, 256> seen;
  seen.fill(-1);
  std::vector<std::uint8_t> out(raw.size());
  std::uint8_t next = 0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (seen[raw[i]] < 0) seen[raw[i]] = next++;
    out[i] = static_cast<std::uint8_t>(seen[raw[i]]);
  }
  return out;
}

inline std::uint64_t fnv1a(const void* data, std::size_t len, std::uint64_t seed = 14695981039346656037ull) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = seed;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace hyperg
