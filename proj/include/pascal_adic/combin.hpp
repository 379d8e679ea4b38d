#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "pascal_adic/bignat.hpp"

namespace pascal_adic {

// Levels of the memoized Pascal table. Above this, binom falls back to the
// multiplicative formula (still exact).
inline constexpr std::uint64_t kBinomTableLevels = 128;

namespace detail {

inline const std::vector<std::vector<BigNat>>& pascal_table() {
  static const std::vector<std::vector<BigNat>> table = [] {
    std::vector<std::vector<BigNat>> t(kBinomTableLevels + 1);
    for (std::uint64_t n = 0; n <= kBinomTableLevels; ++n) {
      t[n].resize(n + 1);
      t[n][0] = 1;
      t[n][n] = 1;
      for (std::uint64_t k = 1; k < n; ++k) t[n][k] = t[n - 1][k - 1] + t[n - 1][k];
    }
    return t;
  }();
  return table;
}

// Exact product form; every intermediate division is exact.
inline BigNat binom_product(std::uint64_t n, std::uint64_t k) {
  if (k > n - k) k = n - k;
  BigNat r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;
  }
  return r;
}

}  // namespace detail

// C(n,k). Out-of-range k (k > n, or the signed variants below) yields 0, not
// an error; the appearance-triangle formulas rely on that convention.
inline BigNat binom(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (n <= kBinomTableLevels) return detail::pascal_table()[n][k];
  return detail::binom_product(n, k);
}

inline BigNat binom_signed(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n) return 0;
  return binom(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k));
}

// ln C(n,k) via log-gamma. Requires 0 <= k <= n.
inline double binom_log(std::uint64_t n, std::uint64_t k) {
  const long double r = std::lgammal(static_cast<long double>(n) + 1.0L) -
                        std::lgammal(static_cast<long double>(k) + 1.0L) -
                        std::lgammal(static_cast<long double>(n - k) + 1.0L);
  return static_cast<double>(r);
}

// C(n-r,k-s)/C(n,k) evaluated as the exact rational
//   k^(s) * (n-k)^(r-s) / n^(r)        (falling factorials)
// so it stays accurate at n where the binomials themselves overflow.
inline double binom_ratio(std::uint64_t n, std::uint64_t k, std::uint64_t r, std::uint64_t s) {
  if (s > k || r - s > n - k) return 0.0;  // numerator binomial vanishes
  long double v = 1.0L;
  for (std::uint64_t i = 0; i < s; ++i) v *= static_cast<long double>(k - i);
  for (std::uint64_t i = 0; i < r - s; ++i) v *= static_cast<long double>(n - k - i);
  for (std::uint64_t i = 0; i < r; ++i) v /= static_cast<long double>(n - i);
  return static_cast<double>(v);
}

}  // namespace pascal_adic
