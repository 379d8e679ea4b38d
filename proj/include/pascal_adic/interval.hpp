#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "pascal_adic/combin.hpp"
#include "pascal_adic/errors.hpp"
#include "pascal_adic/path.hpp"

namespace pascal_adic {

// A point of [0,1] held as its binary expansion x = sum x_i 2^-i, i.e. a
// Path; the float value is a cached truncation. All interval arithmetic
// happens on the path side, floats only at the boundary.
struct DyadicPoint {
  Path path;
  double value = 0.0;
};

inline constexpr unsigned kValueWindow = 64;

inline double expansion_value(const Path& x, unsigned window = kValueWindow) {
  double v = 0.0;
  for (unsigned i = window; i >= 1; --i)
    v = (v + static_cast<double>(x.bit(i))) * 0.5;
  return v;
}

inline DyadicPoint dyadic_from_path(Path p, unsigned window = kValueWindow) {
  const double v = expansion_value(p, window);
  return {std::move(p), v};
}

// Dyadic rationals correspond to eventually diagonal paths (eventually
// constant expansions); T_b is undefined exactly there.
inline bool eventually_diagonal(const Path& x) {
  switch (x.tail().kind) {
    case TailKind::Zeros:
    case TailKind::Ones: return true;
    case TailKind::Cyclic: return x.tail().constant_zero() || x.tail().constant_one();
    case TailKind::RunLength: return false;  // marks enforce infinitely many 0s and 1s
  }
  return false;
}

// The binomial transformation T_b, computed as the adic step on the
// expansion path.
inline DyadicPoint binomial_map(const DyadicPoint& x, std::uint64_t horizon = kDefaultHorizon) {
  if (eventually_diagonal(x.path))
    fail("DyadicRational", "T_b is undefined at dyadic rationals (eventually diagonal expansion)");
  return dyadic_from_path(adic_step(x.path, horizon));
}

// Sampled graph of T_b: for each of the 2^stage dyadic subintervals,
// `samples_per_interval` jittered interior points (seeded, deterministic)
// with their images. Rows sorted by x.
inline std::vector<std::pair<double, double>> plot_points(unsigned stage,
                                                          unsigned samples_per_interval,
                                                          std::uint64_t seed) {
  if (stage > 16) throw std::invalid_argument("plot stage capped at 16");
  if (samples_per_interval < 1) throw std::invalid_argument("need at least one sample per interval");
  std::mt19937_64 rng(seed);
  std::vector<std::pair<double, double>> rows;
  rows.reserve((std::size_t{1} << stage) * samples_per_interval);
  for (std::uint64_t w = 0; w < (std::uint64_t{1} << stage); ++w) {
    for (unsigned s = 0; s < samples_per_interval; ++s) {
      std::string bits;
      bits.reserve(stage + 50);
      for (unsigned b = 0; b < stage; ++b)
        bits.push_back(((w >> (stage - 1 - b)) & 1) ? '1' : '0');
      bits.push_back('1');  // keep the point interior to its interval
      std::uint64_t r = rng();
      for (unsigned b = 0; b < 48; ++b) bits.push_back(((r >> b) & 1) ? '1' : '0');
      const Path p(std::move(bits), TailRule::cyclic("10"));
      const DyadicPoint x = dyadic_from_path(p);
      rows.emplace_back(x.value, binomial_map(x).value);
    }
  }
  std::sort(rows.begin(), rows.end());
  return rows;
}

// Stage-n cutting-and-stacking structure: stack k has height C(n,k), level
// width 2^-n; the bottom level is the cylinder [1^k 0^(n-k)].
struct Stack {
  std::uint64_t k = 0;
  BigNat height;
  double width = 0.0;
  std::string bottom;  // 0/1 word of the bottom-level cylinder
  std::string top;     // 0/1 word of the top-level cylinder
};

inline std::vector<Stack> stack_structure(unsigned stage) {
  if (stage < 1 || stage > 20) throw std::invalid_argument("stage must lie in 1..20");
  std::vector<Stack> stacks;
  for (std::uint64_t k = 0; k <= stage; ++k) {
    Stack s;
    s.k = k;
    s.height = binom(stage, k);
    s.width = std::ldexp(1.0, -static_cast<int>(stage));
    s.bottom = std::string(k, '1') + std::string(stage - k, '0');
    s.top = std::string(stage - k, '0') + std::string(k, '1');
    stacks.push_back(std::move(s));
  }
  return stacks;
}

}  // namespace pascal_adic
