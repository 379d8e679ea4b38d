#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "pascal_adic/combin.hpp"
#include "pascal_adic/errors.hpp"
#include "pascal_adic/words.hpp"

namespace pascal_adic {

struct Vertex {
  std::uint64_t n = 0, k = 0;
  bool operator==(const Vertex&) const = default;
};

// First-appearance vertex plus the occurrence-law case:
//   1  B = a^i0 b^j0                  a(n,k) = C(n-n0+2, k-k0+1) - 1
//   2  B contains b a^i0 b^j0 a       a(n,k) = C(n-n0,   k-k0)
//   3  B = a^i M b^j, i<i0, j<j0      a(n,k) = C(n-n0+2, k-k0+1)
//   4  B = ...b a^i0 b^j, j <= j0     a(n,k) = C(n-n0+1, k-k0)
//   5  B = a^i b^j0 a..., i <= i0     a(n,k) = C(n-n0+1, k-k0+1)
// where (n0,k0) is the first-appearance vertex, i0 = n0-k0-1, j0 = k0-1,
// M = B(n0-2, k0-1), and the count is 0 outside the triangle below (n0,k0).
struct AppearanceClass {
  int case_id = 0;
  Vertex first;
  std::int64_t i0 = 0, j0 = 0;
};

// Unique apex vertex: B occurs in B(n0,k0) and nowhere with k < k0 and
// n-k < n0-k0. Found by scanning levels 1..|B|+2 with the exact counter.
inline Vertex first_appearance(std::string_view B) {
  if (B.empty()) throw std::invalid_argument("block must be nonempty");
  BasicBlockCounter counter(B);
  for (std::uint64_t l = 1; l <= B.size() + 2; ++l) {
    std::optional<Vertex> hit;
    for (std::uint64_t k = 0; k <= l; ++k) {
      if (binom(l, k) < B.size()) continue;
      if (counter.count(l, k) > 0) {
        if (hit) throw std::logic_error("first appearance is not unique; counter is inconsistent");
        hit = Vertex{l, k};
      }
    }
    if (hit) return *hit;
  }
  fail("NotInLanguage", "'" + std::string(B) + "' does not occur by level " + std::to_string(B.size() + 2));
}

inline bool in_language(std::string_view B) {
  try {
    (void)first_appearance(B);
    return true;
  } catch (const DomainError& e) {
    if (e.code() == "NotInLanguage") return false;
    throw;
  }
}

namespace detail {

inline std::size_t leading_run(std::string_view s, char c) {
  std::size_t i = 0;
  while (i < s.size() && s[i] == c) ++i;
  return i;
}

inline std::size_t trailing_run(std::string_view s, char c) {
  std::size_t i = 0;
  while (i < s.size() && s[s.size() - 1 - i] == c) ++i;
  return i;
}

inline bool all_of_char(std::string_view s, char c) {
  for (char x : s)
    if (x != c) return false;
  return true;
}

}  // namespace detail

inline AppearanceClass classify_block(std::string_view B) {
  const Vertex v = first_appearance(B);
  const std::int64_t i0 = static_cast<std::int64_t>(v.n) - static_cast<std::int64_t>(v.k) - 1;
  const std::int64_t j0 = static_cast<std::int64_t>(v.k) - 1;
  AppearanceClass cls{0, v, i0, j0};

  if (B.size() == 1) {
    // single symbols occur Pascal-wise below (1,0)/(1,1): the case-2 law
    cls.case_id = 2;
    return cls;
  }
  // |B| >= 2 first appears at an interior vertex, so i0 >= 0 and j0 >= 0.
  const auto ui0 = static_cast<std::size_t>(i0);
  const auto uj0 = static_cast<std::size_t>(j0);

  // case 1: exactly the join core a^i0 b^j0
  if (B.size() == ui0 + uj0 && detail::all_of_char(B.substr(0, ui0), 'a') &&
      detail::all_of_char(B.substr(ui0), 'b')) {
    cls.case_id = 1;
    return cls;
  }

  // case 2: contains the telltale b a^i0 b^j0 a
  {
    Word telltale;
    telltale.reserve(ui0 + uj0 + 2);
    telltale.push_back('b');
    telltale.append(ui0, 'a');
    telltale.append(uj0, 'b');
    telltale.push_back('a');
    if (B.find(telltale) != std::string_view::npos) {
      cls.case_id = 2;
      return cls;
    }
  }

  // case 3: a^i B(n0-2,k0-1) b^j with i < i0, j < j0
  if (i0 >= 1 && j0 >= 1) {
    const std::size_t i = detail::leading_run(B, 'a');
    const std::size_t j = detail::trailing_run(B, 'b');
    const BigNat mid_len = binom(v.n - 2, v.k - 1);
    if (i < ui0 && j < uj0 && BigNat(B.size()) == BigNat(i) + BigNat(j) + mid_len) {
      const Word mid = basic_word(v.n - 2, v.k - 1);
      if (B.substr(i, mid.size()) == mid) {
        cls.case_id = 3;
        return cls;
      }
    }
  }

  // cases 4/5: anchor B to its crossing occurrence at the join of (n0,k0);
  // the side of the join boundary that is a pure run decides the case.
  {
    const std::size_t m = B.size();
    const BigNat cl = binom(v.n - 1, v.k), cr = binom(v.n - 1, v.k - 1);
    const std::uint64_t ltake = (BigNat(m - 1) <= cl) ? m - 1 : cl.convert_to<std::uint64_t>();
    const std::uint64_t rtake = (BigNat(m - 1) <= cr) ? m - 1 : cr.convert_to<std::uint64_t>();
    const Word joined = basic_suffix(v.n - 1, v.k, ltake) + basic_prefix(v.n - 1, v.k - 1, rtake);
    const std::size_t s = static_cast<std::size_t>(ltake);
    const std::size_t lo = (s >= m - 1) ? s - (m - 1) : 0;
    for (std::size_t o = lo; o < s && o + m <= joined.size(); ++o) {
      if (std::string_view(joined).substr(o, m) != B) continue;
      const std::size_t left_len = s - o;
      const bool right_pure_b = detail::all_of_char(B.substr(left_len), 'b');
      const bool left_pure_a = detail::all_of_char(B.substr(0, left_len), 'a');
      if (right_pure_b && !left_pure_a) {
        cls.case_id = 4;
        return cls;
      }
      if (left_pure_a && !right_pure_b) {
        cls.case_id = 5;
        return cls;
      }
      // both pure would be case 1, neither pure case 2; both returned above
    }
  }
  throw std::logic_error("block '" + std::string(B) + "' did not match any appearance case");
}

// a(B; n, k) by the case-indexed closed form; zero outside the triangle
// below the first-appearance vertex.
inline BigNat appearance_count(const AppearanceClass& cls, std::uint64_t n, std::uint64_t k) {
  const auto [n0, k0] = cls.first;
  if (n < n0 || k < k0 || k - k0 > n - n0) return 0;
  const std::uint64_t dn = n - n0, dk = k - k0;
  switch (cls.case_id) {
    case 1: return binom(dn + 2, dk + 1) - 1;
    case 2: return binom(dn, dk);
    case 3: return binom(dn + 2, dk + 1);
    case 4: return binom(dn + 1, dk);
    case 5: return binom(dn + 1, dk + 1);
    default: throw std::logic_error("bad appearance case");
  }
}

inline BigNat appearance_count(std::string_view B, std::uint64_t n, std::uint64_t k) {
  return appearance_count(classify_block(B), n, k);
}

inline void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0,1)");
}

// nu_alpha(B): the measure of the cylinder [B], by the case-indexed limits.
inline double block_measure(const AppearanceClass& cls, double alpha) {
  check_alpha(alpha);
  const double q = 1.0 - alpha;
  const auto n0 = static_cast<int>(cls.first.n);
  const auto k0 = static_cast<int>(cls.first.k);
  switch (cls.case_id) {
    case 1: return std::pow(alpha, k0 - 1) * std::pow(q, n0 - k0 - 1);
    case 2: return std::pow(alpha, k0) * std::pow(q, n0 - k0);
    case 3: return std::pow(alpha, k0 - 1) * std::pow(q, n0 - k0 - 1);
    case 4: return std::pow(alpha, k0) * std::pow(q, n0 - k0 - 1);
    case 5: return std::pow(alpha, k0 - 1) * std::pow(q, n0 - k0);
    default: throw std::logic_error("bad appearance case");
  }
}

inline double block_measure(std::string_view B, double alpha) {
  return block_measure(classify_block(B), alpha);
}

// freq(B, B(n, k_n)) with k_n = round(alpha n): the exact rational
// a(n,k_n)/C(n,k_n) evaluated as a real.
inline double freq_along_ray(const AppearanceClass& cls, double alpha, std::uint64_t n) {
  check_alpha(alpha);
  std::uint64_t k = static_cast<std::uint64_t>(std::llround(alpha * static_cast<double>(n)));
  if (k > n) k = n;
  const BigNat a = appearance_count(cls, n, k);
  return static_cast<double>(big_ratio(a, binom(n, k)));
}

inline double freq_along_ray(std::string_view B, double alpha, std::uint64_t n) {
  return freq_along_ray(classify_block(B), alpha, n);
}

// mu_alpha of the cylinder fixed by a 0/1 prefix; label 1 carries mass alpha.
inline double cylinder_measure(double alpha, std::string_view prefix) {
  check_alpha(alpha);
  double v = 1.0;
  for (char c : prefix) {
    if (c == '1')
      v *= alpha;
    else if (c == '0')
      v *= 1.0 - alpha;
    else
      throw std::invalid_argument("cylinder prefix must be over 0/1");
  }
  return v;
}

// D(n,k): number of level-m basic factors in the canonical factorization of
// B(n,k); D = sum_j C(n-m, k-j), j = 0..m.
inline BigNat factor_count(std::uint64_t n, std::uint64_t k, std::uint64_t m) {
  if (m > n) throw std::invalid_argument("factor level m must satisfy m <= n");
  BigNat d = 0;
  for (std::uint64_t j = 0; j <= m; ++j)
    d += binom_signed(static_cast<std::int64_t>(n) - static_cast<std::int64_t>(m),
                      static_cast<std::int64_t>(k) - static_cast<std::int64_t>(j));
  return d;
}

}  // namespace pascal_adic
