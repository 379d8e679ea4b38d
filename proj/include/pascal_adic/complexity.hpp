#pragma once

#include <array>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "pascal_adic/words.hpp"

namespace pascal_adic {

// Block lengths supported by the packed set (4 x 64 bits).
inline constexpr std::uint64_t kMaxComplexityLength = 256;

// PASCAL_ADIC_CAP_MB bounds memo memory; 0 = unlimited.
inline std::uint64_t memo_budget_bytes() {
  static const std::uint64_t bytes = [] {
    const char* env = std::getenv("PASCAL_ADIC_CAP_MB");
    if (!env) return std::uint64_t{0};
    const long long mb = std::atoll(env);
    return mb > 0 ? static_cast<std::uint64_t>(mb) * 1024 * 1024 : std::uint64_t{0};
  }();
  return bytes;
}

namespace detail {

struct PackedWord {
  std::array<std::uint64_t, 4> w{};
  bool operator==(const PackedWord&) const = default;
};

struct PackedWordHash {
  std::size_t operator()(const PackedWord& p) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (std::uint64_t v : p.w) {
      h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h *= 0xff51afd7ed558ccdull;
    }
    return static_cast<std::size_t>(h);
  }
};

inline PackedWord pack_window(std::string_view s) {
  PackedWord p;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i] == 'b') p.w[i >> 6] |= (std::uint64_t{1} << (i & 63));
  return p;
}

// Visit every length-n window of every basic block up to level n+2, as the
// crossing windows of each concatenation join. sink(window, level).
// A window of B(l,k) either crosses the join of (l,k) or lies inside a
// factor, so sweeping all joins of all levels reaches every block, and the
// first level at which a window is visited is the level of its first
// appearance in the triangle.
template <class Sink>
void sweep_windows(std::uint64_t n, Sink&& sink) {
  if (n < 1) throw std::invalid_argument("block length must be >= 1");
  if (n == 1) {
    sink(std::string_view("b"), 1);
    sink(std::string_view("a"), 1);
    return;
  }
  const std::size_t keep = static_cast<std::size_t>(n - 1);
  // prefixes/suffixes of the previous level, clamped to n-1 symbols, indexed by k
  std::vector<Word> pref = {Word("a"), Word("b")};
  std::vector<Word> suf = {Word("a"), Word("b")};
  Word joined;
  for (std::uint64_t l = 2; l <= n + 2; ++l) {
    // joins at level l combine level l-1 blocks: B(l,k) = B(l-1,k) B(l-1,k-1)
    for (std::uint64_t k = 1; k <= l - 1; ++k) {
      const Word& left_tail = suf[static_cast<std::size_t>(k)];
      const Word& right_head = pref[static_cast<std::size_t>(k - 1)];
      joined.assign(left_tail);
      joined += right_head;
      const std::size_t s = left_tail.size();
      const std::size_t lo = (s >= keep) ? s - keep : 0;
      for (std::size_t o = lo; o < s && o + n <= joined.size(); ++o)
        sink(std::string_view(joined).substr(o, static_cast<std::size_t>(n)), l);
    }
    if (l == n + 2) break;
    // build this level's clamped prefixes/suffixes from the previous row
    std::vector<Word> npref(static_cast<std::size_t>(l) + 1), nsuf(static_cast<std::size_t>(l) + 1);
    npref[0] = "a";
    nsuf[0] = "a";
    npref[static_cast<std::size_t>(l)] = "b";
    nsuf[static_cast<std::size_t>(l)] = "b";
    for (std::uint64_t k = 1; k <= l - 1; ++k) {
      const Word& pl = pref[static_cast<std::size_t>(k)];
      const Word& pr = pref[static_cast<std::size_t>(k - 1)];
      if (pl.size() == keep) {
        npref[static_cast<std::size_t>(k)] = pl;
      } else {
        Word w = pl + pr;
        if (w.size() > keep) w.resize(keep);
        npref[static_cast<std::size_t>(k)] = std::move(w);
      }
      const Word& sl = suf[static_cast<std::size_t>(k)];
      const Word& sr = suf[static_cast<std::size_t>(k - 1)];
      if (sr.size() == keep) {
        nsuf[static_cast<std::size_t>(k)] = sr;
      } else {
        Word w = sl + sr;
        if (w.size() > keep) w.erase(0, w.size() - keep);
        nsuf[static_cast<std::size_t>(k)] = std::move(w);
      }
    }
    pref = std::move(npref);
    suf = std::move(nsuf);
  }
}

}  // namespace detail

// The set of distinct length-n words of the language, each tagged with the
// earliest level of the triangle at which it occurs.
struct BlockSet {
  std::uint64_t n = 0;
  std::unordered_map<Word, std::uint32_t> first_level;
};

inline BlockSet distinct_subblocks(std::uint64_t n) {
  BlockSet out;
  out.n = n;
  detail::sweep_windows(n, [&](std::string_view w, std::uint64_t level) {
    out.first_level.try_emplace(Word(w), static_cast<std::uint32_t>(level));
  });
  return out;
}

// Crossing windows of length n at the join inside B(l,k) (duplicates kept).
inline std::vector<Word> join_windows(std::uint64_t n, std::uint64_t l, std::uint64_t k) {
  check_vertex(l, k);
  if (k == 0 || k == l) return {};
  std::vector<Word> out;
  if (n < 2) return out;
  const BigNat cl = binom(l - 1, k), cr = binom(l - 1, k - 1);
  const std::uint64_t ltake = (BigNat(n - 1) <= cl) ? n - 1 : cl.convert_to<std::uint64_t>();
  const std::uint64_t rtake = (BigNat(n - 1) <= cr) ? n - 1 : cr.convert_to<std::uint64_t>();
  const Word joined = basic_suffix(l - 1, k, ltake) + basic_prefix(l - 1, k - 1, rtake);
  const std::size_t s = static_cast<std::size_t>(ltake);
  const std::size_t lo = (s >= n - 1) ? s - (n - 1) : 0;
  for (std::size_t o = lo; o < s && o + n <= joined.size(); ++o)
    out.emplace_back(joined.substr(o, static_cast<std::size_t>(n)));
  return out;
}

// Exact complexity p_n by the memoized join sweep.
inline std::uint64_t complexity_pn(std::uint64_t n) {
  if (n > kMaxComplexityLength) fail("TooLarge", "p_n sweep supports n <= 256");
  if (const std::uint64_t budget = memo_budget_bytes(); budget > 0) {
    const double estimate = static_cast<double>(n) * n * n / 6.0 * 96.0;
    if (estimate > static_cast<double>(budget))
      fail("TooLarge", "estimated block-set memory exceeds PASCAL_ADIC_CAP_MB");
  }
  std::unordered_set<detail::PackedWord, detail::PackedWordHash> seen;
  detail::sweep_windows(n, [&](std::string_view w, std::uint64_t) {
    seen.insert(detail::pack_window(w));
  });
  return seen.size();
}

// Brute-force oracle: materialize every level-(n+2) basic block and collect
// every window.
inline std::uint64_t complexity_brute(std::uint64_t n,
                                      std::uint64_t cap = kDefaultMaterializeCap) {
  const std::uint64_t l = n + 2;
  if (binom(l, l / 2) > cap) fail("TooLarge", "level n+2 words exceed the materialization cap");
  std::unordered_set<Word> seen;
  for (std::uint64_t k = 0; k <= l; ++k) {
    if (binom(l, k) < n) continue;
    const Word w = basic_word(l, k, cap);
    for (std::size_t o = 0; o + n <= w.size(); ++o)
      seen.insert(w.substr(o, static_cast<std::size_t>(n)));
  }
  return seen.size();
}

struct ComplexityRow {
  std::uint64_t n;
  std::uint64_t p_n;
  double ratio;  // 6 p_n / n^3
};

inline std::vector<std::uint64_t> complexity_schedule(std::uint64_t n_max) {
  std::vector<std::uint64_t> ns;
  for (std::uint64_t n = 1; n <= n_max && n <= 64; ++n) ns.push_back(n);
  for (std::uint64_t n : {75, 100, 128, 150, 200, 256})
    if (n <= n_max) ns.push_back(n);
  return ns;
}

inline std::vector<ComplexityRow> complexity_report(std::uint64_t n_max) {
  if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
  std::vector<ComplexityRow> rows;
  for (std::uint64_t n : complexity_schedule(n_max)) {
    const std::uint64_t p = complexity_pn(n);
    const double nd = static_cast<double>(n);
    rows.push_back({n, p, 6.0 * static_cast<double>(p) / (nd * nd * nd)});
  }
  return rows;
}

}  // namespace pascal_adic
