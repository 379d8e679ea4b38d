#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "pascal_adic/combin.hpp"
#include "pascal_adic/errors.hpp"

namespace pascal_adic {

// Scanning bound for prefix rewrites. Exceeding it is an explicit error,
// never a silent wrong answer.
inline constexpr std::uint64_t kDefaultHorizon = 1u << 16;

enum class TailKind { Zeros, Ones, Cyclic, RunLength };

// Rule producing the bit at every index past the override prefix.
//
//  Zeros / Ones   constant tails.
//  Cyclic         repeats `cycle` starting `phase` symbols in, relative to
//                 the end of the override.
//  RunLength      absolute-position rule: the path has a 0 exactly at
//                 positions {1} u {m+2 : m in marks}; past the last mark the
//                 zeros continue with the final gap, so the path keeps
//                 infinitely many 0s and 1s. `inverted` flips every bit
//                 (closure under symbol exchange).
struct TailRule {
  TailKind kind = TailKind::Zeros;
  std::string cycle;
  std::size_t phase = 0;
  std::vector<std::uint64_t> marks;
  bool inverted = false;

  static TailRule zeros() { return {}; }
  static TailRule ones() { return {TailKind::Ones, {}, 0, {}, false}; }
  static TailRule cyclic(std::string word, std::size_t phase = 0) {
    if (word.empty()) throw std::invalid_argument("cyclic tail needs a nonempty word");
    for (char c : word)
      if (c != '0' && c != '1') throw std::invalid_argument("cyclic tail must be over 0/1");
    phase %= word.size();
    return {TailKind::Cyclic, std::move(word), phase, {}, false};
  }
  static TailRule run_length(std::vector<std::uint64_t> marks, bool inverted = false) {
    if (marks.empty()) throw std::invalid_argument("run-length tail needs at least one mark");
    for (std::size_t i = 0; i + 1 < marks.size(); ++i)
      if (marks[i + 1] <= marks[i] + 1)
        throw std::invalid_argument("run-length marks must increase by at least 2");
    if (marks[0] == 0) throw std::invalid_argument("run-length marks start at 1");
    return {TailKind::RunLength, {}, 0, std::move(marks), inverted};
  }

  std::uint64_t run_length_gap() const {
    if (marks.size() >= 2) return marks.back() - marks[marks.size() - 2];
    return marks.back() + 1;  // lone mark: keep the same spacing as from position 1
  }

  // Bit of the run-length rule at absolute 1-based position i.
  int run_length_bit(std::uint64_t i) const {
    bool zero = false;
    if (i == 1) {
      zero = true;
    } else if (i <= marks.back() + 2) {
      zero = std::binary_search(marks.begin(), marks.end(), i - 2);
    } else {
      zero = (i - (marks.back() + 2)) % run_length_gap() == 0;
    }
    const bool one = !zero;
    return (one != inverted) ? 1 : 0;
  }

  bool constant_zero() const {
    if (kind == TailKind::Zeros) return true;
    if (kind == TailKind::Cyclic) return cycle.find('1') == std::string::npos;
    return false;
  }
  bool constant_one() const {
    if (kind == TailKind::Ones) return true;
    if (kind == TailKind::Cyclic) return cycle.find('0') == std::string::npos;
    return false;
  }
};

// An infinite 0/1 path: finite override prefix over a total tail rule.
// Adic operations only ever rewrite the override (possibly extending it by
// materializing tail bits); the tail rule itself is never altered.
class Path {
public:
  Path() = default;
  Path(std::string override_bits, TailRule tail)
      : override_(std::move(override_bits)), tail_(std::move(tail)) {
    for (char c : override_)
      if (c != '0' && c != '1') throw std::invalid_argument("override must be over 0/1");
  }

  static Path from_prefix(std::string_view bits, TailRule tail = TailRule::zeros()) {
    return Path(std::string(bits), std::move(tail));
  }

  // 1-based coordinate access; total for every i >= 1.
  int bit(std::uint64_t i) const {
    if (i == 0) throw std::invalid_argument("path coordinates are 1-based");
    if (i <= override_.size()) return override_[i - 1] - '0';
    switch (tail_.kind) {
      case TailKind::Zeros: return 0;
      case TailKind::Ones: return 1;
      case TailKind::Cyclic: {
        const std::uint64_t rel = i - override_.size() - 1;
        return tail_.cycle[(tail_.phase + rel) % tail_.cycle.size()] - '0';
      }
      case TailKind::RunLength: return tail_.run_length_bit(i);
    }
    return 0;
  }

  const std::string& override_bits() const { return override_; }
  const TailRule& tail() const { return tail_; }

  std::string prefix(std::uint64_t len) const {
    std::string s;
    s.reserve(len);
    for (std::uint64_t i = 1; i <= len; ++i) s.push_back(static_cast<char>('0' + bit(i)));
    return s;
  }

  // Extend the override to cover at least `len` coordinates by materializing
  // tail bits. The cyclic phase advances so the path is unchanged.
  void materialize(std::uint64_t len) {
    if (len <= override_.size()) return;
    const std::uint64_t grow = len - override_.size();
    std::string extra;
    extra.reserve(grow);
    for (std::uint64_t i = override_.size() + 1; i <= len; ++i)
      extra.push_back(static_cast<char>('0' + bit(i)));
    override_ += extra;
    if (tail_.kind == TailKind::Cyclic)
      tail_.phase = (tail_.phase + grow) % tail_.cycle.size();
  }

  void set_bit(std::uint64_t i, int v) {
    materialize(i);
    override_[i - 1] = static_cast<char>('0' + v);
  }

  bool equal_on_window(const Path& other, std::uint64_t window) const {
    for (std::uint64_t i = 1; i <= window; ++i)
      if (bit(i) != other.bit(i)) return false;
    return true;
  }

private:
  std::string override_;
  TailRule tail_;
};

// ---------------------------------------------------------------------------
// adic successor / predecessor

namespace detail {

// Locate the first "10" after the initial 0-run/1-run: returns (a, b) with
// the path shaped 0^a 1^b 0..., b >= 1. Throws MaximalPath / HorizonExceeded.
inline std::pair<std::uint64_t, std::uint64_t> locate_kink(const Path& x, std::uint64_t horizon) {
  const std::uint64_t olen = x.override_bits().size();
  std::uint64_t i = 1;
  // 0-run
  while (true) {
    if (i > olen) {
      if (x.tail().constant_zero()) fail("MaximalPath", "path is 0^inf beyond position " + std::to_string(i - 1));
      if (x.tail().constant_one()) fail("MaximalPath", "path is 0^a 1^inf");
    }
    if (i > horizon) fail("HorizonExceeded", "no decision after scanning " + std::to_string(horizon) + " coordinates");
    if (x.bit(i) != 0) break;
    ++i;
  }
  const std::uint64_t a = i - 1;
  // 1-run
  while (true) {
    if (i > olen) {
      if (x.tail().constant_zero()) break;  // next tail bit is 0: kink found
      if (x.tail().constant_one()) fail("MaximalPath", "path is 0^a 1^inf");
    }
    if (i > horizon) fail("HorizonExceeded", "no decision after scanning " + std::to_string(horizon) + " coordinates");
    if (x.bit(i) != 1) break;
    ++i;
  }
  const std::uint64_t b = i - 1 - a;
  return {a, b};
}

// Mirror: first "01" after the initial 1-run/0-run: path shaped 1^m 0^z 1...
inline std::pair<std::uint64_t, std::uint64_t> locate_antikink(const Path& x, std::uint64_t horizon) {
  const std::uint64_t olen = x.override_bits().size();
  std::uint64_t i = 1;
  while (true) {
    if (i > olen) {
      if (x.tail().constant_one()) fail("MinimalPath", "path is 1^inf beyond position " + std::to_string(i - 1));
      if (x.tail().constant_zero()) fail("MinimalPath", "path is 1^m 0^inf");
    }
    if (i > horizon) fail("HorizonExceeded", "no decision after scanning " + std::to_string(horizon) + " coordinates");
    if (x.bit(i) != 1) break;
    ++i;
  }
  const std::uint64_t m = i - 1;
  while (true) {
    if (i > olen) {
      if (x.tail().constant_one()) break;
      if (x.tail().constant_zero()) fail("MinimalPath", "path is 1^m 0^inf");
    }
    if (i > horizon) fail("HorizonExceeded", "no decision after scanning " + std::to_string(horizon) + " coordinates");
    if (x.bit(i) != 0) break;
    ++i;
  }
  const std::uint64_t z = i - 1 - m;
  return {m, z};
}

}  // namespace detail

// T(0^a 1^(b-1) 1 0 x') = 1^(b-1) 0^a 0 1 x'. Errors: MaximalPath, HorizonExceeded.
inline Path adic_step(const Path& x, std::uint64_t horizon = kDefaultHorizon) {
  const auto [a, b] = detail::locate_kink(x, horizon);
  Path y = x;
  y.materialize(a + b + 1);
  for (std::uint64_t i = 1; i < b; ++i) y.set_bit(i, 1);
  for (std::uint64_t i = b; i <= a + b; ++i) y.set_bit(i, 0);
  y.set_bit(a + b + 1, 1);
  return y;
}

// Inverse rewrite: 1^m 0^z 1... -> 0^(z-1) 1^(m+1) 0... Errors: MinimalPath, HorizonExceeded.
inline Path adic_inverse_step(const Path& x, std::uint64_t horizon = kDefaultHorizon) {
  const auto [m, z] = detail::locate_antikink(x, horizon);
  Path y = x;
  y.materialize(m + z + 1);
  for (std::uint64_t i = 1; i < z; ++i) y.set_bit(i, 0);
  for (std::uint64_t i = z; i <= m + z; ++i) y.set_bit(i, 1);
  y.set_bit(m + z + 1, 0);
  return y;
}

// The symbol exchange S: every bit flipped.
inline Path swap_symbols(const Path& x) {
  std::string ov = x.override_bits();
  for (char& c : ov) c = (c == '0') ? '1' : '0';
  TailRule t = x.tail();
  switch (t.kind) {
    case TailKind::Zeros: t.kind = TailKind::Ones; break;
    case TailKind::Ones: t.kind = TailKind::Zeros; break;
    case TailKind::Cyclic:
      for (char& c : t.cycle) c = (c == '0') ? '1' : '0';
      break;
    case TailKind::RunLength: t.inverted = !t.inverted; break;
  }
  return Path(std::move(ov), std::move(t));
}

// k_n(x): number of 1-labels among the first n coordinates.
inline std::uint64_t k_level(const Path& x, std::uint64_t n) {
  std::uint64_t k = 0;
  for (std::uint64_t i = 1; i <= n; ++i) k += static_cast<std::uint64_t>(x.bit(i));
  return k;
}

// T^C(n, k_n(x)) x in closed form: with a kink (x_{n+1} x_{n+2} = 10) the
// power fixes coordinates 1..n and >= n+3 and turns the kink into 01.
inline Path kink_power(const Path& x, std::uint64_t n) {
  if (x.bit(n + 1) != 1 || x.bit(n + 2) != 0)
    fail("NoKink", "coordinates " + std::to_string(n + 1) + "," + std::to_string(n + 2) + " are not 10");
  Path y = x;
  y.set_bit(n + 1, 0);
  y.set_bit(n + 2, 1);
  return y;
}

// ---------------------------------------------------------------------------
// extremal classification

struct ExtremalClass {
  enum class Kind { MaximalIndex, MinimalIndex, Neither };
  Kind kind = Kind::Neither;
  // Maximal: 0 means 0^inf, i >= 1 means 0^i 1^inf, nullopt means 1^inf.
  // Minimal: i >= 1, the path 1^i 0^inf.
  std::optional<std::uint64_t> index;

  static ExtremalClass maximal(std::optional<std::uint64_t> i) { return {Kind::MaximalIndex, i}; }
  static ExtremalClass minimal(std::uint64_t i) { return {Kind::MinimalIndex, i}; }
  static ExtremalClass neither() { return {Kind::Neither, std::nullopt}; }

  bool operator==(const ExtremalClass&) const = default;
};

inline ExtremalClass classify_extremal(const Path& x, std::uint64_t depth = kDefaultHorizon) {
  if (depth < 1) throw std::invalid_argument("depth must be >= 1");
  const std::uint64_t olen = x.override_bits().size();
  bool seen10 = false, seen01 = false;
  std::uint64_t init_zeros = 0, init_ones = 0;  // length of the initial constant run
  int prev = -1;
  for (std::uint64_t i = 1;; ++i) {
    if (i > olen) {
      const TailRule& t = x.tail();
      const bool tz = t.constant_zero(), to = t.constant_one();
      if (!tz && !to) return ExtremalClass::neither();  // tail carries both 10 and 01 forever
      if (prev == 1 && tz) seen10 = true;
      if (prev == 0 && to) seen01 = true;
      if (seen10 && seen01) return ExtremalClass::neither();
      if (tz) {
        if (seen01) return ExtremalClass::neither();    // 0...1...0 shape
        if (init_ones == 0) return ExtremalClass::maximal(0);   // 0^inf
        return ExtremalClass::minimal(init_ones);       // 1^m 0^inf
      }
      if (seen10) return ExtremalClass::neither();
      if (init_zeros == 0 && init_ones == olen) return ExtremalClass::maximal(std::nullopt);  // 1^inf
      return ExtremalClass::maximal(init_zeros);        // 0^i 1^inf
    }
    if (i > depth) fail("Undecidable", "no classification within depth " + std::to_string(depth));
    const int b = x.bit(i);
    if (prev == 1 && b == 0) seen10 = true;
    if (prev == 0 && b == 1) seen01 = true;
    if (seen10 && seen01) return ExtremalClass::neither();
    if (b == 0 && init_ones == 0 && i == init_zeros + 1) ++init_zeros;
    if (b == 1 && init_zeros == 0 && i == init_ones + 1) ++init_ones;
    prev = b;
  }
}

// ---------------------------------------------------------------------------
// sampling

// Override of `window` i.i.d. bits (0 with probability p) over a fresh
// cyclic tail; fully determined by (p, window, seed).
inline Path sample_path(double p, std::uint64_t window, std::uint64_t seed) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("p must lie in (0,1)");
  if (window < 1) throw std::invalid_argument("window must be >= 1");
  std::mt19937_64 rng(seed);
  const long double threshold = static_cast<long double>(p) * 18446744073709551616.0L;
  auto draw = [&]() -> char {
    return (static_cast<long double>(rng()) < threshold) ? '0' : '1';
  };
  std::string ov;
  ov.reserve(window);
  for (std::uint64_t i = 0; i < window; ++i) ov.push_back(draw());
  std::string cyc;
  do {
    cyc.clear();
    for (int i = 0; i < 64; ++i) cyc.push_back(draw());
  } while (cyc.find('0') == std::string::npos || cyc.find('1') == std::string::npos);
  return Path(std::move(ov), TailRule::cyclic(std::move(cyc)));
}

// ---------------------------------------------------------------------------
// serialization: "<override>:zeros|:ones|:cyc=<word>|:rlp=[~]<ints>"

inline std::string to_string(const Path& x) {
  std::string s = x.override_bits();
  const TailRule& t = x.tail();
  switch (t.kind) {
    case TailKind::Zeros: s += ":zeros"; break;
    case TailKind::Ones: s += ":ones"; break;
    case TailKind::Cyclic: {
      s += ":cyc=";
      // canonical form: rotate the cycle so the stored phase is zero
      s += t.cycle.substr(t.phase) + t.cycle.substr(0, t.phase);
      break;
    }
    case TailKind::RunLength: {
      s += ":rlp=";
      if (t.inverted) s += "~";
      for (std::size_t i = 0; i < t.marks.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(t.marks[i]);
      }
      break;
    }
  }
  return s;
}

inline Path parse_path(std::string_view text) {
  const auto colon = text.rfind(':');
  if (colon == std::string_view::npos)
    throw std::invalid_argument("path literal needs a tail tag, e.g. 0011:zeros");
  const std::string_view bits = text.substr(0, colon);
  const std::string_view tag = text.substr(colon + 1);
  for (char c : bits)
    if (c != '0' && c != '1') throw std::invalid_argument("override must be over 0/1");
  TailRule tail;
  if (tag == "zeros") {
    tail = TailRule::zeros();
  } else if (tag == "ones") {
    tail = TailRule::ones();
  } else if (tag.rfind("cyc=", 0) == 0) {
    tail = TailRule::cyclic(std::string(tag.substr(4)));
  } else if (tag.rfind("rlp=", 0) == 0) {
    std::string_view body = tag.substr(4);
    bool inverted = false;
    if (!body.empty() && body[0] == '~') {
      inverted = true;
      body.remove_prefix(1);
    }
    std::vector<std::uint64_t> marks;
    std::uint64_t cur = 0;
    bool have = false;
    for (char c : body) {
      if (c == ',') {
        if (!have) throw std::invalid_argument("bad rlp mark list");
        marks.push_back(cur);
        cur = 0;
        have = false;
      } else if (c >= '0' && c <= '9') {
        cur = cur * 10 + static_cast<std::uint64_t>(c - '0');
        have = true;
      } else {
        throw std::invalid_argument("bad rlp mark list");
      }
    }
    if (!have) throw std::invalid_argument("bad rlp mark list");
    marks.push_back(cur);
    tail = TailRule::run_length(std::move(marks), inverted);
  } else {
    throw std::invalid_argument("unknown tail tag: " + std::string(tag));
  }
  return Path(std::string(bits), std::move(tail));
}

// ---------------------------------------------------------------------------
// word-level successor (length-n windows; the tower translation)

// Rewrites the first "10" of a finite 0/1 word in place; nullopt when the
// word is maximal within its own length (sorted 0s-then-1s).
inline std::optional<std::string> adic_step_word(std::string_view w) {
  std::size_t i = 0;
  while (i < w.size() && w[i] == '0') ++i;
  const std::size_t a = i;
  while (i < w.size() && w[i] == '1') ++i;
  if (i == a || i == w.size()) return std::nullopt;  // no ones, or no 0 after the 1-run
  const std::size_t b = i - a;
  std::string out(w);
  for (std::size_t j = 0; j + 1 < b; ++j) out[j] = '1';
  for (std::size_t j = b - 1; j < a + b; ++j) out[j] = '0';
  out[a + b] = '1';
  return out;
}

}  // namespace pascal_adic
