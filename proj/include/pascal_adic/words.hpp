#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>

#include "pascal_adic/combin.hpp"
#include "pascal_adic/errors.hpp"
#include "pascal_adic/path.hpp"

namespace pascal_adic {

// Finite words over {a,b}.
using Word = std::string;

// Largest basic word we will materialize explicitly.
inline constexpr std::uint64_t kDefaultMaterializeCap = 1'000'000;

// ---------------------------------------------------------------------------
// the Pascal triangle of words: B(n,n) = b, B(n,0) = a,
// B(n,k) = B(n-1,k) ++ B(n-1,k-1), |B(n,k)| = C(n,k)

inline void check_vertex(std::uint64_t n, std::uint64_t k) {
  if (n < 1 || k > n) throw std::invalid_argument("vertex needs n >= 1, 0 <= k <= n");
}

inline Word basic_word(std::uint64_t n, std::uint64_t k,
                       std::uint64_t cap = kDefaultMaterializeCap) {
  check_vertex(n, k);
  if (binom(n, k) > cap)
    fail("TooLarge", "C(" + std::to_string(n) + "," + std::to_string(k) + ") exceeds materialization cap");
  if (k == 0) return "a";
  if (k == n) return "b";
  Word out;
  out.reserve(binom(n, k).convert_to<std::size_t>());
  // iterative expansion of the recurrence, left factor first
  struct Frame { std::uint64_t n, k; };
  std::vector<Frame> stack{{n, k}};
  while (!stack.empty()) {
    const Frame f = stack.back();
    stack.pop_back();
    if (f.k == 0) { out.push_back('a'); continue; }
    if (f.k == f.n) { out.push_back('b'); continue; }
    stack.push_back({f.n - 1, f.k - 1});  // right factor, expanded second
    stack.push_back({f.n - 1, f.k});
  }
  return out;
}

// B(n,k)[i] for 0 <= i < C(n,k) without materialization (index descent).
inline char basic_symbol(std::uint64_t n, std::uint64_t k, BigNat i) {
  check_vertex(n, k);
  if (i < 0 || i >= binom(n, k)) fail("IndexOutOfRange", "index " + to_string(i) + " outside B(" + std::to_string(n) + "," + std::to_string(k) + ")");
  while (true) {
    if (k == 0) return 'a';
    if (k == n) return 'b';
    const BigNat left = binom(n - 1, k);
    if (i < left) {
      --n;
    } else {
      i -= left;
      --n;
      --k;
    }
  }
}

// First `len` symbols of B(n,k), no materialization of the whole word.
inline Word basic_prefix(std::uint64_t n, std::uint64_t k, std::uint64_t len) {
  check_vertex(n, k);
  if (BigNat(len) > binom(n, k)) fail("LengthTooLarge", "prefix length exceeds |B(n,k)|");
  Word out;
  out.reserve(len);
  while (len > 0) {
    if (k == 0) { out.append(len, 'a'); return out; }  // len <= 1 here, but harmless
    if (k == n) { out.append(len, 'b'); return out; }
    const BigNat left = binom(n - 1, k);
    if (BigNat(len) <= left) {
      --n;  // entirely inside the left factor
    } else {
      out += basic_word(n - 1, k);  // small: |left| < len
      len -= left.convert_to<std::uint64_t>();
      --n;
      --k;
    }
  }
  return out;
}

// Last `len` symbols of B(n,k).
inline Word basic_suffix(std::uint64_t n, std::uint64_t k, std::uint64_t len) {
  check_vertex(n, k);
  if (BigNat(len) > binom(n, k)) fail("LengthTooLarge", "suffix length exceeds |B(n,k)|");
  Word out;  // built back-to-front, reversed at the end
  out.reserve(len);
  while (len > 0) {
    if (k == 0) { out.append(len, 'a'); break; }
    if (k == n) { out.append(len, 'b'); break; }
    const BigNat right = binom(n - 1, k - 1);
    if (BigNat(len) <= right) {
      --n;  // entirely inside the right factor
      --k;
    } else {
      Word r = basic_word(n - 1, k - 1);
      std::reverse(r.begin(), r.end());
      out += r;
      len -= right.convert_to<std::uint64_t>();
      --n;
    }
  }
  std::reverse(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// occurrence counting

// Number of (overlapping) occurrences of B in W.
inline std::uint64_t occurrences(std::string_view B, std::string_view W) {
  if (B.empty()) throw std::invalid_argument("pattern must be nonempty");
  if (B.size() > W.size()) return 0;
  std::uint64_t count = 0;
  for (std::size_t i = 0; i + B.size() <= W.size(); ++i)
    if (W.compare(i, B.size(), B) == 0) ++count;
  return count;
}

namespace detail {

// Occurrences of B in left+right that straddle the join point.
inline std::uint64_t straddling_occurrences(std::string_view B, const Word& left,
                                            const Word& right) {
  const std::size_t m = B.size();
  if (m < 2) return 0;
  const Word joined = left + right;
  const std::size_t s = left.size();
  std::uint64_t count = 0;
  const std::size_t lo = (s >= m - 1) ? s - (m - 1) : 0;
  for (std::size_t o = lo; o + 1 <= s && o + m <= joined.size(); ++o) {
    if (o >= s) break;
    if (joined.compare(o, m, B) == 0) ++count;
  }
  return count;
}

}  // namespace detail

// Exact count of B in B(n,k) by the join recursion
//   cnt(n,k) = cnt(n-1,k) + cnt(n-1,k-1) + straddling occurrences,
// memoized on (n,k) for the duration of one query session.
class BasicBlockCounter {
public:
  explicit BasicBlockCounter(std::string_view block)
      : block_(block), base_cap_(std::max<std::uint64_t>(64, 4 * block.size())) {
    if (block_.empty()) throw std::invalid_argument("block must be nonempty");
  }

  const Word& block() const { return block_; }

  BigNat count(std::uint64_t n, std::uint64_t k) {
    check_vertex(n, k);
    if (k == 0 || k == n) return occurrences(block_, k == 0 ? "a" : "b");
    const auto key = std::make_pair(n, k);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    BigNat result;
    if (binom(n, k) <= base_cap_) {
      result = occurrences(block_, basic_word(n, k));
    } else {
      const std::uint64_t m = block_.size();
      const Word left_tail = suffix_clamped(n - 1, k, m - 1);
      const Word right_head = prefix_clamped(n - 1, k - 1, m - 1);
      result = count(n - 1, k) + count(n - 1, k - 1) +
               detail::straddling_occurrences(block_, left_tail, right_head);
    }
    memo_.emplace(key, result);
    return result;
  }

  // New occurrences created at the join of (n,k); used by the measure-series
  // oracle in tests.
  BigNat created_at(std::uint64_t n, std::uint64_t k) {
    check_vertex(n, k);
    if (k == 0 || k == n) return count(n, k);
    return count(n, k) - count(n - 1, k) - count(n - 1, k - 1);
  }

private:
  Word suffix_clamped(std::uint64_t n, std::uint64_t k, std::uint64_t len) {
    const BigNat full = binom(n, k);
    return basic_suffix(n, k, (BigNat(len) <= full) ? len : full.convert_to<std::uint64_t>());
  }
  Word prefix_clamped(std::uint64_t n, std::uint64_t k, std::uint64_t len) {
    const BigNat full = binom(n, k);
    return basic_prefix(n, k, (BigNat(len) <= full) ? len : full.convert_to<std::uint64_t>());
  }

  Word block_;
  std::uint64_t base_cap_;
  std::map<std::pair<std::uint64_t, std::uint64_t>, BigNat> memo_;
};

inline BigNat count_in_basic(std::string_view B, std::uint64_t n, std::uint64_t k) {
  return BasicBlockCounter(B).count(n, k);
}

// ---------------------------------------------------------------------------
// coding along the orbit: symbol a for first edge 0, b for first edge 1

inline char code_symbol(const Path& x) { return x.bit(1) == 0 ? 'a' : 'b'; }

// omega_0 ... omega_{len-1} along the forward orbit.
inline Word code_forward(const Path& x, std::uint64_t len,
                         std::uint64_t horizon = kDefaultHorizon) {
  Word out;
  out.reserve(len);
  Path y = x;
  for (std::uint64_t i = 0; i < len; ++i) {
    out.push_back(code_symbol(y));
    if (i + 1 < len) {
      try {
        y = adic_step(y, horizon);
      } catch (const DomainError& e) {
        if (e.code() == "MaximalPath")
          fail("OrbitEndsWithin", "forward orbit ends after " + std::to_string(i + 1) + " steps");
        throw;
      }
    }
  }
  return out;
}

// omega_{-R} ... omega_R.
inline Word code_window(const Path& x, std::uint64_t radius,
                        std::uint64_t horizon = kDefaultHorizon) {
  Word back;
  Path y = x;
  for (std::uint64_t i = 1; i <= radius; ++i) {
    try {
      y = adic_inverse_step(y, horizon);
    } catch (const DomainError& e) {
      if (e.code() == "MinimalPath")
        fail("OrbitEndsWithin", "backward orbit ends after " + std::to_string(i) + " steps");
      throw;
    }
    back.push_back(code_symbol(y));
  }
  std::reverse(back.begin(), back.end());
  return back + code_forward(x, radius + 1);
}

}  // namespace pascal_adic
