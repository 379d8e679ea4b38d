#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "pascal_adic/bignat.hpp"
#include "pascal_adic/combin.hpp"
#include "pascal_adic/errors.hpp"
#include "pascal_adic/path.hpp"
#include "pascal_adic/words.hpp"

namespace pascal_adic {

// Number in [0,1) as a 256-bit fixed-point fraction; addition wraps mod 1.
// limb[0] holds the most significant 64 fractional bits.
struct Fixed256 {
  std::array<std::uint64_t, 4> limb{};

  friend Fixed256 operator+(const Fixed256& a, const Fixed256& b) {
    Fixed256 r;
    unsigned carry = 0;
    for (int i = 3; i >= 0; --i) {
      const std::uint64_t s = a.limb[i] + b.limb[i];
      const std::uint64_t t = s + carry;
      const unsigned c1 = (s < a.limb[i]) ? 1u : 0u;
      const unsigned c2 = (t < s) ? 1u : 0u;
      r.limb[i] = t;
      carry = c1 | c2;
    }
    return r;  // final carry drops: that is exactly reduction mod 1
  }

  double to_double() const {
    return std::ldexp(static_cast<double>(limb[0]), -64) +
           std::ldexp(static_cast<double>(limb[1]), -128);
  }

  // value * 2^256 as an exact integer (for the big-rational spot check)
  BigNat to_bignat() const {
    BigNat v = 0;
    for (int i = 0; i < 4; ++i) {
      v <<= 64;
      v += limb[i];
    }
    return v;
  }

  static Fixed256 from_bignat(const BigNat& v) {
    BigNat x = v & ((BigNat(1) << 256) - 1);
    Fixed256 r;
    for (int i = 3; i >= 0; --i) {
      r.limb[i] = static_cast<std::uint64_t>(x & 0xffffffffffffffffull);
      x >>= 64;
    }
    return r;
  }
};

// frac((1+sqrt 5)/2) = (sqrt 5 - 1)/2 to 256 fractional bits.
inline Fixed256 golden_beta() {
  const BigNat s = boost::multiprecision::sqrt(BigNat(5) << 512);  // floor(2^256 sqrt 5)
  return Fixed256::from_bignat((s - (BigNat(1) << 256)) >> 1);
}

// Parse "0.ddd..." (or ".ddd...") into fixed point by long division.
inline Fixed256 beta_from_decimal(const std::string& text) {
  std::size_t pos = 0;
  if (text.rfind("0.", 0) == 0)
    pos = 2;
  else if (!text.empty() && text[0] == '.')
    pos = 1;
  else
    throw std::invalid_argument("expected a decimal in [0,1), e.g. 0.6180339887");
  BigNat num = 0, den = 1;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (c < '0' || c > '9') throw std::invalid_argument("bad decimal digit");
    num = num * 10 + (c - '0');
    den *= 10;
  }
  if (den == 1) throw std::invalid_argument("expected digits after the decimal point");
  return Fixed256::from_bignat((num << 256) / den);
}

// Heuristic rationality gate: a continued-fraction convergent p/q with
// q <= qmax approximating beta to within 1/(10^6 q^2) flags beta as rational.
inline bool looks_rational(double beta, std::uint64_t qmax = 1000000) {
  if (!(beta > 0.0 && beta < 1.0)) return true;
  std::uint64_t h0 = 1, q0 = 0;  // convergent before last
  std::uint64_t h1 = 0, q1 = 1;  // last convergent (a_0 = 0 since beta < 1)
  double x = beta;
  for (int iter = 0; iter < 64; ++iter) {
    const double frac = x - std::floor(x);
    if (!(frac > 1e-18)) return true;  // expansion terminates: rational at double precision
    x = 1.0 / frac;
    const std::uint64_t a = static_cast<std::uint64_t>(std::floor(x));
    const std::uint64_t h2 = a * h1 + h0, q2 = a * q1 + q0;
    if (q2 > qmax || q2 < q1) break;  // past the cap (or overflow)
    const double err = std::abs(beta - static_cast<double>(h2) / static_cast<double>(q2));
    if (err * static_cast<double>(q2) * static_cast<double>(q2) < 1e-6) return true;
    h0 = h1; q0 = q1; h1 = h2; q1 = q2;
  }
  return false;
}

struct WitnessEntry {
  std::uint64_t k = 0;
  std::uint64_t n = 0;   // index n_k
  double defect = 0.0;   // |e^{2 pi i beta C(n_k,k)} + 1|
};

struct WeylWitness {
  Fixed256 beta;
  std::vector<WitnessEntry> entries;  // k = 1..K, indices strictly increasing
};

inline double residue_defect(const Fixed256& r) {
  return 2.0 * std::abs(std::cos(M_PI * r.to_double()));
}

// For each k <= K, the smallest n_k >= n_{k-1} + 2 with
// |e^{2 pi i beta C(n_k,k)} + 1| < 1/k. Residues beta C(n,j) mod 1 are
// carried exactly in 256-bit fixed point by the Pascal-rule update, so no
// big-integer products of C(n,k) with beta are ever formed. The +2 spacing
// keeps a kink at every level n_k of the witness path.
inline WeylWitness find_weyl_indices(const Fixed256& beta, unsigned K, std::uint64_t search_cap) {
  if (K < 1) throw std::invalid_argument("K must be >= 1");
  if (looks_rational(beta.to_double()))
    fail("RationalBeta", "beta admits a very close small-denominator convergent");
  WeylWitness w;
  w.beta = beta;
  // row[j] = frac(beta C(n,j)) for the current n
  std::vector<Fixed256> row(K + 1);
  row[0] = beta;  // C(n,0) = 1
  std::uint64_t n = 0;
  unsigned k = 1;
  std::uint64_t prev_n = 0;
  while (k <= K) {
    if (n > search_cap)
      fail("SearchExhausted", "no index for k=" + std::to_string(k) + " within n <= " + std::to_string(search_cap));
    ++n;
    for (std::uint64_t j = std::min<std::uint64_t>(K, n); j >= 1; --j)
      row[j] = row[j] + row[j - 1];
    if (n < k) continue;               // C(n,k) = 0 up there
    if (prev_n > 0 && n < prev_n + 2) continue;
    const double defect = residue_defect(row[k]);
    if (defect < 1.0 / static_cast<double>(k)) {
      w.entries.push_back({k, n, defect});
      prev_n = n;
      ++k;
    }
  }
  return w;
}

// The witness path 0 1^{n_1} 0 1^{n_2-n_1-1} 0 ...: zeros exactly at
// position 1 and at n_k + 2 for each index.
inline Path weyl_path(const WeylWitness& w) {
  if (w.entries.empty()) throw std::invalid_argument("witness has no entries");
  std::vector<std::uint64_t> marks;
  marks.reserve(w.entries.size());
  for (const auto& e : w.entries) marks.push_back(e.n);
  return Path("", TailRule::run_length(std::move(marks)));
}

// Operational check of the proof conditions at index k: the closed-form
// power y = T^{C(n_k, k_{n_k})} x (via the kink at level n_k) and the coded
// windows of x and y around time zero. `agreement` counts how far out the
// codes agree: 0 means even the centers differ, r means all positions
// |i| < r agree; radius+1 means the full inspected window agreed.
struct RecurrenceReport {
  std::uint64_t k = 0;
  std::uint64_t n = 0;
  double defect = 0.0;
  std::uint64_t agreement = 0;
};

inline RecurrenceReport recurrence_check(const WeylWitness& w, unsigned k, std::uint64_t radius,
                                         std::uint64_t horizon = kDefaultHorizon) {
  if (k < 1 || k > w.entries.size()) throw std::invalid_argument("k outside the witness range");
  const WitnessEntry& e = w.entries[k - 1];
  const Path x = weyl_path(w);
  const Path y = kink_power(x, e.n);  // NoKink here would mean an invalid witness
  const Word wx = code_window(x, radius, horizon);
  const Word wy = code_window(y, radius, horizon);
  const std::size_t center = static_cast<std::size_t>(radius);
  std::uint64_t agree = 0;
  if (wx[center] == wy[center]) {
    agree = 1;
    while (agree <= radius && wx[center - agree] == wy[center - agree] &&
           wx[center + agree] == wy[center + agree])
      ++agree;
  }
  return {e.k, e.n, e.defect, agree};
}

}  // namespace pascal_adic
