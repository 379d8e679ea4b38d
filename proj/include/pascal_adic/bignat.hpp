#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace pascal_adic {

// Exact nonnegative integers. Everything combinatorial in this library is
// computed on BigNat first; floating point only appears at the boundary.
using BigNat = boost::multiprecision::cpp_int;

inline std::string to_string(const BigNat& v) { return v.str(); }

inline double to_double(const BigNat& v) { return v.convert_to<double>(); }

// a/b as a long double, valid even when both operands are far beyond the
// floating-point range: both are shifted down by a common power of two
// first (keeps ~96 significant bits, relative error < 2^-90).
inline long double big_ratio(const BigNat& a, const BigNat& b) {
  if (a == 0) return 0.0L;
  const long msb = static_cast<long>(boost::multiprecision::msb(b));
  const long shift = msb - 96;
  if (shift <= 0) return a.convert_to<long double>() / b.convert_to<long double>();
  const BigNat ah = a >> static_cast<unsigned>(shift);
  const BigNat bh = b >> static_cast<unsigned>(shift);
  return ah.convert_to<long double>() / bh.convert_to<long double>();
}

}  // namespace pascal_adic
