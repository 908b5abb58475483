#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace redkit {

// Exact arithmetic everywhere a threshold or value fraction appears. All
// comparisons in checkers and acceptance bounds are on Rat, never on double.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Rat rat(long long num, long long den = 1) { return Rat(num, den); }

inline std::string rat_str(const Rat& r) {
  return r.str();  // "p/q" (or "p" when q == 1)
}

Rat rat_parse(const std::string& s);

// Exact rational from the binary expansion of a double. Used to snapshot
// real-valued parameter intermediates into exact thresholds.
Rat rat_from_double(double x);

inline double rat_double(const Rat& r) { return static_cast<double>(r); }

inline Int int_pow(uint64_t base, unsigned e) {
  Int out(1), b(base);
  while (e) {
    if (e & 1) out *= b;
    b *= b;
    e >>= 1;
  }
  return out;
}

// x^e for rational x, integer e >= 0.
inline Rat rat_pow(Rat x, unsigned e) {
  Rat out(1);
  while (e) {
    if (e & 1) out *= x;
    x *= x;
    e >>= 1;
  }
  return out;
}

}  // namespace redkit
