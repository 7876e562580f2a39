#ifndef SNDG_RATIONAL_HPP
#define SNDG_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace sndg {

// Exact arbitrary-precision rational. Always in lowest terms with positive
// denominator; every comparison in the library goes through this type or
// EpsCost, never through floating point.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline BigInt rational_num(const Rational& q) { return numerator(q); }
inline BigInt rational_den(const Rational& q) { return denominator(q); }

// j-th harmonic number, exactly. harmonic(0) = 0 by convention so that the
// H_{k-1} bound degenerates cleanly for k = 1.
Rational harmonic(int j);

// "p/q" for non-integers, "p" otherwise.
std::string rational_str(const Rational& q);

// Parses "p" or "p/q" with optional sign. Returns false on malformed input.
bool try_parse_rational(std::string_view text, Rational& out);

// Decimal rendering with the given number of significant digits, round half
// away from zero. Display only; never used in comparisons.
std::string decimal_str(const Rational& q, int significant_digits = 12);

}  // namespace sndg

#endif
