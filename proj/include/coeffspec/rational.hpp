#ifndef COEFFSPEC_RATIONAL_HPP
#define COEFFSPEC_RATIONAL_HPP

#include <boost/rational.hpp>

#include <cstdint>
#include <string>

namespace coeffspec {

/// Exact scalar used everywhere; no floating point exists in this library.
using Rational = boost::rational<long long>;

inline Rational rational_abs(const Rational& r) {
  return r < Rational(0) ? -r : r;
}

inline std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace coeffspec

#endif  // COEFFSPEC_RATIONAL_HPP
