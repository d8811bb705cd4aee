#pragma once

#include <cstdint>
#include <string>

#include <boost/rational.hpp>

#include "clonopt/errors.hpp"

namespace clonopt {

using Rational = boost::rational<std::int64_t>;

inline double to_double(const Rational& r) { return boost::rational_cast<double>(r); }

inline std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline Rational abs(const Rational& r) { return r < 0 ? -r : r; }

// Overflow-checked integer helpers for weight arithmetic.
inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) throw ArithmeticOverflow("integer overflow in addition");
  return out;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_sub_overflow(a, b, &out)) throw ArithmeticOverflow("integer overflow in subtraction");
  return out;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw ArithmeticOverflow("integer overflow in multiplication");
  return out;
}

} // namespace clonopt
