#pragma once

#include <gmpxx.h>

#include <string>

#include "trigonal/numeric.hpp"

namespace trigonal {

// Coefficient fields: exact rationals or working-precision complex numbers.
template <class F>
struct FieldTraits;

template <>
struct FieldTraits<mpq_class> {
  static constexpr bool exact = true;
  static bool is_zero(const mpq_class& x) { return sgn(x) == 0; }
  static mpq_class from_int(long v) { return mpq_class(v); }
  static Complex to_complex(const mpq_class& x) {
    return Complex(Real(x.get_num().get_str()) / Real(x.get_den().get_str()), 0);
  }
  static std::string to_string(const mpq_class& x) { return x.get_str(); }
  static mpq_class magnitude(const mpq_class& x) { return abs(x); }
};

template <>
struct FieldTraits<Complex> {
  static constexpr bool exact = false;
  // Relative to unit-scale data; half the working digits.
  static Real zero_threshold() {
    return pow10(-static_cast<int>(Real::default_precision()) / 2);
  }
  static bool is_zero(const Complex& x) { return abs2(x) < zero_threshold() * zero_threshold(); }
  static Complex from_int(long v) { return Complex(Real(v), 0); }
  static Complex to_complex(const Complex& x) { return x; }
  static std::string to_string(const Complex& x) { return trigonal::to_string(x, 20); }
  static Real magnitude(const Complex& x) { return abs(x); }
};

}  // namespace trigonal
