#pragma once

#include <boost/multiprecision/mpfr.hpp>
#include <complex>
#include <string>

namespace trigonal {

namespace bmp = boost::multiprecision;

using Real = bmp::number<bmp::mpfr_float_backend<0>, bmp::et_off>;
using Complex = std::complex<Real>;

// Extra decimal digits carried internally above the requested precision.
inline constexpr int kGuardDigits = 12;

// Sets the MPFR default precision for values created in this scope.
class PrecisionScope {
 public:
  explicit PrecisionScope(int digits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

// Requested precision p; the working precision is p + kGuardDigits.
int working_digits(int digits);

Real pi();
Real pow10(int exponent);
// Primitive cube root of unity exp(2 pi i / 3).
Complex cube_root_of_unity();
// exp(2 pi i k / 3).
Complex cube_root_of_unity(int k);

inline Real abs2(const Complex& z) { return z.real() * z.real() + z.imag() * z.imag(); }

Complex cexp(const Complex& z);
Complex clog(const Complex& z);

// Decimal rendering with a fixed number of significant digits.
std::string to_string(const Real& x, int digits);
std::string to_string(const Complex& z, int digits);

// Parses "1.25", "-3", "1/3", "1.5+2i", "i", "-0.25i", "cis(p/q)" = exp(2 pi i p/q).
Complex parse_complex(const std::string& text);

// log10 of |x| as a double; -inf for zero.
double log10_abs(const Real& x);

}  // namespace trigonal
