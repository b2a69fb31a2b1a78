#pragma once

#include <vector>

#include "trigonal/numeric.hpp"
#include "trigonal/polynomial.hpp"

namespace trigonal {

// Truncated power series in h = x - x0, coefficients from order 0.
using Series = std::vector<Complex>;

Series series_mul(const Series& a, const Series& b, int order);
// a / b, requires b[0] != 0.
Series series_div(const Series& a, const Series& b, int order);
// a^alpha normalized so the constant term is 1; requires a[0] != 0.
Series series_unit_pow(const Series& a, const Real& alpha, int order);
// Taylor coefficients of p at x0.
Series taylor(const Polynomial<Complex>& p, const Complex& x0, int order);

// Roots of a polynomial with complex coefficients by Aberth iteration,
// polished with Newton steps.  Throws RootIsolationFailure when the
// iteration does not settle.
std::vector<Complex> polynomial_roots(const Polynomial<Complex>& p);

}  // namespace trigonal
