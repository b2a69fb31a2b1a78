#include <cmath>
#include "trigonal/series.hpp"

#include <algorithm>

namespace trigonal {

Series series_mul(const Series& a, const Series& b, int order) {
  Series c(order + 1, Complex(0, 0));
  for (int i = 0; i <= order && i < static_cast<int>(a.size()); ++i)
    for (int j = 0; i + j <= order && j < static_cast<int>(b.size()); ++j) c[i + j] += a[i] * b[j];
  return c;
}

Series series_div(const Series& a, const Series& b, int order) {
  Series q(order + 1, Complex(0, 0));
  const Complex inv = Complex(1, 0) / b.at(0);
  for (int n = 0; n <= order; ++n) {
    Complex acc = n < static_cast<int>(a.size()) ? a[n] : Complex(0, 0);
    for (int k = 1; k <= n && k < static_cast<int>(b.size()); ++k) acc -= b[k] * q[n - k];
    q[n] = acc * inv;
  }
  return q;
}

Series series_unit_pow(const Series& a, const Real& alpha, int order) {
  // u = g^alpha with g = a / a[0]:  n g0 u_n = sum_{k=1}^n ((alpha + 1) k - n) g_k u_{n-k}.
  Series g(order + 1, Complex(0, 0));
  const Complex inv = Complex(1, 0) / a.at(0);
  for (int k = 0; k <= order && k < static_cast<int>(a.size()); ++k) g[k] = a[k] * inv;
  Series u(order + 1, Complex(0, 0));
  u[0] = Complex(1, 0);
  for (int n = 1; n <= order; ++n) {
    Complex acc(0, 0);
    for (int k = 1; k <= n; ++k) acc += ((alpha + 1) * k - n) * g[k] * u[n - k];
    u[n] = acc / Real(n);
  }
  return u;
}

Series taylor(const Polynomial<Complex>& p, const Complex& x0, int order) {
  const Polynomial<Complex> t = p.shifted(x0);
  Series out(order + 1, Complex(0, 0));
  for (int k = 0; k <= order && k <= t.degree(); ++k) out[k] = t.coeff(k);
  return out;
}

namespace {

// Simultaneous Aberth iteration.  A root is frozen once |p(z)| is within the
// rounding error of evaluating p at z.
template <class C, class R>
bool aberth(const std::vector<C>& c, std::vector<C>& roots, const R& eps, int max_iter) {
  const int n = static_cast<int>(roots.size());
  std::vector<bool> done(n, false);
  for (int iter = 0; iter < max_iter; ++iter) {
    bool all = true;
    for (int k = 0; k < n; ++k) {
      if (done[k]) continue;
      const C z = roots[k];
      const R az = abs(z);
      C f = c[n], df(0);
      R bound = abs(c[n]);
      for (int j = n - 1; j >= 0; --j) {
        df = df * z + f;
        f = f * z + c[j];
        bound = bound * az + abs(c[j]);
      }
      if (abs(f) <= 8 * n * eps * bound) {
        done[k] = true;
        continue;
      }
      all = false;
      const C ratio = f / df;
      C sum(0);
      for (int j = 0; j < n; ++j)
        if (j != k) sum += C(1) / (z - roots[j]);
      roots[k] = z - ratio / (C(1) - ratio * sum);
    }
    if (all) return true;
  }
  return false;
}

}  // namespace

std::vector<Complex> polynomial_roots(const Polynomial<Complex>& p) {
  const int n = p.degree();
  if (n <= 0) return {};
  const Complex lead = p.leading();
  std::vector<Complex> c(n + 1);
  for (int k = 0; k <= n; ++k) c[k] = p.coeff(k) / lead;
  if (n == 1) return {-c[0]};

  // Double-precision pass for starting values, then refinement at full precision.
  using CD = std::complex<double>;
  std::vector<CD> cd(n + 1);
  double bound = 0;
  for (int k = 0; k <= n; ++k) {
    cd[k] = CD(static_cast<double>(c[k].real()), static_cast<double>(c[k].imag()));
    if (k < n) bound = std::max(bound, std::abs(cd[k]));
  }
  std::vector<CD> start(n);
  const double radius = (1 + bound) / 2;
  for (int k = 0; k < n; ++k) start[k] = std::polar(radius, 2 * M_PI * (k + 0.25) / n + 0.1);
  aberth(cd, start, 1e-16, 500);

  std::vector<Complex> roots(n);
  for (int k = 0; k < n; ++k) roots[k] = Complex(start[k].real(), start[k].imag());
  const Real eps = pow10(-static_cast<int>(Real::default_precision()));
  if (!aberth(c, roots, eps, 500))
    throw Error(ErrorCode::RootIsolationFailure, "Aberth iteration did not converge");
  return roots;
}

}  // namespace trigonal
