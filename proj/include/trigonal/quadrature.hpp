#pragma once

#include <cmath>
#include <complex>
#include <vector>

namespace trigonal {

// Double-exponential (tanh-sinh) quadrature on (0, 1).
//
// The integrand is called as f(u, v) with v = 1 - u supplied separately, so
// algebraic endpoint singularities such as v^{-2/3} can be evaluated without
// cancellation.  Values are vectors of complex numbers; all components share
// the nodes.  Levels halve the step: h = 2^{-level}.
template <class R>
class TanhSinh {
 public:
  using C = std::complex<R>;
  using Vec = std::vector<C>;

  struct Result {
    Vec value;
    R error{0};  // difference between the last two levels, max-norm
    int level = 0;
    int evaluations = 0;
    bool converged = false;
  };

  // `digits`: target absolute accuracy 10^{-digits} relative to the result
  // scale.  The node range covers integrands as singular as v^{-2/3}.
  explicit TanhSinh(int digits, int max_level = 12, int min_level = 3)
      : digits_(digits), max_level_(max_level), min_level_(min_level) {
    using std::asinh;
    using std::atan;
    using std::log;
    const R pi = R(4) * atan(R(1));
    t_max_ = asinh(R(3 * (digits + 5)) * log(R(10)) / pi);
  }

  int digits() const { return digits_; }

  template <class Fn>
  Result integrate(Fn&& f, std::size_t dim) const {
    return run(f, dim, max_level_, true);
  }

  // Exactly `level` halvings with no early exit, for refinement studies.
  template <class Fn>
  Result integrate_levels(Fn&& f, std::size_t dim, int level) const {
    return run(f, dim, level, false);
  }

 private:
  template <class Fn>
  Result run(Fn&& f, std::size_t dim, int max_level, bool stop_early) const {
    using std::abs;
    using std::atan;
    using std::cosh;
    using std::exp;
    using std::floor;
    using std::pow;
    using std::sinh;
    const R pi = R(4) * atan(R(1));
    Result res;
    Vec sum(dim, C(0));
    auto add_node = [&](const R& t) {
      const R s = pi * sinh(t);
      const R e = exp(-abs(s));
      // u = 1/(1+exp(-s)), v = 1/(1+exp(s)) without cancellation.
      const R small = e / (1 + e);
      const R large = 1 / (1 + e);
      const R u = s >= 0 ? large : small;
      const R v = s >= 0 ? small : large;
      const R weight = pi * cosh(t) * u * v;
      if (weight == 0 || u == 0 || v == 0) return;
      const Vec fx = f(u, v);
      ++res.evaluations;
      for (std::size_t k = 0; k < dim; ++k) sum[k] += weight * fx[k];
    };

    // Level 0: integer nodes.
    const long n0 = static_cast<long>(floor(t_max_));
    for (long k = -n0; k <= n0; ++k) add_node(R(k));
    Vec prev(dim);
    R h(1);
    for (std::size_t k = 0; k < dim; ++k) prev[k] = h * sum[k];
    const R tol = pow(R(10), -digits_);
    for (int level = 1; level <= max_level; ++level) {
      h /= 2;
      const long n = static_cast<long>(floor(t_max_ / h));
      for (long k = -n; k <= n; k += 1)
        if (k % 2 != 0) add_node(R(k) * h);
      Vec cur(dim);
      R diff(0), scale(1);
      for (std::size_t k = 0; k < dim; ++k) {
        cur[k] = h * sum[k];
        diff = std::max(diff, R(abs(cur[k] - prev[k])));
        scale = std::max(scale, R(abs(cur[k])));
      }
      res.value = cur;
      res.error = diff;
      res.level = level;
      prev = std::move(cur);
      if (level >= min_level_ && diff <= tol * scale) {
        res.converged = true;
        if (stop_early) break;
      }
    }
    return res;
  }

  int digits_;
  int max_level_;
  int min_level_;
  R t_max_;
};

}  // namespace trigonal
