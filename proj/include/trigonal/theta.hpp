#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace trigonal {

// Half-integer characteristic [delta'; delta''] stored as bits: entry 1 means 1/2.
struct ThetaCharacteristic {
  std::vector<int> top;     // delta'
  std::vector<int> bottom;  // delta''

  int genus() const { return static_cast<int>(top.size()); }
  static ThetaCharacteristic zero(int g) { return {std::vector<int>(g, 0), std::vector<int>(g, 0)}; }
  // All 2^{2g} characteristics in lexicographic order of (top, bottom) bits.
  static std::vector<ThetaCharacteristic> all(int g);
  friend bool operator==(const ThetaCharacteristic&, const ThetaCharacteristic&) = default;
};

// e(delta) = exp(4 pi i delta' . delta'') = (-1)^{sum top_i bottom_i}.
int parity(const ThetaCharacteristic& c);
std::string to_string(const ThetaCharacteristic& c);

template <class R>
struct ThetaValue {
  std::complex<R> value;
  R error;  // bound on the truncation error
  R scale;  // largest summand modulus over the truncation set
  long terms = 0;
};

// theta[a; b](z, tau) = sum_n exp(pi i (n+a).tau(n+a) + 2 pi i (n+a).(z+b)) for
// real shift vectors a, b, truncated to an ellipsoid so that the tail is below
// 10^{-digits} relative to exp(pi y.Y^{-1}.y).  Throws DivergentParameters if
// Im tau is not positive definite.
template <class R>
ThetaValue<R> theta(const Eigen::Matrix<std::complex<R>, Eigen::Dynamic, 1>& z,
                    const Eigen::Matrix<std::complex<R>, Eigen::Dynamic, Eigen::Dynamic>& tau,
                    const std::vector<R>& a, const std::vector<R>& b, int digits);

template <class R>
ThetaValue<R> theta(const Eigen::Matrix<std::complex<R>, Eigen::Dynamic, 1>& z,
                    const Eigen::Matrix<std::complex<R>, Eigen::Dynamic, Eigen::Dynamic>& tau,
                    const ThetaCharacteristic& c, int digits) {
  std::vector<R> a, b;
  for (int v : c.top) a.push_back(R(v) / 2);
  for (int v : c.bottom) b.push_back(R(v) / 2);
  return theta<R>(z, tau, a, b, digits);
}

template <class R>
ThetaValue<R> theta(const Eigen::Matrix<std::complex<R>, Eigen::Dynamic, 1>& z,
                    const Eigen::Matrix<std::complex<R>, Eigen::Dynamic, Eigen::Dynamic>& tau, int digits) {
  return theta<R>(z, tau, ThetaCharacteristic::zero(static_cast<int>(z.size())), digits);
}

// All 2^{2g} half-integer characteristics in one pass over (1/2) Z^g, indexed
// as ThetaCharacteristic::all(g).  Each entry matches theta(z, tau, c, digits).
template <class R>
std::vector<ThetaValue<R>> theta_all(const Eigen::Matrix<std::complex<R>, Eigen::Dynamic, 1>& z,
                                     const Eigen::Matrix<std::complex<R>, Eigen::Dynamic, Eigen::Dynamic>& tau,
                                     int digits);

// |theta[c](z)| < tol * scale.
template <class R>
bool on_theta_divisor(const Eigen::Matrix<std::complex<R>, Eigen::Dynamic, 1>& z,
                      const Eigen::Matrix<std::complex<R>, Eigen::Dynamic, Eigen::Dynamic>& tau,
                      const ThetaCharacteristic& c, const R& tol, int digits) {
  const auto t = theta<R>(z, tau, c, digits);
  return abs(t.value) < tol * t.scale;
}

extern template ThetaValue<double> theta(const Eigen::Matrix<std::complex<double>, Eigen::Dynamic, 1>&,
                                         const Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic>&,
                                         const std::vector<double>&, const std::vector<double>&, int);

// Truncation radius and lattice data, exposed for tests.
struct ThetaEllipsoid {
  double rho = 0;     // shortest vector length of sqrt(pi) T, Y = T^t T
  double radius = 0;  // R with the tail bound below 10^{-digits}
};
ThetaEllipsoid theta_ellipsoid(const Eigen::MatrixXd& imag_tau, int digits);
// Tail bound (g/2)(2/rho)^g Gamma(g/2, (R - rho/2)^2).
double theta_tail_bound(int g, double rho, double radius);

}  // namespace trigonal
