#include "trigonal/theta.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <functional>
#include <sstream>

#include "trigonal/error.hpp"
#include "trigonal/linalg.hpp"

namespace trigonal {

std::vector<ThetaCharacteristic> ThetaCharacteristic::all(int g) {
  std::vector<ThetaCharacteristic> out;
  for (unsigned long bits = 0; bits < (1UL << (2 * g)); ++bits) {
    ThetaCharacteristic c = zero(g);
    for (int i = 0; i < g; ++i) {
      c.top[i] = static_cast<int>((bits >> (2 * g - 1 - i)) & 1);
      c.bottom[i] = static_cast<int>((bits >> (g - 1 - i)) & 1);
    }
    out.push_back(c);
  }
  return out;
}

int parity(const ThetaCharacteristic& c) {
  int s = 0;
  for (int i = 0; i < c.genus(); ++i) s += c.top[i] * c.bottom[i];
  return s % 2 == 0 ? 1 : -1;
}

std::string to_string(const ThetaCharacteristic& c) {
  std::ostringstream os;
  auto half = [](int v) { return v ? "1/2" : "0"; };
  os << "[";
  for (int i = 0; i < c.genus(); ++i) os << (i ? " " : "") << half(c.top[i]);
  os << "; ";
  for (int i = 0; i < c.genus(); ++i) os << (i ? " " : "") << half(c.bottom[i]);
  os << "]";
  return os.str();
}

double theta_tail_bound(int g, double rho, double radius) {
  const double x = radius - rho / 2;
  if (x <= 0) return 1e300;
  const double a = g / 2.0;
  const double upper = boost::math::gamma_q(a, x * x) * boost::math::tgamma(a);
  return a * std::pow(2 / rho, g) * upper;
}

namespace {

// Visits integer points n with |U (n - c)|^2 <= r2, U upper triangular.
void enumerate_ellipsoid(const Eigen::MatrixXd& U, const Eigen::VectorXd& c, double r2,
                         const std::function<void(const std::vector<long>&)>& visit) {
  const int g = static_cast<int>(U.rows());
  std::vector<long> n(g, 0);
  std::function<void(int, double)> rec = [&](int i, double used) {
    if (i < 0) {
      visit(n);
      return;
    }
    double s = 0;
    for (int j = i + 1; j < g; ++j) s += U(i, j) * (n[j] - c(j));
    const double rem = r2 - used;
    if (rem < 0) return;
    const double half = std::sqrt(rem) / U(i, i);
    const double mid = c(i) - s / U(i, i);
    const long lo = static_cast<long>(std::ceil(mid - half - 1e-9));
    const long hi = static_cast<long>(std::floor(mid + half + 1e-9));
    for (long v = lo; v <= hi; ++v) {
      n[i] = v;
      const double comp = U(i, i) * (v - c(i)) + s;
      rec(i - 1, used + comp * comp);
    }
  };
  rec(g - 1, 0);
}

Eigen::MatrixXd upper_cholesky(const Eigen::MatrixXd& Y) {
  Eigen::LLT<Eigen::MatrixXd> llt(Y);
  if (llt.info() != Eigen::Success) throw Error(ErrorCode::DivergentParameters, "Im tau is not positive definite");
  return llt.matrixL().transpose();
}

// Rows of the ellipsoid: n_1..n_{g-1} fixed, n_0 running over [lo, hi].
void enumerate_rows(const Eigen::MatrixXd& U, const Eigen::VectorXd& c, double r2,
                    const std::function<void(std::vector<long>&, long, long)>& row) {
  const int g = static_cast<int>(U.rows());
  std::vector<long> n(g, 0);
  std::function<void(int, double)> rec = [&](int i, double used) {
    double s = 0;
    for (int j = i + 1; j < g; ++j) s += U(i, j) * (n[j] - c(j));
    const double rem = r2 - used;
    if (rem < 0) return;
    const double half = std::sqrt(rem) / U(i, i);
    const double mid = c(i) - s / U(i, i);
    const long lo = static_cast<long>(std::ceil(mid - half - 1e-9));
    const long hi = static_cast<long>(std::floor(mid + half + 1e-9));
    if (i == 0) {
      if (lo <= hi) row(n, lo, hi);
      return;
    }
    for (long v = lo; v <= hi; ++v) {
      n[i] = v;
      const double comp = U(i, i) * (v - c(i)) + s;
      rec(i - 1, used + comp * comp);
    }
  };
  rec(g - 1, 0);
}

template <class R>
std::complex<R> exp_complex(const std::complex<R>& e) {
  using std::cos;
  using std::exp;
  using std::sin;
  const R mod = exp(e.real());
  return {mod * cos(e.imag()), mod * sin(e.imag())};
}

// Terms exp(pi i m.tau.m + 2 pi i m.w) for m = a + h n over the ellipsoid rows.
// Along a row the exponent is quadratic in n_0, so each term follows from the
// previous one by two multiplications.  visit(n, term, |term|^2).
template <class R, class Visit>
void lattice_terms(const Eigen::MatrixXd& U, const Eigen::VectorXd& c, double r2,
                   const Eigen::Matrix<std::complex<R>, Eigen::Dynamic, Eigen::Dynamic>& tau,
                   const Eigen::Matrix<std::complex<R>, Eigen::Dynamic, 1>& w, const std::vector<R>& a, const R& h,
                   Visit&& visit) {
  using std::atan;
  using C = std::complex<R>;
  const int g = static_cast<int>(w.size());
  const R pi = 4 * atan(R(1));
  const C pi_i(0, pi);
  const C Q = exp_complex<R>(pi_i * (tau(0, 0) * R(2 * h * h)));
  std::vector<R> m(g);
  enumerate_rows(U, c, r2, [&](std::vector<long>& n, long lo, long hi) {
    n[0] = lo;
    for (int i = 0; i < g; ++i) m[i] = a[i] + h * R(n[i]);
    C quad(0), lin(0), row0(0);
    for (int i = 0; i < g; ++i) {
      C row(0);
      for (int j = 0; j < g; ++j) row += tau(i, j) * m[j];
      if (i == 0) row0 = row;
      quad += m[i] * row;
      lin += m[i] * w(i);
    }
    C term = exp_complex<R>(pi_i * (quad + R(2) * lin));
    C ratio = exp_complex<R>(pi_i * (R(2 * h) * row0 + R(h * h) * tau(0, 0) + R(2 * h) * w(0)));
    for (long v = lo; v <= hi; ++v) {
      n[0] = v;
      visit(n, term, R(term.real() * term.real() + term.imag() * term.imag()));
      if (v < hi) {
        term *= ratio;
        ratio *= Q;
      }
    }
  });
}

}  // namespace

ThetaEllipsoid theta_ellipsoid(const Eigen::MatrixXd& imag_tau, int digits) {
  const int g = static_cast<int>(imag_tau.rows());
  const Eigen::MatrixXd U = std::sqrt(M_PI) * upper_cholesky(imag_tau);
  // Shortest nonzero lattice vector; unit vectors bound it from above.
  double best = 1e300;
  for (int i = 0; i < g; ++i) best = std::min(best, U.col(i).squaredNorm());
  enumerate_ellipsoid(U, Eigen::VectorXd::Zero(g), best * (1 + 1e-12), [&](const std::vector<long>& n) {
    bool nonzero = false;
    Eigen::VectorXd v(g);
    for (int i = 0; i < g; ++i) {
      v(i) = static_cast<double>(n[i]);
      nonzero = nonzero || n[i] != 0;
    }
    if (nonzero) best = std::min(best, (U * v).squaredNorm());
  });
  ThetaEllipsoid e;
  e.rho = std::sqrt(best);
  const double target = std::pow(10.0, -digits);
  double R = (std::sqrt(static_cast<double>(g)) + e.rho) / 2 + 1e-3;
  while (theta_tail_bound(g, e.rho, R) > target) R += 0.05;
  e.radius = R;
  return e;
}

namespace {

// Shared set-up: center of the ellipsoid in n-coordinates for m = a + h n,
// truncation data, and the error factor exp(pi y.Y^{-1}.y).
template <class R>
struct ThetaSetup {
  Eigen::MatrixXd U;
  Eigen::VectorXd center;
  ThetaEllipsoid ellipsoid;
  R growth;
};

template <class R>
ThetaSetup<R> theta_setup(const Eigen::Matrix<std::complex<R>, Eigen::Dynamic, 1>& z,
                          const Eigen::Matrix<std::complex<R>, Eigen::Dynamic, Eigen::Dynamic>& tau,
                          const std::vector<R>& a, const R& h, int digits) {
  using std::atan;
  using std::exp;
  using RMat = Eigen::Matrix<R, Eigen::Dynamic, Eigen::Dynamic>;
  using RVec = Eigen::Matrix<R, Eigen::Dynamic, 1>;
  const int g = static_cast<int>(z.size());
  if (tau.rows() != g || tau.cols() != g || static_cast<int>(a.size()) != g)
    throw Error(ErrorCode::InvalidArgument, "theta: dimension mismatch");
  const RMat Y = tau.imag();
  const RVec y = z.imag();
  const RVec Yinv_y = Y.partialPivLu().solve(y);
  Eigen::MatrixXd Yd(g, g);
  ThetaSetup<R> st;
  st.center.resize(g);
  for (int i = 0; i < g; ++i) {
    for (int j = 0; j < g; ++j) Yd(i, j) = static_cast<double>(Y(i, j));
    st.center(i) = (-static_cast<double>(Yinv_y(i)) - static_cast<double>(a[i])) / static_cast<double>(h);
  }
  st.ellipsoid = theta_ellipsoid(Yd, digits);
  st.U = std::sqrt(M_PI) * static_cast<double>(h) * upper_cholesky(Yd);
  R yy(0);
  for (int i = 0; i < g; ++i) yy += y(i) * Yinv_y(i);
  st.growth = exp(4 * atan(R(1)) * yy);
  return st;
}

}  // namespace

template <class R>
ThetaValue<R> theta(const Eigen::Matrix<std::complex<R>, Eigen::Dynamic, 1>& z,
                    const Eigen::Matrix<std::complex<R>, Eigen::Dynamic, Eigen::Dynamic>& tau,
                    const std::vector<R>& a, const std::vector<R>& b, int digits) {
  using std::sqrt;
  using C = std::complex<R>;
  const int g = static_cast<int>(z.size());
  if (static_cast<int>(b.size()) != g) throw Error(ErrorCode::InvalidArgument, "theta: dimension mismatch");
  const auto st = theta_setup<R>(z, tau, a, R(1), digits);
  Eigen::Matrix<C, Eigen::Dynamic, 1> w = z;
  for (int i = 0; i < g; ++i) w(i) += b[i];
  ThetaValue<R> out;
  out.value = C(0);
  R scale2(0);
  lattice_terms<R>(st.U, st.center, st.ellipsoid.radius * st.ellipsoid.radius, tau, w, a, R(1),
                   [&](const std::vector<long>&, const C& term, const R& norm) {
                     out.value += term;
                     if (norm > scale2) scale2 = norm;
                     ++out.terms;
                   });
  out.scale = sqrt(scale2);
  out.error = R(theta_tail_bound(g, st.ellipsoid.rho, st.ellipsoid.radius)) * st.growth;
  return out;
}

template <class R>
std::vector<ThetaValue<R>> theta_all(const Eigen::Matrix<std::complex<R>, Eigen::Dynamic, 1>& z,
                                     const Eigen::Matrix<std::complex<R>, Eigen::Dynamic, Eigen::Dynamic>& tau,
                                     int digits) {
  using std::sqrt;
  using C = std::complex<R>;
  const int g = static_cast<int>(z.size());
  // m = n / 2 runs over (1/2) Z^g; the parity of n selects delta'.
  const std::vector<R> zero(g, R(0));
  const auto st = theta_setup<R>(z, tau, zero, R(1) / 2, digits);
  const int count = 1 << (2 * g);
  std::vector<ThetaValue<R>> out(count);
  std::vector<R> scale2(count, R(0));
  for (auto& v : out) v.value = C(0);
  lattice_terms<R>(st.U, st.center, st.ellipsoid.radius * st.ellipsoid.radius, tau, z, zero, R(1) / 2,
                   [&](const std::vector<long>& n, const C& term, const R& norm) {
                     int top = 0;
                     for (int i = 0; i < g; ++i) top = (top << 1) | static_cast<int>(((n[i] % 2) + 2) % 2);
                     for (int bottom = 0; bottom < (1 << g); ++bottom) {
                       // exp(2 pi i m . b / 2) = i^{sum n_i b_i}
                       long k = 0;
                       for (int i = 0; i < g; ++i)
                         if ((bottom >> (g - 1 - i)) & 1) k += n[i];
                       k = ((k % 4) + 4) % 4;
                       const int slot = (top << g) | bottom;
                       auto& v = out[slot].value;
                       switch (k) {
                         case 0: v += term; break;
                         case 1: v += C(-term.imag(), term.real()); break;
                         case 2: v -= term; break;
                         default: v += C(term.imag(), -term.real()); break;
                       }
                       if (norm > scale2[slot]) scale2[slot] = norm;
                       ++out[slot].terms;
                     }
                   });
  const R err = R(theta_tail_bound(g, st.ellipsoid.rho, st.ellipsoid.radius)) * st.growth;
  for (int k = 0; k < count; ++k) {
    out[k].scale = sqrt(scale2[k]);
    out[k].error = err;
  }
  return out;
}

template std::vector<ThetaValue<Real>> theta_all(const CVector&, const CMatrix&, int);
template ThetaValue<double> theta(const Eigen::Matrix<std::complex<double>, Eigen::Dynamic, 1>&,
                                  const Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic>&,
                                  const std::vector<double>&, const std::vector<double>&, int);
template ThetaValue<Real> theta(const CVector&, const CMatrix&, const std::vector<Real>&, const std::vector<Real>&, int);

}  // namespace trigonal
