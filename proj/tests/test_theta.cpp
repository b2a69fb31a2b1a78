#include <random>

#include "doctest.h"
#include "trigonal/error.hpp"
#include "trigonal/linalg.hpp"
#include "trigonal/periods.hpp"
#include "trigonal/theta.hpp"

using namespace trigonal;

namespace {

constexpr int kDigits = 40;
const PrecisionScope kPrecision(working_digits(kDigits));

CMatrix random_tau(std::mt19937& rng, int g) {
  std::uniform_real_distribution<double> u(-1, 1);
  RMatrix A(g, g), X(g, g);
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) {
      A(i, j) = u(rng) / 2;
      X(i, j) = u(rng);
    }
  RMatrix Y = A.transpose() * A;
  for (int i = 0; i < g; ++i) Y(i, i) += Real(3) / 5;
  CMatrix tau(g, g);
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) tau(i, j) = Complex((X(i, j) + X(j, i)) / 2, Y(i, j));
  return tau;
}

CVector random_z(std::mt19937& rng, int g) {
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  CVector z(g);
  for (int i = 0; i < g; ++i) z(i) = Complex(u(rng), u(rng));
  return z;
}

Real tol() { return pow10(-(kDigits - 5)); }

Real rel(const Complex& a, const Complex& b, const Real& scale) { return abs(a - b) / scale; }

}  // namespace

TEST_CASE("genus one at tau = i against a direct sum") {
  CMatrix tau(1, 1);
  tau(0, 0) = Complex(0, 1);
  CVector z = CVector::Zero(1);
  Real direct = 0;
  for (int n = -40; n <= 40; ++n) direct += exp(-pi() * n * n);
  const auto t = theta<Real>(z, tau, kDigits);
  CHECK(abs(t.value - Complex(direct)) < tol());
  CHECK(abs(t.value.imag()) < tol());
  CHECK(to_string(t.value.real(), 11) == to_string(Real("1.0864348112133"), 11));
  CHECK(t.error < pow10(-kDigits));
}

TEST_CASE("quasi-periodicity") {
  std::mt19937 rng(11);
  for (int g = 1; g <= 4; ++g) {
    for (int trial = 0; trial < 3; ++trial) {
      const CMatrix tau = random_tau(rng, g);
      const CVector z = random_z(rng, g);
      const auto base = theta<Real>(z, tau, kDigits);
      for (int j = 0; j < g; ++j) {
        CVector z1 = z;
        z1(j) += Real(1);
        CHECK(rel(theta<Real>(z1, tau, kDigits).value, base.value, base.scale) < tol());
        CVector z2 = z + tau.col(j);
        const Complex factor = cexp(Complex(0, -1) * pi() * (tau(j, j) + Real(2) * z(j)));
        const auto shifted = theta<Real>(z2, tau, kDigits);
        CHECK(rel(shifted.value, factor * base.value, abs(factor) * base.scale) < tol());
      }
    }
  }
}

TEST_CASE("characteristic shift identity") {
  std::mt19937 rng(5);
  for (int g = 1; g <= 3; ++g) {
    const CMatrix tau = random_tau(rng, g);
    const CVector z = random_z(rng, g);
    for (const auto& c : ThetaCharacteristic::all(g)) {
      CVector a(g), b(g);
      for (int i = 0; i < g; ++i) {
        a(i) = Complex(Real(c.top[i]) / 2);
        b(i) = Complex(Real(c.bottom[i]) / 2);
      }
      const CVector shifted = z + tau * a + b;
      const Complex quad = (a.transpose() * tau * a)(0, 0);
      const Complex lin = (a.transpose() * (z + b))(0, 0);
      const Complex factor = cexp(Complex(0, 1) * pi() * (quad + Real(2) * lin));
      const auto lhs = theta<Real>(z, tau, c, kDigits);
      const auto rhs = theta<Real>(shifted, tau, kDigits);
      CHECK(rel(lhs.value, factor * rhs.value, lhs.scale + abs(factor) * rhs.scale) < tol());
    }
  }
}

TEST_CASE("parity under z -> -z and vanishing of odd constants") {
  std::mt19937 rng(7);
  for (int g = 1; g <= 3; ++g) {
    const CMatrix tau = random_tau(rng, g);
    const CVector z = random_z(rng, g);
    int odd = 0;
    for (const auto& c : ThetaCharacteristic::all(g)) {
      const int e = parity(c);
      const auto plus = theta<Real>(z, tau, c, kDigits);
      const auto minus = theta<Real>(CVector(-z), tau, c, kDigits);
      CHECK(rel(minus.value, Real(e) * plus.value, plus.scale) < tol());
      const auto at0 = theta<Real>(CVector(CVector::Zero(g)), tau, c, kDigits);
      if (e < 0) {
        ++odd;
        CHECK(abs(at0.value) < tol() * at0.scale);
        CHECK(on_theta_divisor<Real>(CVector(CVector::Zero(g)), tau, c, pow10(-kDigits / 2), kDigits));
      }
    }
    CHECK(odd == (1 << (g - 1)) * ((1 << g) - 1));
  }
}

TEST_CASE("characteristic enumeration and formatting") {
  const auto all = ThetaCharacteristic::all(2);
  CHECK(all.size() == 16);
  CHECK(all.front() == ThetaCharacteristic::zero(2));
  ThetaCharacteristic c{{0, 1, 0}, {0, 1, 0}};
  CHECK(parity(c) == -1);
  CHECK(to_string(c) == "[0 1/2 0; 0 1/2 0]");
}

TEST_CASE("double and multiprecision agree; precision controls truncation") {
  std::mt19937 rng(3);
  const CMatrix tau = random_tau(rng, 3);
  const CVector z = random_z(rng, 3);
  Eigen::MatrixXcd td(3, 3);
  Eigen::VectorXcd zd(3);
  for (int i = 0; i < 3; ++i) {
    zd(i) = {static_cast<double>(z(i).real()), static_cast<double>(z(i).imag())};
    for (int j = 0; j < 3; ++j) td(i, j) = {static_cast<double>(tau(i, j).real()), static_cast<double>(tau(i, j).imag())};
  }
  const auto hi = theta<Real>(z, tau, kDigits);
  const auto lo = theta<double>(zd, td, 15);
  CHECK(std::abs(lo.value - std::complex<double>(static_cast<double>(hi.value.real()),
                                                 static_cast<double>(hi.value.imag()))) <
        1e-12 * lo.scale);
  const auto coarse = theta<Real>(z, tau, 10);
  CHECK(coarse.terms < hi.terms);
  CHECK(abs(coarse.value - hi.value) <= coarse.error + tol());
}

TEST_CASE("tail bound and ellipsoid radius") {
  Eigen::MatrixXd Y = Eigen::MatrixXd::Identity(2, 2);
  const auto e20 = theta_ellipsoid(Y, 20);
  const auto e40 = theta_ellipsoid(Y, 40);
  CHECK(e20.rho == doctest::Approx(std::sqrt(M_PI)));
  CHECK(e40.radius > e20.radius);
  CHECK(theta_tail_bound(2, e40.rho, e40.radius) <= 1e-40);
  CHECK(theta_tail_bound(2, e40.rho, e40.radius - 0.05) > 1e-40);
}

TEST_CASE("non-positive imaginary part is rejected") {
  CMatrix tau(2, 2);
  tau << Complex(0, 1), Complex(0, 2), Complex(0, 2), Complex(0, 1);
  CHECK_THROWS_AS(theta<Real>(CVector(CVector::Zero(2)), tau, kDigits), Error);
}

TEST_CASE("period matrix of a curve: theta at an odd constant") {
  const auto curve = to_numeric(RationalCurve::build(1, 2, {mpq_class(0), mpq_class(1), mpq_class(-1)}));
  const auto pd = period_matrices(curve, kDigits);
  int odd_zero = 0;
  for (const auto& c : ThetaCharacteristic::all(2))
    if (parity(c) < 0) odd_zero += on_theta_divisor<Real>(CVector(CVector::Zero(2)), pd.tau, c, tol(), kDigits);
  CHECK(odd_zero == 6);
}

TEST_CASE("all characteristics in one pass agree with individual sums") {
  std::mt19937 rng(23);
  for (int g = 1; g <= 3; ++g) {
    const CMatrix tau = random_tau(rng, g);
    const CVector z = random_z(rng, g);
    const auto all = theta_all<Real>(z, tau, kDigits);
    const auto chars = ThetaCharacteristic::all(g);
    REQUIRE(all.size() == chars.size());
    for (std::size_t k = 0; k < chars.size(); ++k) {
      const auto one = theta<Real>(z, tau, chars[k], kDigits);
      CHECK(rel(all[k].value, one.value, one.scale) < tol());
      CHECK(abs(all[k].scale - one.scale) <= tol() * one.scale);
      CHECK(all[k].terms == one.terms);
    }
  }
}
