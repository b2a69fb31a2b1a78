#include "doctest.h"
#include "trigonal/numeric.hpp"
#include "trigonal/quadrature.hpp"

using namespace trigonal;

TEST_CASE("tanh-sinh in double precision") {
  TanhSinh<double> q(14);
  auto f = [](double u, double v) {
    return std::vector<std::complex<double>>{{1 / (1 + u * u), 0}, {std::pow(v, -2.0 / 3), std::pow(u, -1.0 / 3)}};
  };
  const auto r = q.integrate(f, 2);
  CHECK(r.converged);
  CHECK(std::abs(r.value[0] - std::atan(1.0)) < 1e-14);
  CHECK(std::abs(r.value[1] - std::complex<double>(3, 1.5)) < 1e-12);
}

TEST_CASE("tanh-sinh at 50 digits with endpoint singularities") {
  PrecisionScope scope(62);
  TanhSinh<Real> q(50);
  auto f = [](const Real& u, const Real& v) {
    return std::vector<Complex>{Complex(pow(v, Real(-2) / 3) * pow(u, Real(-1) / 3), 0),
                                Complex(log(u), 1 / (1 + u * u)), Complex(sqrt(u * v), 0)};
  };
  const auto r = q.integrate(f, 3);
  CHECK(r.converged);
  // B(2/3, 1/3) = pi / sin(pi/3)
  const Real beta = pi() / sin(pi() / 3);
  CHECK(abs(r.value[0] - Complex(beta, 0)) < pow10(-48));
  CHECK(abs(r.value[1] - Complex(-1, pi() / 4)) < pow10(-48));
  CHECK(abs(r.value[2] - Complex(pi() / 8, 0)) < pow10(-48));
  // one more level changes nothing at the target accuracy
  const auto finer = q.integrate_levels(f, 3, r.level + 1);
  for (int k = 0; k < 3; ++k) CHECK(abs(finer.value[k] - r.value[k]) < pow10(-48));
}
