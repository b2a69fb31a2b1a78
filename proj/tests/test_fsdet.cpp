#include <random>

#include "doctest.h"
#include "test_helpers.hpp"
#include "trigonal/error.hpp"
#include "trigonal/fsdet.hpp"
#include "trigonal/rconst.hpp"

using namespace trigonal;
using namespace trigonal::testing;

namespace {

constexpr int kDigits = 40;
const PrecisionScope kPrecision(working_digits(kDigits));

ComplexCurve numeric12() { return to_numeric(RationalCurve::build(1, 2, rationals({0, 1, -1}))); }
ComplexCurve numeric23() { return to_numeric(RationalCurve::build(2, 3, rationals({0, 1, -1, 2, 3}))); }

Real rel_tol() { return pow10(-(kDigits - 8)); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("small determinants by hand") {
  const auto curve = numeric12();
  std::mt19937_64 rng(1);
  const auto pts = random_points(curve, 2, rng);
  CHECK(abs(psi(curve, {pts[0]}) - pts[0].w) < rel_tol());
  const Complex expected = pts[0].w * pts[1].y - pts[0].y * pts[1].w;
  CHECK(abs(psi(curve, pts) - expected) < rel_tol() * abs(expected));
  const auto mu1 = mu_function(curve, {pts[0]});
  CHECK(mu1.order == 5);
  CHECK(abs(mu1.coefficients[0] - pts[0].y / pts[0].w) < rel_tol());
  const Complex direct = pts[1].y - pts[0].y / pts[0].w * pts[1].w;
  CHECK(abs(evaluate(curve, mu1, pts[1]) - direct) < rel_tol() * abs(direct));
}

TEST_CASE("antisymmetry and vanishing at interpolation and branch points") {
  const auto curve = numeric23();
  std::mt19937_64 rng(2);
  for (int n = 1; n <= 4; ++n) {
    auto pts = random_points(curve, n, rng);
    const Complex p0 = psi(curve, pts);
    if (n >= 2) {
      std::swap(pts[0], pts[n - 1]);
      CHECK(abs(psi(curve, pts) + p0) < rel_tol() * abs(p0));
    }
    const auto m = mu_function(curve, pts);
    CHECK(m.coefficients.back() == Complex(1));
    Real scale(0);
    for (const auto& q : random_points(curve, 3, rng)) scale = std::max(scale, abs(evaluate(curve, m, q)));
    for (const auto& p : pts) CHECK(abs(evaluate(curve, m, p)) < rel_tol() * scale);
    for (int i = 0; i < curve.branch_count(); ++i)
      CHECK(abs(evaluate(curve, m, branch_point_place(curve, i))) < rel_tol() * scale);
  }
}

TEST_CASE("minor ratios, linear solve and determinant ratios agree") {
  const auto curve = numeric23();
  std::mt19937_64 rng(3);
  for (int n = 1; n <= 5; ++n) {
    const auto pts = random_points(curve, n, rng);
    const auto a = mu_function(curve, pts, MuRoute::Minors);
    const auto b = mu_function(curve, pts, MuRoute::LinearSolve);
    for (int k = 0; k <= n; ++k) CHECK(abs(a.coefficients[k] - b.coefficients[k]) < rel_tol() * (1 + abs(a.coefficients[k])));
    for (const auto& q : random_points(curve, 10, rng)) {
      const Complex direct = mu(curve, pts, q);
      CHECK(abs(evaluate(curve, a, q) - direct) < rel_tol() * (1 + abs(direct)));
    }
  }
}

TEST_CASE("coincident points use derivative rows") {
  const auto curve = numeric12();
  std::mt19937_64 rng(4);
  const auto p = random_points(curve, 1, rng)[0];
  const Complex confluent = psi(curve, {p, p});
  // psi(P, P') / (x' - x) tends to the confluent value.
  const Real h = pow10(-15);
  const auto ph = make_point(curve, p.x + Complex(h), p.sheet);
  const Complex quotient = psi(curve, {p, ph}) / Complex(h);
  CHECK(abs(quotient - confluent) < pow10(-12) * abs(confluent));
  // mu_2(P, P) vanishes to second order at P.
  const auto m = mu_function(curve, {p, p});
  const Divisor d = principal_divisor(curve, m.element);
  bool found = false;
  for (const auto& e : d.generic)
    if (abs(e.x - p.x) < pow10(-10) && e.sheet == p.sheet) {
      found = true;
      CHECK(e.multiplicity == 2);
    }
  CHECK(found);
}

TEST_CASE("divisor of mu for n = g - 1 on (1,2)") {
  const auto curve = numeric12();
  const auto pd = period_matrices(curve, kDigits);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 4; ++trial) {
    const auto pts = random_points(curve, 1, rng);
    const auto rep = mu_divisor_check(curve, pd, pts);
    CHECK(rep.order == 5);  // 2g - 2 + d1
    CHECK(rep.d1 == 3);
    CHECK(rep.expected_complementary == 1);
    CHECK(rep.complementary.degree() == 1);
    CHECK(rep.abel_residual < pow10(-18));
    CHECK(rep.class_residual < pow10(-18));
    CHECK(rep.passed);
  }
}

TEST_CASE("divisor of mu on (2,3), n = 3 and beyond") {
  const auto curve = numeric23();
  const auto pd = period_matrices(curve, kDigits);
  std::mt19937_64 rng(6);
  const auto rep = mu_divisor_check(curve, pd, random_points(curve, 3, rng));
  CHECK(rep.order == 11);
  CHECK(rep.expected_complementary == 3);
  CHECK(rep.complementary.degree() == 3);
  CHECK(rep.passed);
  const auto rep5 = mu_divisor_check(curve, pd, random_points(curve, 5, rng));
  CHECK(rep5.complementary.degree() == rep5.order - 5 - 5);
  CHECK(rep5.passed);
  // A doubled input point is absorbed with multiplicity two.
  auto pts = random_points(curve, 2, rng);
  pts.push_back(pts[0]);
  const auto rep_double = mu_divisor_check(curve, pd, pts);
  CHECK(rep_double.passed);
}

TEST_CASE("Abel residual improves with precision") {
  Real r30, r50;
  for (int digits : {30, 50}) {
    const PrecisionScope scope(working_digits(digits));
    const auto curve = numeric12();
    const auto pd = period_matrices(curve, digits);
    std::mt19937_64 rng(7);
    const auto rep = mu_divisor_check(curve, pd, random_points(curve, 1, rng));
    (digits == 30 ? r30 : r50) = std::max(rep.abel_residual, Real(pow10(-60)));
  }
  CHECK(r50 < r30);
}

TEST_CASE("errors") {
  const auto curve = numeric12();
  CHECK(code_of([&] { psi(curve, {}); }) == ErrorCode::InvalidArgument);
  std::mt19937_64 rng(8);
  const auto pts = random_points(curve, 3, rng);
  CHECK(code_of([&] { psi(curve, pts, 5); }) == ErrorCode::BasisExhausted);
  CHECK_NOTHROW(psi(curve, pts, 7));
  CHECK(code_of([&] { mu_function(curve, {branch_point_place(curve, 0)}); }) == ErrorCode::SingularConfiguration);
}

TEST_CASE("serialization") {
  const auto curve = numeric12();
  std::mt19937_64 rng(9);
  const auto m = mu_function(curve, random_points(curve, 2, rng));
  const auto j = to_json(m, 20);
  CHECK(j["coefficients"].size() == 3);
  CHECK(j["order"].get<int>() == m.order);
}
