#include <random>

#include "doctest.h"
#include "test_helpers.hpp"
#include "trigonal/curve.hpp"
#include "trigonal/tables.hpp"

using namespace trigonal;
using namespace trigonal::testing;

namespace {

const PrecisionScope kPrecision(working_digits(40));

RationalCurve curve12() { return RationalCurve::build(1, 2, rationals({0, 1, -1})); }

ErrorCode build_error(int r, int s, std::vector<mpq_class> b) {
  try {
    RationalCurve::build(r, s, std::move(b));
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("family construction and semigroup cross-check") {
  const auto c = curve12();
  CHECK(c.genus() == 2);
  CHECK(c.semigroup().gaps() == std::vector<int>{1, 2});
  CHECK(c.weight_w() == 4);
  CHECK(c.weight_y() == 5);

  const auto c23 = RationalCurve::build(2, 3, rationals({0, 1, 2, 3, 4}));
  CHECK(c23.genus() == 4);
  CHECK(c23.semigroup().gaps() == std::vector<int>{1, 2, 4, 5});

  // Picard curve w^3 = x^4 + 1.
  std::vector<Complex> roots;
  for (int k = 0; k < 4; ++k) roots.push_back(parse_complex("cis(" + std::to_string(2 * k + 1) + "/8)"));
  const auto picard = ComplexCurve::build(0, 4, roots);
  CHECK(picard.genus() == 3);
  CHECK(picard.semigroup().minimal_generators() == std::vector<int>{3, 4});
  const auto f = picard.F_poly();
  CHECK(f.degree() == 4);
  CHECK(abs(f.coeff(0) - Complex(1, 0)) < 1e-40);
  CHECK(abs(f.coeff(2)) < 1e-40);
}

TEST_CASE("construction errors") {
  CHECK(build_error(1, 1, rationals({0, 1})) == ErrorCode::NotTotallyRamified);
  CHECK(build_error(1, 2, rationals({0, 1, 1})) == ErrorCode::DegenerateBranching);
  CHECK(build_error(1, 2, rationals({0, 1})) == ErrorCode::InvalidArgument);
  CHECK(build_error(0, 0, {}) == ErrorCode::InvalidArgument);
  CHECK(build_error(4, 1, rationals({0, 1, 2, 3, 4})) == ErrorCode::NotTotallyRamified);
}

TEST_CASE("ring relations") {
  const auto c = curve12();
  const auto w = w_element<mpq_class>();
  const auto y = y_element<mpq_class>();
  const auto wy = multiply(c, w, y);
  CHECK(wy.p[0] == c.AB());
  CHECK(wy.p[1].is_zero());
  CHECK(wy.p[2].is_zero());

  const auto ww = multiply(c, w, w);
  CHECK(ww.p[0].is_zero());
  CHECK(ww.p[1].is_zero());
  CHECK(ww.p[2] == c.B());

  // Oracle: w^3 = A B^2 and y^3 = A^2 B as canonical forms.
  const auto w3 = multiply(c, ww, w);
  CHECK(w3 == RingElement<mpq_class>{{c.A() * c.B() * c.B(), {}, {}}});
  const auto y3 = multiply(c, multiply(c, y, y), y);
  CHECK(y3 == RingElement<mpq_class>{{c.A() * c.A() * c.B(), {}, {}}});

  const auto one = constant_element<mpq_class>(1);
  std::mt19937_64 rng(7);
  const auto e = random_element(rng);
  CHECK(multiply(c, one, e) == e);
}

TEST_CASE("ring axioms and weight additivity on random triples") {
  std::mt19937_64 rng(2024);
  for (auto [r, s] : std::vector<std::pair<int, int>>{{1, 2}, {2, 3}, {0, 4}, {1, 3}}) {
    const auto c = RationalCurve::build(r, s, random_distinct_rationals(rng, r + s));
    for (int trial = 0; trial < 50; ++trial) {
      const auto a = random_element(rng);
      const auto b = random_element(rng);
      const auto d = random_element(rng);
      CHECK(multiply(c, a, b) == multiply(c, b, a));
      CHECK(multiply(c, multiply(c, a, b), d) == multiply(c, a, multiply(c, b, d)));
      CHECK(multiply(c, a, add(b, d)) == add(multiply(c, a, b), multiply(c, a, d)));
      CHECK(weight(c, multiply(c, a, b)) == weight(c, a) + weight(c, b));
    }
  }
}

TEST_CASE("products agree with pointwise evaluation") {
  const auto c = curve12();
  const auto nc = to_numeric(c);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = random_element(rng);
    const auto b = random_element(rng);
    const auto pt = make_point(nc, Complex(Real(trial) / 7 + Real(1) / 3, Real(1) / 5), trial % 3);
    const Complex lhs = evaluate(c, multiply(c, a, b), pt);
    const Complex rhs = evaluate(c, a, pt) * evaluate(c, b, pt);
    CHECK(abs(lhs - rhs) < 1e-40 * (1 + abs(rhs)));
  }
}

TEST_CASE("graded basis of R") {
  const auto c13 = RationalCurve::build(1, 3, rationals({0, 1, 2, 3}));
  CHECK(basis_R(c13, 12).weights() == std::vector<int>{0, 3, 5, 6, 7, 8, 9, 10, 11, 12});
  CHECK(basis_R(c13, 0).entries.size() == 1);
  CHECK(basis_R(c13, 0).entries[0].monomial == Monomial{0, 0, 0});
  const auto c23 = RationalCurve::build(2, 3, rationals({0, 1, 2, 3, 4}));
  CHECK(basis_R(c23, 12).weights() == std::vector<int>{0, 3, 6, 7, 8, 9, 10, 11, 12});
}

TEST_CASE("graded basis of R^B") {
  const auto c13 = RationalCurve::build(1, 3, rationals({0, 1, 2, 3}));
  const auto rb = basis_RB(c13, 12);
  CHECK(rb.weights() == std::vector<int>{5, 7, 8, 10, 11, 12});
  CHECK(rb.entries[0].monomial == Monomial{0, 1, 0});
  CHECK(rb.entries[1].monomial == Monomial{0, 0, 1});
  CHECK(rb.entries[5].monomial == Monomial{0, 1, 1});

  const auto c23 = RationalCurve::build(2, 3, rationals({0, 1, 2, 3, 4}));
  const auto f = rb_prefix(c23, 4);
  CHECK(f[3].weight == 11);
  CHECK(f[3].weight == 2 * c23.genus() - 2 + c23.r() + c23.s());

  const auto c = curve12();
  const auto f12 = rb_prefix(c, 2);
  CHECK(f12[0].weight == 4);
  CHECK(f12[0].monomial == Monomial{0, 1, 0});
  CHECK(f12[1].weight == 5);
  CHECK(f12[1].monomial == Monomial{0, 0, 1});
  CHECK(basis_RB(c, 0).entries.empty());

  // every R^B element vanishes at every branch place
  for (const auto& e : basis_RB(c23, 30).entries)
    for (int i = 0; i < c23.branch_count(); ++i) CHECK(valuation(c23, element(c23, e.monomial), Place::branch(i)) >= 1);
}

TEST_CASE("occupied weights match the reference rows and the semigroup") {
  std::mt19937_64 rng(5);
  for (const auto& row : reference_rows()) {
    const auto c = RationalCurve::build(row.r, row.s, random_distinct_rationals(rng, row.r + row.s));
    CHECK(c.genus() == row.genus);
    CHECK(basis_R(c, kReferenceMaxWeight).weights() == row.ring_weights);
    CHECK(basis_RB(c, kReferenceMaxWeight).weights() == row.rb_weights);
    std::vector<int> h;
    for (int n = 0; n <= kReferenceMaxWeight; ++n)
      if (c.semigroup().contains(n)) h.push_back(n);
    CHECK(basis_R(c, kReferenceMaxWeight).weights() == h);
  }
}

TEST_CASE("valuations") {
  const auto c = curve12();
  const RingElement<mpq_class> x_minus_b1{{Polynomial<mpq_class>(rationals({0, 1})), {}, {}}};
  CHECK(valuation(c, x_minus_b1, Place::branch(0)) == 3);
  CHECK(valuation(c, x_minus_b1, Place::infinity()) == -3);
  CHECK(valuation(c, constant_element<mpq_class>(1), Place::infinity()) == 0);
  const auto w = w_element<mpq_class>();
  const auto y = y_element<mpq_class>();
  CHECK(valuation(c, w, Place::branch(2)) == 2);
  CHECK(valuation(c, w, Place::infinity()) == -4);
  for (int i = 0; i < 3; ++i) {
    CHECK(valuation(c, w, Place::branch(i)) == (i < 2 ? 1 : 2));
    CHECK(valuation(c, y, Place::branch(i)) == (i < 2 ? 2 : 1));
  }
  CHECK_THROWS_AS(valuation(c, RingElement<mpq_class>{}, Place::infinity()), Error);

  // generic place: x - 1/2 vanishes simply on all three sheets, w does not vanish
  const RingElement<mpq_class> x_half{{Polynomial<mpq_class>(std::vector<mpq_class>{mpq_class(-1, 2), 1}), {}, {}}};
  for (int k = 0; k < 3; ++k) {
    CHECK(valuation(c, x_half, Place::generic(Complex(Real(1) / 2, 0), k)) == 1);
    CHECK(valuation(c, w, Place::generic(Complex(Real(1) / 2, 0), k)) == 0);
  }
  // (x - 1/2)^2 * w vanishes to order 2
  const auto e = multiply(c, multiply(c, x_half, x_half), w);
  CHECK(valuation(c, e, Place::generic(Complex(Real(1) / 2, 0), 1)) == 2);
}

TEST_CASE("branch valuations agree with the decay rate of |e| near the branch point") {
  const auto c = RationalCurve::build(2, 3, rationals({0, 1, 2, 3, 4}));
  const auto nc = to_numeric(c);
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const auto e = random_element(rng);
    for (int i = 0; i < c.branch_count(); ++i) {
      const int v = valuation(c, e, Place::branch(i));
      const Complex b = nc.branch_point(i);
      const Complex d1 = Complex(1, Real(1) / 3) * pow10(-20);
      const Complex d2 = d1 / Real(1000);
      const Real m1 = abs(evaluate(c, e, make_point(nc, b + d1, 0)));
      const Real m2 = abs(evaluate(c, e, make_point(nc, b + d2, 0)));
      // |e| ~ |x - b|^{v/3}
      const double slope = static_cast<double>(log(m1 / m2) / log(Real(1000)));
      CHECK(slope == doctest::Approx(v / 3.0).epsilon(0.01));
    }
  }
}

TEST_CASE("principal divisors have degree zero: norm multiplicities vs valuations") {
  std::mt19937_64 rng(31);
  for (auto [r, s] : std::vector<std::pair<int, int>>{{1, 2}, {2, 3}, {1, 3}, {0, 4}, {2, 0}}) {
    const auto c = RationalCurve::build(r, s, random_distinct_rationals(rng, r + s));
    std::vector<RingElement<mpq_class>> samples = {w_element<mpq_class>(), y_element<mpq_class>()};
    for (int i = 0; i < c.branch_count(); ++i)
      samples.push_back({{Polynomial<mpq_class>(std::vector<mpq_class>{-c.branch_point(i), 1}), {}, {}}});
    for (int k = 0; k < 10; ++k) samples.push_back(multiply(c, random_element(rng), random_element(rng)));
    for (const auto& e : samples) {
      const auto n = norm(c, e);
      CHECK(n.degree() == weight(c, e));
      int branch_part = 0;
      for (int i = 0; i < c.branch_count(); ++i) {
        const int v = valuation(c, e, Place::branch(i));
        CHECK(n.multiplicity_at(c.branch_point(i)) == v);
        branch_part += v;
      }
      const int generic_part = n.degree() - branch_part;
      CHECK(generic_part >= 0);
      CHECK(branch_part + generic_part + valuation(c, e, Place::infinity()) == 0);
    }
  }
}

TEST_CASE("holomorphic differentials") {
  const auto c13 = RationalCurve::build(1, 3, rationals({0, 1, 2, 3}));
  const auto d = holomorphic_differentials(c13);
  REQUIRE(d.size() == 3);
  CHECK(to_string(d[0]) == "1 dx/y");
  CHECK(to_string(d[1]) == "1 dx/w");
  CHECK(to_string(d[2]) == "x dx/y");

  std::vector<Complex> roots;
  for (int k = 0; k < 4; ++k) roots.push_back(parse_complex("cis(" + std::to_string(2 * k + 1) + "/8)"));
  const auto picard = ComplexCurve::build(0, 4, roots);
  const auto dp = holomorphic_differentials(picard);
  REQUIRE(dp.size() == 3);
  CHECK(to_string(dp[0]) == "1 dx/y");
  CHECK(to_string(dp[1]) == "x dx/y");
  CHECK(to_string(dp[2]) == "1 dx/w");

  std::mt19937_64 rng(3);
  for (auto [r, s] : std::vector<std::pair<int, int>>{{1, 2}, {2, 3}, {1, 5}, {2, 4}, {3, 4}, {0, 4}, {0, 5}, {2, 0}}) {
    const auto c = RationalCurve::build(r, s, random_distinct_rationals(rng, r + s));
    const auto forms = holomorphic_differentials(c);
    CHECK(static_cast<int>(forms.size()) == c.genus());
    for (const auto& f : forms) {
      CHECK(differential_valuation(c, f, Place::infinity()) >= 0);
      for (int i = 0; i < c.branch_count(); ++i) CHECK(differential_valuation(c, f, Place::branch(i)) >= 0);
    }
    // the next R^B element is no longer holomorphic at P
    const auto next = rb_prefix(c, c.genus() + 1).back();
    CHECK(next.weight > 2 * c.genus() - 2 + r + s);
  }
}
