#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "trigonal/numeric.hpp"
#include "trigonal/polynomial.hpp"
#include "trigonal/semigroup.hpp"
#include "trigonal/series.hpp"

namespace trigonal {

// Pointed cyclic trigonal curve (X, P) of type <3, 2r+s, 2s+r>:
//
//   w^3 = A(x) B(x)^2,   y = A(x) B(x) / w,
//   A = prod_{i < s} (x - b_i),   B = prod_{s <= j < s+r} (x - b_j),
//
// with P the unique point over x = infinity.  The coordinate ring is the free
// C[x]-module with basis 1, w, y subject to
//
//   w^2 = B y,   y^2 = A w,   w y = A B,
//
// graded by pole order at P: wt(x) = 3, wt(w) = 2r+s, wt(y) = 2s+r.
// Branch places are indexed 0..r+s-1; the first s are roots of A.
template <class F>
class Curve {
 public:
  using Poly = Polynomial<F>;

  // Throws DegenerateBranching, NotTotallyRamified, SemigroupMismatch or
  // InvalidArgument.
  static Curve build(int r, int s, std::vector<F> branch_points);

  int r() const { return r_; }
  int s() const { return s_; }
  int genus() const { return r_ + s_ - 1; }
  int weight_w() const { return 2 * r_ + s_; }
  int weight_y() const { return 2 * s_ + r_; }
  int branch_count() const { return r_ + s_; }
  const std::vector<F>& branch_points() const { return b_; }
  const F& branch_point(int i) const { return b_.at(i); }
  bool is_A_root(int i) const { return i < s_; }
  // Exponent m_i of (x - b_i) in A B^2; also the local monodromy of w.
  int monodromy_exponent(int i) const { return is_A_root(i) ? 1 : 2; }
  int order_w_at(int i) const { return is_A_root(i) ? 1 : 2; }
  int order_y_at(int i) const { return is_A_root(i) ? 2 : 1; }

  const Poly& A() const { return A_; }
  const Poly& B() const { return B_; }
  const Poly& AB() const { return AB_; }
  // A B^2, the right-hand side of w^3.
  const Poly& F_poly() const { return F_; }

  const Semigroup& semigroup() const { return semigroup_; }

 private:
  int r_ = 0;
  int s_ = 0;
  std::vector<F> b_;
  Poly A_, B_, AB_, F_;
  Semigroup semigroup_;
};

// Exact curve over Q and its numeric shadow.
using RationalCurve = Curve<mpq_class>;
using ComplexCurve = Curve<Complex>;

template <class F>
ComplexCurve to_numeric(const Curve<F>& curve);

// x^a w^b y^c, with (b, c) in {(0,0), (1,0), (0,1), (1,1)}.
struct Monomial {
  int a = 0;
  int b = 0;
  int c = 0;
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

std::string to_string(const Monomial& m);

// p0(x) + p1(x) w + p2(x) y in canonical form.
template <class F>
struct RingElement {
  std::array<Polynomial<F>, 3> p;

  bool is_zero() const { return p[0].is_zero() && p[1].is_zero() && p[2].is_zero(); }
  friend bool operator==(const RingElement& a, const RingElement& b) {
    return a.p[0] == b.p[0] && a.p[1] == b.p[1] && a.p[2] == b.p[2];
  }
};

template <class F>
RingElement<F> constant_element(const F& a) {
  return {{Polynomial<F>::constant(a), Polynomial<F>(), Polynomial<F>()}};
}
template <class F>
RingElement<F> x_element() {
  return {{Polynomial<F>::x(), Polynomial<F>(), Polynomial<F>()}};
}
template <class F>
RingElement<F> w_element() {
  return {{Polynomial<F>(), Polynomial<F>::constant(FieldTraits<F>::from_int(1)), Polynomial<F>()}};
}
template <class F>
RingElement<F> y_element() {
  return {{Polynomial<F>(), Polynomial<F>(), Polynomial<F>::constant(FieldTraits<F>::from_int(1))}};
}

template <class F>
RingElement<F> element(const Curve<F>& curve, const Monomial& m);

template <class F>
RingElement<F> add(const RingElement<F>& a, const RingElement<F>& b) {
  return {{a.p[0] + b.p[0], a.p[1] + b.p[1], a.p[2] + b.p[2]}};
}
template <class F>
RingElement<F> subtract(const RingElement<F>& a, const RingElement<F>& b) {
  return {{a.p[0] - b.p[0], a.p[1] - b.p[1], a.p[2] - b.p[2]}};
}
template <class F>
RingElement<F> scale(const F& s, const RingElement<F>& a) {
  return {{s * a.p[0], s * a.p[1], s * a.p[2]}};
}
template <class F>
RingElement<F> scale(const Polynomial<F>& s, const RingElement<F>& a) {
  return {{s * a.p[0], s * a.p[1], s * a.p[2]}};
}

template <class F>
RingElement<F> multiply(const Curve<F>& curve, const RingElement<F>& e1, const RingElement<F>& e2);

// Pole order at P.  Throws ZeroElement for 0.
template <class F>
int weight(const Curve<F>& curve, const RingElement<F>& e);

// N(e) = e * sigma(e) * sigma^2(e), a polynomial in x of degree weight(e).
template <class F>
Polynomial<F> norm(const Curve<F>& curve, const RingElement<F>& e);

// A point of X over a finite x.  The sheet index k labels w = rho^k * cbrt(A B^2)
// with the principal cube root; at branch points all sheets coincide.
struct PointOnCurve {
  Complex x;
  Complex w;
  Complex y;
  int sheet = 0;
  int branch_index = -1;  // >= 0 when the point is the branch place B_i
};

PointOnCurve make_point(const ComplexCurve& curve, const Complex& x, int sheet);
Complex principal_cube_root(const Complex& f);
PointOnCurve branch_point_place(const ComplexCurve& curve, int index);
// Sheet index of an (x, w) pair with w^3 = A B^2.
int sheet_of(const ComplexCurve& curve, const Complex& x, const Complex& w);

template <class F>
Complex evaluate(const Curve<F>& curve, const RingElement<F>& e, const PointOnCurve& pt);

// Places of X: P, a branch place B_i, or a generic point (x, sheet).
struct Place {
  enum class Kind { Infinity, Branch, Generic };
  Kind kind = Kind::Infinity;
  int index = -1;
  Complex x;
  int sheet = 0;

  static Place infinity() { return Place{}; }
  static Place branch(int i) { return Place{Kind::Branch, i, Complex(0, 0), 0}; }
  static Place generic(const Complex& x, int sheet) { return Place{Kind::Generic, -1, x, sheet}; }
};

// Order of vanishing of e at a place (negative for poles).  Throws ZeroElement.
// Generic places are handled numerically with an order cap of `order_cap`.
template <class F>
int valuation(const Curve<F>& curve, const RingElement<F>& e, const Place& place, int order_cap = 64);

// Local Taylor expansions of w and y at a generic point in the coordinate x - x0.
struct LocalExpansion {
  Series w;
  Series y;
};
LocalExpansion expand_at(const ComplexCurve& curve, const PointOnCurve& pt, int order);

template <class F>
Series expand_element(const Curve<F>& curve, const RingElement<F>& e, const PointOnCurve& pt, int order);

struct BasisEntry {
  int weight = 0;
  Monomial monomial;
};

struct BasisTable {
  std::vector<BasisEntry> entries;
  std::vector<int> weights() const;
};

// Graded monomial basis of R up to max_weight: x^a, x^a w, x^a y.
template <class F>
BasisTable basis_R(const Curve<F>& curve, int max_weight);

// Graded monomial basis of R^B (functions vanishing on every branch place):
// x^a w, x^a y, x^a w y.
template <class F>
BasisTable basis_RB(const Curve<F>& curve, int max_weight);

// First n entries of the R^B basis.  Throws BasisExhausted for n < 0.
template <class F>
std::vector<BasisEntry> rb_prefix(const Curve<F>& curve, int n);

// f dx / (w y) with f from R^B, reduced by the ring relations to x^a dx / y
// (f = x^a w) or x^a dx / w (f = x^a y).
struct Differential {
  Monomial numerator;
  int weight = 0;
  int x_power = 0;
  enum class Denominator { Y, W } denominator = Denominator::Y;
};

std::string to_string(const Differential& d);

template <class F>
std::vector<Differential> holomorphic_differentials(const Curve<F>& curve);

// Order of f dx/(wy) at a place; generic places give ord(f).
template <class F>
int differential_valuation(const Curve<F>& curve, const Differential& d, const Place& place);

#define TRIGONAL_CURVE_EXTERN(F)                                                                 \
  extern template class Curve<F>;                                                                \
  extern template ComplexCurve to_numeric(const Curve<F>&);                                      \
  extern template RingElement<F> element(const Curve<F>&, const Monomial&);                      \
  extern template RingElement<F> multiply(const Curve<F>&, const RingElement<F>&,                \
                                          const RingElement<F>&);                                \
  extern template int weight(const Curve<F>&, const RingElement<F>&);                            \
  extern template Polynomial<F> norm(const Curve<F>&, const RingElement<F>&);                    \
  extern template Complex evaluate(const Curve<F>&, const RingElement<F>&, const PointOnCurve&); \
  extern template int valuation(const Curve<F>&, const RingElement<F>&, const Place&, int);      \
  extern template Series expand_element(const Curve<F>&, const RingElement<F>&,                  \
                                        const PointOnCurve&, int);                               \
  extern template BasisTable basis_R(const Curve<F>&, int);                                      \
  extern template BasisTable basis_RB(const Curve<F>&, int);                                     \
  extern template std::vector<BasisEntry> rb_prefix(const Curve<F>&, int);                       \
  extern template std::vector<Differential> holomorphic_differentials(const Curve<F>&);          \
  extern template int differential_valuation(const Curve<F>&, const Differential&, const Place&);

TRIGONAL_CURVE_EXTERN(mpq_class)
TRIGONAL_CURVE_EXTERN(Complex)

}  // namespace trigonal
