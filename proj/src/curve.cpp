#include "trigonal/curve.hpp"

#include <algorithm>
#include <limits>

namespace trigonal {

namespace {

template <class F>
bool same_point(const F& a, const F& b) {
  return FieldTraits<F>::is_zero(a - b);
}

template <class F>
Complex to_c(const F& v) {
  return FieldTraits<F>::to_complex(v);
}

template <class F>
Polynomial<Complex> to_c(const Polynomial<F>& p) {
  std::vector<Complex> c;
  for (const F& v : p.coeffs()) c.push_back(to_c(v));
  return Polynomial<Complex>(std::move(c));
}

}  // namespace

template <class F>
Curve<F> Curve<F>::build(int r, int s, std::vector<F> branch_points) {
  if (r < 0 || s < 0 || (r == 0 && s == 0))
    throw Error(ErrorCode::InvalidArgument, "need r, s >= 0 and (r, s) != (0, 0)");
  if (static_cast<int>(branch_points.size()) != r + s)
    throw Error(ErrorCode::InvalidArgument, "expected " + std::to_string(r + s) + " branch points, got " +
                                                std::to_string(branch_points.size()));
  for (std::size_t i = 0; i < branch_points.size(); ++i)
    for (std::size_t j = i + 1; j < branch_points.size(); ++j)
      if (same_point(branch_points[i], branch_points[j]))
        throw Error(ErrorCode::DegenerateBranching,
                    "branch points " + std::to_string(i + 1) + " and " + std::to_string(j + 1) + " coincide");
  if ((s + 2 * r) % 3 == 0)
    throw Error(ErrorCode::NotTotallyRamified,
                "3 divides s + 2r = " + std::to_string(s + 2 * r) + "; P is not a total ramification point");
  if (r + s - 1 < 1) throw Error(ErrorCode::InvalidArgument, "genus r + s - 1 must be at least 1");

  Curve c;
  c.r_ = r;
  c.s_ = s;
  c.b_ = std::move(branch_points);
  c.A_ = Poly::from_roots(std::vector<F>(c.b_.begin(), c.b_.begin() + s));
  c.B_ = Poly::from_roots(std::vector<F>(c.b_.begin() + s, c.b_.end()));
  c.AB_ = c.A_ * c.B_;
  c.F_ = c.AB_ * c.B_;
  c.semigroup_ = Semigroup::from_generators({3, c.weight_w(), c.weight_y()});
  if (c.semigroup_.genus() != r + s - 1)
    throw Error(ErrorCode::SemigroupMismatch, "semigroup genus " + std::to_string(c.semigroup_.genus()) +
                                                  " != r + s - 1 = " + std::to_string(r + s - 1));
  return c;
}

template <class F>
ComplexCurve to_numeric(const Curve<F>& curve) {
  if constexpr (std::is_same_v<F, Complex>) {
    return curve;
  } else {
    std::vector<Complex> b;
    for (const F& v : curve.branch_points()) b.push_back(to_c(v));
    return ComplexCurve::build(curve.r(), curve.s(), std::move(b));
  }
}

std::string to_string(const Monomial& m) {
  std::string out;
  auto append = [&out](const std::string& sym, int e) {
    if (e == 0) return;
    if (!out.empty()) out += "*";
    out += sym;
    if (e > 1) out += "^" + std::to_string(e);
  };
  append("x", m.a);
  append("w", m.b);
  append("y", m.c);
  return out.empty() ? "1" : out;
}

template <class F>
RingElement<F> element(const Curve<F>& curve, const Monomial& m) {
  if (m.a < 0 || m.b < 0 || m.c < 0) throw Error(ErrorCode::InvalidArgument, "negative exponent");
  RingElement<F> e{{Polynomial<F>::monomial(m.a), Polynomial<F>(), Polynomial<F>()}};
  for (int k = 0; k < m.b; ++k) e = multiply(curve, e, w_element<F>());
  for (int k = 0; k < m.c; ++k) e = multiply(curve, e, y_element<F>());
  return e;
}

template <class F>
RingElement<F> multiply(const Curve<F>& curve, const RingElement<F>& e1, const RingElement<F>& e2) {
  const auto& a = e1.p;
  const auto& b = e2.p;
  // w^2 = B y, w y = A B, y^2 = A w.
  RingElement<F> out;
  out.p[0] = a[0] * b[0] + curve.AB() * (a[1] * b[2] + a[2] * b[1]);
  out.p[1] = a[0] * b[1] + a[1] * b[0] + curve.A() * (a[2] * b[2]);
  out.p[2] = a[0] * b[2] + a[2] * b[0] + curve.B() * (a[1] * b[1]);
  return out;
}

template <class F>
int weight(const Curve<F>& curve, const RingElement<F>& e) {
  if (e.is_zero()) throw Error(ErrorCode::ZeroElement, "weight of the zero element");
  const int offsets[3] = {0, curve.weight_w(), curve.weight_y()};
  int best = std::numeric_limits<int>::min();
  for (int k = 0; k < 3; ++k)
    if (!e.p[k].is_zero()) best = std::max(best, 3 * e.p[k].degree() + offsets[k]);
  return best;
}

template <class F>
Polynomial<F> norm(const Curve<F>& curve, const RingElement<F>& e) {
  const auto& p = e.p;
  // Matrix of multiplication by e on the basis (1, w, y); rows are images.
  const Polynomial<F> m[3][3] = {
      {p[0], p[1], p[2]},
      {curve.AB() * p[2], p[0], curve.B() * p[1]},
      {curve.AB() * p[1], curve.A() * p[2], p[0]},
  };
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

// Principal cube root; values within rounding of the negative real axis are
// placed on its upper side so that sheet labels do not flicker there.
Complex principal_cube_root(const Complex& f) {
  const Real mag = abs(f);
  if (mag == 0) return Complex(0, 0);
  if (f.real() < 0 && abs(f.imag()) <= FieldTraits<Complex>::zero_threshold() * mag)
    return cbrt(mag) * Complex(Real(1) / 2, sqrt(Real(3)) / 2);
  return cexp(clog(f) / Real(3));
}

PointOnCurve make_point(const ComplexCurve& curve, const Complex& x, int sheet) {
  PointOnCurve pt;
  pt.x = x;
  pt.sheet = ((sheet % 3) + 3) % 3;
  for (int i = 0; i < curve.branch_count(); ++i) {
    if (FieldTraits<Complex>::is_zero(x - curve.branch_point(i))) {
      pt.x = curve.branch_point(i);
      pt.w = Complex(0, 0);
      pt.y = Complex(0, 0);
      pt.branch_index = i;
      pt.sheet = 0;
      return pt;
    }
  }
  const Complex root = principal_cube_root(curve.F_poly()(x));
  pt.w = cube_root_of_unity(pt.sheet) * root;
  pt.y = curve.AB()(x) / pt.w;
  return pt;
}

PointOnCurve branch_point_place(const ComplexCurve& curve, int index) {
  PointOnCurve pt;
  pt.x = curve.branch_point(index);
  pt.w = Complex(0, 0);
  pt.y = Complex(0, 0);
  pt.branch_index = index;
  return pt;
}

int sheet_of(const ComplexCurve& curve, const Complex& x, const Complex& w) {
  const Complex root = principal_cube_root(curve.F_poly()(x));
  const Complex ratio = w / root;
  int best = 0;
  Real dist = abs2(ratio - cube_root_of_unity(0));
  for (int k = 1; k < 3; ++k) {
    const Real d = abs2(ratio - cube_root_of_unity(k));
    if (d < dist) {
      dist = d;
      best = k;
    }
  }
  return best;
}

template <class F>
Complex evaluate(const Curve<F>& curve, const RingElement<F>& e, const PointOnCurve& pt) {
  (void)curve;
  Complex v = e.p[0].eval_as(pt.x);
  if (!e.p[1].is_zero()) v += e.p[1].eval_as(pt.x) * pt.w;
  if (!e.p[2].is_zero()) v += e.p[2].eval_as(pt.x) * pt.y;
  return v;
}

LocalExpansion expand_at(const ComplexCurve& curve, const PointOnCurve& pt, int order) {
  if (pt.branch_index >= 0)
    throw Error(ErrorCode::InvalidArgument, "x is not a local coordinate at a branch place");
  const Series f = taylor(curve.F_poly(), pt.x, order);
  LocalExpansion out;
  out.w = series_unit_pow(f, Real(1) / 3, order);
  for (auto& c : out.w) c *= pt.w;
  out.y = series_div(taylor(curve.AB(), pt.x, order), out.w, order);
  return out;
}

template <class F>
Series expand_element(const Curve<F>& curve, const RingElement<F>& e, const PointOnCurve& pt, int order) {
  const ComplexCurve numeric = to_numeric(curve);
  const LocalExpansion loc = expand_at(numeric, pt, order);
  Series out = taylor(to_c(e.p[0]), pt.x, order);
  const Series s1 = series_mul(taylor(to_c(e.p[1]), pt.x, order), loc.w, order);
  const Series s2 = series_mul(taylor(to_c(e.p[2]), pt.x, order), loc.y, order);
  for (int k = 0; k <= order; ++k) out[k] += s1[k] + s2[k];
  return out;
}

template <class F>
int valuation(const Curve<F>& curve, const RingElement<F>& e, const Place& place, int order_cap) {
  if (e.is_zero()) throw Error(ErrorCode::ZeroElement, "valuation of the zero element");
  switch (place.kind) {
    case Place::Kind::Infinity:
      return -weight(curve, e);
    case Place::Kind::Branch: {
      const int i = place.index;
      if (i < 0 || i >= curve.branch_count()) throw Error(ErrorCode::InvalidArgument, "branch index out of range");
      const int offsets[3] = {0, curve.order_w_at(i), curve.order_y_at(i)};
      int best = std::numeric_limits<int>::max();
      for (int k = 0; k < 3; ++k)
        if (!e.p[k].is_zero()) best = std::min(best, 3 * e.p[k].multiplicity_at(curve.branch_point(i)) + offsets[k]);
      return best;
    }
    case Place::Kind::Generic: {
      const ComplexCurve numeric = to_numeric(curve);
      const PointOnCurve pt = make_point(numeric, place.x, place.sheet);
      if (pt.branch_index >= 0) return valuation(curve, e, Place::branch(pt.branch_index), order_cap);
      const Series s = expand_element(curve, e, pt, order_cap);
      Real scale(0);
      for (const auto& c : s) scale = std::max(scale, Real(abs(c)));
      const Real tol = FieldTraits<Complex>::zero_threshold() * std::max(scale, Real(1));
      for (int k = 0; k <= order_cap; ++k)
        if (abs(s[k]) > tol) return k;
      throw Error(ErrorCode::RootIsolationFailure, "order of vanishing exceeds the cap");
    }
  }
  return 0;
}

std::vector<int> BasisTable::weights() const {
  std::vector<int> out;
  for (const auto& e : entries) out.push_back(e.weight);
  return out;
}

template <class F>
BasisTable basis_R(const Curve<F>& curve, int max_weight) {
  BasisTable t;
  const int ww = curve.weight_w();
  const int wy = curve.weight_y();
  for (int n = 0; n <= max_weight; ++n) {
    if (n % 3 == 0)
      t.entries.push_back({n, {n / 3, 0, 0}});
    else if (n % 3 == ww % 3 && n >= ww)
      t.entries.push_back({n, {(n - ww) / 3, 1, 0}});
    else if (n % 3 == wy % 3 && n >= wy)
      t.entries.push_back({n, {(n - wy) / 3, 0, 1}});
  }
  return t;
}

template <class F>
BasisTable basis_RB(const Curve<F>& curve, int max_weight) {
  BasisTable t;
  const int ww = curve.weight_w();
  const int wy = curve.weight_y();
  const int wwy = ww + wy;  // = 3 (r + s)
  for (int n = 0; n <= max_weight; ++n) {
    if (n % 3 == 0 && n >= wwy)
      t.entries.push_back({n, {(n - wwy) / 3, 1, 1}});
    else if (n % 3 == ww % 3 && n >= ww)
      t.entries.push_back({n, {(n - ww) / 3, 1, 0}});
    else if (n % 3 == wy % 3 && n >= wy)
      t.entries.push_back({n, {(n - wy) / 3, 0, 1}});
  }
  return t;
}

template <class F>
std::vector<BasisEntry> rb_prefix(const Curve<F>& curve, int n) {
  if (n < 0) throw Error(ErrorCode::BasisExhausted, "negative basis length");
  // Every residue class is occupied from weight 3(r+s) on.
  const int bound = 3 * (curve.r() + curve.s()) + 3 * n;
  auto entries = basis_RB(curve, bound).entries;
  if (static_cast<int>(entries.size()) < n) throw Error(ErrorCode::BasisExhausted, "R^B basis too short");
  entries.resize(n);
  return entries;
}

std::string to_string(const Differential& d) {
  std::string num = d.x_power == 0 ? "1" : (d.x_power == 1 ? "x" : "x^" + std::to_string(d.x_power));
  return num + " dx/" + (d.denominator == Differential::Denominator::Y ? "y" : "w");
}

template <class F>
std::vector<Differential> holomorphic_differentials(const Curve<F>& curve) {
  std::vector<Differential> out;
  const int bound = 2 * curve.genus() - 2 + curve.r() + curve.s();
  for (const auto& entry : rb_prefix(curve, curve.genus())) {
    if (entry.weight > bound || entry.monomial.c + entry.monomial.b != 1)
      throw Error(ErrorCode::VerificationFailed, "R^B basis entry " + to_string(entry.monomial) +
                                                     " does not give a holomorphic differential");
    Differential d;
    d.numerator = entry.monomial;
    d.weight = entry.weight;
    d.x_power = entry.monomial.a;
    d.denominator = entry.monomial.b == 1 ? Differential::Denominator::Y : Differential::Denominator::W;
    out.push_back(d);
  }
  return out;
}

template <class F>
int differential_valuation(const Curve<F>& curve, const Differential& d, const Place& place) {
  const RingElement<F> f = element(curve, d.numerator);
  switch (place.kind) {
    case Place::Kind::Infinity:
      // ord(dx) = -4, ord(AB) = -3(r+s).
      return -weight(curve, f) - 4 + 3 * (curve.r() + curve.s());
    case Place::Kind::Branch:
      return valuation(curve, f, place) + 2 - 3;
    case Place::Kind::Generic:
      return valuation(curve, f, place);
  }
  return 0;
}

#define TRIGONAL_CURVE_INSTANTIATE(F)                                                                    \
  template class Curve<F>;                                                                               \
  template ComplexCurve to_numeric(const Curve<F>&);                                                     \
  template RingElement<F> element(const Curve<F>&, const Monomial&);                                     \
  template RingElement<F> multiply(const Curve<F>&, const RingElement<F>&, const RingElement<F>&);       \
  template int weight(const Curve<F>&, const RingElement<F>&);                                           \
  template Polynomial<F> norm(const Curve<F>&, const RingElement<F>&);                                   \
  template Complex evaluate(const Curve<F>&, const RingElement<F>&, const PointOnCurve&);                \
  template int valuation(const Curve<F>&, const RingElement<F>&, const Place&, int);                     \
  template Series expand_element(const Curve<F>&, const RingElement<F>&, const PointOnCurve&, int);      \
  template BasisTable basis_R(const Curve<F>&, int);                                                     \
  template BasisTable basis_RB(const Curve<F>&, int);                                                    \
  template std::vector<BasisEntry> rb_prefix(const Curve<F>&, int);                                      \
  template std::vector<Differential> holomorphic_differentials(const Curve<F>&);                         \
  template int differential_valuation(const Curve<F>&, const Differential&, const Place&);

TRIGONAL_CURVE_INSTANTIATE(mpq_class)
TRIGONAL_CURVE_INSTANTIATE(Complex)

}  // namespace trigonal
