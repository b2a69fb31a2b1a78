#pragma once

#include <algorithm>
#include <cstddef>
#include <ostream>
#include <utility>
#include <vector>

#include "trigonal/error.hpp"
#include "trigonal/field.hpp"

namespace trigonal {

// Dense univariate polynomial, coefficients stored from degree 0 upward.
// The zero polynomial has no coefficients and degree -1.
template <class F>
class Polynomial {
 public:
  using Traits = FieldTraits<F>;

  Polynomial() = default;
  explicit Polynomial(std::vector<F> coeffs) : c_(std::move(coeffs)) { trim(); }
  static Polynomial constant(const F& a) { return Polynomial(std::vector<F>{a}); }
  static Polynomial monomial(int degree, const F& a = Traits::from_int(1)) {
    std::vector<F> c(degree + 1, Traits::from_int(0));
    c[degree] = a;
    return Polynomial(std::move(c));
  }
  static Polynomial x() { return monomial(1); }
  // prod (x - r_i)
  static Polynomial from_roots(const std::vector<F>& roots) {
    Polynomial p = constant(Traits::from_int(1));
    for (const F& r : roots) p = p * Polynomial(std::vector<F>{-r, Traits::from_int(1)});
    return p;
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<F>& coeffs() const { return c_; }
  F coeff(int k) const {
    return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : Traits::from_int(0);
  }
  F leading() const { return c_.empty() ? Traits::from_int(0) : c_.back(); }

  template <class T>
  T eval_as(const T& x) const {
    T acc(0);
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + T(convert<T>(c_[k]));
    return acc;
  }
  F operator()(const F& x) const {
    F acc = Traits::from_int(0);
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k];
    return acc;
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<F> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * Traits::from_int(static_cast<long>(k));
    return Polynomial(std::move(d));
  }

  // p(x + a)
  Polynomial shifted(const F& a) const {
    std::vector<F> out = c_;
    const int n = static_cast<int>(out.size());
    for (int i = 0; i < n; ++i)
      for (int j = n - 2; j >= i; --j) out[j] = out[j] + a * out[j + 1];
    return Polynomial(std::move(out));
  }

  // Largest m with (x - a)^m dividing p; -1 for the zero polynomial.
  int multiplicity_at(const F& a) const {
    if (is_zero()) return -1;
    const Polynomial t = shifted(a);
    int m = 0;
    while (m < static_cast<int>(t.c_.size()) && Traits::is_zero(t.c_[m])) ++m;
    return m;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<F> c(std::max(a.c_.size(), b.c_.size()), Traits::from_int(0));
    for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] = c[k] + a.c_[k];
    for (std::size_t k = 0; k < b.c_.size(); ++k) c[k] = c[k] + b.c_[k];
    return Polynomial(std::move(c));
  }
  friend Polynomial operator-(const Polynomial& a) {
    std::vector<F> c = a.c_;
    for (auto& v : c) v = -v;
    return Polynomial(std::move(c));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<F> c(a.c_.size() + b.c_.size() - 1, Traits::from_int(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
    return Polynomial(std::move(c));
  }
  friend Polynomial operator*(const F& s, const Polynomial& p) {
    std::vector<F> c = p.c_;
    for (auto& v : c) v = v * s;
    return Polynomial(std::move(c));
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return (a - b).is_zero(); }

  // Euclidean division; throws on division by zero.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const {
    if (d.is_zero()) throw Error(ErrorCode::InvalidArgument, "polynomial division by zero");
    std::vector<F> r = c_;
    const int dd = d.degree();
    if (degree() < dd) return {Polynomial(), *this};
    std::vector<F> q(degree() - dd + 1, Traits::from_int(0));
    const F lead = d.leading();
    for (int k = degree(); k >= dd; --k) {
      const F f = r[k] / lead;
      q[k - dd] = f;
      for (int j = 0; j <= dd; ++j) r[k - dd + j] = r[k - dd + j] - f * d.c_[j];
      r[k] = Traits::from_int(0);
    }
    r.resize(dd);
    return {Polynomial(std::move(q)), Polynomial(std::move(r))};
  }

  Polynomial pow(int e) const {
    Polynomial out = constant(Traits::from_int(1));
    for (int k = 0; k < e; ++k) out = out * *this;
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const Polynomial& p) {
    if (p.is_zero()) return os << "0";
    bool first = true;
    for (int k = p.degree(); k >= 0; --k) {
      if (Traits::is_zero(p.c_[k])) continue;
      if (!first) os << " + ";
      first = false;
      os << "(" << Traits::to_string(p.c_[k]) << ")";
      if (k >= 1) os << "*x";
      if (k >= 2) os << "^" << k;
    }
    return os;
  }

 private:
  template <class T>
  static T convert(const F& v) {
    if constexpr (std::is_same_v<T, F>) {
      return v;
    } else {
      return T(Traits::to_complex(v));
    }
  }

  void trim() {
    while (!c_.empty() && Traits::is_zero(c_.back())) c_.pop_back();
  }

  std::vector<F> c_;
};

// Monic gcd over an exact field.
template <class F>
Polynomial<F> gcd(Polynomial<F> a, Polynomial<F> b) {
  static_assert(FieldTraits<F>::exact, "gcd needs exact arithmetic");
  while (!b.is_zero()) {
    auto r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  const F lead = a.leading();
  return (FieldTraits<F>::from_int(1) / lead) * a;
}

// Square-free decomposition over an exact field of characteristic zero:
// returns (factor, multiplicity) pairs with p = lc * prod factor^multiplicity.
template <class F>
std::vector<std::pair<Polynomial<F>, int>> squarefree_factors(const Polynomial<F>& p) {
  std::vector<std::pair<Polynomial<F>, int>> out;
  if (p.degree() <= 0) return out;
  Polynomial<F> a = gcd(p, p.derivative());
  Polynomial<F> b = p.divmod(a).first;
  Polynomial<F> c = p.derivative().divmod(a).first;
  Polynomial<F> d = c - b.derivative();
  int i = 1;
  while (b.degree() > 0) {
    const Polynomial<F> factor = gcd(b, d);
    b = b.divmod(factor).first;
    c = d.divmod(factor).first;
    d = c - b.derivative();
    if (factor.degree() > 0) out.emplace_back(factor, i);
    ++i;
  }
  return out;
}

}  // namespace trigonal
