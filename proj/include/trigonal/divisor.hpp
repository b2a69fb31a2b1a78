#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "trigonal/curve.hpp"

namespace trigonal {

// A generic (non-branch, finite) point counted with multiplicity.
struct GenericEntry {
  Complex x;
  int sheet = 0;
  int multiplicity = 0;
};

// Finite formal sum of places: p * P + sum b[i] B_i + generic entries.
class Divisor {
 public:
  Divisor() = default;
  explicit Divisor(int branch_count) : b(branch_count, 0) {}

  static Divisor infinity(int branch_count, int k) {
    Divisor d(branch_count);
    d.p = k;
    return d;
  }
  static Divisor branch(int branch_count, int index, int k = 1) {
    Divisor d(branch_count);
    d.b.at(index) = k;
    return d;
  }

  int degree() const;
  bool is_zero() const;
  bool is_effective() const;
  bool branch_supported() const { return generic.empty(); }

  // Adds k * (x, sheet), merging with an existing entry at the same place.
  void add_generic(const Complex& x, int sheet, int k);

  Divisor& operator+=(const Divisor& other);
  Divisor& operator-=(const Divisor& other) { return *this += other * -1; }
  friend Divisor operator+(Divisor a, const Divisor& b) { return a += b; }
  friend Divisor operator-(Divisor a, const Divisor& b) { return a -= b; }
  friend Divisor operator*(const Divisor& d, int k);
  friend Divisor operator*(int k, const Divisor& d) { return d * k; }
  friend bool operator==(const Divisor& a, const Divisor& b) { return (a - b).is_zero(); }

  int p = 0;
  std::vector<int> b;
  std::vector<GenericEntry> generic;
};

std::string to_string(const Divisor& d);
nlohmann::json to_json(const Divisor& d, int digits = 30);
Divisor divisor_from_json(const nlohmann::json& j);

// Named divisors of the family.  With s A-roots first and r B-roots after:
//   A-part  = B_1 + ... + B_s
//   frak_B  = B_{s+1} + ... + B_{s+r}   (degree d0 = r)
//   frak_B1 = B_1 + ... + B_{r+s}       (degree d1 = r + s)
template <class F>
Divisor a_part(const Curve<F>& curve) {
  Divisor d(curve.branch_count());
  for (int i = 0; i < curve.s(); ++i) d.b[i] = 1;
  return d;
}
template <class F>
Divisor frak_B(const Curve<F>& curve) {
  Divisor d(curve.branch_count());
  for (int i = curve.s(); i < curve.branch_count(); ++i) d.b[i] = 1;
  return d;
}
template <class F>
Divisor frak_B1(const Curve<F>& curve) {
  Divisor d(curve.branch_count());
  for (int i = 0; i < curve.branch_count(); ++i) d.b[i] = 1;
  return d;
}

// Divisor of a nonzero ring element.  Exact at P and the branch places; the
// generic zeros are the roots of the norm polynomial outside the branch
// points, assigned to sheets by local expansion.
template <class F>
Divisor principal_divisor(const Curve<F>& curve, const RingElement<F>& e);

// Divisor of dx / e for a nonzero ring element e.
template <class F>
Divisor differential_divisor(const Curve<F>& curve, const RingElement<F>& e);

// Canonical divisor realized as div(dx / w).
template <class F>
Divisor canonical_divisor(const Curve<F>& curve);

// L(D) = { f : (f) + D >= 0 } for D supported on P and the branch places.
// Every f = numerators[k] / denominator, with the denominator a product of
// powers of (x - b_i).
template <class F>
struct RRSpace {
  std::vector<RingElement<F>> numerators;
  Polynomial<F> denominator;
  int dimension() const { return static_cast<int>(numerators.size()); }
};

template <class F>
RRSpace<F> rr_space(const Curve<F>& curve, const Divisor& D);

// D ~ 0 for a degree-0 divisor on P and the branch places.
template <class F>
bool is_linearly_trivial(const Curve<F>& curve, const Divisor& D);

// When D ~ 0, a function f = numerator / denominator with (f) = D.
template <class F>
struct RationalFunction {
  RingElement<F> numerator;
  Polynomial<F> denominator;
};
template <class F>
std::optional<RationalFunction<F>> trivializing_function(const Curve<F>& curve, const Divisor& D);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SemicanonicalReport {
  Divisor canonical;
  Divisor semicanonical;  // D0 = (g - 1 + d0) P - frak_B
  std::vector<CheckResult> checks;
  bool passed() const;
};

// Exact checks of the canonical-class identities.  Throws VerificationFailed
// naming the first failing identity when `throw_on_failure` is set.
template <class F>
SemicanonicalReport verify_semicanonical(const Curve<F>& curve, bool throw_on_failure = true);

nlohmann::json to_json(const SemicanonicalReport& report);

#define TRIGONAL_DIVISOR_EXTERN(F)                                                           \
  extern template Divisor principal_divisor(const Curve<F>&, const RingElement<F>&);         \
  extern template Divisor differential_divisor(const Curve<F>&, const RingElement<F>&);      \
  extern template Divisor canonical_divisor(const Curve<F>&);                                \
  extern template RRSpace<F> rr_space(const Curve<F>&, const Divisor&);                      \
  extern template bool is_linearly_trivial(const Curve<F>&, const Divisor&);                 \
  extern template std::optional<RationalFunction<F>> trivializing_function(const Curve<F>&,  \
                                                                           const Divisor&);  \
  extern template SemicanonicalReport verify_semicanonical(const Curve<F>&, bool);

TRIGONAL_DIVISOR_EXTERN(mpq_class)
TRIGONAL_DIVISOR_EXTERN(Complex)

}  // namespace trigonal
