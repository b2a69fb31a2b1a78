#include "trigonal/divisor.hpp"

#include <algorithm>
#include <sstream>

namespace trigonal {

namespace {

Real merge_tolerance(const Complex& x) {
  return pow10(-static_cast<int>(Real::default_precision()) / 3) * (1 + abs(x));
}

template <class F>
Polynomial<Complex> as_complex(const Polynomial<F>& p) {
  std::vector<Complex> c;
  for (const auto& v : p.coeffs()) c.push_back(FieldTraits<F>::to_complex(v));
  return Polynomial<Complex>(std::move(c));
}

template <class F>
Polynomial<F> linear(const F& root) {
  return Polynomial<F>(std::vector<F>{-root, FieldTraits<F>::from_int(1)});
}

// Roots with multiplicity of a polynomial with no branch-point roots.
template <class F>
std::vector<std::pair<Complex, int>> roots_with_multiplicity(const Polynomial<F>& q) {
  std::vector<std::pair<Complex, int>> out;
  if (q.degree() <= 0) return out;
  if constexpr (FieldTraits<F>::exact) {
    for (const auto& [factor, mult] : squarefree_factors(q))
      for (const auto& z : polynomial_roots(as_complex(factor))) out.emplace_back(z, mult);
  } else {
    // A k-fold root splits into k approximations about eps^{1/k} apart.  It is
    // a simple root of the (k-1)-th derivative, where Newton restores precision.
    std::vector<Complex> first;
    std::vector<Complex> sum;
    for (const auto& z : polynomial_roots(q)) {
      std::size_t i = 0;
      while (i < first.size() && abs(first[i] - z) >= merge_tolerance(z)) ++i;
      if (i == first.size()) {
        first.push_back(z);
        sum.push_back(z);
        out.emplace_back(z, 1);
      } else {
        sum[i] += z;
        ++out[i].second;
        out[i].first = sum[i] / Real(out[i].second);
      }
    }
    for (auto& [z, mult] : out) {
      if (mult == 1) continue;
      Polynomial<F> d = q;
      for (int k = 1; k < mult; ++k) d = d.derivative();
      const Polynomial<F> dd = d.derivative();
      for (int it = 0; it < 8; ++it) {
        const Complex slope = dd(z);
        if (slope == Complex(0)) break;
        const Complex step = d(z) / slope;
        z -= step;
        if (abs(step) <= pow10(-static_cast<int>(Real::default_precision())) * (1 + abs(z))) break;
      }
    }
  }
  return out;
}

int ceil_div3(int n) { return n <= 0 ? -((-n) / 3) : (n + 2) / 3; }
int floor_div3(int n) { return n >= 0 ? n / 3 : -((-n + 2) / 3); }

}  // namespace

int Divisor::degree() const {
  int d = p;
  for (int v : b) d += v;
  for (const auto& g : generic) d += g.multiplicity;
  return d;
}

bool Divisor::is_zero() const {
  if (p != 0) return false;
  for (int v : b)
    if (v != 0) return false;
  for (const auto& g : generic)
    if (g.multiplicity != 0) return false;
  return true;
}

bool Divisor::is_effective() const {
  if (p < 0) return false;
  for (int v : b)
    if (v < 0) return false;
  for (const auto& g : generic)
    if (g.multiplicity < 0) return false;
  return true;
}

void Divisor::add_generic(const Complex& x, int sheet, int k) {
  for (std::size_t i = 0; i < generic.size(); ++i) {
    if (generic[i].sheet == sheet && abs(generic[i].x - x) < merge_tolerance(x)) {
      generic[i].multiplicity += k;
      if (generic[i].multiplicity == 0) generic.erase(generic.begin() + static_cast<std::ptrdiff_t>(i));
      return;
    }
  }
  if (k != 0) generic.push_back({x, sheet, k});
}

Divisor& Divisor::operator+=(const Divisor& other) {
  if (b.size() < other.b.size()) b.resize(other.b.size(), 0);
  p += other.p;
  for (std::size_t i = 0; i < other.b.size(); ++i) b[i] += other.b[i];
  for (const auto& g : other.generic) add_generic(g.x, g.sheet, g.multiplicity);
  return *this;
}

Divisor operator*(const Divisor& d, int k) {
  Divisor out = d;
  out.p *= k;
  for (auto& v : out.b) v *= k;
  if (k == 0) out.generic.clear();
  for (auto& g : out.generic) g.multiplicity *= k;
  return out;
}

std::string to_string(const Divisor& d) {
  std::ostringstream os;
  bool first = true;
  auto term = [&](int k, const std::string& label) {
    if (k == 0) return;
    if (first)
      os << (k < 0 ? "-" : "");
    else
      os << (k < 0 ? " - " : " + ");
    first = false;
    if (std::abs(k) != 1) os << std::abs(k) << " ";
    os << label;
  };
  for (std::size_t i = 0; i < d.b.size(); ++i) term(d.b[i], "B_" + std::to_string(i + 1));
  for (const auto& g : d.generic)
    term(g.multiplicity, "(" + to_string(g.x, 12) + ", sheet " + std::to_string(g.sheet) + ")");
  term(d.p, "P");
  return first ? "0" : os.str();
}

nlohmann::json to_json(const Divisor& d, int digits) {
  nlohmann::json j;
  j["P"] = d.p;
  j["B"] = d.b;
  j["generic"] = nlohmann::json::array();
  for (const auto& g : d.generic)
    j["generic"].push_back({{to_string(g.x.real(), digits), to_string(g.x.imag(), digits)}, g.sheet, g.multiplicity});
  return j;
}

Divisor divisor_from_json(const nlohmann::json& j) {
  try {
    Divisor d;
    d.p = j.value("P", 0);
    d.b = j.value("B", std::vector<int>{});
    if (j.contains("generic")) {
      for (const auto& g : j.at("generic")) {
        const auto& x = g.at(0);
        Complex z = x.is_array() ? Complex(Real(x.at(0).get<std::string>()), Real(x.at(1).get<std::string>()))
                                 : parse_complex(x.get<std::string>());
        d.add_generic(z, g.at(1).get<int>(), g.at(2).get<int>());
      }
    }
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("malformed divisor JSON: ") + e.what());
  }
}

template <class F>
Divisor principal_divisor(const Curve<F>& curve, const RingElement<F>& e) {
  if (e.is_zero()) throw Error(ErrorCode::ZeroElement, "principal divisor of the zero element");
  Divisor d(curve.branch_count());
  d.p = valuation(curve, e, Place::infinity());
  Polynomial<F> rest = norm(curve, e);
  for (int i = 0; i < curve.branch_count(); ++i) {
    d.b[i] = valuation(curve, e, Place::branch(i));
    if (rest.multiplicity_at(curve.branch_point(i)) != d.b[i])
      throw Error(ErrorCode::VerificationFailed, "norm multiplicity disagrees with the valuation at B_" + std::to_string(i + 1));
    rest = rest.divmod(linear(curve.branch_point(i)).pow(d.b[i])).first;
  }
  const ComplexCurve numeric = to_numeric(curve);
  for (const auto& [x0, mult] : roots_with_multiplicity(rest)) {
    int total = 0;
    for (int k = 0; k < 3; ++k) {
      int v = 0;
      try {
        v = valuation(curve, e, Place::generic(x0, k), mult);
      } catch (const Error&) {
        v = mult + 1;
      }
      if (v > 0) d.add_generic(make_point(numeric, x0, k).x, k, v);
      total += v;
    }
    if (total != mult)
      throw Error(ErrorCode::RootIsolationFailure,
                  "sheet orders at x = " + to_string(x0, 12) + " sum to " + std::to_string(total) +
                      ", norm multiplicity is " + std::to_string(mult));
  }
  if (d.degree() != 0) throw Error(ErrorCode::VerificationFailed, "principal divisor has nonzero degree");
  return d;
}

template <class F>
Divisor differential_divisor(const Curve<F>& curve, const RingElement<F>& e) {
  // x - b_i = t^3 at B_i and x = t^-3 at P.
  Divisor dx = Divisor::infinity(curve.branch_count(), -4);
  for (int i = 0; i < curve.branch_count(); ++i) dx.b[i] = 2;
  return dx - principal_divisor(curve, e);
}

template <class F>
Divisor canonical_divisor(const Curve<F>& curve) {
  return differential_divisor(curve, w_element<F>());
}

template <class F>
RRSpace<F> rr_space(const Curve<F>& curve, const Divisor& D) {
  if (!D.branch_supported())
    throw Error(ErrorCode::UnsupportedSupport, "Riemann-Roch spaces need support on P and the branch places");
  if (static_cast<int>(D.b.size()) > curve.branch_count())
    throw Error(ErrorCode::InvalidArgument, "divisor has more branch entries than the curve");
  const int n = curve.branch_count();
  std::vector<int> coeff(n, 0);
  std::copy(D.b.begin(), D.b.end(), coeff.begin());

  // f in L(D) iff g = f h lies in R with ord_{B_i}(g) >= c_i and weight(g) <= W.
  RRSpace<F> out;
  out.denominator = Polynomial<F>::constant(FieldTraits<F>::from_int(1));
  std::vector<int> c(n);
  int shift = 0;
  for (int i = 0; i < n; ++i) {
    const int e = coeff[i] > 0 ? ceil_div3(coeff[i]) : 0;
    out.denominator = out.denominator * linear(curve.branch_point(i)).pow(e);
    c[i] = 3 * e - coeff[i];
    shift += e;
  }
  const int W = D.p + 3 * shift;
  const int component_weight[3] = {0, curve.weight_w(), curve.weight_y()};
  for (int k = 0; k < 3; ++k) {
    if (W < component_weight[k]) continue;
    Polynomial<F> Q = Polynomial<F>::constant(FieldTraits<F>::from_int(1));
    for (int i = 0; i < n; ++i) {
      const int offset = k == 0 ? 0 : (k == 1 ? curve.order_w_at(i) : curve.order_y_at(i));
      Q = Q * linear(curve.branch_point(i)).pow(std::max(0, ceil_div3(c[i] - offset)));
    }
    const int top = floor_div3(W - component_weight[k]) - Q.degree();
    for (int a = 0; a <= top; ++a) {
      RingElement<F> g;
      g.p[k] = Polynomial<F>::monomial(a) * Q;
      out.numerators.push_back(std::move(g));
    }
  }
  return out;
}

template <class F>
std::optional<RationalFunction<F>> trivializing_function(const Curve<F>& curve, const Divisor& D) {
  if (!D.branch_supported())
    throw Error(ErrorCode::UnsupportedSupport, "linear equivalence is decided only on P and the branch places");
  if (D.degree() != 0) return std::nullopt;
  const RRSpace<F> space = rr_space(curve, D * -1);
  if (space.numerators.empty()) return std::nullopt;
  RationalFunction<F> f{space.numerators.front(), space.denominator};
  Divisor h = principal_divisor(curve, RingElement<F>{{space.denominator, {}, {}}});
  Divisor got = principal_divisor(curve, f.numerator) - h;
  Divisor want = D;
  want.b.resize(curve.branch_count(), 0);
  if (!(got == want))
    throw Error(ErrorCode::VerificationFailed, "L(-D) element has divisor " + to_string(got) + ", expected " + to_string(want));
  return f;
}

template <class F>
bool is_linearly_trivial(const Curve<F>& curve, const Divisor& D) {
  return trivializing_function(curve, D).has_value();
}

bool SemicanonicalReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

template <class F>
SemicanonicalReport verify_semicanonical(const Curve<F>& curve, bool throw_on_failure) {
  const int n = curve.branch_count();
  const int g = curve.genus();
  const int r = curve.r();
  const int s = curve.s();
  SemicanonicalReport rep;
  auto P = [&](int k) { return Divisor::infinity(n, k); };
  auto add = [&](std::string name, bool ok, std::string detail) {
    rep.checks.push_back({std::move(name), ok, std::move(detail)});
  };

  rep.canonical = canonical_divisor(curve);
  const Divisor expected_K = a_part(curve) + P(2 * g - 2 - s);
  add("div(dx/w) = A-part + (2g-2-s)P", rep.canonical == expected_K, to_string(rep.canonical));

  rep.semicanonical = P(g - 1 + r) - frak_B(curve);
  add("K ~ 2 D0, D0 = (g-1+d0)P - frak_B", is_linearly_trivial(curve, rep.canonical - rep.semicanonical * 2),
      to_string(rep.semicanonical));

  const Divisor w_class = a_part(curve) + frak_B(curve) * 2 - P(s + 2 * r);
  add("A-part + 2 frak_B - (s+2r)P ~ 0", is_linearly_trivial(curve, w_class), to_string(w_class));

  add("dim L(K) = g", rr_space(curve, rep.canonical).dimension() == g,
      std::to_string(rr_space(curve, rep.canonical).dimension()));

  if (r > 0 && s > 0) {
    const Divisor torsion = frak_B(curve) - P(r);
    const int dim = rr_space(curve, torsion * -1).dimension();
    add("L(rP - frak_B) = 0", dim == 0, "dim " + std::to_string(dim));
    const bool t1 = is_linearly_trivial(curve, torsion);
    const bool t2 = is_linearly_trivial(curve, torsion * 2);
    const bool t3 = is_linearly_trivial(curve, torsion * 3);
    add("frak_B - rP has order 3 in the class group", !t1 && !t2 && t3,
        std::string("k=1,2,3 trivial: ") + (t1 ? "1" : "0") + (t2 ? "1" : "0") + (t3 ? "1" : "0"));
  } else {
    // r = 0: frak_B = 0.  s = 0: frak_B - rP = (y).
    add("symmetric case: K ~ (2g-2)P", is_linearly_trivial(curve, rep.canonical - P(2 * g - 2)), to_string(rep.canonical));
    add("frak_B ~ rP", is_linearly_trivial(curve, frak_B(curve) - P(r)), to_string(frak_B(curve)));
  }

  if (throw_on_failure)
    for (const auto& c : rep.checks)
      if (!c.passed) throw Error(ErrorCode::VerificationFailed, c.name + " (" + c.detail + ")");
  return rep;
}

nlohmann::json to_json(const SemicanonicalReport& report) {
  nlohmann::json j;
  j["canonical"] = to_json(report.canonical);
  j["semicanonical"] = to_json(report.semicanonical);
  j["checks"] = nlohmann::json::array();
  for (const auto& c : report.checks) j["checks"].push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  j["passed"] = report.passed();
  return j;
}

#define TRIGONAL_DIVISOR_INSTANTIATE(F)                                                                  \
  template Divisor principal_divisor(const Curve<F>&, const RingElement<F>&);                            \
  template Divisor differential_divisor(const Curve<F>&, const RingElement<F>&);                         \
  template Divisor canonical_divisor(const Curve<F>&);                                                   \
  template RRSpace<F> rr_space(const Curve<F>&, const Divisor&);                                         \
  template bool is_linearly_trivial(const Curve<F>&, const Divisor&);                                    \
  template std::optional<RationalFunction<F>> trivializing_function(const Curve<F>&, const Divisor&);    \
  template SemicanonicalReport verify_semicanonical(const Curve<F>&, bool);

TRIGONAL_DIVISOR_INSTANTIATE(mpq_class)
TRIGONAL_DIVISOR_INSTANTIATE(Complex)

}  // namespace trigonal
