#include "trigonal/fsdet.hpp"

#include "trigonal/error.hpp"

namespace trigonal {

namespace {

bool same_point(const PointOnCurve& a, const PointOnCurve& b) {
  const Real tol = pow10(-static_cast<int>(Real::default_precision()) / 2);
  return a.sheet == b.sheet && abs(a.x - b.x) <= tol * (1 + abs(a.x));
}

std::vector<RingElement<Complex>> basis_elements(const ComplexCurve& curve, const std::vector<BasisEntry>& basis) {
  std::vector<RingElement<Complex>> out;
  for (const auto& e : basis) out.push_back(element(curve, e.monomial));
  return out;
}

Real hadamard_scale(const CMatrix& m) {
  Real s(1);
  for (Eigen::Index i = 0; i < m.rows(); ++i) s *= norm2(CVector(m.row(i).transpose()));
  return s;
}

Real tolerance_for_precision() { return pow10(-static_cast<int>(Real::default_precision() - 12) / 2); }

}  // namespace

CMatrix fs_matrix(const ComplexCurve& curve, const std::vector<PointOnCurve>& points, int columns) {
  const auto basis = basis_elements(curve, rb_prefix(curve, columns));
  const int rows = static_cast<int>(points.size());
  CMatrix m(rows, columns);
  for (int i = 0; i < rows; ++i) {
    int repeat = 0;
    for (int k = 0; k < i; ++k) repeat += same_point(points[k], points[i]);
    if (repeat > 0 && points[i].branch_index >= 0)
      throw Error(ErrorCode::InvalidArgument, "repeated branch places are not supported");
    for (int j = 0; j < columns; ++j) {
      if (repeat == 0) {
        m(i, j) = evaluate(curve, basis[j], points[i]);
      } else {
        m(i, j) = expand_element(curve, basis[j], points[i], repeat).at(repeat);
      }
    }
  }
  return m;
}

Complex psi(const ComplexCurve& curve, const std::vector<PointOnCurve>& points, int max_weight) {
  const int n = static_cast<int>(points.size());
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "psi needs at least one point");
  if (max_weight >= 0 && rb_prefix(curve, n).back().weight > max_weight)
    throw Error(ErrorCode::BasisExhausted, "f_" + std::to_string(n - 1) + " exceeds weight " + std::to_string(max_weight));
  return determinant(fs_matrix(curve, points, n));
}

MuFunction mu_function(const ComplexCurve& curve, const std::vector<PointOnCurve>& points, MuRoute route) {
  const int n = static_cast<int>(points.size());
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "mu needs at least one point");
  MuFunction mu;
  mu.n = n;
  mu.basis = rb_prefix(curve, n + 1);
  mu.order = mu.basis.back().weight;
  const CMatrix F = fs_matrix(curve, points, n + 1);
  const CMatrix square = F.leftCols(n);
  mu.psi = determinant(square);
  if (abs(mu.psi) <= tolerance_for_precision() * hadamard_scale(square))
    throw Error(ErrorCode::SingularConfiguration, "psi_n vanishes: points are not in general position");

  mu.coefficients.assign(n + 1, Complex(0));
  mu.coefficients[n] = Complex(1);
  if (route == MuRoute::Minors) {
    for (int k = 0; k < n; ++k) {
      CMatrix minor(n, n);
      for (int j = 0, c = 0; j <= n; ++j)
        if (j != k) minor.col(c++) = F.col(j);
      mu.coefficients[k] = determinant(minor) / mu.psi;
    }
  } else {
    const CVector c = solve(square, CVector(-F.col(n)));
    for (int k = 0; k < n; ++k) mu.coefficients[k] = ((n - k) % 2 == 0 ? Real(1) : Real(-1)) * c(k);
  }

  const auto basis = basis_elements(curve, mu.basis);
  mu.element = basis[n];
  for (int k = 0; k < n; ++k) {
    const Complex sign = (n - k) % 2 == 0 ? Complex(1) : Complex(-1);
    mu.element = add(mu.element, scale(sign * mu.coefficients[k], basis[k]));
  }
  return mu;
}

Complex evaluate(const ComplexCurve& curve, const MuFunction& mu, const PointOnCurve& q) {
  return evaluate(curve, mu.element, q);
}

Complex mu(const ComplexCurve& curve, const std::vector<PointOnCurve>& points, const PointOnCurve& q) {
  std::vector<PointOnCurve> extended = points;
  extended.push_back(q);
  return psi(curve, extended) / psi(curve, points);
}

MuDivisorReport mu_divisor_check(const ComplexCurve& curve, const PeriodData& pd,
                                 const std::vector<PointOnCurve>& points) {
  const PrecisionScope scope(pd.working_digits);
  const MuFunction mu = mu_function(curve, points);
  MuDivisorReport rep;
  rep.n = mu.n;
  rep.order = mu.order;
  rep.d1 = curve.branch_count();
  rep.expected_complementary = rep.order - rep.n - rep.d1;
  rep.zeros = principal_divisor(curve, mu.element);
  if (rep.zeros.p != -rep.order)
    throw Error(ErrorCode::RootAccountingFailure,
                "pole order " + std::to_string(-rep.zeros.p) + " differs from N(n) = " + std::to_string(rep.order));

  Divisor inputs(curve.branch_count());
  for (const auto& p : points) {
    if (p.branch_index >= 0) {
      inputs.b.at(p.branch_index) += 1;
    } else {
      inputs.add_generic(p.x, p.sheet, 1);
    }
  }
  const Divisor frak_b1 = frak_B1(curve);
  rep.complementary = rep.zeros + Divisor::infinity(curve.branch_count(), rep.order) - inputs - frak_b1;
  if (!rep.complementary.is_effective() || rep.complementary.degree() != rep.expected_complementary)
    throw Error(ErrorCode::RootAccountingFailure,
                "complementary zeros " + to_string(rep.complementary) + " do not have degree N(n) - n - d1 = " +
                    std::to_string(rep.expected_complementary));

  const Divisor relation = inputs + rep.complementary + frak_b1 - Divisor::infinity(curve.branch_count(), rep.order);
  rep.abel_residual = lattice_reduce(pd, abel(curve, pd, relation)).distance;
  const Divisor fb = frak_B(curve);
  const CVector cls = abel(curve, pd, Divisor(inputs + fb)) + abel(curve, pd, Divisor(rep.complementary + fb));
  rep.class_residual = lattice_reduce(pd, cls).distance;
  rep.tolerance = pow10(-pd.digits / 2);
  rep.passed = rep.abel_residual < rep.tolerance && rep.class_residual < rep.tolerance;
  return rep;
}

nlohmann::json to_json(const MuFunction& mu, int digits) {
  nlohmann::json j;
  j["n"] = mu.n;
  j["order"] = mu.order;
  nlohmann::json basis = nlohmann::json::array();
  for (const auto& e : mu.basis) basis.push_back({{"monomial", to_string(e.monomial)}, {"weight", e.weight}});
  j["basis"] = basis;
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& c : mu.coefficients) coeffs.push_back(complex_json(c, digits));
  j["coefficients"] = coeffs;
  j["psi"] = complex_json(mu.psi, digits);
  return j;
}

nlohmann::json to_json(const MuDivisorReport& r, int digits) {
  nlohmann::json j;
  j["n"] = r.n;
  j["N"] = r.order;
  j["d1"] = r.d1;
  j["complementary_count"] = r.complementary.degree();
  j["expected_complementary"] = r.expected_complementary;
  j["zeros"] = to_json(r.zeros, digits);
  j["complementary"] = to_json(r.complementary, digits);
  j["abel_residual"] = to_string(r.abel_residual, 6);
  j["class_residual"] = to_string(r.class_residual, 6);
  j["tolerance"] = to_string(r.tolerance, 3);
  j["passed"] = r.passed;
  return j;
}

}  // namespace trigonal
