#pragma once

#include <vector>

#include "json.hpp"
#include "trigonal/curve.hpp"
#include "trigonal/divisor.hpp"
#include "trigonal/periods.hpp"

namespace trigonal {

// Frobenius-Stickelberger matrix [f_j(P_i)] with f_0, f_1, ... the R^B basis.
// The k-th repetition of a point contributes the k-th Taylor coefficient in
// x - x(P) instead of a value row, so psi is defined for coincident points.
CMatrix fs_matrix(const ComplexCurve& curve, const std::vector<PointOnCurve>& points, int columns);

// psi_n(P_1, ..., P_n).  Throws InvalidArgument for n = 0 and BasisExhausted
// when max_weight >= 0 and f_{n-1} has larger weight.
Complex psi(const ComplexCurve& curve, const std::vector<PointOnCurve>& points, int max_weight = -1);

enum class MuRoute { Minors, LinearSolve };

// mu_n = f_n + sum_{k<n} (-1)^{n-k} mu_{n,k} f_k, vanishing at P_1..P_n.
struct MuFunction {
  int n = 0;
  std::vector<Complex> coefficients;  // mu_{n,0}, ..., mu_{n,n} = 1
  int order = 0;                      // N(n), the weight of f_n
  std::vector<BasisEntry> basis;      // f_0 .. f_n
  Complex psi;                        // psi_n(P_1..P_n)
  RingElement<Complex> element;
};

// Throws SingularConfiguration when |psi_n| <= 10^{-p/2} times the product of
// the row norms (points not in general position).
MuFunction mu_function(const ComplexCurve& curve, const std::vector<PointOnCurve>& points,
                       MuRoute route = MuRoute::Minors);
Complex evaluate(const ComplexCurve& curve, const MuFunction& mu, const PointOnCurve& q);
// Direct determinant ratio psi_{n+1}(P_1..P_n, Q) / psi_n(P_1..P_n).
Complex mu(const ComplexCurve& curve, const std::vector<PointOnCurve>& points, const PointOnCurve& q);

struct MuDivisorReport {
  int n = 0;
  int order = 0;      // N(n)
  int d1 = 0;         // degree of frak_B1
  int expected_complementary = 0;  // N(n) - n - d1
  Divisor zeros;                   // div(mu_n)
  Divisor complementary;           // Q_1 + ... + Q_m
  Real abel_residual;   // abel(sum P + sum Q + frak_B1 - N(n) P) mod lattice
  Real class_residual;  // abel(sum P + frak_B) + abel(sum Q + frak_B) mod lattice
  Real tolerance;
  bool passed = false;
};

// Locates the complementary zeros of mu_n and checks the Abel-sum relation.
// Throws RootAccountingFailure when the zero count does not reach N(n).
MuDivisorReport mu_divisor_check(const ComplexCurve& curve, const PeriodData& pd,
                                 const std::vector<PointOnCurve>& points);

nlohmann::json to_json(const MuFunction& mu, int digits = 30);
nlohmann::json to_json(const MuDivisorReport& report, int digits = 30);

}  // namespace trigonal
