#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "trigonal/curve.hpp"
#include "trigonal/divisor.hpp"
#include "trigonal/linalg.hpp"

namespace trigonal {

// Cycle skeleton of the cover.  Over a base point x0 sit three points X_0,
// X_1, X_2 (sheets of the straight-line continuation of w from x0); edge
// (k, i), index k * N + i, is the lift on sheet k of the segment x0 -> b_i.
// The skeleton carries all of H_1, and its fundamental cycles give 2g classes.
struct Homology {
  Complex base;
  int branch_count = 0;
  std::vector<int> ray_order;  // branch indices sorted by arg(b_i - x0), ccw
  IMatrix fundamental;         // 2g x 3N edge coefficients
  IMatrix fundamental_intersection;
  IMatrix symplectic;  // 2g x 2g: rows alpha_1..alpha_g, beta_1..beta_g over fundamental cycles
  IMatrix cycles;      // 2g x 3N edge coefficients of alpha_1..beta_g
  IMatrix intersection;  // of `cycles`; standard [[0, I], [-I, 0]]

  int edge(int sheet, int branch) const { return sheet * branch_count + branch; }
};

// Intersection number of two edge-coefficient cycles on the skeleton.
long intersection_number(const ComplexCurve& curve, const Homology& h, const IVector& c, const IVector& d);

// Integer symplectic basis for an antisymmetric unimodular form: returns T
// with T J T^t = [[0, I], [-I, 0]].  Throws RankDeficient otherwise.
IMatrix symplectic_reduction(const IMatrix& J);

Homology homology_basis(const ComplexCurve& curve, const Complex& base);
// Picks a base point well away from every ray and branch point.
Complex choose_base_point(const ComplexCurve& curve);

struct PeriodOptions {
  int max_level = 12;
  bool escalate = true;  // one retry at higher precision on PrecisionLoss
};

struct PeriodData {
  int digits = 0;  // requested precision p
  int working_digits = 0;
  Homology homology;
  std::vector<Differential> forms;
  Complex tail_direction;  // unit vector of the path x0 -> infinity
  Real tail_radius;
  Complex log_w0;          // log w at X_0
  CVector tail;            // integral of the raw forms from X_0 to P on sheet 0
  std::vector<CVector> rays;  // integral from X_0 to B_i on sheet 0
  CMatrix omega_alpha, omega_beta;  // raw forms x cycles
  CMatrix normalizer;               // omega_alpha^{-1}
  CMatrix tau;
  Real quadrature_error;
  int quadrature_level = 0;
  Real symmetry_residual;

  int genus() const { return static_cast<int>(forms.size()); }
};

// Period matrices, normalized so the alpha-periods are the identity.
// Throws PrecisionLoss when tau is not symmetric to 10^{-p/2} after one
// escalation, DivergentParameters when Im tau is not positive definite.
PeriodData period_matrices(const ComplexCurve& curve, int digits, const PeriodOptions& options = {});
template <class F>
PeriodData period_matrices(const Curve<F>& curve, int digits, const PeriodOptions& options = {}) {
  return period_matrices(to_numeric(curve), digits, options);
}

// Full period matrix (omega_alpha | omega_beta) recomputed with a fixed
// quadrature level, for refinement studies.
CMatrix raw_periods_at_level(const ComplexCurve& curve, const PeriodData& pd, int level);

// Multiplier of a raw form under w -> rho w.
Complex sheet_character(const Differential& d, int sheet);

// A point together with the path used to reach it: P -> X_k along the tail,
// then the polyline x0 = waypoints[0], ..., waypoints.back() = x on sheet k of
// the continuation.  `abel` is the accumulated normalized Abel vector.
struct LiftedPoint {
  PointOnCurve point;
  int branch_index = -1;  // path ends at B_i when >= 0 (last waypoint is b_i)
  int continuation_sheet = 0;
  std::vector<Complex> waypoints;
  CVector abel;
};

// Abel map with base point P, in normalized coordinates.
CVector abel(const ComplexCurve& curve, const PeriodData& pd, const PointOnCurve& point);
CVector abel_branch(const PeriodData& pd, int index);
CVector abel(const ComplexCurve& curve, const PeriodData& pd, const Divisor& divisor);
LiftedPoint lift(const ComplexCurve& curve, const PeriodData& pd, const PointOnCurve& point);
// Integrates along an explicit polyline starting at x0 on continuation sheet k.
// Throws PathCrossesBranchPoint when a segment passes through a branch point.
LiftedPoint lift_along(const ComplexCurve& curve, const PeriodData& pd, std::vector<Complex> waypoints, int sheet);
// Recomputes the Abel vector of a lifted point from its stored path.
CVector reintegrate(const ComplexCurve& curve, const PeriodData& pd, const LiftedPoint& lp);

struct LatticeReduction {
  CVector representative;  // v - (m + tau n)
  IVector m, n;
  Real distance;
};

// Nearest lattice point of Z^g + tau Z^g in the real coordinates (m, n).
LatticeReduction lattice_reduce(const PeriodData& pd, const CVector& v);

// Period cache: one JSON file per curve fingerprint.
// Complex numbers serialize as [re, im] decimal strings.
nlohmann::json complex_json(const Complex& z, int digits);
Complex complex_from_json(const nlohmann::json& j);
nlohmann::json matrix_json(const CMatrix& m, int digits);
nlohmann::json vector_json(const CVector& v, int digits);
CVector vector_from_json(const nlohmann::json& j);

std::string curve_fingerprint(const ComplexCurve& curve);
nlohmann::json to_json(const PeriodData& pd);
std::optional<PeriodData> load_cached_periods(const ComplexCurve& curve, const std::string& dir, int digits);
void store_cached_periods(const ComplexCurve& curve, const std::string& dir, const PeriodData& pd);
PeriodData cached_period_matrices(const ComplexCurve& curve, int digits, const std::string& dir,
                                  const PeriodOptions& options = {});

}  // namespace trigonal
