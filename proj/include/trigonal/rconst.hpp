#pragma once

#include <map>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "trigonal/periods.hpp"
#include "trigonal/theta.hpp"

namespace trigonal {

struct RiemannOptions {
  int battery = 20;              // random effective divisors of degree g - 1
  std::uint64_t seed = 0x7269656d616e6eULL;
  double vanish_exponent = 0.5;  // vanishing below 10^{-p * vanish_exponent} * scale
  double clear_exponent = 0.25;  // non-vanishing above 10^{-p * clear_exponent} * scale
  // Optional override of the theorem tolerance (default 10^{-p/2}).
  std::optional<Real> tolerance;
};

// Vanishing classification of a theta value relative to its scale.
enum class Vanishing { Zero, Nonzero, Undecided };

// Random points of X \ {P, B_i}: x uniform in a disk around the branch points,
// kept away from them, with a uniform sheet.
std::vector<PointOnCurve> random_points(const ComplexCurve& curve, int count, std::mt19937_64& rng);

struct RiemannConstant {
  CVector base;                     // -1/2 abel(K - (2g - 2) P)
  ThetaCharacteristic candidate;    // delta = base + tau a / 2 + b / 2
  CVector delta;
  Real worst_vanishing;             // max |theta| / scale over the battery, survivor
  Real best_rejection;              // min over rejected candidates of max |theta| / scale
  int battery = 0;
};

// Riemann constant Delta with theta(abel(D) + Delta) = 0 for every effective D of
// degree g - 1.  Candidates are the 2^{2g} solutions of 2 Delta = -abel(K - (2g-2) P),
// filtered by a random battery.  Throws AmbiguousCandidate or NoCandidate.
RiemannConstant riemann_constant(const ComplexCurve& curve, const PeriodData& pd,
                                 const RiemannOptions& options = {});

struct ShiftedConstant {
  CVector delta_shift;  // Delta - abel(frak_B)
  ThetaCharacteristic characteristic;
  Real half_period_distance;  // lattice distance of 2 Delta_s
  IVector m, n;               // 2 Delta_s ~ m + tau n
};

// Throws NotHalfPeriod when 2 Delta_s is not in the lattice to tolerance.
ShiftedConstant shifted_constant(const ComplexCurve& curve, const PeriodData& pd, const CVector& delta,
                                 const RiemannOptions& options = {});

struct TheoremCheck {
  std::string name;
  bool applicable = true;
  bool passed = false;
  Real residual;
  std::string detail;
};

struct RiemannConstantReport {
  int digits = 0;
  CVector delta;
  CVector delta_shift;
  ThetaCharacteristic characteristic;
  int parity = 1;
  std::map<std::string, Real> residuals;
  std::vector<TheoremCheck> checks;

  bool passed() const;
  const TheoremCheck& check(const std::string& name) const;
};

// Sub-checks: (a) theta[delta] at Abl_s of random tuples vanishes; (b) theta at
// abl_s + Delta_s vanishes; (c) parity and the symmetry of the shifted theta
// divisor; (d) abel(frak_B - rP) is 3-torsion but not trivial (r, s >= 1).
// Throws TheoremCheckFailed on the first failing sub-check if requested.
RiemannConstantReport verify_shifted_theorems(const ComplexCurve& curve, const PeriodData& pd,
                                              const RiemannConstant& rc, const ShiftedConstant& sc,
                                              const RiemannOptions& options = {}, bool throw_on_failure = true);

nlohmann::json to_json(const RiemannConstantReport& report, int digits = 30);

// Periods, Riemann constant, shifted constant and theorem checks in one pass.
// Retries once with 20 more digits when the candidate filter is ambiguous.
struct RiemannPipeline {
  PeriodData periods;
  RiemannConstant constant;
  ShiftedConstant shifted;
  RiemannConstantReport report;
};
// Periods come from the cache directory when it is nonempty.
RiemannPipeline run_riemann_pipeline(const ComplexCurve& curve, int digits, const RiemannOptions& options = {},
                                     bool throw_on_failure = true, const std::string& cache_dir = "");

}  // namespace trigonal
