#include "trigonal/rconst.hpp"

#include <algorithm>
#include <sstream>

#include "trigonal/error.hpp"

namespace trigonal {

namespace {

Real vanish_threshold(const PeriodData& pd, const RiemannOptions& o) {
  return pow10(-static_cast<int>(pd.digits * o.vanish_exponent));
}
Real clear_threshold(const PeriodData& pd, const RiemannOptions& o) {
  return pow10(-static_cast<int>(pd.digits * o.clear_exponent));
}
Real theorem_tolerance(const PeriodData& pd, const RiemannOptions& o) {
  return o.tolerance ? *o.tolerance : vanish_threshold(pd, o);
}

// |theta[c](z)| / scale, after moving z into the fundamental domain (the
// quasi-periodicity factor does not change the ratio).
Real theta_ratio(const PeriodData& pd, const ThetaCharacteristic& c, const CVector& z) {
  const CVector zr = lattice_reduce(pd, z).representative;
  const auto t = theta<Real>(zr, pd.tau, c, pd.digits);
  return abs(t.value) / t.scale;
}

Vanishing classify(const Real& ratio, const PeriodData& pd, const RiemannOptions& o) {
  if (ratio < vanish_threshold(pd, o)) return Vanishing::Zero;
  if (ratio > clear_threshold(pd, o)) return Vanishing::Nonzero;
  return Vanishing::Undecided;
}

CVector abel_sum(const ComplexCurve& curve, const PeriodData& pd, const std::vector<PointOnCurve>& pts) {
  CVector u = zeros(pd.genus());
  for (const auto& p : pts) u += abel(curve, pd, p);
  return u;
}

CVector abel_frak_B(const ComplexCurve& curve, const PeriodData& pd) {
  CVector u = zeros(pd.genus());
  for (int i = curve.s(); i < curve.branch_count(); ++i) u += abel_branch(pd, i);
  return u;
}

CVector half_shift(const PeriodData& pd, const ThetaCharacteristic& c) {
  const int g = pd.genus();
  CVector a(g), b(g);
  for (int i = 0; i < g; ++i) {
    a(i) = Complex(Real(c.top[i]) / 2);
    b(i) = Complex(Real(c.bottom[i]) / 2);
  }
  return pd.tau * a + b;
}

std::string fmt(const Real& x) {
  std::ostringstream os;
  os << std::scientific;
  os.precision(3);
  os << static_cast<double>(x);
  return os.str();
}

}  // namespace

std::vector<PointOnCurve> random_points(const ComplexCurve& curve, int count, std::mt19937_64& rng) {
  const auto& b = curve.branch_points();
  Complex center(0);
  for (const auto& v : b) center += v;
  center /= Real(static_cast<int>(b.size()));
  double spread = 0;
  for (const auto& v : b) spread = std::max(spread, static_cast<double>(abs(v - center)));
  const double radius = spread + 1;
  const double clearance = 0.08 * std::max(1.0, spread);
  std::uniform_real_distribution<double> unit(-1, 1);
  std::uniform_int_distribution<int> sheet(0, 2);
  std::vector<PointOnCurve> out;
  while (static_cast<int>(out.size()) < count) {
    const double u = unit(rng), v = unit(rng);
    if (u * u + v * v > 1) continue;
    const Complex x = center + Complex(radius * u, radius * v);
    bool close = false;
    for (const auto& bi : b) close = close || abs(x - bi) < clearance;
    if (close) continue;
    out.push_back(make_point(curve, x, sheet(rng)));
  }
  return out;
}

RiemannConstant riemann_constant(const ComplexCurve& curve, const PeriodData& pd, const RiemannOptions& options) {
  const PrecisionScope scope(pd.working_digits);
  const int g = pd.genus();
  RiemannConstant rc;
  // K = sum_{i < s} B_i + (2g - 2 - s) P, so abel(K - (2g - 2) P) = sum_{i < s} abel(B_i).
  rc.base = zeros(g);
  for (int i = 0; i < curve.s(); ++i) rc.base -= abel_branch(pd, i) / Real(2);

  std::mt19937_64 rng(options.seed);
  std::vector<CVector> battery;
  for (int j = 0; j < std::max(1, options.battery); ++j) {
    battery.push_back(abel_sum(curve, pd, random_points(curve, g - 1, rng)) + rc.base);
    if (g == 1) break;  // every effective divisor of degree 0 is zero
  }
  rc.battery = static_cast<int>(battery.size());

  const auto chars = ThetaCharacteristic::all(g);
  const std::size_t count = chars.size();
  std::vector<Real> worst(count, Real(0));
  std::vector<bool> rejected(count, false), unsure(count, false);
  for (const auto& z : battery) {
    const auto values = theta_all<Real>(CVector(lattice_reduce(pd, z).representative), pd.tau, pd.digits);
    for (std::size_t k = 0; k < count; ++k) {
      if (rejected[k]) continue;
      const Real ratio = abs(values[k].value) / values[k].scale;
      worst[k] = std::max(worst[k], ratio);
      const Vanishing v = classify(ratio, pd, options);
      rejected[k] = v == Vanishing::Nonzero;
      unsure[k] = unsure[k] || v == Vanishing::Undecided;
    }
  }
  std::vector<ThetaCharacteristic> survivors, undecided;
  Real survivor_worst(0);
  rc.best_rejection = Real(1e300);
  for (std::size_t k = 0; k < count; ++k) {
    if (rejected[k]) {
      rc.best_rejection = std::min(rc.best_rejection, worst[k]);
    } else if (unsure[k]) {
      undecided.push_back(chars[k]);
    } else {
      survivors.push_back(chars[k]);
      survivor_worst = worst[k];
    }
  }
  if (survivors.size() + undecided.size() > 1 || (survivors.empty() && !undecided.empty()))
    throw Error(ErrorCode::AmbiguousCandidate, std::to_string(survivors.size()) + " survivors and " +
                                                   std::to_string(undecided.size()) + " undecided candidates");
  if (survivors.empty()) throw Error(ErrorCode::NoCandidate, "no Riemann-constant candidate survives the filter");
  rc.candidate = survivors.front();
  rc.worst_vanishing = survivor_worst;
  rc.delta = lattice_reduce(pd, CVector(rc.base + half_shift(pd, rc.candidate))).representative;
  return rc;
}

ShiftedConstant shifted_constant(const ComplexCurve& curve, const PeriodData& pd, const CVector& delta,
                                 const RiemannOptions& options) {
  const PrecisionScope scope(pd.working_digits);
  const int g = pd.genus();
  ShiftedConstant sc;
  const CVector raw = delta - abel_frak_B(curve, pd);
  const LatticeReduction lr = lattice_reduce(pd, CVector(raw * Real(2)));
  sc.half_period_distance = lr.distance;
  sc.m = lr.m;
  sc.n = lr.n;
  if (lr.distance > theorem_tolerance(pd, options))
    throw Error(ErrorCode::NotHalfPeriod, "2 Delta_s is " + fmt(lr.distance) + " away from the lattice");
  sc.characteristic = ThetaCharacteristic::zero(g);
  CVector whole = zeros(g);
  for (int i = 0; i < g; ++i) {
    const long mi = ((lr.m(i) % 2) + 2) % 2, ni = ((lr.n(i) % 2) + 2) % 2;
    sc.characteristic.top[i] = static_cast<int>(ni);
    sc.characteristic.bottom[i] = static_cast<int>(mi);
    whole(i) += Complex(Real((lr.m(i) - mi) / 2));
    whole += pd.tau.col(i) * Real((lr.n(i) - ni) / 2);
  }
  sc.delta_shift = raw - whole;
  return sc;
}

bool RiemannConstantReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const TheoremCheck& c) { return !c.applicable || c.passed; });
}

const TheoremCheck& RiemannConstantReport::check(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return c;
  throw Error(ErrorCode::InvalidArgument, "no check named " + name);
}

RiemannConstantReport verify_shifted_theorems(const ComplexCurve& curve, const PeriodData& pd,
                                              const RiemannConstant& rc, const ShiftedConstant& sc,
                                              const RiemannOptions& options, bool throw_on_failure) {
  const PrecisionScope scope(pd.working_digits);
  const int g = pd.genus();
  const Real tol = theorem_tolerance(pd, options);
  const ThetaCharacteristic& delta = sc.characteristic;
  RiemannConstantReport rep;
  rep.digits = pd.digits;
  rep.delta = rc.delta;
  rep.delta_shift = sc.delta_shift;
  rep.characteristic = delta;
  rep.parity = parity(delta);
  rep.residuals["half_period_distance"] = sc.half_period_distance;
  rep.residuals["filter_vanishing"] = rc.worst_vanishing;
  rep.residuals["filter_rejection"] = rc.best_rejection;

  const CVector abel_B = abel_frak_B(curve, pd);
  std::mt19937_64 rng(options.seed ^ 0x5a5a5a5aULL);
  const int tuples = g == 1 ? 1 : std::max(1, options.battery);
  std::vector<CVector> on_divisor;
  Real worst_a(0), worst_b(0);
  for (int j = 0; j < tuples; ++j) {
    const CVector u = abel_sum(curve, pd, random_points(curve, g - 1, rng));
    const CVector abl_s = u + abel_B;
    on_divisor.push_back(abl_s);
    worst_a = std::max(worst_a, theta_ratio(pd, delta, abl_s));
    worst_b = std::max(worst_b, theta_ratio(pd, ThetaCharacteristic::zero(g), CVector(abl_s + sc.delta_shift)));
  }

  // Control points away from the divisor, and the parity identity there.
  std::uniform_real_distribution<double> unit(0, 1);
  Real control_max(0), parity_residual(0), symmetry_residual(0);
  int symmetry_mismatches = 0;
  const int e = parity(delta);
  for (int j = 0; j < tuples; ++j) {
    CVector t1(g), t2(g);
    for (int i = 0; i < g; ++i) {
      t1(i) = Complex(unit(rng));
      t2(i) = Complex(unit(rng));
    }
    const CVector z = pd.tau * t1 + t2;
    const auto plus = theta<Real>(z, pd.tau, delta, pd.digits);
    const auto minus = theta<Real>(CVector(-z), pd.tau, delta, pd.digits);
    control_max = std::max(control_max, abs(plus.value) / plus.scale);
    parity_residual = std::max(parity_residual, abs(minus.value - Real(e) * plus.value) / plus.scale);
    if (classify(abs(plus.value) / plus.scale, pd, options) != classify(abs(minus.value) / minus.scale, pd, options))
      ++symmetry_mismatches;
  }
  for (const auto& z : on_divisor) {
    const Real r = theta_ratio(pd, delta, CVector(-z));
    symmetry_residual = std::max(symmetry_residual, r);
    if (r >= tol) ++symmetry_mismatches;
  }
  rep.residuals["a_theta_at_abl_s"] = worst_a;
  rep.residuals["b_theta_at_abl_s_plus_delta_s"] = worst_b;
  rep.residuals["c_parity"] = parity_residual;
  rep.residuals["c_symmetry"] = symmetry_residual;
  rep.residuals["control_max"] = control_max;

  const bool control_ok = control_max > clear_threshold(pd, options);
  rep.checks.push_back({"a", true, worst_a < tol && control_ok, worst_a,
                        "max |theta[delta](Abl_s)|/scale = " + fmt(worst_a) + " over " + std::to_string(tuples) +
                            " tuples; control max " + fmt(control_max)});
  rep.checks.push_back({"b", true, worst_b < tol, worst_b, "max |theta(abl_s + Delta_s)|/scale = " + fmt(worst_b)});
  rep.checks.push_back({"c", true, parity_residual < tol && symmetry_mismatches == 0,
                        std::max(parity_residual, symmetry_residual),
                        "parity " + std::to_string(e) + ", parity residual " + fmt(parity_residual) +
                            ", symmetry mismatches " + std::to_string(symmetry_mismatches)});
  if (curve.r() >= 1 && curve.s() >= 1) {
    const Real d3 = lattice_reduce(pd, CVector(abel_B * Real(3))).distance;
    const Real d1 = lattice_reduce(pd, abel_B).distance;
    rep.residuals["d_three_torsion"] = d3;
    rep.residuals["d_nontrivial_distance"] = d1;
    rep.checks.push_back({"d", true, d3 < tol && d1 > 10 * tol, d3,
                          "3 abel(frak_B - rP) at distance " + fmt(d3) + ", abel(frak_B - rP) at " + fmt(d1)});
  } else {
    rep.checks.push_back({"d", false, true, Real(0), "frak_B - rP is principal when r = 0 or s = 0"});
  }
  if (throw_on_failure)
    for (const auto& c : rep.checks)
      if (c.applicable && !c.passed)
        throw Error(ErrorCode::TheoremCheckFailed, "sub-check (" + c.name + ") failed: " + c.detail);
  return rep;
}

nlohmann::json to_json(const RiemannConstantReport& report, int digits) {
  nlohmann::json j;
  j["digits"] = report.digits;
  j["delta"] = vector_json(report.delta, digits);
  j["delta_shift"] = vector_json(report.delta_shift, digits);
  j["characteristic"] = {{"top", report.characteristic.top},
                         {"bottom", report.characteristic.bottom},
                         {"text", to_string(report.characteristic)}};
  j["parity"] = report.parity;
  nlohmann::json res = nlohmann::json::object();
  for (const auto& [k, v] : report.residuals) res[k] = to_string(v, 6);
  j["residuals"] = res;
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : report.checks)
    checks.push_back({{"name", c.name},
                      {"applicable", c.applicable},
                      {"passed", c.passed},
                      {"residual", to_string(c.residual, 6)},
                      {"detail", c.detail}});
  j["checks"] = checks;
  j["passed"] = report.passed();
  return j;
}

RiemannPipeline run_riemann_pipeline(const ComplexCurve& curve, int digits, const RiemannOptions& options,
                                     bool throw_on_failure, const std::string& cache_dir) {
  RiemannPipeline out;
  for (int attempt = 0;; ++attempt) {
    const PrecisionScope scope(working_digits(digits));
    out.periods = cache_dir.empty() ? period_matrices(curve, digits) : cached_period_matrices(curve, digits, cache_dir);
    try {
      out.constant = riemann_constant(curve, out.periods, options);
      break;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::AmbiguousCandidate || attempt > 0) throw;
      digits += 20;
    }
  }
  out.shifted = shifted_constant(curve, out.periods, out.constant.delta, options);
  out.report = verify_shifted_theorems(curve, out.periods, out.constant, out.shifted, options, throw_on_failure);
  return out;
}

}  // namespace trigonal
