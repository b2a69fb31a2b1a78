#include "trigonal/periods.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "trigonal/quadrature.hpp"

namespace trigonal {

namespace {

using CD = std::complex<double>;

CD to_cd(const Complex& z) { return {static_cast<double>(z.real()), static_cast<double>(z.imag())}; }

double segment_distance(CD p, CD q, CD z) {
  const CD d = q - p;
  const double len2 = std::norm(d);
  if (len2 == 0) return std::abs(z - p);
  const double t = std::clamp(((z - p) * std::conj(d)).real() / len2, 0.0, 1.0);
  return std::abs(p + t * d - z);
}

// Smallest distance from a branch point (other than the excluded ones) to the
// segment, relative to the segment length.
double clearance(const std::vector<CD>& b, CD p, CD q, int skip_a = -1, int skip_b = -1) {
  const double len = std::max(std::abs(q - p), 1e-300);
  double best = 1e300;
  for (int j = 0; j < static_cast<int>(b.size()); ++j) {
    if (j == skip_a || j == skip_b) continue;
    best = std::min(best, segment_distance(p, q, b[j]) / len);
  }
  return best;
}

std::vector<CD> branch_cd(const ComplexCurve& curve) {
  std::vector<CD> b;
  for (const auto& z : curve.branch_points()) b.push_back(to_cd(z));
  return b;
}

// Direction of the tail: middle of the widest angular gap between the rays.
double tail_angle(const std::vector<CD>& b, CD x0) {
  std::vector<double> ang;
  for (const auto& z : b) ang.push_back(std::arg(z - x0));
  std::sort(ang.begin(), ang.end());
  double best_gap = -1, best_mid = 0;
  for (std::size_t k = 0; k < ang.size(); ++k) {
    const double a = ang[k];
    const double next = k + 1 < ang.size() ? ang[k + 1] : ang[0] + 2 * M_PI;
    if (next - a > best_gap) {
      best_gap = next - a;
      best_mid = (a + next) / 2;
    }
  }
  return best_mid;
}

double base_point_score(const std::vector<CD>& b, CD x0, double scale) {
  double score = 1e300;
  for (int i = 0; i < static_cast<int>(b.size()); ++i) {
    score = std::min(score, std::abs(b[i] - x0) / scale);
    score = std::min(score, clearance(b, x0, b[i], i));
  }
  const double theta = tail_angle(b, x0);
  const CD far = x0 + std::polar(4 * scale, theta);
  score = std::min(score, 4 * clearance(b, x0, far));
  return score;
}

// Integration context: branch data and the forms at working precision.
struct Context {
  const ComplexCurve& curve;
  std::vector<Complex> b;
  std::vector<Real> m3;  // m_j / 3
  std::vector<Differential> forms;
  int digits;
  int max_level;

  Context(const ComplexCurve& c, std::vector<Differential> f, int d, int level)
      : curve(c), b(c.branch_points()), forms(std::move(f)), digits(d), max_level(level) {
    for (int j = 0; j < c.branch_count(); ++j) m3.push_back(Real(c.monodromy_exponent(j)) / 3);
  }
  int n() const { return static_cast<int>(b.size()); }
  int g() const { return static_cast<int>(forms.size()); }

  // Raw form values times dx/du, given x, w^{-1}, w and A B.
  void forms_at(const Complex& x, const Complex& w, const Complex& inv_w, const Complex& ab, const Complex& dxdu,
                std::vector<Complex>& out) const {
    out.resize(forms.size());
    int top = 0;
    for (const auto& f : forms) top = std::max(top, f.x_power);
    std::vector<Complex> xp(top + 1);
    xp[0] = Complex(1, 0);
    for (int a = 1; a <= top; ++a) xp[a] = xp[a - 1] * x;
    const Complex over_y = w / ab;
    for (std::size_t k = 0; k < forms.size(); ++k)
      out[k] = xp[forms[k].x_power] * (forms[k].denominator == Differential::Denominator::Y ? over_y : inv_w) * dxdu;
  }
};

// Straight segment p -> q; w continued from an anchor value at one end.
// sing_p / sing_q mark an end that is the branch point b_j.
struct Segment {
  Complex p, q;
  int sing_p = -1;
  int sing_q = -1;
  Complex anchor;  // log w at the anchor end
  bool anchor_at_p = true;
};

struct SegmentResult {
  CVector value;
  Real error;
  int level = 0;
};

SegmentResult integrate_segment(const Context& ctx, const Segment& s, int fixed_level = -1) {
  const Complex dx = s.q - s.p;
  const Complex a_pt = s.anchor_at_p ? s.p : s.q;
  std::vector<Complex> base(ctx.n());
  for (int j = 0; j < ctx.n(); ++j) base[j] = a_pt - ctx.b[j];
  auto f = [&](const Real& u, const Real& v) {
    const Complex x = u < Real(1) / 2 ? s.p + u * dx : s.q - v * dx;
    Complex logw = s.anchor;
    Complex ab(1, 0);
    for (int j = 0; j < ctx.n(); ++j) {
      Complex diff;
      Complex log_ratio;
      if (j == s.sing_p) {
        diff = u * dx;
        log_ratio = Complex(log(u), 0);  // anchor is at q; ratio (x - b_j)/(q - b_j) = u
      } else if (j == s.sing_q) {
        diff = -v * dx;
        log_ratio = Complex(log(v), 0);
      } else {
        diff = x - ctx.b[j];
        log_ratio = clog(diff / base[j]);
      }
      ab *= diff;
      logw += ctx.m3[j] * log_ratio;
    }
    const Complex w = cexp(logw);
    const Complex inv_w = cexp(-logw);
    std::vector<Complex> out;
    ctx.forms_at(x, w, inv_w, ab, dx, out);
    return out;
  };
  TanhSinh<Real> q(ctx.digits + 2, ctx.max_level);
  const auto r = fixed_level >= 0 ? q.integrate_levels(f, ctx.forms.size(), fixed_level) : q.integrate(f, ctx.forms.size());
  if (fixed_level < 0 && !r.converged)
    throw Error(ErrorCode::PrecisionLoss, "quadrature did not converge on a segment");
  SegmentResult out{CVector(ctx.g()), r.error, r.level};
  for (int k = 0; k < ctx.g(); ++k) out.value(k) = r.value[k];
  return out;
}

// log w at the free end of a segment whose ends are both regular.
Complex continue_log_w(const Context& ctx, const Complex& from, const Complex& logw_from, const Complex& to) {
  Complex logw = logw_from;
  for (int j = 0; j < ctx.n(); ++j) logw += ctx.m3[j] * clog((to - ctx.b[j]) / (from - ctx.b[j]));
  return logw;
}

// Integral from X_0 to P along x = x0 + dir R (t^-3 - 1).
SegmentResult integrate_tail(const Context& ctx, const Complex& x0, const Complex& logw0, const Complex& dir,
                             const Real& radius, int fixed_level = -1) {
  std::vector<Complex> base(ctx.n());
  for (int j = 0; j < ctx.n(); ++j) base[j] = x0 - ctx.b[j];
  auto f = [&](const Real& t, const Real& v) {
    const Real t3 = t * t * t;
    // x - x0 = dir R (1 - t^3) / t^3 = dir R v (1 + t + t^2) / t^3
    const Complex shift = dir * (radius * v * (1 + t + t * t) / t3);
    const Complex x = x0 + shift;
    Complex logw = logw0;
    Complex ab(1, 0);
    for (int j = 0; j < ctx.n(); ++j) {
      const Complex diff = base[j] + shift;
      ab *= diff;
      logw += ctx.m3[j] * clog(diff / base[j]);
    }
    const Complex dxdt = dir * (3 * radius / (t3 * t));
    std::vector<Complex> out;
    ctx.forms_at(x, cexp(logw), cexp(-logw), ab, dxdt, out);
    return out;
  };
  TanhSinh<Real> q(ctx.digits + 2, ctx.max_level);
  const auto r = fixed_level >= 0 ? q.integrate_levels(f, ctx.forms.size(), fixed_level) : q.integrate(f, ctx.forms.size());
  if (fixed_level < 0 && !r.converged) throw Error(ErrorCode::PrecisionLoss, "quadrature did not converge on the tail");
  SegmentResult out{CVector(ctx.g()), r.error, r.level};
  for (int k = 0; k < ctx.g(); ++k) out.value(k) = r.value[k];
  return out;
}

Complex log_w_at_base(const ComplexCurve& curve, const Complex& x0) {
  Complex logw(0, 0);
  for (int j = 0; j < curve.branch_count(); ++j)
    logw += Real(curve.monodromy_exponent(j)) / 3 * clog(x0 - curve.branch_point(j));
  return logw;
}

CVector apply_character(const std::vector<Differential>& forms, const CVector& v, int sheet) {
  CVector out(v.size());
  for (Eigen::Index k = 0; k < v.size(); ++k) out(k) = sheet_character(forms[k], sheet) * v(k);
  return out;
}

long floor_mod3(long k) { return ((k % 3) + 3) % 3; }

}  // namespace

Complex sheet_character(const Differential& d, int sheet) {
  // dx/y picks up rho^k on sheet k, dx/w picks up rho^{-k}.
  return cube_root_of_unity(d.denominator == Differential::Denominator::Y ? sheet : -sheet);
}

Complex choose_base_point(const ComplexCurve& curve) {
  const auto b = branch_cd(curve);
  CD centroid(0, 0);
  for (const auto& z : b) centroid += z;
  centroid /= static_cast<double>(b.size());
  double scale = 0;
  for (const auto& z : b) scale = std::max(scale, std::abs(z - centroid));
  if (scale == 0) scale = 1;
  CD best = centroid;
  double best_score = -1;
  for (double rad : {0.0, 0.12, 0.25, 0.4, 0.6}) {
    for (int k = 0; k < (rad == 0 ? 1 : 24); ++k) {
      const CD x0 = centroid + std::polar(rad * scale, 2 * M_PI * k / 24 + 0.1);
      const double sc = base_point_score(b, x0, scale);
      if (sc > best_score + 1e-12) {
        best_score = sc;
        best = x0;
      }
    }
  }
  // Round to a short decimal so the choice is reproducible in text form.
  auto round6 = [](double v) { return std::round(v * 1e6) / 1e6; };
  return Complex(Real(round6(best.real())), Real(round6(best.imag())));
}

long intersection_number(const ComplexCurve& curve, const Homology& h, const IVector& c, const IVector& d) {
  const int n = h.branch_count;
  long total = 0;
  // Outward fluxes over the half-edges at a vertex in ccw order; heads flag
  // half-edges where the edge ends.
  auto vertex = [&](const std::vector<int>& edges, bool heads) {
    long cum = 0;
    for (int e : edges) {
      const long f = heads ? -c(e) : c(e);
      const long g = heads ? -d(e) : d(e);
      cum += f;
      total += (cum - (heads ? f : 0)) * g;
    }
  };
  for (int k = 0; k < 3; ++k) {
    std::vector<int> edges;
    for (int i : h.ray_order) edges.push_back(h.edge(k, i));
    vertex(edges, false);
  }
  for (int i = 0; i < n; ++i) {
    const int m = curve.monodromy_exponent(i);
    vertex({h.edge(0, i), h.edge(m % 3, i), h.edge((2 * m) % 3, i)}, true);
  }
  return total;
}

IMatrix symplectic_reduction(const IMatrix& J) {
  const int n = static_cast<int>(J.rows());
  if (n % 2 != 0 || J.cols() != n) throw Error(ErrorCode::RankDeficient, "intersection matrix has odd size");
  if (J != IMatrix(-J.transpose())) throw Error(ErrorCode::RankDeficient, "intersection matrix is not antisymmetric");
  std::vector<IVector> pool;
  for (int i = 0; i < n; ++i) pool.push_back(IVector::Unit(n, i));
  auto form = [&](const IVector& a, const IVector& b) -> long { return a.dot(J * b); };
  std::vector<IVector> alphas, betas;
  while (!pool.empty()) {
    const IVector e = pool.front();
    pool.erase(pool.begin());
    // Euclid on the pairings with e until a single partner remains.
    while (true) {
      int best = -1;
      for (int k = 0; k < static_cast<int>(pool.size()); ++k) {
        const long v = form(e, pool[k]);
        if (v != 0 && (best < 0 || std::abs(v) < std::abs(form(e, pool[best])))) best = k;
      }
      if (best < 0) throw Error(ErrorCode::RankDeficient, "intersection form is degenerate");
      const long pivot = form(e, pool[best]);
      bool clean = true;
      for (int k = 0; k < static_cast<int>(pool.size()); ++k) {
        if (k == best) continue;
        const long q = form(e, pool[k]) / pivot;
        pool[k] -= q * pool[best];
        if (form(e, pool[k]) != 0) clean = false;
      }
      if (!clean) continue;
      if (std::abs(pivot) != 1) throw Error(ErrorCode::RankDeficient, "intersection form is not unimodular");
      IVector f = pool[best];
      pool.erase(pool.begin() + best);
      if (pivot < 0) f = -f;
      for (auto& v : pool) {
        const long vf = form(v, f);
        const long ve = form(v, e);
        v = v - vf * e + ve * f;
      }
      alphas.push_back(e);
      betas.push_back(f);
      break;
    }
  }
  const int g = n / 2;
  IMatrix T(n, n);
  for (int i = 0; i < g; ++i) {
    T.row(i) = alphas[i].transpose();
    T.row(g + i) = betas[i].transpose();
  }
  return T;
}

Homology homology_basis(const ComplexCurve& curve, const Complex& base) {
  Homology h;
  h.base = base;
  const int n = curve.branch_count();
  h.branch_count = n;
  const int g = curve.genus();
  std::vector<std::pair<double, int>> ang;
  for (int i = 0; i < n; ++i) ang.emplace_back(std::arg(to_cd(curve.branch_point(i) - base)), i);
  std::sort(ang.begin(), ang.end());
  for (const auto& [a, i] : ang) h.ray_order.push_back(i);

  // Spanning tree: every (0, i) plus (1, 0) and (2, 0).
  h.fundamental = IMatrix::Zero(2 * g, 3 * n);
  int row = 0;
  for (int k = 1; k <= 2; ++k)
    for (int i = 1; i < n; ++i, ++row) {
      h.fundamental(row, h.edge(k, i)) += 1;
      h.fundamental(row, h.edge(0, i)) -= 1;
      h.fundamental(row, h.edge(0, 0)) += 1;
      h.fundamental(row, h.edge(k, 0)) -= 1;
    }
  h.fundamental_intersection = IMatrix::Zero(2 * g, 2 * g);
  for (int a = 0; a < 2 * g; ++a)
    for (int c = 0; c < 2 * g; ++c)
      h.fundamental_intersection(a, c) =
          intersection_number(curve, h, h.fundamental.row(a).transpose(), h.fundamental.row(c).transpose());
  h.symplectic = symplectic_reduction(h.fundamental_intersection);
  h.cycles = h.symplectic * h.fundamental;
  h.intersection = h.symplectic * h.fundamental_intersection * h.symplectic.transpose();
  return h;
}

namespace {

void assemble(const ComplexCurve& curve, PeriodData& pd) {
  const int g = pd.genus();
  const int n = curve.branch_count();
  CMatrix full(g, 2 * g);
  for (int f = 0; f < g; ++f)
    for (int c = 0; c < 2 * g; ++c) {
      Complex acc(0, 0);
      for (int k = 0; k < 3; ++k)
        for (int i = 0; i < n; ++i) {
          const long coeff = pd.homology.cycles(c, pd.homology.edge(k, i));
          if (coeff != 0) acc += Real(coeff) * sheet_character(pd.forms[f], k) * pd.rays[i](f);
        }
      full(f, c) = acc;
    }
  pd.omega_alpha = full.leftCols(g);
  pd.omega_beta = full.rightCols(g);
  pd.normalizer = inverse(pd.omega_alpha);
  pd.tau = pd.normalizer * pd.omega_beta;
  pd.symmetry_residual = max_abs(CMatrix(pd.tau - pd.tau.transpose()));
}

bool positive_definite(const Eigen::MatrixXd& y) {
  Eigen::LLT<Eigen::MatrixXd> llt(y);
  return llt.info() == Eigen::Success;
}

PeriodData compute_periods(const ComplexCurve& curve, int digits, const PeriodOptions& options) {
  PrecisionScope scope(working_digits(digits));
  PeriodData pd;
  pd.digits = digits;
  pd.working_digits = working_digits(digits);
  pd.forms = holomorphic_differentials(curve);
  // Re-read branch data at the current precision.
  std::vector<Complex> b;
  for (const auto& z : curve.branch_points()) b.emplace_back(Real(z.real()), Real(z.imag()));
  const ComplexCurve c = ComplexCurve::build(curve.r(), curve.s(), b);
  const Complex x0 = choose_base_point(c);
  pd.homology = homology_basis(c, x0);
  Context ctx(c, pd.forms, digits + 2, options.max_level);
  pd.log_w0 = log_w_at_base(c, x0);
  Real scale(0);
  for (const auto& z : b) scale = std::max(scale, Real(abs(z - x0)));
  pd.tail_radius = scale;
  const double theta = tail_angle(branch_cd(c), to_cd(x0));
  pd.tail_direction = Complex(Real(std::cos(theta)), Real(std::sin(theta)));
  pd.tail_direction /= abs(pd.tail_direction);
  pd.quadrature_error = 0;
  const auto tail = integrate_tail(ctx, x0, pd.log_w0, pd.tail_direction, pd.tail_radius);
  pd.tail = tail.value;
  pd.quadrature_error = tail.error;
  pd.quadrature_level = tail.level;
  for (int i = 0; i < c.branch_count(); ++i) {
    Segment s{x0, c.branch_point(i), -1, i, pd.log_w0, true};
    const auto r = integrate_segment(ctx, s);
    pd.rays.push_back(r.value);
    pd.quadrature_error = std::max(pd.quadrature_error, r.error);
    pd.quadrature_level = std::max(pd.quadrature_level, r.level);
  }
  assemble(c, pd);
  const Eigen::MatrixXd im = to_double(RMatrix(pd.tau.imag()));
  if (!positive_definite(im)) throw Error(ErrorCode::DivergentParameters, "Im tau is not positive definite");
  if (pd.symmetry_residual > pow10(-digits / 2))
    throw Error(ErrorCode::PrecisionLoss, "tau symmetry residual " + to_string(pd.symmetry_residual, 6));
  return pd;
}

}  // namespace

PeriodData period_matrices(const ComplexCurve& curve, int digits, const PeriodOptions& options) {
  try {
    return compute_periods(curve, digits, options);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::PrecisionLoss || !options.escalate) throw;
    PeriodData pd = compute_periods(curve, digits + 20, options);
    pd.digits = digits;
    return pd;
  }
}

CMatrix raw_periods_at_level(const ComplexCurve& curve, const PeriodData& pd, int level) {
  PeriodData copy = pd;
  Context ctx(curve, pd.forms, pd.digits + 2, level);
  for (int i = 0; i < curve.branch_count(); ++i) {
    Segment s{pd.homology.base, curve.branch_point(i), -1, i, pd.log_w0, true};
    copy.rays[i] = integrate_segment(ctx, s, level).value;
  }
  assemble(curve, copy);
  CMatrix full(pd.genus(), 2 * pd.genus());
  full << copy.omega_alpha, copy.omega_beta;
  return full;
}

CVector abel_branch(const PeriodData& pd, int index) {
  return pd.normalizer * CVector(pd.rays.at(index) - pd.tail);
}

namespace {

int branch_at(const ComplexCurve& curve, const Complex& z) {
  for (int j = 0; j < curve.branch_count(); ++j)
    if (abs(z - curve.branch_point(j)) < pow10(-static_cast<int>(Real::default_precision()) / 2) * (1 + abs(z)))
      return j;
  return -1;
}

void check_segment(const ComplexCurve& curve, const Complex& p, const Complex& q, int bp, int bq) {
  const auto b = branch_cd(curve);
  const CD pc = to_cd(p), qc = to_cd(q);
  for (int j = 0; j < curve.branch_count(); ++j) {
    if (j == bp || j == bq) continue;
    if (segment_distance(pc, qc, b[j]) < 1e-12 * (1 + std::abs(b[j])))
      throw Error(ErrorCode::PathCrossesBranchPoint,
                  "segment " + to_string(p, 8) + " -> " + to_string(q, 8) + " meets B_" + std::to_string(j + 1));
  }
  if (abs(q - p) == 0) throw Error(ErrorCode::PathCrossesBranchPoint, "degenerate path segment");
}

LiftedPoint lift_along_impl(const ComplexCurve& curve, const PeriodData& pd, std::vector<Complex> waypoints, int sheet,
                            std::optional<Complex> end_w) {
  PrecisionScope scope(pd.working_digits);
  const Complex x0 = pd.homology.base;
  if (waypoints.empty() || abs(waypoints.front() - x0) != 0) waypoints.insert(waypoints.begin(), x0);
  if (waypoints.size() < 2) {
    LiftedPoint lp;
    lp.point = make_point(curve, x0, 0);
    lp.continuation_sheet = floor_mod3(sheet);
    lp.waypoints = waypoints;
    lp.abel = pd.normalizer * apply_character(pd.forms, CVector(-pd.tail), lp.continuation_sheet);
    lp.point.w = cube_root_of_unity(lp.continuation_sheet) * cexp(pd.log_w0);
    lp.point.y = curve.AB()(x0) / lp.point.w;
    lp.point.sheet = sheet_of(curve, x0, lp.point.w);
    return lp;
  }
  const int k = floor_mod3(sheet);
  const int last = static_cast<int>(waypoints.size()) - 1;
  std::vector<int> bi(waypoints.size());
  for (int a = 0; a <= last; ++a) bi[a] = branch_at(curve, waypoints[a]);
  if (bi[0] >= 0) throw Error(ErrorCode::PathCrossesBranchPoint, "path starts at a branch point");
  for (int a = 0; a < last; ++a) check_segment(curve, waypoints[a], waypoints[a + 1], bi[a], bi[a + 1]);
  int turn = -1;
  for (int a = 1; a < last; ++a)
    if (bi[a] >= 0) turn = a;
  const int forward_end = turn >= 0 ? turn : last;
  for (int a = 1; a < forward_end; ++a)
    if (bi[a] >= 0) throw Error(ErrorCode::PathCrossesBranchPoint, "path passes through more than one branch point");

  Context ctx(curve, pd.forms, pd.digits + 2, 14);
  CVector forward = zeros(pd.genus());
  Complex logw = pd.log_w0;
  for (int a = 0; a < forward_end; ++a) {
    const Segment seg{waypoints[a], waypoints[a + 1], -1, bi[a + 1], logw, true};
    forward += integrate_segment(ctx, seg).value;
    if (bi[a + 1] < 0) logw = continue_log_w(ctx, waypoints[a], logw, waypoints[a + 1]);
  }
  CVector raw = apply_character(pd.forms, CVector(forward - pd.tail), k);

  LiftedPoint lp;
  lp.continuation_sheet = k;
  lp.waypoints = waypoints;
  if (turn >= 0) {
    if (!end_w) throw Error(ErrorCode::InvalidArgument, "a path through a branch point needs the end value of w");
    Complex logq = clog(*end_w);
    for (int a = last - 1; a >= turn; --a) {
      const Segment seg{waypoints[a], waypoints[a + 1], bi[a], -1, logq, false};
      raw += integrate_segment(ctx, seg).value;
      if (a > turn) logq = continue_log_w(ctx, waypoints[a + 1], logq, waypoints[a]);
    }
    lp.point = make_point(curve, waypoints[last], 0);
    lp.point.w = *end_w;
    lp.point.y = curve.AB()(lp.point.x) / *end_w;
    lp.point.sheet = sheet_of(curve, lp.point.x, *end_w);
  } else if (bi[last] >= 0) {
    lp.branch_index = bi[last];
    lp.point = branch_point_place(curve, bi[last]);
  } else {
    lp.point.x = waypoints[last];
    lp.point.w = cube_root_of_unity(k) * cexp(logw);
    lp.point.y = curve.AB()(lp.point.x) / lp.point.w;
    lp.point.sheet = sheet_of(curve, lp.point.x, lp.point.w);
  }
  lp.abel = pd.normalizer * raw;
  return lp;
}

}  // namespace

LiftedPoint lift_along(const ComplexCurve& curve, const PeriodData& pd, std::vector<Complex> waypoints, int sheet) {
  return lift_along_impl(curve, pd, std::move(waypoints), sheet, std::nullopt);
}

LiftedPoint lift(const ComplexCurve& curve, const PeriodData& pd, const PointOnCurve& point) {
  PrecisionScope scope(pd.working_digits);
  const Complex x0 = pd.homology.base;
  if (point.branch_index >= 0) return lift_along_impl(curve, pd, {x0, curve.branch_point(point.branch_index)}, 0, std::nullopt);
  const auto b = branch_cd(curve);
  const CD x = to_cd(point.x);
  // Points close to a branch point are reached through it.
  for (int i = 0; i < curve.branch_count(); ++i) {
    double nearest = 1e300;
    for (int j = 0; j < curve.branch_count(); ++j)
      if (j != i) nearest = std::min(nearest, std::abs(b[j] - b[i]));
    if (std::abs(x - b[i]) < 0.25 * nearest)
      return lift_along_impl(curve, pd, {x0, curve.branch_point(i), point.x}, 0, point.w);
  }
  const CD xc = to_cd(x0);
  std::vector<Complex> route{x0, point.x};
  if (clearance(b, xc, x) < 0.1) {
    double best = -1;
    CD best_z = xc;
    const CD d = x - xc;
    std::vector<CD> candidates;
    for (double t : {0.25, 0.5, 0.75})
      for (double off : {-1.0, -0.6, -0.3, 0.3, 0.6, 1.0}) candidates.push_back(xc + t * d + CD(0, off) * d);
    for (const auto& z : candidates) {
      double sc = std::min(clearance(b, xc, z), clearance(b, z, x));
      for (const auto& bj : b) sc = std::min(sc, std::abs(z - bj) / std::abs(d));
      if (sc > best) {
        best = sc;
        best_z = z;
      }
    }
    if (best < 0.02) throw Error(ErrorCode::PathCrossesBranchPoint, "no clear route to " + to_string(point.x, 8));
    route = {x0, Complex(Real(best_z.real()), Real(best_z.imag())), point.x};
  }
  Context ctx(curve, pd.forms, pd.digits, 1);
  Complex logw = pd.log_w0;
  for (std::size_t a = 0; a + 1 < route.size(); ++a) logw = continue_log_w(ctx, route[a], logw, route[a + 1]);
  const Complex ratio = point.w / cexp(logw);
  int k = 0;
  Real dist = abs(ratio - cube_root_of_unity(0));
  for (int j = 1; j < 3; ++j)
    if (abs(ratio - cube_root_of_unity(j)) < dist) {
      dist = abs(ratio - cube_root_of_unity(j));
      k = j;
    }
  LiftedPoint lp = lift_along_impl(curve, pd, route, k, std::nullopt);
  lp.point = point;
  return lp;
}

CVector abel(const ComplexCurve& curve, const PeriodData& pd, const PointOnCurve& point) {
  return lift(curve, pd, point).abel;
}

CVector abel(const ComplexCurve& curve, const PeriodData& pd, const Divisor& divisor) {
  PrecisionScope scope(pd.working_digits);
  CVector out = zeros(pd.genus());
  for (std::size_t i = 0; i < divisor.b.size(); ++i)
    if (divisor.b[i] != 0) out += Real(divisor.b[i]) * abel_branch(pd, static_cast<int>(i));
  for (const auto& g : divisor.generic)
    out += Real(g.multiplicity) * abel(curve, pd, make_point(curve, g.x, g.sheet));
  return out;
}

CVector reintegrate(const ComplexCurve& curve, const PeriodData& pd, const LiftedPoint& lp) {
  std::optional<Complex> end_w;
  for (std::size_t a = 1; a + 1 < lp.waypoints.size(); ++a)
    if (branch_at(curve, lp.waypoints[a]) >= 0) end_w = lp.point.w;
  return lift_along_impl(curve, pd, lp.waypoints, lp.continuation_sheet, end_w).abel;
}

LatticeReduction lattice_reduce(const PeriodData& pd, const CVector& v) {
  PrecisionScope scope(pd.working_digits);
  const int g = pd.genus();
  const RMatrix X = pd.tau.real();
  const RMatrix Y = pd.tau.imag();
  const Eigen::MatrixXd yd = to_double(Y);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(yd);
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  if (lo <= 0 || hi / lo > std::pow(10.0, pd.digits / 2.0))
    throw Error(ErrorCode::IllConditionedLattice, "Im tau is ill-conditioned");
  const RVector nr = solve(Y, RVector(v.imag()));
  const RVector mr = RVector(v.real()) - X * nr;
  LatticeReduction out;
  out.m = IVector(g);
  out.n = IVector(g);
  for (int i = 0; i < g; ++i) {
    out.m(i) = static_cast<long>(round(mr(i)).convert_to<long>());
    out.n(i) = static_cast<long>(round(nr(i)).convert_to<long>());
  }
  CVector lattice(g);
  for (int i = 0; i < g; ++i) {
    Complex acc(Real(out.m(i)), 0);
    for (int j = 0; j < g; ++j) acc += pd.tau(i, j) * Real(out.n(j));
    lattice(i) = acc;
  }
  out.representative = v - lattice;
  out.distance = norm2(out.representative);
  return out;
}

namespace {

constexpr const char* kCacheVersion = "trigonal-periods-v1";

}  // namespace

nlohmann::json complex_json(const Complex& z, int digits) {
  return nlohmann::json::array({to_string(z.real(), digits), to_string(z.imag(), digits)});
}
Complex complex_from_json(const nlohmann::json& j) {
  return Complex(Real(j.at(0).get<std::string>()), Real(j.at(1).get<std::string>()));
}
nlohmann::json matrix_json(const CMatrix& m, int digits) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_json(m(i, j), digits));
    rows.push_back(row);
  }
  return rows;
}
nlohmann::json vector_json(const CVector& v, int digits) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_json(v(i), digits));
  return out;
}
CVector vector_from_json(const nlohmann::json& j) {
  CVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
  return v;
}
namespace {

nlohmann::json int_matrix_json(const IMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    std::vector<long> row(m.cols());
    for (Eigen::Index j = 0; j < m.cols(); ++j) row[j] = m(i, j);
    rows.push_back(row);
  }
  return rows;
}

std::string cache_path(const std::string& dir, const std::string& fingerprint) {
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
  for (unsigned char ch : fingerprint) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char name[64];
  std::snprintf(name, sizeof name, "periods-%016llx.json", static_cast<unsigned long long>(h));
  return (std::filesystem::path(dir) / name).string();
}

class DirectoryLock {
 public:
  DirectoryLock(const std::string& dir, int mode) {
    std::filesystem::create_directories(dir);
    fd_ = ::open((std::filesystem::path(dir) / ".lock").c_str(), O_CREAT | O_RDWR, 0644);
    if (fd_ >= 0) ::flock(fd_, mode);
  }
  ~DirectoryLock() {
    if (fd_ >= 0) {
      ::flock(fd_, LOCK_UN);
      ::close(fd_);
    }
  }
  DirectoryLock(const DirectoryLock&) = delete;
  DirectoryLock& operator=(const DirectoryLock&) = delete;

 private:
  int fd_ = -1;
};

}  // namespace

std::string curve_fingerprint(const ComplexCurve& curve) {
  std::ostringstream os;
  os << kCacheVersion << ";r=" << curve.r() << ";s=" << curve.s() << ";b=";
  for (const auto& z : curve.branch_points()) os << to_string(z, 40) << ",";
  return os.str();
}

nlohmann::json to_json(const PeriodData& pd) {
  const int d = pd.digits;
  nlohmann::json j;
  j["precision"] = pd.digits;
  j["genus"] = pd.genus();
  j["base_point"] = complex_json(pd.homology.base, 12);
  std::vector<std::string> forms;
  for (const auto& f : pd.forms) forms.push_back(to_string(f));
  j["forms"] = forms;
  j["intersection"] = int_matrix_json(pd.homology.intersection);
  j["cycles"] = int_matrix_json(pd.homology.cycles);
  j["omega_alpha"] = matrix_json(pd.omega_alpha, d);
  j["omega_beta"] = matrix_json(pd.omega_beta, d);
  j["tau"] = matrix_json(pd.tau, d);
  j["symmetry_residual"] = to_string(pd.symmetry_residual, 3);
  j["quadrature_level"] = pd.quadrature_level;
  return j;
}

std::optional<PeriodData> load_cached_periods(const ComplexCurve& curve, const std::string& dir, int digits) {
  const std::string fp = curve_fingerprint(curve);
  const std::string path = cache_path(dir, fp);
  if (!std::filesystem::exists(path)) return std::nullopt;
  DirectoryLock lock(dir, LOCK_SH);
  try {
    std::ifstream in(path);
    const nlohmann::json j = nlohmann::json::parse(in);
    if (j.at("fingerprint").get<std::string>() != fp) return std::nullopt;
    const int file_digits = j.at("precision").get<int>();
    if (file_digits < digits) return std::nullopt;
    PrecisionScope scope(working_digits(file_digits));
    PeriodData pd;
    pd.digits = file_digits;
    pd.working_digits = working_digits(file_digits);
    pd.forms = holomorphic_differentials(curve);
    std::vector<Complex> b;
    for (const auto& z : curve.branch_points()) b.emplace_back(Real(z.real()), Real(z.imag()));
    const ComplexCurve c = ComplexCurve::build(curve.r(), curve.s(), b);
    pd.homology = homology_basis(c, complex_from_json(j.at("base_point")));
    pd.log_w0 = complex_from_json(j.at("log_w0"));
    pd.tail_direction = complex_from_json(j.at("tail_direction"));
    pd.tail_radius = Real(j.at("tail_radius").get<std::string>());
    pd.tail = vector_from_json(j.at("tail"));
    for (const auto& r : j.at("rays")) pd.rays.push_back(vector_from_json(r));
    pd.quadrature_level = j.at("quadrature_level").get<int>();
    pd.quadrature_error = Real(j.at("quadrature_error").get<std::string>());
    assemble(c, pd);
    return pd;
  } catch (const nlohmann::json::exception&) {
    return std::nullopt;
  }
}

void store_cached_periods(const ComplexCurve& curve, const std::string& dir, const PeriodData& pd) {
  DirectoryLock lock(dir, LOCK_EX);
  const std::string fp = curve_fingerprint(curve);
  const int d = pd.working_digits + 2;
  nlohmann::json j;
  j["fingerprint"] = fp;
  j["precision"] = pd.digits;
  j["base_point"] = complex_json(pd.homology.base, d);
  j["log_w0"] = complex_json(pd.log_w0, d);
  j["tail_direction"] = complex_json(pd.tail_direction, d);
  j["tail_radius"] = to_string(pd.tail_radius, d);
  j["tail"] = vector_json(pd.tail, d);
  j["rays"] = nlohmann::json::array();
  for (const auto& r : pd.rays) j["rays"].push_back(vector_json(r, d));
  j["quadrature_level"] = pd.quadrature_level;
  j["quadrature_error"] = to_string(pd.quadrature_error, 3);
  j["tau"] = matrix_json(pd.tau, pd.digits);
  const std::string path = cache_path(dir, fp);
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    out << j.dump(1) << "\n";
  }
  std::filesystem::rename(tmp, path);
}

PeriodData cached_period_matrices(const ComplexCurve& curve, int digits, const std::string& dir,
                                  const PeriodOptions& options) {
  if (!dir.empty())
    if (auto hit = load_cached_periods(curve, dir, digits)) return *hit;
  PeriodData pd = period_matrices(curve, digits, options);
  if (!dir.empty()) store_cached_periods(curve, dir, pd);
  return pd;
}

}  // namespace trigonal
