#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <random>
#include <regex>
#include <sstream>

#include "json.hpp"
#include "trigonal/divisor.hpp"
#include "trigonal/error.hpp"
#include "trigonal/fsdet.hpp"
#include "trigonal/periods.hpp"
#include "trigonal/rconst.hpp"
#include "trigonal/semigroup.hpp"
#include "trigonal/tables.hpp"
#include "trigonal/theta.hpp"

using namespace trigonal;
using json = nlohmann::json;

namespace {

enum Exit { kOk = 0, kValidation = 2, kVerification = 3, kPrecision = 4 };

struct Config {
  int precision = 40;
  std::string format = "text";
  std::string cache_dir;
  std::string tolerance;
};

struct CurveArgs {
  int r = -1;
  int s = -1;
  std::vector<std::string> b;
};

// Exact curve when every branch point is a rational, numeric otherwise.
struct CurveInput {
  std::optional<RationalCurve> exact;
  ComplexCurve numeric;
};

int exit_code(ErrorCode code) {
  switch (classify(code)) {
    case ErrorClass::Validation: return kValidation;
    case ErrorClass::Verification: return kVerification;
    case ErrorClass::Precision: return kPrecision;
  }
  return kVerification;
}

CurveInput build_curve(const CurveArgs& a) {
  if (a.r < 0 || a.s < 0) throw Error(ErrorCode::InvalidArgument, "both -r and -s are required");
  static const std::regex rational(R"(^\s*-?\d+(/\d+)?\s*$)");
  bool all_rational = true;
  for (const auto& t : a.b) all_rational = all_rational && std::regex_match(t, rational);
  CurveInput in;
  if (all_rational) {
    std::vector<mpq_class> b;
    for (const auto& t : a.b) {
      mpq_class q(t);
      q.canonicalize();
      b.push_back(q);
    }
    in.exact = RationalCurve::build(a.r, a.s, b);
    in.numeric = to_numeric(*in.exact);
  } else {
    std::vector<Complex> b;
    for (const auto& t : a.b) b.push_back(parse_complex(t));
    in.numeric = ComplexCurve::build(a.r, a.s, b);
  }
  return in;
}

void add_curve_options(CLI::App* app, CurveArgs& a) {
  app->add_option("-r", a.r, "number of double roots (B factor)")->required();
  app->add_option("-s", a.s, "number of simple roots (A factor)")->required();
  app->add_option("-b,--branch-points", a.b,
                  "branch points, A-roots first: rationals n/d, complex decimals a+bi, or cis(t)")
      ->delimiter(',');
}

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else if (j.is_array()) {
    std::string s;
    for (std::size_t i = 0; i < j.size(); ++i) s += (i ? " " : "") + scalar_text(j[i]);
    out.emplace_back(prefix, s);
  } else {
    out.emplace_back(prefix, scalar_text(j));
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

void emit(const json& j, const Config& cfg) {
  if (cfg.format == "json") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(j, "", rows);
  if (cfg.format == "csv") {
    std::cout << "key,value\n";
    for (const auto& [k, v] : rows) std::cout << csv_field(k) << "," << csv_field(v) << "\n";
  } else {
    for (const auto& [k, v] : rows) std::cout << k << ": " << v << "\n";
  }
}

json curve_json(const CurveInput& in) {
  const auto& c = in.numeric;
  json j;
  j["r"] = c.r();
  j["s"] = c.s();
  j["genus"] = c.genus();
  j["semigroup"] = {3, c.weight_w(), c.weight_y()};
  j["exact"] = in.exact.has_value();
  json b = json::array();
  if (in.exact) {
    for (const auto& q : in.exact->branch_points()) b.push_back(q.get_str());
  } else {
    for (const auto& z : c.branch_points()) b.push_back(complex_json(z, 20));
  }
  j["branch_points"] = b;
  return j;
}

std::optional<Real> tolerance_of(const Config& cfg) {
  if (cfg.tolerance.empty()) return std::nullopt;
  return Real(cfg.tolerance);
}

PeriodData periods_for(const ComplexCurve& c, const Config& cfg) {
  return cfg.cache_dir.empty() ? period_matrices(c, cfg.precision)
                               : cached_period_matrices(c, cfg.precision, cfg.cache_dir);
}

// --- subcommands -----------------------------------------------------------

int cmd_semigroup(const std::vector<int>& gens, const Config& cfg) {
  const auto h = Semigroup::from_generators(gens);
  json j;
  j["generators"] = h.minimal_generators();
  j["gaps"] = h.gaps();
  j["genus"] = h.genus();
  j["conductor"] = h.conductor();
  if (h.genus() > 0) {
    j["symmetric"] = is_symmetric(h);
    const auto prof = gap_profile(h);
    j["alpha"] = prof.alpha;
    j["young"] = prof.young;
  }
  emit(j, cfg);
  return kOk;
}

int cmd_curve(const CurveArgs& a, const Config& cfg) {
  const auto in = build_curve(a);
  json j = curve_json(in);
  std::ostringstream A, B;
  if (in.exact) {
    A << in.exact->A();
    B << in.exact->B();
  } else {
    A << in.numeric.A();
    B << in.numeric.B();
  }
  j["A"] = A.str();
  j["B"] = B.str();
  json forms = json::array();
  for (const auto& d : holomorphic_differentials(in.numeric)) forms.push_back(to_string(d));
  j["holomorphic_differentials"] = forms;
  j["symmetric"] = is_symmetric(in.numeric.semigroup());
  emit(j, cfg);
  return kOk;
}

int cmd_tables(int r, int s, int max_weight, bool check_paper, const Config& cfg) {
  // Branch points only affect coefficients, not the weights.
  std::vector<mpq_class> b;
  for (int i = 0; i < r + s; ++i) b.emplace_back(i);
  const auto curve = RationalCurve::build(r, s, b);
  const auto ring = basis_R(curve, max_weight);
  const auto rb = basis_RB(curve, max_weight);
  json j;
  j["r"] = r;
  j["s"] = s;
  j["max_weight"] = max_weight;
  auto table_json = [](const BasisTable& t) {
    json rows = json::array();
    for (const auto& e : t.entries) rows.push_back({{"weight", e.weight}, {"monomial", to_string(e.monomial)}});
    return rows;
  };
  j["R"] = table_json(ring);
  j["RB"] = table_json(rb);
  int code = kOk;
  if (check_paper) {
    const ReferenceRow* row = find_reference_row(r, s);
    if (!row) throw Error(ErrorCode::InvalidArgument, "no published row for this (r, s)");
    auto clip = [&](const std::vector<int>& w) {
      std::vector<int> out;
      for (int v : w)
        if (v <= std::min(max_weight, kReferenceMaxWeight)) out.push_back(v);
      return out;
    };
    const bool ok_r = clip(ring.weights()) == clip(row->ring_weights);
    const bool ok_rb = clip(rb.weights()) == clip(row->rb_weights);
    j["check_paper"] = {{"R", ok_r}, {"RB", ok_rb}};
    if (!ok_r || !ok_rb) code = kVerification;
  }
  if (cfg.format == "text") {
    std::cout << "R (r=" << r << ", s=" << s << ")\n" << format_table(curve, ring, max_weight);
    std::cout << "R^B (r=" << r << ", s=" << s << ")\n" << format_table(curve, rb, max_weight);
    if (check_paper)
      std::cout << "check-paper: R " << (j["check_paper"]["R"].get<bool>() ? "match" : "MISMATCH") << ", R^B "
                << (j["check_paper"]["RB"].get<bool>() ? "match" : "MISMATCH") << "\n";
  } else if (cfg.format == "csv") {
    std::cout << "table,weight,monomial\n";
    for (const auto& e : ring.entries) std::cout << "R," << e.weight << "," << to_string(e.monomial) << "\n";
    for (const auto& e : rb.entries) std::cout << "RB," << e.weight << "," << to_string(e.monomial) << "\n";
  } else {
    emit(j, cfg);
  }
  return code;
}

RingElement<Complex> parse_element(const std::string& text) {
  // "c0,c1,...;d0,...;e0,..." are the coefficient lists of p0, p1, p2.
  RingElement<Complex> e;
  std::stringstream ss(text);
  std::string part;
  int k = 0;
  while (std::getline(ss, part, ';')) {
    if (k > 2) throw Error(ErrorCode::InvalidArgument, "an element has three coefficient lists");
    std::vector<Complex> c;
    std::stringstream ps(part);
    std::string item;
    while (std::getline(ps, item, ','))
      if (!item.empty()) c.push_back(parse_complex(item));
    e.p[k++] = Polynomial<Complex>(c);
  }
  return e;
}

int cmd_divisor(const CurveArgs& a, const std::string& element, const Config& cfg) {
  const auto in = build_curve(a);
  json j = curve_json(in);
  const int digits = std::min(cfg.precision, 30);
  if (in.exact) {
    j["canonical"] = to_string(canonical_divisor(*in.exact));
    j["a_part"] = to_string(a_part(*in.exact));
    j["frak_B"] = to_string(frak_B(*in.exact));
    j["frak_B1"] = to_string(frak_B1(*in.exact));
  } else {
    j["canonical"] = to_string(canonical_divisor(in.numeric));
    j["frak_B"] = to_string(frak_B(in.numeric));
  }
  if (!element.empty()) {
    const Divisor d = principal_divisor(in.numeric, parse_element(element));
    j["principal"] = {{"text", to_string(d)}, {"divisor", to_json(d, digits)}};
  }
  const auto rep = in.exact ? verify_semicanonical(*in.exact, false) : verify_semicanonical(in.numeric, false);
  j["semicanonical"] = to_json(rep);
  emit(j, cfg);
  return rep.passed() ? kOk : kVerification;
}

std::vector<PointOnCurve> parse_points(const ComplexCurve& c, const std::vector<std::string>& items) {
  std::vector<PointOnCurve> out;
  for (const auto& t : items) {
    const auto at = t.find('@');
    const Complex x = parse_complex(t.substr(0, at));
    const int sheet = at == std::string::npos ? 0 : std::stoi(t.substr(at + 1));
    if (sheet < 0 || sheet > 2) throw Error(ErrorCode::InvalidArgument, "sheet must be 0, 1 or 2");
    out.push_back(make_point(c, x, sheet));
  }
  return out;
}

int cmd_fs(const CurveArgs& a, const std::vector<std::string>& pts, int random, std::uint64_t seed, bool check,
           const Config& cfg) {
  const auto in = build_curve(a);
  std::vector<PointOnCurve> points = parse_points(in.numeric, pts);
  if (random > 0) {
    std::mt19937_64 rng(seed);
    for (const auto& p : random_points(in.numeric, random, rng)) points.push_back(p);
  }
  if (points.empty()) throw Error(ErrorCode::InvalidArgument, "give --points or --random n >= 1");
  json j = curve_json(in);
  const int digits = std::min(cfg.precision, 30);
  json pj = json::array();
  for (const auto& p : points) pj.push_back({{"x", complex_json(p.x, digits)}, {"sheet", p.sheet}});
  j["points"] = pj;
  j["psi"] = complex_json(psi(in.numeric, points), digits);
  j["mu"] = to_json(mu_function(in.numeric, points), digits);
  int code = kOk;
  if (check) {
    const auto pd = periods_for(in.numeric, cfg);
    const auto rep = mu_divisor_check(in.numeric, pd, points);
    j["divisor_check"] = to_json(rep, digits);
    if (!rep.passed) code = kVerification;
  }
  emit(j, cfg);
  return code;
}

int cmd_periods(const CurveArgs& a, const Config& cfg) {
  const auto in = build_curve(a);
  const auto pd = periods_for(in.numeric, cfg);
  json j = curve_json(in);
  j["periods"] = to_json(pd);
  emit(j, cfg);
  return kOk;
}

ThetaCharacteristic parse_characteristic(const std::string& text, int g) {
  ThetaCharacteristic c = ThetaCharacteristic::zero(g);
  if (text.empty()) return c;
  const auto semi = text.find(';');
  if (semi == std::string::npos) throw Error(ErrorCode::InvalidArgument, "characteristic is \"a1,..,ag;b1,..,bg\"");
  auto bits = [&](const std::string& part) {
    std::vector<int> v;
    std::stringstream ss(part);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item == "1/2" || item == "1") v.push_back(1);
      else if (item == "0") v.push_back(0);
      else throw Error(ErrorCode::InvalidArgument, "characteristic entries are 0 or 1/2");
    }
    if (static_cast<int>(v.size()) != g) throw Error(ErrorCode::InvalidArgument, "characteristic length differs from genus");
    return v;
  };
  c.top = bits(text.substr(0, semi));
  c.bottom = bits(text.substr(semi + 1));
  return c;
}

int cmd_theta(const CurveArgs& a, const std::vector<std::string>& z_items, const std::string& chr, const Config& cfg) {
  const auto in = build_curve(a);
  const auto pd = periods_for(in.numeric, cfg);
  const int g = pd.genus();
  CVector z = zeros(g);
  if (!z_items.empty()) {
    if (static_cast<int>(z_items.size()) != g) throw Error(ErrorCode::InvalidArgument, "z needs genus many entries");
    for (int i = 0; i < g; ++i) z(i) = parse_complex(z_items[i]);
  }
  const auto c = parse_characteristic(chr, g);
  const auto t = theta<Real>(z, pd.tau, c, cfg.precision);
  const int digits = std::min(cfg.precision, 30);
  json j = curve_json(in);
  j["characteristic"] = to_string(c);
  j["parity"] = parity(c);
  j["z"] = vector_json(z, digits);
  j["value"] = complex_json(t.value, digits);
  j["truncation_error"] = to_string(t.error, 3);
  j["scale"] = to_string(t.scale, 12);
  j["terms"] = t.terms;
  j["on_theta_divisor"] = abs(t.value) < pow10(-cfg.precision / 2) * t.scale;
  emit(j, cfg);
  return kOk;
}

int cmd_rc(const CurveArgs& a, const Config& cfg) {
  const auto in = build_curve(a);
  RiemannOptions opt;
  opt.tolerance = tolerance_of(cfg);
  const auto p = run_riemann_pipeline(in.numeric, cfg.precision, opt, false, cfg.cache_dir);
  json j = curve_json(in);
  j["riemann_constant"] = to_json(p.report, std::min(cfg.precision, 30));
  j["candidate"] = to_string(p.constant.candidate);
  emit(j, cfg);
  return p.report.passed() ? kOk : kVerification;
}

// Roots of x^4 + 1 as the four branch points, in any order.
bool is_picard_configuration(const ComplexCurve& c) {
  if (c.r() != 0 || c.s() != 4) return false;
  const auto& A = c.A();
  const Real tol = pow10(-20);
  for (int k = 0; k <= 4; ++k) {
    const Complex want = (k == 0 || k == 4) ? Complex(1) : Complex(0);
    if (abs(A.coeff(k) - want) > tol) return false;
  }
  return true;
}

int cmd_verify(const CurveArgs& a, const Config& cfg) {
  json j;
  json stages = json::array();
  int code = kOk;
  std::string failed;
  auto record = [&](const std::string& name, bool passed, json detail) {
    json s = {{"stage", name}, {"passed", passed}};
    if (!detail.is_null()) s["detail"] = std::move(detail);
    stages.push_back(s);
    if (!passed && failed.empty()) {
      failed = name;
      code = kVerification;
    }
  };
  std::string stage = "construction";
  const int digits = std::min(cfg.precision, 30);
  try {
    const auto in = build_curve(a);
    j["curve"] = curve_json(in);
    record("construction", true, nullptr);

    stage = "semicanonical";
    const auto semi = in.exact ? verify_semicanonical(*in.exact, false) : verify_semicanonical(in.numeric, false);
    record(stage, semi.passed(), to_json(semi));

    stage = "riemann_constant";
    RiemannOptions opt;
    opt.tolerance = tolerance_of(cfg);
    const auto p = run_riemann_pipeline(in.numeric, cfg.precision, opt, false, cfg.cache_dir);
    record("periods", true,
           {{"symmetry_residual", to_string(p.periods.symmetry_residual, 3)},
            {"quadrature_level", p.periods.quadrature_level},
            {"working_digits", p.periods.working_digits}});
    record("riemann_constant", true,
           {{"candidate", to_string(p.constant.candidate)},
            {"filter_vanishing", to_string(p.constant.worst_vanishing, 3)},
            {"filter_rejection", to_string(p.constant.best_rejection, 3)}});
    record("shifted_constant", true,
           {{"characteristic", to_string(p.shifted.characteristic)},
            {"half_period_distance", to_string(p.shifted.half_period_distance, 3)}});
    record("shifted_theorems", p.report.passed(), to_json(p.report, digits));

    stage = "mu_divisor";
    const int g = p.periods.genus();
    if (g >= 2) {
      std::mt19937_64 rng(opt.seed);
      const auto rep = mu_divisor_check(in.numeric, p.periods, random_points(in.numeric, g - 1, rng));
      record(stage, rep.passed, to_json(rep, digits));
    }

    if (is_picard_configuration(in.numeric)) {
      const ThetaCharacteristic published{{0, 1, 0}, {0, 1, 0}};
      const bool same = p.report.characteristic == published;
      record("picard_characteristic", same,
             {{"computed", to_string(p.report.characteristic)},
              {"published", to_string(published)},
              {"computed_parity", parity(p.report.characteristic)},
              {"published_parity", parity(published)}});
    }
  } catch (const Error& e) {
    stages.push_back({{"stage", stage}, {"passed", false}, {"error", e.what()}});
    if (failed.empty()) failed = stage;
    code = exit_code(e.code());
  }
  j["stages"] = stages;
  j["passed"] = code == kOk;
  if (!failed.empty()) j["failed_stage"] = failed;
  emit(j, cfg);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pointed trigonal curves with non-symmetric Weierstrass semigroups <3, 2r+s, 2s+r>"};
  app.require_subcommand(1);
  app.fallthrough();
  Config cfg;
  app.add_option("--precision", cfg.precision, "decimal digits (>= 20)")->check(CLI::Range(20, 2000));
  app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--cache-dir", cfg.cache_dir, "directory for cached period matrices");
  app.add_option("--tolerance", cfg.tolerance, "theorem-check tolerance, e.g. 1e-20");

  std::vector<int> gens;
  auto* sg = app.add_subcommand("semigroup", "gaps, genus, symmetry and Young diagram of a numerical semigroup");
  sg->add_option("generators", gens)->required();

  CurveArgs ca;
  auto* cu = app.add_subcommand("curve", "curve data: genus, semigroup, A, B, holomorphic differentials");
  add_curve_options(cu, ca);

  int tr = 0, ts = 0, max_weight = kReferenceMaxWeight;
  bool check_paper = false;
  auto* ta = app.add_subcommand("tables", "graded bases of R and R^B");
  ta->add_option("r", tr)->required();
  ta->add_option("s", ts)->required();
  ta->add_option("--max-weight", max_weight)->check(CLI::NonNegativeNumber);
  ta->add_flag("--check-paper", check_paper, "compare occupied weights with the published rows");

  std::string element;
  auto* dv = app.add_subcommand("divisor", "named divisors, canonical class checks, principal divisors");
  add_curve_options(dv, ca);
  dv->add_option("--element", element, "ring element p0;p1;p2 as coefficient lists, e.g. \"0,1;1;\"");

  std::vector<std::string> pts;
  int random = 0;
  std::uint64_t seed = 1;
  bool check = false;
  auto* fs = app.add_subcommand("fs", "Frobenius-Stickelberger determinant and mu-function");
  add_curve_options(fs, ca);
  fs->add_option("--points", pts, "points x@sheet")->delimiter(',');
  fs->add_option("--random", random, "append n random points");
  fs->add_option("--seed", seed, "seed for --random");
  fs->add_flag("--check", check, "locate complementary zeros and check the Abel relation");

  auto* pe = app.add_subcommand("periods", "period matrices and normalized tau");
  add_curve_options(pe, ca);

  std::vector<std::string> z_items;
  std::string chr;
  auto* th = app.add_subcommand("theta", "theta function with characteristics on the curve's tau");
  add_curve_options(th, ca);
  th->add_option("--z", z_items, "argument, genus many complex entries")->delimiter(',');
  th->add_option("--characteristic", chr, "\"a1,..,ag;b1,..,bg\" with entries 0 or 1/2");

  auto* rc = app.add_subcommand("rc", "Riemann constant, shifted constant and theorem checks");
  add_curve_options(rc, ca);

  auto* ve = app.add_subcommand("verify", "full verification pipeline");
  add_curve_options(ve, ca);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc_parse = app.exit(e);
    return rc_parse == 0 ? kOk : kValidation;
  }

  try {
    const PrecisionScope scope(working_digits(cfg.precision));
    if (*sg) return cmd_semigroup(gens, cfg);
    if (*cu) return cmd_curve(ca, cfg);
    if (*ta) return cmd_tables(tr, ts, max_weight, check_paper, cfg);
    if (*dv) return cmd_divisor(ca, element, cfg);
    if (*fs) return cmd_fs(ca, pts, random, seed, check, cfg);
    if (*pe) return cmd_periods(ca, cfg);
    if (*th) return cmd_theta(ca, z_items, chr, cfg);
    if (*rc) return cmd_rc(ca, cfg);
    if (*ve) return cmd_verify(ca, cfg);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  }
  return kOk;
}
