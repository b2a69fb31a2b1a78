#include "trigonal/numeric.hpp"

#include <boost/math/constants/constants.hpp>
#include <cmath>
#include <limits>
#include <sstream>

#include "trigonal/error.hpp"

namespace trigonal {

PrecisionScope::PrecisionScope(int digits) : saved_(Real::default_precision()) {
  Real::default_precision(static_cast<unsigned>(digits));
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_); }

int working_digits(int digits) { return digits + kGuardDigits; }

Real pi() { return boost::math::constants::pi<Real>(); }

Real pow10(int exponent) { return boost::multiprecision::pow(Real(10), exponent); }

Complex cube_root_of_unity() { return cube_root_of_unity(1); }

Complex cube_root_of_unity(int k) {
  k = ((k % 3) + 3) % 3;
  if (k == 0) return Complex(1, 0);
  const Real half(Real(1) / 2);
  const Real h = sqrt(Real(3)) / 2;
  return k == 1 ? Complex(-half, h) : Complex(-half, -h);
}

Complex cexp(const Complex& z) {
  const Real m = exp(z.real());
  return Complex(m * cos(z.imag()), m * sin(z.imag()));
}

Complex clog(const Complex& z) {
  return Complex(log(sqrt(abs2(z))), atan2(z.imag(), z.real()));
}

std::string to_string(const Real& x, int digits) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(digits) << x;
  return os.str();
}

std::string to_string(const Complex& z, int digits) {
  std::ostringstream os;
  os << to_string(z.real(), digits) << (z.imag() < 0 ? "-" : "+")
     << to_string(abs(z.imag()), digits) << "i";
  return os.str();
}

namespace {

Real parse_real(const std::string& s) {
  if (s.empty()) throw Error(ErrorCode::InvalidArgument, "empty number");
  const auto slash = s.find('/');
  if (slash != std::string::npos)
    return parse_real(s.substr(0, slash)) / parse_real(s.substr(slash + 1));
  try {
    return Real(s);
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidArgument, "cannot parse number '" + s + "'");
  }
}

}  // namespace

Complex parse_complex(const std::string& raw) {
  std::string text;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) text.push_back(c);
  if (text.empty()) throw Error(ErrorCode::InvalidArgument, "empty complex number");

  if (text.rfind("cis(", 0) == 0 && text.back() == ')') {
    const Real t = parse_real(text.substr(4, text.size() - 5));
    const Real angle = 2 * pi() * t;
    return Complex(cos(angle), sin(angle));
  }
  if (text.back() != 'i') return Complex(parse_real(text), 0);

  // a+bi, a-bi, bi, i, -i.  The split is the last sign not part of an exponent.
  const std::string body = text.substr(0, text.size() - 1);
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag_part = [](const std::string& s) -> Real {
    if (s.empty() || s == "+") return Real(1);
    if (s == "-") return Real(-1);
    return parse_real(s);
  };
  if (split == std::string::npos) return Complex(0, imag_part(body));
  return Complex(parse_real(body.substr(0, split)), imag_part(body.substr(split)));
}

double log10_abs(const Real& x) {
  if (x == 0) return -std::numeric_limits<double>::infinity();
  return static_cast<double>(log10(abs(x)));
}

}  // namespace trigonal
