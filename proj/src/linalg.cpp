#include "trigonal/linalg.hpp"

namespace trigonal {

CMatrix inverse(const CMatrix& a) { return a.partialPivLu().inverse(); }
CVector solve(const CMatrix& a, const CVector& b) { return a.partialPivLu().solve(b); }
RVector solve(const RMatrix& a, const RVector& b) { return a.partialPivLu().solve(b); }
Complex determinant(const CMatrix& a) { return a.partialPivLu().determinant(); }

Real max_abs(const CMatrix& a) {
  Real m(0);
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) m = std::max(m, Real(abs(a(i, j))));
  return m;
}

Real max_abs(const CVector& v) {
  Real m(0);
  for (Eigen::Index i = 0; i < v.size(); ++i) m = std::max(m, Real(abs(v(i))));
  return m;
}

Real norm2(const CVector& v) {
  Real s(0);
  for (Eigen::Index i = 0; i < v.size(); ++i) s += abs2(v(i));
  return sqrt(s);
}

Eigen::MatrixXd to_double(const RMatrix& a) {
  Eigen::MatrixXd out(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out(i, j) = static_cast<double>(a(i, j));
  return out;
}

Eigen::VectorXd to_double(const RVector& v) {
  Eigen::VectorXd out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = static_cast<double>(v(i));
  return out;
}

CVector zeros(int n) { return CVector::Constant(n, Complex(0, 0)); }

}  // namespace trigonal
