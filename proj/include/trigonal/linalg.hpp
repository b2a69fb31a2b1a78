#pragma once

#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include "trigonal/numeric.hpp"

namespace trigonal {

using CMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
using CVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;
using RMatrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
using IMatrix = Eigen::Matrix<long, Eigen::Dynamic, Eigen::Dynamic>;
using IVector = Eigen::Matrix<long, Eigen::Dynamic, 1>;

CMatrix inverse(const CMatrix& a);
CVector solve(const CMatrix& a, const CVector& b);
RVector solve(const RMatrix& a, const RVector& b);
Complex determinant(const CMatrix& a);

Real max_abs(const CMatrix& a);
Real max_abs(const CVector& v);
Real norm2(const CVector& v);

Eigen::MatrixXd to_double(const RMatrix& a);
Eigen::VectorXd to_double(const RVector& v);

CVector zeros(int n);

}  // namespace trigonal
