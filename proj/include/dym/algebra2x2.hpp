#pragma once

// 2x2 complex matrix arithmetic with the su(2) / SU(2) structure that every
// discrete form in this library uses as its coefficient type.

#include <Eigen/Core>
#include <Eigen/LU>

#include <cmath>
#include <complex>

namespace dym {

template <typename Scalar>
using Matrix2 = Eigen::Matrix<std::complex<Scalar>, 2, 2>;

/// Real coordinates (a1, a2, a3) of the su(2) element a1*l1 + a2*l2 + a3*l3.
template <typename Scalar>
using Su2Vector = Eigen::Matrix<Scalar, 3, 1>;

using Matrix2d = Matrix2<double>;
using Su2Vectord = Su2Vector<double>;

inline constexpr double kAlgebraTolerance = 1e-10;

/// Standard Pauli matrix sigma_alpha, alpha in {1, 2, 3}.
template <typename Scalar>
Matrix2<Scalar> pauli(int alpha) {
  using C = std::complex<Scalar>;
  Matrix2<Scalar> s = Matrix2<Scalar>::Zero();
  switch (alpha) {
    case 1:
      s(0, 1) = C(1);
      s(1, 0) = C(1);
      break;
    case 2:
      s(0, 1) = C(0, -1);
      s(1, 0) = C(0, 1);
      break;
    case 3:
      s(0, 0) = C(1);
      s(1, 1) = C(-1);
      break;
    default:
      break;
  }
  return s;
}

/// su(2) basis element lambda_alpha = sigma_alpha / (2i).
template <typename Scalar>
Matrix2<Scalar> su2_basis(int alpha) {
  return pauli<Scalar>(alpha) / std::complex<Scalar>(0, 2);
}

template <typename Scalar>
Matrix2<Scalar> commutator(const Matrix2<Scalar>& a, const Matrix2<Scalar>& b) {
  return a * b - b * a;
}

template <typename Scalar>
Matrix2<Scalar> embed_su2(const Su2Vector<Scalar>& v) {
  using C = std::complex<Scalar>;
  const Scalar h = Scalar(0.5);
  // Written out entrywise so the result is exactly anti-Hermitian.
  Matrix2<Scalar> m;
  m(0, 0) = C(0, -h * v(2));
  m(1, 1) = C(0, h * v(2));
  m(0, 1) = C(-h * v(1), -h * v(0));
  m(1, 0) = C(h * v(1), -h * v(0));
  return m;
}

/// Coordinates of the anti-Hermitian traceless part of m in the lambda basis.
template <typename Scalar>
Su2Vector<Scalar> project_su2(const Matrix2<Scalar>& m) {
  Matrix2<Scalar> x = (m - m.adjoint()) / Scalar(2);
  x -= (x.trace() / Scalar(2)) * Matrix2<Scalar>::Identity();
  Su2Vector<Scalar> v;
  for (int alpha = 1; alpha <= 3; ++alpha) {
    // tr(l_a l_b) = -delta_ab / 2
    v(alpha - 1) = Scalar(-2) * (su2_basis<Scalar>(alpha) * x).trace().real();
  }
  return v;
}

/// Closed-form exponential of an su(2) element; the result lies in SU(2).
template <typename Scalar>
Matrix2<Scalar> exp_su2(const Su2Vector<Scalar>& v) {
  const Scalar half = v.norm() / Scalar(2);
  Scalar sinc;
  if (v.norm() < Scalar(1e-8)) {
    sinc = Scalar(1) - half * half / Scalar(6);
  } else {
    sinc = std::sin(half) / half;
  }
  return std::cos(half) * Matrix2<Scalar>::Identity() + sinc * embed_su2(v);
}

template <typename Scalar>
Scalar max_abs(const Matrix2<Scalar>& m) {
  return m.cwiseAbs().maxCoeff();
}

/// Distance from su(2): max of |m + m^dagger| entries and |tr m|.
template <typename Scalar>
Scalar su2_algebra_deviation(const Matrix2<Scalar>& m) {
  return std::max(max_abs<Scalar>(m + m.adjoint()), std::abs(m.trace()));
}

/// Distance from SU(2): max of |m m^dagger - I| entries and |det m - 1|.
template <typename Scalar>
Scalar su2_group_deviation(const Matrix2<Scalar>& m) {
  const Matrix2<Scalar> u = m * m.adjoint() - Matrix2<Scalar>::Identity();
  return std::max(max_abs<Scalar>(u), std::abs(m.determinant() - std::complex<Scalar>(1)));
}

template <typename Scalar>
bool is_su2_algebra(const Matrix2<Scalar>& m, Scalar tol = Scalar(kAlgebraTolerance)) {
  return su2_algebra_deviation(m) <= tol;
}

template <typename Scalar>
bool is_su2_group(const Matrix2<Scalar>& m, Scalar tol = Scalar(kAlgebraTolerance)) {
  return su2_group_deviation(m) <= tol;
}

}  // namespace dym
