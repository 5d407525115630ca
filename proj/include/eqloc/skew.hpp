/*
 * Copyright 2026 The eqloc authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace eqloc {

// Absolute tolerance on the symmetric part of a matrix claimed to be
// skew-symmetric.
inline constexpr double kSkewSymmetryTol = 1e-12;

// Scale-aware singularity cutoff: A counts as degenerate when
// |det A| <= kSingularRelTol * ||A||_F^dim.
inline constexpr double kSingularRelTol = 1e-12;

// An orientation of R^{2n}, given as the sign the reference volume form
// takes on the standard basis. +1 is the standard orientation.
struct Orientation {
  int reference_form_sign = +1;
};

// Canonical decomposition of a nonsingular skew form: an orthonormal basis
// (columns) in which the form is block diagonal with 2x2 blocks
// [[0, -w_j], [w_j, 0]].
struct SpectralPairing {
  Eigen::VectorXd weights;    // w_1..w_n, all nonzero
  Eigen::MatrixXd basis;      // orthogonal 2n x 2n
  int orientation_sign = +1;  // sign of det(basis)
};

namespace detail {

inline void require_square_even(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("skew form must be square, got " +
                                std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()));
  if (a.rows() % 2 != 0)
    throw std::invalid_argument("skew form must have even dimension, got " +
                                std::to_string(a.rows()));
}

}  // namespace detail

// Validates skew-symmetry of `a` to kSkewSymmetryTol and returns the exactly
// antisymmetric part (a - a^T)/2, absorbing roundoff from construction.
inline Eigen::MatrixXd symmetrized_skew(const Eigen::MatrixXd& a) {
  detail::require_square_even(a);
  const double residual = 0.5 * (a + a.transpose()).cwiseAbs().maxCoeff();
  if (residual > kSkewSymmetryTol) {
    std::ostringstream msg;
    msg << "matrix is not skew-symmetric: symmetric residual " << residual
        << " exceeds " << kSkewSymmetryTol;
    throw std::invalid_argument(msg.str());
  }
  return 0.5 * (a - a.transpose());
}

// Builds the canonical 2n x 2n block form with blocks [[0, -w_j], [w_j, 0]].
inline Eigen::MatrixXd canonical_skew_matrix(const Eigen::VectorXd& weights) {
  const Eigen::Index n = weights.size();
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (Eigen::Index j = 0; j < n; ++j) {
    c(2 * j, 2 * j + 1) = -weights(j);
    c(2 * j + 1, 2 * j) = weights(j);
  }
  return c;
}

namespace detail {

// Pfaffian by cofactor expansion along the first row. Exact combinatorics,
// O(n!!) terms; intended for dim <= 6.
inline double pfaffian_cofactor(const Eigen::MatrixXd& a) {
  const Eigen::Index m = a.rows();
  if (m == 0) return 1.0;
  if (m == 2) return a(0, 1);
  double acc = 0.0;
  double sign = 1.0;  // (-1)^k for column k = 1.., starting at +
  for (Eigen::Index k = 1; k < m; ++k) {
    if (a(0, k) != 0.0) {
      Eigen::MatrixXd minor(m - 2, m - 2);
      Eigen::Index r = 0;
      for (Eigen::Index i = 1; i < m; ++i) {
        if (i == k) continue;
        Eigen::Index c = 0;
        for (Eigen::Index j = 1; j < m; ++j) {
          if (j == k) continue;
          minor(r, c++) = a(i, j);
        }
        ++r;
      }
      acc += sign * a(0, k) * pfaffian_cofactor(minor);
    }
    sign = -sign;
  }
  return acc;
}

// Parlett–Reid tridiagonalization with partial pivoting (the skew LTL^T
// scheme of Wimmer, arXiv:1102.3440). O(n^3), works in place on a copy.
inline double pfaffian_ltl(Eigen::MatrixXd a) {
  const Eigen::Index m = a.rows();
  double pf = 1.0;
  for (Eigen::Index k = 0; k + 1 < m; k += 2) {
    Eigen::Index kp = k + 1;
    double best = std::abs(a(k + 1, k));
    for (Eigen::Index i = k + 2; i < m; ++i) {
      const double v = std::abs(a(i, k));
      if (v > best) {
        best = v;
        kp = i;
      }
    }
    if (kp != k + 1) {
      a.row(k + 1).swap(a.row(kp));
      a.col(k + 1).swap(a.col(kp));
      pf = -pf;
    }
    const double pivot = a(k, k + 1);
    if (pivot == 0.0) return 0.0;
    pf *= pivot;
    if (k + 2 < m) {
      const Eigen::Index rest = m - (k + 2);
      const Eigen::VectorXd tau =
          a.block(k + 2, k, rest, 1) / a(k + 1, k);
      const Eigen::VectorXd col = a.block(k + 2, k + 1, rest, 1);
      a.block(k + 2, k + 2, rest, rest).noalias() +=
          tau * col.transpose() - col * tau.transpose();
    }
  }
  return pf;
}

}  // namespace detail

// Pfaffian of a real skew-symmetric matrix; Pf(A)^2 = det(A), and
// Pf of the canonical block form with weights w is (-1)^n w_1..w_n.
// Cofactor expansion for dim <= 6, Parlett–Reid above.
inline double pfaffian(const Eigen::MatrixXd& a) {
  const Eigen::MatrixXd s = symmetrized_skew(a);
  if (s.rows() <= 6) return detail::pfaffian_cofactor(s);
  return detail::pfaffian_ltl(s);
}

// True when |det a| falls below the scale-aware cutoff.
inline bool is_degenerate_skew(const Eigen::MatrixXd& a) {
  const double norm = a.norm();
  const double det = a.determinant();
  const double cutoff =
      kSingularRelTol * std::pow(norm, static_cast<double>(a.rows()));
  return std::abs(det) <= cutoff;
}

// Orthonormal basis bringing a nonsingular skew form to canonical 2x2 blocks,
// oriented per `o`. The weight signs come out so that (-1)^n w_1..w_n equals
// the Pfaffian taken in an o-positively-oriented basis (for the standard
// orientation, pfaffian(a) itself).
inline SpectralPairing skew_canonical_form(const Eigen::MatrixXd& a,
                                           Orientation o = {}) {
  const Eigen::MatrixXd s = symmetrized_skew(a);
  if (is_degenerate_skew(s))
    throw std::domain_error(
        "degenerate linearization: skew form is singular within tolerance");
  if (o.reference_form_sign != 1 && o.reference_form_sign != -1)
    throw std::invalid_argument("orientation sign must be +1 or -1");

  // A real Schur form of a skew matrix is block diagonal with 2x2 skew
  // blocks; the transformation is orthogonal, so it already realizes the
  // canonical pairing.
  Eigen::RealSchur<Eigen::MatrixXd> schur(s);
  if (schur.info() != Eigen::Success)
    throw std::runtime_error("Schur decomposition failed to converge");
  Eigen::MatrixXd basis = schur.matrixU();
  const Eigen::MatrixXd& t = schur.matrixT();

  const Eigen::Index n = s.rows() / 2;
  Eigen::VectorXd weights(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    weights(j) = t(2 * j + 1, 2 * j);
    if (weights(j) == 0.0)
      throw std::domain_error(
          "degenerate linearization: zero rotation weight in Schur form");
  }

  int det_sign = basis.determinant() > 0 ? +1 : -1;
  if (det_sign != o.reference_form_sign) {
    // Swapping the first two basis vectors stays canonical and flips both
    // the orientation and the sign of w_1.
    basis.col(0).swap(basis.col(1));
    weights(0) = -weights(0);
    det_sign = -det_sign;
  }
  return SpectralPairing{std::move(weights), std::move(basis), det_sign};
}

// The orientation-independent square root of det(A) for a nonsingular skew
// form: w_1..w_n = (-1)^n Pf(A) in an o-positively-oriented basis.
inline double sqrt_det(const Eigen::MatrixXd& a, Orientation o = {}) {
  const Eigen::MatrixXd s = symmetrized_skew(a);
  if (is_degenerate_skew(s))
    throw std::domain_error(
        "degenerate linearization: skew form is singular within tolerance");
  const Eigen::Index n = s.rows() / 2;
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  return o.reference_form_sign * sign * pfaffian(s);
}

// prod_{r<s} (v_r - v_s); 1 for fewer than two entries.
template <typename Scalar>
Scalar vandermonde(const Eigen::Vector<Scalar, Eigen::Dynamic>& v) {
  Scalar prod = Scalar(1);
  for (Eigen::Index r = 0; r < v.size(); ++r)
    for (Eigen::Index s = r + 1; s < v.size(); ++s) prod *= v(r) - v(s);
  return prod;
}

}  // namespace eqloc
