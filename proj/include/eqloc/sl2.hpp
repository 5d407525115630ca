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

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

namespace eqloc::sl2 {

using Complex = std::complex<double>;

// A traceless real 2x2 matrix X = [[a, b], [c, -a]].
struct Sl2Element {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  Eigen::Matrix2d matrix() const {
    Eigen::Matrix2d m;
    m << a, b, c, -a;
    return m;
  }
  // det X = -a^2 - bc; eigenvalues are +-sqrt(-det).
  double det() const { return -a * a - b * c; }
};

enum class RegularClass { Elliptic, Split, NonRegular };

inline const char* to_string(RegularClass c) {
  switch (c) {
    case RegularClass::Elliptic: return "elliptic";
    case RegularClass::Split: return "split";
    default: return "non-regular";
  }
}

// Elliptic: two distinct purely imaginary eigenvalues (det > tol).
// Split: two distinct real eigenvalues (det < -tol). Otherwise non-regular.
inline RegularClass classify(const Sl2Element& x, double tol = 1e-12) {
  const double det = x.det();
  if (det > tol) return RegularClass::Elliptic;
  if (det < -tol) return RegularClass::Split;
  return RegularClass::NonRegular;
}

// A point of CP^1 in homogeneous coordinates, scaled so the component of
// largest modulus is exactly 1.
struct ProjPoint {
  Complex z1{0.0, 0.0};
  Complex z2{1.0, 0.0};

  static ProjPoint make(Complex z1, Complex z2) {
    if (z1 == Complex{0.0, 0.0} && z2 == Complex{0.0, 0.0})
      throw std::invalid_argument("(0, 0) is not a projective point");
    const Complex scale = (std::abs(z1) >= std::abs(z2)) ? z1 : z2;
    return ProjPoint{z1 / scale, z2 / scale};
  }

  bool at_infinity() const { return z2 == Complex{0.0, 0.0}; }
  // Affine coordinate z1/z2; only meaningful off infinity.
  Complex affine() const { return z1 / z2; }
  // True if the affine coordinate lies in the open upper half-plane.
  bool in_upper_half_plane() const {
    return std::imag(z1 * std::conj(z2)) > 0.0;
  }
};

// |z1 w2 - z2 w1| on normalized representatives: 0 iff projectively equal.
inline double proj_distance(const ProjPoint& p, const ProjPoint& q) {
  return std::abs(p.z1 * q.z2 - p.z2 * q.z1);
}

// Fractional-linear action [[g00, g01], [g10, g11]] . z = (g00 z + g01) /
// (g10 z + g11), applied on homogeneous coordinates.
inline ProjPoint mobius_apply(const Eigen::Matrix2d& g, const ProjPoint& p) {
  return ProjPoint::make(g(0, 0) * p.z1 + g(0, 1) * p.z2,
                         g(1, 0) * p.z1 + g(1, 1) * p.z2);
}

// Generator field of t -> exp(tX) acting by fractional-linear maps, in the
// affine chart z: dz/dt = b + 2a z - c z^2.
inline Complex generator_field(const Sl2Element& x, Complex z) {
  return x.b + 2.0 * x.a * z - x.c * z * z;
}

// The same field in the chart w = 1/z around infinity: dw/dt = c - 2a w -
// b w^2.
inline Complex generator_field_inverted(const Sl2Element& x, Complex w) {
  return x.c - 2.0 * x.a * w - x.b * w * w;
}

// The two zeros of the flow of a regular element: its eigenlines. The first
// point corresponds to the eigenvalue with positive real part (split case)
// or positive imaginary part (elliptic case).
inline std::array<ProjPoint, 2> flow_zeros(const Sl2Element& x,
                                           double tol = 1e-12) {
  if (classify(x, tol) == RegularClass::NonRegular)
    throw std::domain_error("flow zeros are defined for regular elements only");
  const double disc = x.a * x.a + x.b * x.c;  // eigenvalues are +-sqrt(disc)
  const Complex m = (disc >= 0.0) ? Complex(std::sqrt(disc), 0.0)
                                  : Complex(0.0, std::sqrt(-disc));
  auto eigenline = [&](Complex eig) {
    // Null vector of X - eig*I from whichever row is better conditioned.
    const Complex v1_first = -x.b, v2_first = x.a - eig;
    const Complex v1_second = x.a + eig, v2_second = x.c;
    const double n_first = std::abs(v1_first) + std::abs(v2_first);
    const double n_second = std::abs(v1_second) + std::abs(v2_second);
    return (n_first >= n_second) ? ProjPoint::make(v1_first, v2_first)
                                 : ProjPoint::make(v1_second, v2_second);
  };
  return {eigenline(m), eigenline(-m)};
}

// Derivative of the generator field at one of its simple zeros, computed in
// the chart containing the point (w = 1/z near infinity). Chart-independent.
inline Complex linearize(const Sl2Element& x, const ProjPoint& p,
                         double tol = 1e-8) {
  const double scale =
      std::max(1.0, std::abs(x.a) + std::abs(x.b) + std::abs(x.c));
  if (std::abs(p.z1) <= std::abs(p.z2)) {
    const Complex z = p.z1 / p.z2;
    if (std::abs(generator_field(x, z)) > tol * scale)
      throw std::invalid_argument("point is not a zero of the flow");
    return 2.0 * x.a - 2.0 * x.c * z;
  }
  const Complex w = p.z2 / p.z1;
  if (std::abs(generator_field_inverted(x, w)) > tol * scale)
    throw std::invalid_argument("point is not a zero of the flow");
  return -2.0 * x.a - 2.0 * x.b * w;
}

enum class Stability { Stable, Unstable, Rotation };

inline const char* to_string(Stability s) {
  switch (s) {
    case Stability::Stable: return "stable";
    case Stability::Unstable: return "unstable";
    default: return "rotation";
  }
}

// Stable when the flow points toward the zero (Re mu < -tol), unstable when
// it points away, rotation when the linearization is purely imaginary.
inline Stability classify_stability(Complex mu, double tol = 1e-10) {
  if (mu == Complex{0.0, 0.0})
    throw std::invalid_argument("stability of a vanishing weight is undefined");
  if (std::real(mu) < -tol) return Stability::Stable;
  if (std::real(mu) > tol) return Stability::Unstable;
  return Stability::Rotation;
}

enum class CycleChoice { ConormalCircle, CHUpper };

// One zero of the flow with its holomorphic weight, stability and the
// integer multiplicity it carries in the localization sum.
struct ZeroDatum {
  ProjPoint point;
  Complex mu{0.0, 0.0};
  Stability stability = Stability::Rotation;
  int multiplicity = 0;
  bool inverted_chart = false;  // weight computed in the w = 1/z chart
};

// Multiplicity table for the hemisphere-plus-conormal cycle: an elliptic
// zero counts iff it lies in the open upper half-plane; a split zero counts
// iff it is stable. The bare conormal-circle cycle carries no specified
// multiplicities and is rejected.
inline int cycle_multiplicity(const Sl2Element& x, const ZeroDatum& zero,
                              CycleChoice cycle = CycleChoice::CHUpper) {
  if (cycle != CycleChoice::CHUpper)
    throw std::invalid_argument(
        "multiplicities are specified only for the hemisphere cycle, not the "
        "conormal circle");
  switch (classify(x)) {
    case RegularClass::Elliptic:
      return zero.point.in_upper_half_plane() ? 1 : 0;
    case RegularClass::Split:
      return zero.stability == Stability::Stable ? 1 : 0;
    default:
      throw std::domain_error("multiplicity needs a regular element");
  }
}

// Both zeros with weights, stability and multiplicities filled in.
inline std::array<ZeroDatum, 2> zero_data(const Sl2Element& x,
                                          CycleChoice cycle = CycleChoice::CHUpper) {
  const auto zeros = flow_zeros(x);
  std::array<ZeroDatum, 2> out;
  for (int i = 0; i < 2; ++i) {
    out[i].point = zeros[i];
    out[i].mu = linearize(x, zeros[i]);
    out[i].stability = classify_stability(out[i].mu);
    out[i].inverted_chart = std::abs(zeros[i].z1) > std::abs(zeros[i].z2);
    out[i].multiplicity = cycle_multiplicity(x, out[i], cycle);
  }
  return out;
}

// Default scale: s with 1/s = -2*pi*i, the normalization of the compact
// localization theorem.
inline const Complex kDefaultS{0.0, 1.0 / (2.0 * std::numbers::pi)};

// Localized value of the constant symbol over the hemisphere cycle:
// (-2*pi*s) * sum_p m_p / mu_p over the two zeros.
inline Complex localization_value(const Sl2Element& x, Complex s = kDefaultS,
                                  CycleChoice cycle = CycleChoice::CHUpper) {
  const auto zeros = zero_data(x, cycle);
  Complex sum{0.0, 0.0};
  for (const auto& z : zeros)
    sum += static_cast<double>(z.multiplicity) / z.mu;
  return -2.0 * std::numbers::pi * s * sum;
}

// Moment pairing of a covector (base z, component zeta in the affine chart)
// with the generator field: zeta * V_X(z).
inline Complex moment_pairing(Complex z, Complex zeta, const Sl2Element& x) {
  return zeta * generator_field(x, z);
}

// g X g^{-1} as an Sl2Element, for g in SL(2, R).
inline Sl2Element conjugate(const Sl2Element& x, const Eigen::Matrix2d& g) {
  const Eigen::Matrix2d m = g * x.matrix() * g.inverse();
  return Sl2Element{0.5 * (m(0, 0) - m(1, 1)), m(0, 1), m(1, 0)};
}

// The rotation subgroup element of angle phi.
inline Eigen::Matrix2d rotation(double phi) {
  Eigen::Matrix2d k;
  k << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
  return k;
}

}  // namespace eqloc::sl2
