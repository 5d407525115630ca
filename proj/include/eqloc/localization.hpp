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
#include <iostream>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "eqloc/quadrature.hpp"
#include "eqloc/root_system.hpp"
#include "eqloc/skew.hpp"

namespace eqloc {

using Complex = std::complex<double>;

namespace detail {

// Diagnostics sink; set to nullptr to silence library warnings.
inline std::ostream*& warning_stream() {
  static std::ostream* stream = &std::cerr;
  return stream;
}

inline void warn(const std::string& msg) {
  if (warning_stream()) *warning_stream() << "warning: " << msg << "\n";
}

// Exact integer power of the imaginary unit.
inline Complex i_pow(long long k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

inline Complex int_pow(Complex base, int exponent) {
  if (exponent < 0) return 1.0 / int_pow(base, -exponent);
  Complex out{1.0, 0.0};
  for (int k = 0; k < exponent; ++k) out *= base;
  return out;
}

// 0! * 1! * ... * (n-1)!
inline double factorial_product(int n) {
  double prod = 1.0;
  double fact = 1.0;
  for (int k = 1; k < n; ++k) {
    fact *= k;
    prod *= fact;
  }
  return prod;
}

}  // namespace detail

// One zero of the generated vector field: its Hamiltonian value, the n
// rotation weights of the linearized flow, an integer multiplicity and the
// value of the localized cohomology class at the point.
struct FixedPointDatum {
  std::string label;
  Complex j_value{0.0, 0.0};
  Eigen::VectorXd weights;
  int multiplicity = 1;
  Complex class_value{1.0, 0.0};
};

struct DHProblem {
  int n = 0;  // half-dimension: every point carries n weights
  Complex c{1.0, 0.0};
  std::vector<FixedPointDatum> points;
};

namespace detail {

inline void validate_points(int n, const std::vector<FixedPointDatum>& points) {
  if (points.empty()) throw std::invalid_argument("fixed point list is empty");
  for (const auto& p : points) {
    if (p.weights.size() != n)
      throw std::invalid_argument("fixed point '" + p.label + "' has " +
                                  std::to_string(p.weights.size()) +
                                  " weights, expected " + std::to_string(n));
    for (Eigen::Index j = 0; j < p.weights.size(); ++j)
      if (p.weights(j) == 0.0)
        throw std::domain_error("fixed point '" + p.label +
                                "' has a zero rotation weight");
    if (p.multiplicity < 0)
      throw std::invalid_argument("fixed point '" + p.label +
                                  "' has negative multiplicity");
  }
}

}  // namespace detail

// Localization sum for a closed equivariant class: i^n * sum over zeros of
// multiplicity * class_value / (w_1 ... w_n), the (-1)^(n/2) branch taken as
// the principal i^n.
inline Complex bv_fixed_point_sum(int n,
                                  const std::vector<FixedPointDatum>& points) {
  detail::validate_points(n, points);
  Complex sum{0.0, 0.0};
  for (const auto& p : points) {
    if (p.multiplicity == 0) continue;
    sum += static_cast<double>(p.multiplicity) * p.class_value /
           p.weights.prod();
  }
  return detail::i_pow(n) * sum;
}

// Exact stationary-phase sum (2*pi/c)^n * sum_p multiplicity * e^{c J(p)} /
// (w_1 ... w_n)_p.
inline Complex dh_fixed_point_sum(const DHProblem& problem) {
  if (problem.c == Complex{0.0, 0.0})
    throw std::invalid_argument("c must be nonzero");
  detail::validate_points(problem.n, problem.points);
  Complex sum{0.0, 0.0};
  for (const auto& p : problem.points) {
    if (p.multiplicity == 0) continue;
    sum += static_cast<double>(p.multiplicity) * std::exp(problem.c * p.j_value) /
           p.weights.prod();
  }
  return detail::int_pow(2.0 * std::numbers::pi / problem.c, problem.n) * sum;
}

namespace detail {

inline void require_regular_pair(const RootSystemSpec& spec,
                                 const CartanElement& theta,
                                 const CartanElement& t, double tol) {
  if (theta.size() != spec.rank || t.size() != spec.rank)
    throw std::invalid_argument("element size does not match root-system rank");
  if (!is_regular(spec, theta, tol))
    throw std::domain_error("x is not regular: a positive root vanishes on it");
  if (!is_regular(spec, t, tol))
    throw std::domain_error("x0 is not regular: a positive root vanishes on it");
}

}  // namespace detail

// Weyl-group form of the orbital integral over G/T,
//   c^{-|P|} * sum_w exp(c * (w.lambda_{x0})(x)) / prod_{beta in P}
//   (w.beta)(i x),
// evaluated from declarative root data. theta and t are the coordinate
// vectors of x = i*theta and x0 = i*t. At c = -i this reduces, for U(n), to
// the determinant form times the orbit volume.
inline Complex harish_chandra_sum(const RootSystemSpec& spec,
                                  const CartanElement& theta,
                                  const CartanElement& t, Complex c,
                                  double tol = kRegularityTol) {
  detail::require_regular_pair(spec, theta, t, tol);
  const int n_roots = static_cast<int>(spec.positive_roots.size());
  const Eigen::VectorXd gt = spec.inner_product * t;
  Complex sum{0.0, 0.0};
  for (const auto& w : spec.weyl_elements) {
    const Eigen::VectorXd theta_w = w.matrix.transpose() * theta;
    double denom = 1.0;
    for (const auto& beta : spec.positive_roots) denom *= beta.dot(theta_w);
    sum += std::exp(-c * theta_w.dot(gt)) / denom;
  }
  const double parity = (n_roots % 2 == 0) ? 1.0 : -1.0;
  return detail::int_pow(c, -n_roots) * parity * sum;
}

// Closed determinant form of the U(n) orbital phase integral against
// normalized invariant measure:
//   (prod_{k<n} k!) * i^{-P(n)} * det[exp(i theta_r t_s)] /
//   (prod_{r<s}(t_r - t_s) * prod_{r<s}(theta_r - theta_s)).
inline Complex hciz_exact(const CartanElement& theta, const CartanElement& t,
                          double tol = kRegularityTol) {
  if (theta.size() != t.size())
    throw std::invalid_argument("theta and t must have the same size");
  const int n = static_cast<int>(theta.size());
  if (!is_regular(theta, tol) || !is_regular(t, tol))
    throw std::domain_error("theta and t must both have distinct entries");
  if (!is_strictly_decreasing(t))
    detail::warn(
        "hciz_exact: t is not strictly decreasing; the formula is evaluated "
        "anyway");
  double min_gap = std::numeric_limits<double>::infinity();
  for (int r = 0; r < n; ++r)
    for (int s = r + 1; s < n; ++s)
      min_gap = std::min({min_gap, std::abs(theta(r) - theta(s)),
                          std::abs(t(r) - t(s))});
  Eigen::VectorXcd theta_c = theta.cast<Complex>();
  Eigen::VectorXcd t_c = t.cast<Complex>();
  const Complex van_theta = vandermonde<Complex>(theta_c);
  const Complex van_t = vandermonde<Complex>(t_c);
  if (n > 1 && min_gap < 1e-6)
    detail::warn("hciz_exact: near-degenerate arguments (min gap " +
                 std::to_string(min_gap) + "), estimated error amplification " +
                 std::to_string(1.0 / std::abs(van_theta * van_t)));
  Eigen::MatrixXcd m(n, n);
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s)
      m(r, s) = std::exp(Complex(0.0, theta(r) * t(s)));
  const int p = positive_root_count(n);
  return detail::factorial_product(n) * detail::i_pow(-p) * m.determinant() /
         (van_t * van_theta);
}

// Weyl-sum form of the same normalized integral for arbitrary declarative
// root data:
//   prod_beta (delta_P(H_beta) / beta(-i x0)) *
//   sum_w exp(i (w.lambda_{x0})(x)) / prod_beta (w.beta)(x).
// Coincides with hciz_exact on the built-in U(n) data.
inline Complex hciz_generic(const RootSystemSpec& spec,
                            const CartanElement& theta, const CartanElement& t,
                            double tol = kRegularityTol) {
  detail::require_regular_pair(spec, theta, t, tol);
  const int n_roots = static_cast<int>(spec.positive_roots.size());
  double prefactor = 1.0;
  for (std::size_t b = 0; b < spec.positive_roots.size(); ++b)
    prefactor *= spec.delta_p.dot(spec.coroot_vectors[b]) /
                 spec.positive_roots[b].dot(t);
  const Eigen::VectorXd gt = spec.inner_product * t;
  Complex sum{0.0, 0.0};
  for (const auto& w : spec.weyl_elements) {
    const Eigen::VectorXd theta_w = w.matrix.transpose() * theta;
    double denom = 1.0;
    for (const auto& beta : spec.positive_roots) denom *= beta.dot(theta_w);
    const double pairing = theta_w.dot(gt);
    sum += Complex(std::cos(pairing), std::sin(pairing)) / denom;
  }
  return prefactor * detail::i_pow(-n_roots) * sum;
}

// Symplectic volume of the maximal U(n) orbit through diag(i t):
// prod_{r<s}(t_r - t_s) / prod_{k=0}^{n-1} k!.
inline double coadjoint_volume_un(const CartanElement& t,
                                  double tol = kRegularityTol) {
  if (!is_regular(t, tol))
    throw std::domain_error("t must have distinct entries");
  const int n = static_cast<int>(t.size());
  double numerator = 1.0;
  for (int r = 0; r < n; ++r)
    for (int s = r + 1; s < n; ++s) numerator *= t(r) - t(s);
  return numerator / detail::factorial_product(n);
}

// Volume from declarative root data: prod_beta beta(-i x0) / delta_P(H_beta).
// Reduces to coadjoint_volume_un on the built-in U(n) data.
inline double coadjoint_volume(const RootSystemSpec& spec,
                               const CartanElement& t,
                               double tol = kRegularityTol) {
  if (t.size() != spec.rank)
    throw std::invalid_argument("element size does not match root-system rank");
  if (!is_regular(spec, t, tol))
    throw std::domain_error("x0 is not regular: a positive root vanishes on it");
  bool positive = true;
  double volume = 1.0;
  for (std::size_t b = 0; b < spec.positive_roots.size(); ++b) {
    const double root_value = spec.positive_roots[b].dot(t);
    if (root_value <= 0.0) positive = false;
    volume *= root_value / spec.delta_p.dot(spec.coroot_vectors[b]);
  }
  if (!positive)
    detail::warn(
        "coadjoint_volume: positivity condition beta(-i x0) > 0 violated; "
        "the returned product may not be a volume");
  return volume;
}

// The determinant form of the U(n) localization identity evaluated at a
// given (theta, t): i^{-P(n)} det[exp(i theta_r t_s)] / prod(theta_r -
// theta_s). Building block for the confluent volume limit.
inline Complex un_determinant_form(const CartanElement& theta,
                                   const CartanElement& t) {
  const int n = static_cast<int>(theta.size());
  Eigen::MatrixXcd m(n, n);
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s)
      m(r, s) = std::exp(Complex(0.0, theta(r) * t(s)));
  Eigen::VectorXcd theta_c = theta.cast<Complex>();
  return detail::i_pow(-positive_root_count(n)) * m.determinant() /
         vandermonde<Complex>(theta_c);
}

struct VolumeLimit {
  std::vector<double> epsilons;
  std::vector<Complex> samples;  // determinant form at theta_j = eps*(n-j)
  double extrapolated = 0.0;     // polynomial extrapolation to eps = 0
};

// Confluent limit of the determinant form: evaluates it along the pencil
// theta_j = eps*(n-j) and extrapolates to eps = 0, which recovers the
// symplectic volume of the orbit of t.
inline VolumeLimit volume_limit_profile(const CartanElement& t,
                                        std::vector<double> epsilons,
                                        double tol = kRegularityTol) {
  if (!is_regular(t, tol))
    throw std::domain_error("t must have distinct entries");
  if (epsilons.size() < 3)
    throw std::invalid_argument("need at least 3 epsilon values");
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    if (epsilons[i] <= 0.0)
      throw std::invalid_argument("epsilon values must be positive");
    if (i > 0 && epsilons[i] >= epsilons[i - 1])
      throw std::invalid_argument("epsilon values must be strictly decreasing");
  }
  const int n = static_cast<int>(t.size());
  VolumeLimit out;
  out.epsilons = epsilons;
  for (const double eps : epsilons) {
    CartanElement theta(n);
    for (int j = 0; j < n; ++j) theta(j) = eps * (n - 1 - j);
    out.samples.push_back(un_determinant_form(theta, t));
  }
  // Neville's scheme at eps = 0; the sampled expression is analytic in eps.
  std::vector<Complex> table = out.samples;
  const std::size_t m = table.size();
  for (std::size_t j = 1; j < m; ++j)
    for (std::size_t i = 0; i + j < m; ++i)
      table[i] = (epsilons[i] * table[i + 1] - epsilons[i + j] * table[i]) /
                 (epsilons[i] - epsilons[i + j]);
  out.extrapolated = table[0].real();
  return out;
}

inline double volume_limit(const CartanElement& t, std::vector<double> epsilons,
                           double tol = kRegularityTol) {
  return volume_limit_profile(t, std::move(epsilons), tol).extrapolated;
}

// Exactness check on the rotating two-sphere (J = height, polar zeros with
// weights +1/-1): the two-point sum against adaptive quadrature of
// 2*pi*Int_{-1}^{1} e^{cz} dz.
struct SphereCheck {
  Complex fixed_point_value;
  Complex quadrature_value;
  double abs_diff = 0.0;
};

inline SphereCheck sphere_dh_check(Complex c) {
  if (c == Complex{0.0, 0.0}) throw std::invalid_argument("c must be nonzero");
  DHProblem problem;
  problem.n = 1;
  problem.c = c;
  FixedPointDatum north{"north", {1.0, 0.0}, Eigen::VectorXd::Ones(1), 1,
                        {1.0, 0.0}};
  FixedPointDatum south{"south", {-1.0, 0.0}, -Eigen::VectorXd::Ones(1), 1,
                        {1.0, 0.0}};
  problem.points = {north, south};
  SphereCheck out;
  out.fixed_point_value = dh_fixed_point_sum(problem);
  out.quadrature_value =
      2.0 * std::numbers::pi *
      integrate_adaptive([c](double z) { return std::exp(c * z); }, -1.0, 1.0);
  out.abs_diff = std::abs(out.fixed_point_value - out.quadrature_value);
  return out;
}

}  // namespace eqloc
