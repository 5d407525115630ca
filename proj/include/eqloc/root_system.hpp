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

#include <algorithm>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "eqloc/rng.hpp"

namespace eqloc {

// A point of the Cartan subalgebra of u(n), stored as the real vector theta
// with x = diag(i*theta_1, ..., i*theta_n). The same representation carries
// the reference element x0 (the t-vector).
using CartanElement = Eigen::VectorXd;

// Default tolerance on pairwise gaps when testing regularity. The exact
// formulas divide by these gaps, so the tolerance bounds the amplification.
inline constexpr double kRegularityTol = 1e-9;

// Regular means all diagonal entries distinct: min_{r<s} |theta_r - theta_s|
// above tol.
inline bool is_regular(const CartanElement& theta, double tol = kRegularityTol) {
  for (Eigen::Index r = 0; r < theta.size(); ++r)
    for (Eigen::Index s = r + 1; s < theta.size(); ++s)
      if (std::abs(theta(r) - theta(s)) <= tol) return false;
  return true;
}

// Strict descending order t_1 > t_2 > ... > t_n (the dominance condition the
// closed-form volume and orbital-integral formulas assume for x0).
inline bool is_strictly_decreasing(const CartanElement& t) {
  for (Eigen::Index j = 0; j + 1 < t.size(); ++j)
    if (!(t(j) > t(j + 1))) return false;
  return true;
}

// An element of the Weyl group S_n of U(n): a permutation of {0..n-1} with
// its parity.
struct WeylPermutation {
  std::vector<int> sigma;
  int sign = +1;
};

inline int permutation_parity(const std::vector<int>& sigma) {
  int inversions = 0;
  for (std::size_t i = 0; i < sigma.size(); ++i)
    for (std::size_t j = i + 1; j < sigma.size(); ++j)
      if (sigma[i] > sigma[j]) ++inversions;
  return inversions % 2 == 0 ? +1 : -1;
}

inline WeylPermutation make_weyl_permutation(std::vector<int> sigma) {
  std::vector<int> seen = sigma;
  std::sort(seen.begin(), seen.end());
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (seen[i] != static_cast<int>(i))
      throw std::invalid_argument("sigma is not a permutation of 0..n-1");
  const int sign = permutation_parity(sigma);
  return WeylPermutation{std::move(sigma), sign};
}

// theta'_j = theta_{sigma(j)}.
inline CartanElement weyl_apply(const WeylPermutation& w,
                                const CartanElement& theta) {
  if (static_cast<Eigen::Index>(w.sigma.size()) != theta.size())
    throw std::invalid_argument("permutation size does not match element");
  CartanElement out(theta.size());
  for (Eigen::Index j = 0; j < theta.size(); ++j) out(j) = theta(w.sigma[j]);
  return out;
}

// weyl_apply(compose(w1, w2), x) == weyl_apply(w1, weyl_apply(w2, x)).
inline WeylPermutation compose(const WeylPermutation& w1,
                               const WeylPermutation& w2) {
  if (w1.sigma.size() != w2.sigma.size())
    throw std::invalid_argument("permutation sizes differ");
  std::vector<int> sigma(w1.sigma.size());
  for (std::size_t j = 0; j < sigma.size(); ++j)
    sigma[j] = w2.sigma[w1.sigma[j]];
  return WeylPermutation{std::move(sigma), w1.sign * w2.sign};
}

// The positive root alpha_{rs}(H) = H_r - H_s of u(n), 0-based indices r < s.
struct PositiveRootUn {
  int r = 0;
  int s = 1;
};

// Evaluates H_r - H_s on a complex diagonal element.
inline std::complex<double> root_eval(const PositiveRootUn& root,
                                      const Eigen::VectorXcd& h) {
  if (root.r < 0 || root.s <= root.r || root.s >= h.size())
    throw std::invalid_argument("root indices out of range");
  return h(root.r) - h(root.s);
}

// A Weyl-group element of a declarative root-system description. `matrix`
// is the action on linear functionals (coefficient vectors); the action on
// Cartan coordinates is its transpose. `sign` is det(matrix).
struct WeylElement {
  Eigen::MatrixXd matrix;
  int sign = +1;
};

// Declarative root data for a compact connected group: everything the
// Weyl-sum and volume formulas consume. Coordinates are chosen so that a
// real vector y represents the Cartan element with complexified coordinates
// i*y; roots, delta_p and coroots are then real coefficient vectors, and
// the Gram matrix realizes the invariant inner product (identity for U(n)).
struct RootSystemSpec {
  int rank = 0;
  std::vector<Eigen::VectorXd> positive_roots;
  std::vector<WeylElement> weyl_elements;
  std::vector<Eigen::VectorXd> coroot_vectors;  // H_beta, one per root
  Eigen::VectorXd delta_p;                      // half-sum of positive roots
  Eigen::MatrixXd inner_product;                // SPD Gram matrix
};

// Regularity relative to a root system: no positive root vanishes on y.
inline bool is_regular(const RootSystemSpec& spec, const CartanElement& y,
                       double tol = kRegularityTol) {
  for (const auto& beta : spec.positive_roots)
    if (std::abs(beta.dot(y)) <= tol) return false;
  return true;
}

// Checks every structural invariant of a spec; returns one message per
// violated check (empty means valid).
inline std::vector<std::string> validate_root_system(
    const RootSystemSpec& spec) {
  std::vector<std::string> errors;
  const int rank = spec.rank;
  if (rank < 1) {
    errors.push_back("rank: must be a positive integer");
    return errors;
  }

  bool shapes_ok = true;
  for (const auto& beta : spec.positive_roots)
    if (beta.size() != rank) shapes_ok = false;
  for (const auto& h : spec.coroot_vectors)
    if (h.size() != rank) shapes_ok = false;
  for (const auto& w : spec.weyl_elements)
    if (w.matrix.rows() != rank || w.matrix.cols() != rank) shapes_ok = false;
  if (spec.delta_p.size() != rank) shapes_ok = false;
  if (spec.inner_product.rows() != rank || spec.inner_product.cols() != rank)
    shapes_ok = false;
  if (!shapes_ok) {
    errors.push_back("shape: all vectors and matrices must have size rank");
    return errors;
  }
  if (spec.coroot_vectors.size() != spec.positive_roots.size())
    errors.push_back("coroot_vectors: need exactly one per positive root");
  if (spec.weyl_elements.empty())
    errors.push_back("weyl_elements: must contain at least the identity");

  // inner product: symmetric positive definite
  if ((spec.inner_product - spec.inner_product.transpose())
          .cwiseAbs()
          .maxCoeff() > 1e-12) {
    errors.push_back("inner_product: matrix is not symmetric");
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(spec.inner_product);
    if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() <= 0.0)
      errors.push_back("inner_product: matrix is not positive definite");
  }

  // delta_p = half-sum of positive roots
  Eigen::VectorXd half_sum = Eigen::VectorXd::Zero(rank);
  for (const auto& beta : spec.positive_roots) half_sum += 0.5 * beta;
  if ((half_sum - spec.delta_p).cwiseAbs().maxCoeff() > 1e-12)
    errors.push_back("delta_p: does not equal half the sum of positive roots");

  // Weyl elements: orthogonal, sign = det, closed under composition.
  for (std::size_t i = 0; i < spec.weyl_elements.size(); ++i) {
    const auto& w = spec.weyl_elements[i].matrix;
    if ((w.transpose() * w - Eigen::MatrixXd::Identity(rank, rank))
            .cwiseAbs()
            .maxCoeff() > 1e-10) {
      errors.push_back("weyl_elements[" + std::to_string(i) +
                       "]: matrix is not orthogonal");
      continue;
    }
    const double det = w.determinant();
    if (std::abs(det - spec.weyl_elements[i].sign) > 1e-8)
      errors.push_back("weyl_elements[" + std::to_string(i) +
                       "]: sign does not match det(matrix)");
  }
  auto find_member = [&](const Eigen::MatrixXd& m) {
    for (const auto& w : spec.weyl_elements)
      if ((w.matrix - m).cwiseAbs().maxCoeff() <= 1e-9) return true;
    return false;
  };
  bool closed = true;
  for (const auto& w1 : spec.weyl_elements) {
    for (const auto& w2 : spec.weyl_elements) {
      if (!find_member(w1.matrix * w2.matrix)) {
        closed = false;
        break;
      }
    }
    if (!closed) break;
  }
  if (!closed)
    errors.push_back(
        "weyl_elements: closure violated (a product of two elements is "
        "missing from the list)");

  // beta(H) = <H, H_beta> on a fixed batch of random H, and beta(H_beta) > 0.
  if (spec.coroot_vectors.size() == spec.positive_roots.size()) {
    SplitMix64 rng(0xC0807);  // fixed internal seed: validation is pure
    bool pairing_ok = true;
    for (int trial = 0; trial < 16 && pairing_ok; ++trial) {
      Eigen::VectorXd h(rank);
      for (int j = 0; j < rank; ++j) h(j) = 2.0 * rng.next_double() - 1.0;
      for (std::size_t b = 0; b < spec.positive_roots.size(); ++b) {
        const double lhs = spec.positive_roots[b].dot(h);
        const double rhs = h.dot(spec.inner_product * spec.coroot_vectors[b]);
        if (std::abs(lhs - rhs) > 1e-10) {
          pairing_ok = false;
          break;
        }
      }
    }
    if (!pairing_ok)
      errors.push_back(
          "coroot_vectors: beta(H) != <H, H_beta> for a sampled H");
    for (std::size_t b = 0; b < spec.positive_roots.size(); ++b) {
      if (spec.positive_roots[b].dot(spec.coroot_vectors[b]) <= 0.0) {
        errors.push_back("positive_roots[" + std::to_string(b) +
                         "]: beta(H_beta) is not positive");
      }
    }
  }
  return errors;
}

struct RootSystemValidationError : std::runtime_error {
  explicit RootSystemValidationError(const std::vector<std::string>& errors)
      : std::runtime_error(join(errors)), violations(errors) {}
  std::vector<std::string> violations;

 private:
  static std::string join(const std::vector<std::string>& errors) {
    std::string msg = "root system document is invalid:";
    for (const auto& e : errors) msg += "\n  - " + e;
    return msg;
  }
};

inline void require_valid(const RootSystemSpec& spec) {
  auto errors = validate_root_system(spec);
  if (!errors.empty()) throw RootSystemValidationError(errors);
}

// The built-in U(n) data: roots e_r - e_s (r < s), coroots e_r - e_s, the
// full symmetric group as permutation matrices, identity Gram matrix.
inline RootSystemSpec unitary_root_system(int n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  RootSystemSpec spec;
  spec.rank = n;
  spec.inner_product = Eigen::MatrixXd::Identity(n, n);
  for (int r = 0; r < n; ++r) {
    for (int s = r + 1; s < n; ++s) {
      Eigen::VectorXd beta = Eigen::VectorXd::Zero(n);
      beta(r) = 1.0;
      beta(s) = -1.0;
      spec.positive_roots.push_back(beta);
      spec.coroot_vectors.push_back(beta);
    }
  }
  spec.delta_p = Eigen::VectorXd::Zero(n);
  for (const auto& beta : spec.positive_roots) spec.delta_p += 0.5 * beta;

  std::vector<int> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  do {
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
    for (int j = 0; j < n; ++j) p(sigma[j], j) = 1.0;
    spec.weyl_elements.push_back(WeylElement{p, permutation_parity(sigma)});
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return spec;
}

// Number of positive roots of U(n).
inline int positive_root_count(int n) { return n * (n - 1) / 2; }

}  // namespace eqloc
