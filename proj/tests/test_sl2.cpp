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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "eqloc/rng.hpp"
#include "eqloc/sl2.hpp"

using namespace eqloc::sl2;
using eqloc::SplitMix64;
using std::numbers::pi;

namespace {

const Sl2Element kRotation{0.0, 1.0, -1.0, };
const Sl2Element kDiagonal{1.0, 0.0, 0.0};

// Closed-form exp(tX) for traceless X: cosh(t mu) I + sinh(t mu)/mu X with
// mu^2 = a^2 + bc. Independent route used as the flow oracle.
Eigen::Matrix2cd matrix_exponential(const Sl2Element& x, double t) {
  const Complex mu = std::sqrt(Complex(x.a * x.a + x.b * x.c, 0.0));
  Complex ch, sh_over_mu;
  if (std::abs(mu) < 1e-12) {
    ch = 1.0;
    sh_over_mu = t;
  } else {
    ch = std::cosh(t * mu);
    sh_over_mu = std::sinh(t * mu) / mu;
  }
  Eigen::Matrix2cd m;
  m << ch + sh_over_mu * x.a, sh_over_mu * x.b, sh_over_mu * x.c,
      ch - sh_over_mu * x.a;
  return m;
}

Complex mobius_z(const Eigen::Matrix2cd& m, Complex z) {
  return (m(0, 0) * z + m(0, 1)) / (m(1, 0) * z + m(1, 1));
}

// The same action written in the w = 1/z chart.
Complex mobius_w(const Eigen::Matrix2cd& m, Complex w) {
  return (m(1, 0) + m(1, 1) * w) / (m(0, 0) + m(0, 1) * w);
}

// Central difference of the flow: the generator field at z.
Complex field_fd(const Sl2Element& x, Complex z, bool inverted) {
  const double delta = 1e-6;
  const Eigen::Matrix2cd fwd = matrix_exponential(x, delta);
  const Eigen::Matrix2cd bwd = matrix_exponential(x, -delta);
  if (inverted) return (mobius_w(fwd, z) - mobius_w(bwd, z)) / (2.0 * delta);
  return (mobius_z(fwd, z) - mobius_z(bwd, z)) / (2.0 * delta);
}

// Finite-difference derivative of the (finite-difference) field.
Complex weight_fd(const Sl2Element& x, Complex z, bool inverted) {
  const double h = 1e-4;
  return (field_fd(x, z + h, inverted) - field_fd(x, z - h, inverted)) /
         (2.0 * h);
}

Sl2Element random_regular(SplitMix64& rng) {
  for (;;) {
    Sl2Element x{4.0 * rng.next_double() - 2.0, 4.0 * rng.next_double() - 2.0,
                 4.0 * rng.next_double() - 2.0};
    if (std::abs(x.det()) >= 0.05) return x;
  }
}

Eigen::Matrix2d random_group_element(SplitMix64& rng) {
  const double phi = 2.0 * pi * rng.next_double();
  const double r = 0.5 + 1.5 * rng.next_double();
  const double shear = 2.0 * rng.next_double() - 1.0;
  Eigen::Matrix2d diag, unip;
  diag << r, 0.0, 0.0, 1.0 / r;
  unip << 1.0, shear, 0.0, 1.0;
  return rotation(phi) * diag * unip;
}

}  // namespace

TEST_CASE("regular class on pinned inputs") {
  CHECK(classify(kRotation) == RegularClass::Elliptic);
  CHECK(classify(kDiagonal) == RegularClass::Split);
  CHECK(classify(Sl2Element{0.0, 1.0, 0.0}) == RegularClass::NonRegular);
  CHECK(classify(Sl2Element{0.0, 0.0, 0.0}) == RegularClass::NonRegular);
}

TEST_CASE("classification agrees with the eigenvalue oracle") {
  SplitMix64 rng(61);
  for (int rep = 0; rep < 1000; ++rep) {
    const Sl2Element x = random_regular(rng);
    Eigen::EigenSolver<Eigen::Matrix2d> es(x.matrix());
    const bool oracle_elliptic = std::abs(es.eigenvalues()(0).imag()) > 1e-12;
    if (oracle_elliptic)
      CHECK(classify(x) == RegularClass::Elliptic);
    else
      CHECK(classify(x) == RegularClass::Split);
  }
}

TEST_CASE("flow zeros on pinned inputs") {
  {
    const auto zeros = flow_zeros(kRotation);
    const ProjPoint plus_i = ProjPoint::make({0.0, 1.0}, {1.0, 0.0});
    const ProjPoint minus_i = ProjPoint::make({0.0, -1.0}, {1.0, 0.0});
    const double hit_both =
        std::min(proj_distance(zeros[0], plus_i), proj_distance(zeros[0], minus_i)) +
        std::min(proj_distance(zeros[1], plus_i), proj_distance(zeros[1], minus_i));
    CHECK(hit_both <= 1e-12);
    CHECK(proj_distance(zeros[0], zeros[1]) > 0.5);
  }
  {
    const auto zeros = flow_zeros(kDiagonal);
    // eigenline of +1 is the first coordinate axis: the point at infinity
    CHECK(zeros[0].at_infinity());
    CHECK(proj_distance(zeros[1], ProjPoint::make({0.0, 0.0}, {1.0, 0.0})) <=
          1e-12);
  }
  CHECK_THROWS_AS(flow_zeros(Sl2Element{0.0, 1.0, 0.0}), std::domain_error);
}

TEST_CASE("zeros transform equivariantly under conjugation") {
  SplitMix64 rng(67);
  for (int rep = 0; rep < 50; ++rep) {
    const Sl2Element x = random_regular(rng);
    const Eigen::Matrix2d g = random_group_element(rng);
    const auto moved = flow_zeros(conjugate(x, g));
    const auto original = flow_zeros(x);
    for (const auto& zero : moved) {
      const double dist =
          std::min(proj_distance(zero, mobius_apply(g, original[0])),
                   proj_distance(zero, mobius_apply(g, original[1])));
      CHECK(dist <= 1e-9);
    }
  }
}

TEST_CASE("elliptic zeros pair off, split zeros stay on the real circle") {
  SplitMix64 rng(71);
  for (int rep = 0; rep < 200; ++rep) {
    const Sl2Element x = random_regular(rng);
    const auto zeros = flow_zeros(x);
    if (classify(x) == RegularClass::Elliptic) {
      REQUIRE(!zeros[0].at_infinity());
      REQUIRE(!zeros[1].at_infinity());
      CHECK(std::abs(zeros[0].affine() - std::conj(zeros[1].affine())) <=
            1e-10 * (1.0 + std::abs(zeros[0].affine())));
      CHECK(zeros[0].in_upper_half_plane() != zeros[1].in_upper_half_plane());
    } else {
      for (const auto& zero : zeros) {
        if (!zero.at_infinity())
          CHECK(std::abs(std::imag(zero.z1 * std::conj(zero.z2))) <= 1e-10);
      }
    }
  }
}

TEST_CASE("holomorphic weights on pinned inputs") {
  const ProjPoint plus_i = ProjPoint::make({0.0, 1.0}, {1.0, 0.0});
  const ProjPoint minus_i = ProjPoint::make({0.0, -1.0}, {1.0, 0.0});
  CHECK(std::abs(linearize(kRotation, plus_i) - Complex(0.0, 2.0)) <= 1e-14);
  CHECK(std::abs(linearize(kRotation, minus_i) - Complex(0.0, -2.0)) <= 1e-14);

  const ProjPoint origin = ProjPoint::make({0.0, 0.0}, {1.0, 0.0});
  const ProjPoint infinity = ProjPoint::make({1.0, 0.0}, {0.0, 0.0});
  CHECK(std::abs(linearize(kDiagonal, origin) - Complex(2.0, 0.0)) <= 1e-14);
  CHECK(std::abs(linearize(kDiagonal, infinity) - Complex(-2.0, 0.0)) <=
        1e-14);

  CHECK_THROWS_AS(linearize(kRotation, origin), std::invalid_argument);
}

TEST_CASE("weights match the finite-difference flow oracle") {
  SplitMix64 rng(73);
  for (int rep = 0; rep < 40; ++rep) {
    const Sl2Element x = random_regular(rng);
    for (const auto& zero : flow_zeros(x)) {
      const bool inverted = std::abs(zero.z1) > std::abs(zero.z2);
      const Complex coordinate =
          inverted ? zero.z2 / zero.z1 : zero.z1 / zero.z2;
      const Complex mu = linearize(x, zero);
      const Complex oracle = weight_fd(x, coordinate, inverted);
      CHECK(std::abs(mu - oracle) <= 1e-5 * std::max(1.0, std::abs(mu)));
    }
  }
}

TEST_CASE("the two weights cancel") {
  SplitMix64 rng(79);
  for (int rep = 0; rep < 200; ++rep) {
    const auto zeros = zero_data(random_regular(rng));
    CHECK(std::abs(zeros[0].mu + zeros[1].mu) <= 1e-12);
  }
}

TEST_CASE("stability classification") {
  CHECK(classify_stability({-2.0, 0.0}) == Stability::Stable);
  CHECK(classify_stability({2.0, 0.0}) == Stability::Unstable);
  CHECK(classify_stability({0.0, 2.0}) == Stability::Rotation);
  CHECK_THROWS_AS(classify_stability({0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("multiplicities on pinned inputs") {
  {
    const auto zeros = zero_data(kRotation);
    for (const auto& z : zeros) {
      CHECK(z.multiplicity == (z.point.in_upper_half_plane() ? 1 : 0));
      CHECK(z.stability == Stability::Rotation);
    }
    CHECK(zeros[0].multiplicity + zeros[1].multiplicity == 1);
  }
  {
    const auto zeros = zero_data(kDiagonal);
    CHECK(zeros[0].point.at_infinity());
    CHECK(zeros[0].stability == Stability::Stable);
    CHECK(zeros[0].multiplicity == 1);
    CHECK(zeros[1].stability == Stability::Unstable);
    CHECK(zeros[1].multiplicity == 0);
  }
  {
    // reversing the flow swaps stable and unstable
    const auto zeros = zero_data(Sl2Element{-1.0, 0.0, 0.0});
    for (const auto& z : zeros) {
      if (z.point.at_infinity())
        CHECK(z.multiplicity == 0);
      else
        CHECK(z.multiplicity == 1);
    }
  }
  const auto zeros = zero_data(kRotation);
  CHECK_THROWS_AS(
      cycle_multiplicity(kRotation, zeros[0], CycleChoice::ConormalCircle),
      std::invalid_argument);
  CHECK_THROWS_AS(zero_data(Sl2Element{0.0, 1.0, 0.0}), std::domain_error);
}

TEST_CASE("exactly one zero counts for every regular element") {
  SplitMix64 rng(83);
  for (int rep = 0; rep < 500; ++rep) {
    const auto zeros = zero_data(random_regular(rng));
    CHECK(zeros[0].multiplicity + zeros[1].multiplicity == 1);
  }
}

TEST_CASE("localized values on pinned inputs") {
  {
    const Complex value = localization_value(kRotation, {1.0, 0.0});
    CHECK(std::abs(value - Complex(0.0, pi)) <= 1e-13);
  }
  {
    const Complex value = localization_value(kDiagonal, {1.0, 0.0});
    CHECK(std::abs(value - Complex(pi, 0.0)) <= 1e-13);
  }
  for (double lambda : {0.5, 2.0, 3.0}) {
    const Complex value =
        localization_value(Sl2Element{0.0, lambda, -lambda}, {1.0, 0.0});
    CHECK(std::abs(value - Complex(0.0, pi / lambda)) <= 1e-13 / lambda);
  }
  CHECK_THROWS_AS(localization_value(Sl2Element{0.0, 1.0, 0.0}, {1.0, 0.0}),
                  std::domain_error);
}

TEST_CASE("localized value is invariant under the rotation subgroup") {
  SplitMix64 rng(89);
  for (int rep = 0; rep < 20; ++rep) {
    const Sl2Element x = random_regular(rng);
    const Complex base = localization_value(x, {1.0, 0.0});
    for (int step = 0; step < 8; ++step) {
      const Sl2Element moved = conjugate(x, rotation(2.0 * pi * step / 8.0));
      CHECK(std::abs(localization_value(moved, {1.0, 0.0}) - base) <=
            1e-9 * std::abs(base));
    }
  }
}

TEST_CASE("moment pairing") {
  CHECK(moment_pairing({0.3, 0.7}, {0.0, 0.0}, kRotation) == Complex(0.0));
  // vanishes at every zero of the field, for any covector
  for (const auto& zero : flow_zeros(kRotation)) {
    CHECK(std::abs(moment_pairing(zero.affine(), {2.0, -1.0}, kRotation)) <=
          1e-14);
  }
  CHECK(moment_pairing({0.0, 0.0}, {1.0, 0.0}, kRotation) == Complex(1.0));

  // field values match the finite-difference flow oracle
  SplitMix64 rng(97);
  for (int rep = 0; rep < 30; ++rep) {
    const Sl2Element x = random_regular(rng);
    const Complex z{2.0 * rng.next_double() - 1.0,
                    2.0 * rng.next_double() - 1.0};
    const Complex via_field = moment_pairing(z, {1.0, 0.0}, x);
    const Complex oracle = field_fd(x, z, false);
    CHECK(std::abs(via_field - oracle) <=
          1e-6 * std::max(1.0, std::abs(via_field)));
  }
}
