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

#include "eqloc/root_system.hpp"
#include "eqloc/serialize.hpp"

using namespace eqloc;

namespace {

CartanElement vec(std::initializer_list<double> values) {
  CartanElement v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v(i++) = x;
  return v;
}

}  // namespace

TEST_CASE("regularity and ordering predicates") {
  CHECK(is_regular(vec({1.0, 0.0}), 1e-9));
  CHECK_FALSE(is_regular(vec({1.0, 1.0})));
  CHECK_FALSE(is_regular(vec({1.0, 1.0 + 5e-10}), 1e-9));

  CHECK(is_strictly_decreasing(vec({2.0, 1.0})));
  CHECK_FALSE(is_strictly_decreasing(vec({1.0, 2.0})));
  CHECK(is_strictly_decreasing(vec({3.0, 1.0, 0.0})));
}

TEST_CASE("weyl permutations act by index relabeling") {
  const auto swap2 = make_weyl_permutation({1, 0});
  CHECK(swap2.sign == -1);
  const CartanElement out = weyl_apply(swap2, vec({5.0, 7.0}));
  CHECK(out(0) == 7.0);
  CHECK(out(1) == 5.0);

  const auto id3 = make_weyl_permutation({0, 1, 2});
  CHECK(id3.sign == 1);
  CHECK(weyl_apply(id3, vec({1.0, 2.0, 3.0})) == vec({1.0, 2.0, 3.0}));

  // sigma = (2,3,1) in 1-based notation sends (a,b,c) to (b,c,a)
  const auto cyc = make_weyl_permutation({1, 2, 0});
  const CartanElement rotated = weyl_apply(cyc, vec({1.0, 2.0, 3.0}));
  CHECK(rotated == vec({2.0, 3.0, 1.0}));

  CHECK_THROWS_AS(weyl_apply(swap2, vec({1.0, 2.0, 3.0})),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_weyl_permutation({0, 0, 1}), std::invalid_argument);
}

TEST_CASE("composition law matches successive application") {
  SplitMix64 rng(3);
  for (int rep = 0; rep < 40; ++rep) {
    const int n = 2 + static_cast<int>(rng.next() % 4);
    std::vector<int> s1(n), s2(n);
    std::iota(s1.begin(), s1.end(), 0);
    std::iota(s2.begin(), s2.end(), 0);
    for (int j = n - 1; j > 0; --j) {
      std::swap(s1[j], s1[rng.next() % (j + 1)]);
      std::swap(s2[j], s2[rng.next() % (j + 1)]);
    }
    const auto w1 = make_weyl_permutation(s1);
    const auto w2 = make_weyl_permutation(s2);
    CartanElement x(n);
    for (int j = 0; j < n; ++j) x(j) = rng.next_normal();
    CHECK(weyl_apply(compose(w1, w2), x) == weyl_apply(w1, weyl_apply(w2, x)));
    CHECK(compose(w1, w2).sign == w1.sign * w2.sign);
    CHECK(is_regular(x) == is_regular(weyl_apply(w1, x)));
  }
}

TEST_CASE("root evaluation on complex diagonals") {
  Eigen::VectorXcd h2(2);
  h2 << std::complex<double>(0.0, 3.0), std::complex<double>(0.0, 1.0);
  CHECK(root_eval(PositiveRootUn{0, 1}, h2) == std::complex<double>(0.0, 2.0));

  Eigen::VectorXcd h3(3);
  h3 << std::complex<double>(0.0, 3.0), std::complex<double>(0.0, 1.0),
      std::complex<double>(0.0, 0.0);
  CHECK(root_eval(PositiveRootUn{0, 2}, h3) == std::complex<double>(0.0, 3.0));

  Eigen::VectorXcd equal(3);
  equal << 2.0, 2.0, 3.0;
  CHECK(root_eval(PositiveRootUn{0, 1}, equal) == std::complex<double>(0.0));

  CHECK_THROWS_AS(root_eval(PositiveRootUn{0, 5}, h3), std::invalid_argument);
}

TEST_CASE("built-in U(n) root data") {
  for (int n : {1, 2, 3, 4}) {
    const RootSystemSpec spec = unitary_root_system(n);
    CHECK(static_cast<int>(spec.positive_roots.size()) ==
          positive_root_count(n));
    std::size_t factorial = 1;
    for (int k = 2; k <= n; ++k) factorial *= k;
    CHECK(spec.weyl_elements.size() == factorial);
    CHECK(validate_root_system(spec).empty());
  }

  const RootSystemSpec u2 = unitary_root_system(2);
  CHECK(u2.delta_p.dot(u2.coroot_vectors[0]) == doctest::Approx(1.0));

  // delta_p pairings for (1,2), (1,3), (2,3) are s - r = 1, 2, 1
  const RootSystemSpec u3 = unitary_root_system(3);
  CHECK(u3.delta_p.dot(u3.coroot_vectors[0]) == doctest::Approx(1.0));
  CHECK(u3.delta_p.dot(u3.coroot_vectors[1]) == doctest::Approx(2.0));
  CHECK(u3.delta_p.dot(u3.coroot_vectors[2]) == doctest::Approx(1.0));

  for (std::size_t b = 0; b < u3.positive_roots.size(); ++b)
    CHECK(u3.positive_roots[b].dot(u3.coroot_vectors[b]) > 0.0);

  const RootSystemSpec u1 = unitary_root_system(1);
  CHECK(u1.positive_roots.empty());
  CHECK(u1.weyl_elements.size() == 1);
}

TEST_CASE("root system documents round trip") {
  const RootSystemSpec spec = unitary_root_system(3);
  const json doc = to_json(spec);
  const RootSystemSpec loaded = load_root_system(doc);
  CHECK(loaded.rank == spec.rank);
  CHECK(loaded.positive_roots.size() == spec.positive_roots.size());
  CHECK(loaded.weyl_elements.size() == spec.weyl_elements.size());
  for (std::size_t i = 0; i < spec.positive_roots.size(); ++i)
    CHECK(loaded.positive_roots[i] == spec.positive_roots[i]);
  CHECK(loaded.delta_p == spec.delta_p);
  CHECK(loaded.inner_product == spec.inner_product);
  CHECK(to_json(loaded) == doc);
}

TEST_CASE("loader names every violated invariant") {
  {
    json doc = to_json(unitary_root_system(2));
    doc["delta_p"] = json::array({0.25, -0.25});
    try {
      load_root_system(doc);
      FAIL("expected a validation error");
    } catch (const RootSystemValidationError& e) {
      REQUIRE(e.violations.size() == 1);
      CHECK(e.violations[0].find("delta_p") != std::string::npos);
    }
  }
  {
    // Dropping one 3-cycle of S_3 breaks closure.
    json doc = to_json(unitary_root_system(3));
    auto& elements = doc["weyl_elements"];
    for (std::size_t i = 0; i < elements.size(); ++i) {
      const Eigen::MatrixXd m = matrix_from_json(elements[i]["matrix"]);
      if (m(1, 0) == 1.0 && m(2, 1) == 1.0 && m(0, 2) == 1.0) {
        elements.erase(i);
        break;
      }
    }
    try {
      load_root_system(doc);
      FAIL("expected a validation error");
    } catch (const RootSystemValidationError& e) {
      bool mentions_closure = false;
      for (const auto& v : e.violations)
        mentions_closure |= v.find("closure") != std::string::npos;
      CHECK(mentions_closure);
    }
  }
  {
    json doc = to_json(unitary_root_system(2));
    doc["weyl_elements"][1]["sign"] = 1;  // the transposition is odd
    CHECK_THROWS_AS(load_root_system(doc), RootSystemValidationError);
  }
  {
    json doc = to_json(unitary_root_system(2));
    doc["inner_product"] = json::array({json::array({1.0, 2.0}),
                                        json::array({2.0, 1.0})});
    try {
      load_root_system(doc);
      FAIL("expected a validation error");
    } catch (const RootSystemValidationError& e) {
      bool mentions = false;
      for (const auto& v : e.violations)
        mentions |= v.find("inner_product") != std::string::npos;
      CHECK(mentions);
    }
  }
  {
    json doc = to_json(unitary_root_system(2));
    doc.erase("coroot_vectors");
    CHECK_THROWS_AS(load_root_system(doc), std::invalid_argument);
  }
}
