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

#include <complex>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "eqloc/haar.hpp"
#include "eqloc/localization.hpp"
#include "eqloc/root_system.hpp"
#include "eqloc/sl2.hpp"

namespace eqloc {

using json = nlohmann::json;

inline json to_json(const Eigen::VectorXd& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

inline json to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

inline Eigen::VectorXd vector_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected a JSON array");
  Eigen::VectorXd v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw std::invalid_argument("expected numbers");
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return v;
}

// Row-major array of arrays of doubles.
inline Eigen::MatrixXd matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty())
    throw std::invalid_argument("expected a non-empty JSON array of arrays");
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  Eigen::MatrixXd m(j.size(), cols);
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      throw std::invalid_argument("matrix rows must have equal length");
    for (std::size_t k = 0; k < cols; ++k)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          j[i][k].get<double>();
  }
  return m;
}

// Complex values appear as {"re": x, "im": y}; a bare number means a real.
inline std::complex<double> complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_object() && j.contains("re"))
    return {j["re"].get<double>(), j.value("im", 0.0)};
  throw std::invalid_argument(
      "expected a number or an object with re/im fields");
}

inline json to_json(std::complex<double> z) {
  return json{{"re", z.real()}, {"im", z.imag()}};
}

// ---- root system documents -------------------------------------------------

inline json to_json(const RootSystemSpec& spec) {
  json j;
  j["rank"] = spec.rank;
  j["positive_roots"] = json::array();
  for (const auto& beta : spec.positive_roots)
    j["positive_roots"].push_back(to_json(beta));
  j["weyl_elements"] = json::array();
  for (const auto& w : spec.weyl_elements)
    j["weyl_elements"].push_back(
        json{{"matrix", to_json(w.matrix)}, {"sign", w.sign}});
  j["coroot_vectors"] = json::array();
  for (const auto& h : spec.coroot_vectors)
    j["coroot_vectors"].push_back(to_json(h));
  j["delta_p"] = to_json(spec.delta_p);
  j["inner_product"] = to_json(spec.inner_product);
  return j;
}

// Parses and validates a root-system document; throws
// RootSystemValidationError listing every violated invariant.
inline RootSystemSpec load_root_system(const json& j) {
  RootSystemSpec spec;
  try {
    spec.rank = j.at("rank").get<int>();
    for (const auto& beta : j.at("positive_roots"))
      spec.positive_roots.push_back(vector_from_json(beta));
    for (const auto& w : j.at("weyl_elements"))
      spec.weyl_elements.push_back(WeylElement{
          matrix_from_json(w.at("matrix")), w.at("sign").get<int>()});
    for (const auto& h : j.at("coroot_vectors"))
      spec.coroot_vectors.push_back(vector_from_json(h));
    spec.delta_p = vector_from_json(j.at("delta_p"));
    spec.inner_product = matrix_from_json(j.at("inner_product"));
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("root system document: ") +
                                e.what());
  }
  require_valid(spec);
  return spec;
}

inline RootSystemSpec load_root_system_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  json j;
  in >> j;
  return load_root_system(j);
}

// ---- Monte Carlo estimates --------------------------------------------------

inline json to_json(const HaarEstimate& e) {
  return json{{"mean_re", e.mean.real()},
              {"mean_im", e.mean.imag()},
              {"stderr", e.stderr_of_mean},
              {"n_samples", e.n_samples},
              {"seed", e.seed}};
}

// ---- fixed point problems ---------------------------------------------------

inline FixedPointDatum fixed_point_from_json(const json& j) {
  FixedPointDatum p;
  p.label = j.value("label", std::string{});
  p.j_value = complex_from_json(j.at("j_value"));
  p.weights = vector_from_json(j.at("weights"));
  p.multiplicity = j.value("multiplicity", 1);
  if (j.contains("class_value"))
    p.class_value = complex_from_json(j["class_value"]);
  return p;
}

inline DHProblem dh_problem_from_json(const json& j) {
  DHProblem problem;
  try {
    problem.n = j.at("n").get<int>();
    problem.c = complex_from_json(j.at("c"));
    for (const auto& p : j.at("points"))
      problem.points.push_back(fixed_point_from_json(p));
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("fixed point document: ") +
                                e.what());
  }
  return problem;
}

// ---- sl(2, R) zero data -----------------------------------------------------

inline json to_json(const sl2::ZeroDatum& z) {
  json j;
  if (z.point.at_infinity()) {
    j["z_re"] = "inf";
    j["z_im"] = "inf";
  } else {
    const auto affine = z.point.affine();
    j["z_re"] = affine.real();
    j["z_im"] = affine.imag();
  }
  j["mu_re"] = z.mu.real();
  j["mu_im"] = z.mu.imag();
  j["stability"] = sl2::to_string(z.stability);
  j["multiplicity"] = z.multiplicity;
  return j;
}

}  // namespace eqloc
