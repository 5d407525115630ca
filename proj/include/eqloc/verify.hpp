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

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "eqloc/haar.hpp"
#include "eqloc/localization.hpp"
#include "eqloc/rng.hpp"
#include "eqloc/root_system.hpp"
#include "eqloc/serialize.hpp"
#include "eqloc/skew.hpp"
#include "eqloc/sl2.hpp"

namespace eqloc::verify {

struct Check {
  std::string name;
  double measured = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double runtime_ms = 0.0;
  double runtime_budget_ms = 0.0;
  std::vector<Check> checks;

  void add(const std::string& check_name, double measured, double threshold) {
    checks.push_back(
        {check_name, measured, threshold, measured <= threshold});
  }
};

struct Config {
  std::uint64_t seed = kDefaultSeed;
  int workers = 1;
};

// ---- deterministic random inputs -------------------------------------------

inline Eigen::MatrixXd random_skew(SplitMix64& rng, int dim) {
  Eigen::MatrixXd m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = rng.next_normal();
  return 0.5 * (m - m.transpose()).eval();
}

// Haar-ish orthogonal matrix with determinant +1.
inline Eigen::MatrixXd random_special_orthogonal(SplitMix64& rng, int dim) {
  Eigen::MatrixXd g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = rng.next_normal();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j)
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  if (q.determinant() < 0.0) q.col(0) = -q.col(0);
  return q;
}

// Regular strictly decreasing vectors with comfortably separated entries.
inline CartanElement random_decreasing(SplitMix64& rng, int n) {
  CartanElement v(n);
  double level = 2.0 * rng.next_double() - 1.0;
  for (int j = 0; j < n; ++j) {
    v(j) = level;
    level -= 0.35 + 1.15 * rng.next_double();
  }
  return v;
}

inline Eigen::Matrix2d random_sl2_group(SplitMix64& rng) {
  // Iwasawa coordinates: rotation * diag(r, 1/r) * unipotent.
  const double phi = 2.0 * std::numbers::pi * rng.next_double();
  const double r = 0.5 + 1.5 * rng.next_double();
  const double x = 2.0 * rng.next_double() - 1.0;
  Eigen::Matrix2d diag;
  diag << r, 0.0, 0.0, 1.0 / r;
  Eigen::Matrix2d unip;
  unip << 1.0, x, 0.0, 1.0;
  return sl2::rotation(phi) * diag * unip;
}

inline sl2::Sl2Element random_regular_sl2(SplitMix64& rng) {
  for (;;) {
    sl2::Sl2Element x{4.0 * rng.next_double() - 2.0,
                      4.0 * rng.next_double() - 2.0,
                      4.0 * rng.next_double() - 2.0};
    if (std::abs(x.det()) >= 0.05) return x;
  }
}

inline sl2::Sl2Element random_elliptic(SplitMix64& rng) {
  const double lambda = 0.5 + 1.5 * rng.next_double();
  return sl2::conjugate({0.0, lambda, -lambda}, random_sl2_group(rng));
}

inline sl2::Sl2Element random_split(SplitMix64& rng) {
  const double lambda = 0.5 + 1.5 * rng.next_double();
  return sl2::conjugate({lambda, 0.0, 0.0}, random_sl2_group(rng));
}

// ---- the ten criteria -------------------------------------------------------

inline CriterionResult criterion_pfaffian_identity(const Config& cfg) {
  CriterionResult r{1, "pfaffian-identity"};
  r.runtime_budget_ms = 1000.0;
  SplitMix64 rng(cfg.seed, 0x101);
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const int dim = 2 * (1 + k % 5);  // 2, 4, 6, 8, 10
    const Eigen::MatrixXd a = random_skew(rng, dim);
    const double pf = pfaffian(a);
    const double det = a.determinant();
    worst = std::max(worst,
                     std::abs(pf * pf - det) / std::max(1.0, std::abs(det)));
  }
  r.add("max |Pf^2 - det| / max(1, |det|), 200 cases dims 2-10", worst, 1e-9);
  return r;
}

inline CriterionResult criterion_pfaffian_invariance(const Config& cfg) {
  CriterionResult r{2, "pfaffian-orthogonal-invariance"};
  r.runtime_budget_ms = 1000.0;
  SplitMix64 rng(cfg.seed, 0x202);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const int dim = 2 * (1 + k % 5);
    const Eigen::MatrixXd a = random_skew(rng, dim);
    const Eigen::MatrixXd q = random_special_orthogonal(rng, dim);
    const Eigen::MatrixXd conj = q.transpose() * a * q;
    worst = std::max(worst, std::abs(pfaffian(conj) - pfaffian(a)));
  }
  r.add("max |Pf(Q^T A Q) - Pf(A)|, 100 pairs det Q = +1", worst, 1e-9);
  return r;
}

inline CriterionResult criterion_sphere_exactness(const Config&) {
  CriterionResult r{3, "sphere-exactness"};
  r.runtime_budget_ms = 1000.0;
  const std::vector<Complex> cs = {
      {0.5, 0.0}, {1.0, 0.0}, {2.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}};
  for (const Complex c : cs) {
    const SphereCheck check = sphere_dh_check(c);
    const double rel =
        check.abs_diff / std::max(1.0, std::abs(check.quadrature_value));
    r.add("fixed-point vs quadrature, c = (" + std::to_string(c.real()) +
              ", " + std::to_string(c.imag()) + ")",
          rel, 1e-8);
  }
  return r;
}

inline CriterionResult criterion_cross_formula(const Config& cfg) {
  CriterionResult r{4, "cross-formula-consistency"};
  r.runtime_budget_ms = 5000.0;
  SplitMix64 rng(cfg.seed, 0x404);
  for (int n : {2, 3}) {
    const RootSystemSpec spec = unitary_root_system(n);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      const CartanElement theta = random_decreasing(rng, n);
      const CartanElement t = random_decreasing(rng, n);
      const Complex exact = hciz_exact(theta, t);
      const Complex generic = hciz_generic(spec, theta, t);
      worst = std::max(worst, std::abs(exact - generic) / std::abs(exact));
    }
    r.add("max rel |determinant form - Weyl-sum form|, 100 pairs, n = " +
              std::to_string(n),
          worst, 1e-9);
  }
  return r;
}

inline CriterionResult criterion_hciz_vs_mc(const Config& cfg) {
  CriterionResult r{5, "hciz-vs-monte-carlo"};
  r.runtime_budget_ms = 60000.0;
  const std::int64_t samples = 200000;
  {
    CartanElement theta(1), t(1);
    theta << 0.7;
    t << 1.3;
    const HaarEstimate est =
        iz_mc(theta, t, samples, SplitMix64::mix(cfg.seed) ^ 0x501,
              cfg.workers);
    const Complex exact = hciz_exact(theta, t);
    r.add("abelian n = 1: |exact - mean|", std::abs(exact - est.mean), 1e-14);
  }
  int stream = 2;
  for (int n : {2, 3}) {
    CartanElement theta(n), t(n);
    if (n == 2) {
      theta << 1.0, 0.0;
      t << 2.0, 1.0;
    } else {
      theta << 1.0, 0.3, -0.8;
      t << 2.0, 0.5, -1.0;
    }
    const HaarEstimate est = iz_mc(
        theta, t, samples, SplitMix64::mix(cfg.seed) ^ (0x500 + stream),
        cfg.workers);
    ++stream;
    const Complex exact = hciz_exact(theta, t);
    const double gate = 4.0 * est.stderr_of_mean;
    r.add("n = " + std::to_string(n) + ": |Re(exact - mean)|",
          std::abs(exact.real() - est.mean.real()), gate);
    r.add("n = " + std::to_string(n) + ": |Im(exact - mean)|",
          std::abs(exact.imag() - est.mean.imag()), gate);
  }
  return r;
}

inline CriterionResult criterion_symplectic_volume(const Config&) {
  CriterionResult r{6, "symplectic-volume"};
  r.runtime_budget_ms = 1000.0;
  const std::vector<double> epsilons = {1e-2, 1e-3, 1e-4};
  {
    CartanElement t(2);
    t << 2.0, 1.0;
    const double lim = volume_limit(t, epsilons);
    r.add("volume limit vs closed form, t = (2,1)", std::abs(lim - 1.0) / 1.0,
          1e-6);
  }
  {
    CartanElement t(3);
    t << 3.0, 1.0, 0.0;
    const double lim = volume_limit(t, epsilons);
    r.add("volume limit vs closed form, t = (3,1,0)",
          std::abs(lim - 3.0) / 3.0, 1e-6);
  }
  for (int n : {2, 3, 4}) {
    CartanElement t(n);
    for (int j = 0; j < n; ++j) t(j) = static_cast<double>(n - j) + (j == 0);
    const RootSystemSpec spec = unitary_root_system(n);
    const double closed = coadjoint_volume_un(t);
    const double generic = coadjoint_volume(spec, t);
    r.add("root-data volume vs closed form, n = " + std::to_string(n),
          std::abs(generic - closed) / std::abs(closed), 1e-12);
  }
  return r;
}

inline CriterionResult criterion_haar_statistics(const Config& cfg) {
  CriterionResult r{7, "haar-sampler-statistics"};
  r.runtime_budget_ms = 30000.0;
  const std::int64_t samples = 100000;
  for (int n : {2, 3}) {
    const HaarColumnCheck check = haar_column_check(
        n, samples, SplitMix64::mix(cfg.seed) ^ (0x700 + n), cfg.workers);
    r.add("n = " + std::to_string(n) + ": max unitarity residual",
          check.max_unitarity_residual, 1e-12);
    for (int j = 0; j < n; ++j) {
      const HaarEstimate& est = check.first_row_abs2[j];
      r.add("n = " + std::to_string(n) + ": |E|U_1" + std::to_string(j + 1) +
                "|^2 - 1/n|",
            std::abs(est.mean.real() - 1.0 / n), 4.0 * est.stderr_of_mean);
    }
    const auto trace_pair = haar_invariance_check(
        n, [n](const Eigen::MatrixXcd& u) { return u.trace() / double(n); },
        samples, SplitMix64::mix(cfg.seed) ^ (0x710 + n), cfg.workers);
    r.add("n = " + std::to_string(n) + ": left-invariance of Tr U / n",
          trace_pair.discrepancy(), 4.0 * trace_pair.combined_stderr());
    const auto entry_pair = haar_invariance_check(
        n,
        [](const Eigen::MatrixXcd& u) {
          return Complex(std::norm(u(0, 0)), 0.0);
        },
        samples, SplitMix64::mix(cfg.seed) ^ (0x720 + n), cfg.workers);
    r.add("n = " + std::to_string(n) + ": left-invariance of |U_11|^2",
          entry_pair.discrepancy(), 4.0 * entry_pair.combined_stderr());
  }
  return r;
}

inline CriterionResult criterion_sl2_multiplicities(const Config& cfg) {
  CriterionResult r{8, "sl2-multiplicities"};
  r.runtime_budget_ms = 2000.0;
  SplitMix64 rng(cfg.seed, 0x808);
  int class_mismatches = 0;
  int count_failures = 0;
  int rule_failures = 0;
  for (int k = 0; k < 1000; ++k) {
    const sl2::Sl2Element x = random_regular_sl2(rng);

    // Independent classification through the eigenvalues of the matrix.
    Eigen::EigenSolver<Eigen::Matrix2d> es(x.matrix());
    const bool oracle_elliptic =
        std::abs(es.eigenvalues()(0).imag()) > 1e-12;
    const auto cls = sl2::classify(x);
    if ((cls == sl2::RegularClass::Elliptic) != oracle_elliptic ||
        cls == sl2::RegularClass::NonRegular)
      ++class_mismatches;

    const auto zeros = sl2::zero_data(x);
    if (zeros[0].multiplicity + zeros[1].multiplicity != 1) ++count_failures;

    for (const auto& z : zeros) {
      const bool should_count =
          (cls == sl2::RegularClass::Elliptic)
              ? z.point.in_upper_half_plane()
              : (z.stability == sl2::Stability::Stable);
      if ((z.multiplicity == 1) != should_count) ++rule_failures;
    }
  }
  r.add("classification mismatches vs eigenvalue oracle (1000 cases)",
        class_mismatches, 0);
  r.add("cases without exactly one multiplicity-1 zero", count_failures, 0);
  r.add("zeros violating the half-plane / stability rule", rule_failures, 0);
  return r;
}

inline CriterionResult criterion_invariance(const Config& cfg) {
  CriterionResult r{9, "localized-value-invariance"};
  r.runtime_budget_ms = 2000.0;
  SplitMix64 rng(cfg.seed, 0x909);
  double worst_rel = 0.0;
  double worst_weight_sum = 0.0;
  for (int cls = 0; cls < 2; ++cls) {
    for (int k = 0; k < 50; ++k) {
      const sl2::Sl2Element x =
          (cls == 0) ? random_elliptic(rng) : random_split(rng);
      const Complex base = sl2::localization_value(x, {1.0, 0.0});
      for (int step = 0; step < 32; ++step) {
        const double phi = 2.0 * std::numbers::pi * step / 32.0;
        const sl2::Sl2Element conj = sl2::conjugate(x, sl2::rotation(phi));
        const Complex value = sl2::localization_value(conj, {1.0, 0.0});
        worst_rel = std::max(worst_rel, std::abs(value - base) / std::abs(base));
        const auto zeros = sl2::zero_data(conj);
        worst_weight_sum =
            std::max(worst_weight_sum, std::abs(zeros[0].mu + zeros[1].mu));
      }
    }
  }
  r.add("max rel change under 32 rotations x 50 elements per class",
        worst_rel, 1e-9);
  r.add("max |mu_1 + mu_2|", worst_weight_sum, 1e-12);
  return r;
}

inline CriterionResult criterion_reproducibility(const Config& cfg) {
  CriterionResult r{10, "mc-reproducibility"};
  r.runtime_budget_ms = 120000.0;
  CartanElement theta(2), t(2);
  theta << 1.0, 0.0;
  t << 2.0, 1.0;
  const std::uint64_t seed = SplitMix64::mix(cfg.seed) ^ 0xA0A;
  const std::string first =
      to_json(iz_mc(theta, t, 200000, seed, cfg.workers)).dump();
  const std::string second =
      to_json(iz_mc(theta, t, 200000, seed, cfg.workers)).dump();
  r.add("repeated run JSON differs (0 = byte-identical)",
        first == second ? 0.0 : 1.0, 0.0);
  return r;
}

inline std::vector<CriterionResult> run_all(const Config& cfg) {
  using Runner = CriterionResult (*)(const Config&);
  const Runner runners[] = {
      criterion_pfaffian_identity, criterion_pfaffian_invariance,
      criterion_sphere_exactness,  criterion_cross_formula,
      criterion_hciz_vs_mc,        criterion_symplectic_volume,
      criterion_haar_statistics,   criterion_sl2_multiplicities,
      criterion_invariance,        criterion_reproducibility};
  std::vector<CriterionResult> results;
  for (const Runner run : runners) {
    const auto start = std::chrono::steady_clock::now();
    CriterionResult r = run(cfg);
    const auto stop = std::chrono::steady_clock::now();
    r.runtime_ms =
        std::chrono::duration<double, std::milli>(stop - start).count();
    r.pass = r.runtime_ms <= r.runtime_budget_ms;
    for (const auto& check : r.checks) r.pass = r.pass && check.pass;
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace eqloc::verify
