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
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

#include <Eigen/Dense>

#include "eqloc/rng.hpp"
#include "eqloc/root_system.hpp"

namespace eqloc {

// Seeded Monte Carlo estimate of a complex mean over U(n).
struct HaarEstimate {
  std::complex<double> mean;
  double stderr_of_mean = 0.0;  // sqrt((Var Re + Var Im) / n_samples)
  std::int64_t n_samples = 0;
  std::uint64_t seed = 0;
};

// Haar-distributed unitary matrix: QR of a complex Ginibre matrix with the
// R-diagonal phases divided out (plain QR of a Ginibre matrix is *not* Haar;
// the phase correction makes the distribution exact, cf. Mezzadri,
// arXiv:math-ph/0609050).
inline Eigen::MatrixXcd sample_haar(int n, SplitMix64& rng) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  Eigen::MatrixXcd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.next_normal_complex();
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const std::complex<double> d = r(j, j);
    const double mag = std::abs(d);
    q.col(j) *= (mag > 0.0) ? d / mag : std::complex<double>(1.0, 0.0);
  }
  return q;
}

inline double unitarity_residual(const Eigen::MatrixXcd& u) {
  const Eigen::MatrixXcd defect =
      u * u.adjoint() - Eigen::MatrixXcd::Identity(u.rows(), u.cols());
  return defect.cwiseAbs().maxCoeff();
}

namespace detail {

// Neumaier compensated sum: keeps long accumulations accurate to a few ulps
// regardless of the sample count.
struct KahanSum {
  double value = 0.0;
  double compensation = 0.0;

  void add(double x) {
    const double t = value + x;
    if (std::abs(value) >= std::abs(x))
      compensation += (value - t) + x;
    else
      compensation += (x - t) + value;
    value = t;
  }
  void merge(const KahanSum& other) {
    add(other.value);
    add(other.compensation);
  }
  double total() const { return value + compensation; }
};

struct MomentAccumulator {
  KahanSum re, im, sq_re, sq_im;

  void add(std::complex<double> v) {
    re.add(v.real());
    im.add(v.imag());
    sq_re.add(v.real() * v.real());
    sq_im.add(v.imag() * v.imag());
  }
  void merge(const MomentAccumulator& other) {
    re.merge(other.re);
    im.merge(other.im);
    sq_re.merge(other.sq_re);
    sq_im.merge(other.sq_im);
  }
};

inline HaarEstimate finalize(const MomentAccumulator& acc,
                             std::int64_t n_samples, std::uint64_t seed) {
  const double n = static_cast<double>(n_samples);
  const std::complex<double> mean{acc.re.total() / n, acc.im.total() / n};
  const double var_re = std::max(
      0.0, (acc.sq_re.total() - n * mean.real() * mean.real()) / (n - 1));
  const double var_im = std::max(
      0.0, (acc.sq_im.total() - n * mean.imag() * mean.imag()) / (n - 1));
  return HaarEstimate{mean, std::sqrt((var_re + var_im) / n), n_samples, seed};
}

// Runs `body(worker_index, sample_count, rng)` on each worker's substream
// and chunk. Chunks and substreams depend only on (seed, workers), so the
// partial results combine deterministically in worker order.
template <typename Body>
void for_each_worker(std::int64_t n_samples, std::uint64_t seed, int workers,
                     Body body) {
  if (workers < 1) throw std::invalid_argument("workers must be >= 1");
  const std::int64_t base = n_samples / workers;
  const std::int64_t extra = n_samples % workers;
  auto chunk = [&](int w) { return base + (w < extra ? 1 : 0); };
  if (workers == 1) {
    SplitMix64 rng(seed, 0);
    body(0, n_samples, rng);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      SplitMix64 rng(seed, static_cast<std::uint64_t>(w));
      body(w, chunk(w), rng);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace detail

// Mean and standard error of f over Haar samples from U(n). Reproducible:
// fixed (seed, n_samples, workers) gives bit-identical results.
template <typename F>
HaarEstimate mc_expectation(int n, F f, std::int64_t n_samples,
                            std::uint64_t seed, int workers = 1) {
  if (n_samples < 2) throw std::invalid_argument("n_samples must be >= 2");
  std::vector<detail::MomentAccumulator> partial(workers);
  detail::for_each_worker(
      n_samples, seed, workers,
      [&](int w, std::int64_t count, SplitMix64& rng) {
        for (std::int64_t i = 0; i < count; ++i)
          partial[w].add(f(sample_haar(n, rng)));
      });
  detail::MomentAccumulator total;
  for (const auto& p : partial) total.merge(p);
  return detail::finalize(total, n_samples, seed);
}

// Monte Carlo estimate of the orbital phase integral over U(n):
// the Haar mean of exp(-i Tr(x a x0 a^{-1})) for x = diag(i*theta),
// x0 = diag(i*t), which reduces to exp(i * theta^T |a|^2 t) entrywise.
inline HaarEstimate iz_mc(const CartanElement& theta, const CartanElement& t,
                          std::int64_t n_samples, std::uint64_t seed,
                          int workers = 1) {
  if (theta.size() != t.size())
    throw std::invalid_argument("theta and t must have the same size");
  const int n = static_cast<int>(theta.size());
  return mc_expectation(
      n,
      [&](const Eigen::MatrixXcd& u) {
        const double phase = theta.dot(u.cwiseAbs2() * t);
        return std::complex<double>(std::cos(phase), std::sin(phase));
      },
      n_samples, seed, workers);
}

// One-pass sampler diagnostics: worst unitarity defect plus the estimated
// second moments E|U_{1j}|^2 of the first row (each should be 1/n).
struct HaarColumnCheck {
  double max_unitarity_residual = 0.0;
  std::vector<HaarEstimate> first_row_abs2;  // one estimate per column
};

inline HaarColumnCheck haar_column_check(int n, std::int64_t n_samples,
                                         std::uint64_t seed, int workers = 1) {
  if (n_samples < 2) throw std::invalid_argument("n_samples must be >= 2");
  struct Partial {
    std::vector<detail::MomentAccumulator> cols;
    double max_residual = 0.0;
  };
  std::vector<Partial> partial(workers);
  for (auto& p : partial) p.cols.resize(n);
  detail::for_each_worker(
      n_samples, seed, workers,
      [&](int w, std::int64_t count, SplitMix64& rng) {
        for (std::int64_t i = 0; i < count; ++i) {
          const Eigen::MatrixXcd u = sample_haar(n, rng);
          partial[w].max_residual =
              std::max(partial[w].max_residual, unitarity_residual(u));
          for (int j = 0; j < n; ++j)
            partial[w].cols[j].add(std::norm(u(0, j)));
        }
      });
  HaarColumnCheck out;
  std::vector<detail::MomentAccumulator> total(n);
  for (const auto& p : partial) {
    out.max_unitarity_residual =
        std::max(out.max_unitarity_residual, p.max_residual);
    for (int j = 0; j < n; ++j) total[j].merge(p.cols[j]);
  }
  out.first_row_abs2.reserve(n);
  for (int j = 0; j < n; ++j)
    out.first_row_abs2.push_back(detail::finalize(total[j], n_samples, seed));
  return out;
}

// Left-invariance diagnostic: compares the mean of a statistic g over U
// against the mean of g(V U) for a fixed unitary V, on independent
// substreams. Under Haar both means estimate the same value.
struct InvariancePair {
  HaarEstimate plain;
  HaarEstimate translated;
  double combined_stderr() const {
    return std::sqrt(plain.stderr_of_mean * plain.stderr_of_mean +
                     translated.stderr_of_mean * translated.stderr_of_mean);
  }
  double discrepancy() const { return std::abs(plain.mean - translated.mean); }
};

template <typename G>
InvariancePair haar_invariance_check(int n, G g, std::int64_t n_samples,
                                     std::uint64_t seed, int workers = 1) {
  SplitMix64 vstream(seed, 0x7157);  // the fixed translation V
  const Eigen::MatrixXcd v = sample_haar(n, vstream);
  InvariancePair out;
  out.plain = mc_expectation(
      n, [&](const Eigen::MatrixXcd& u) { return g(u); }, n_samples,
      SplitMix64::mix(seed) ^ 0x1111, workers);
  out.translated = mc_expectation(
      n,
      [&](const Eigen::MatrixXcd& u) {
        return g((v * u).eval());
      },
      n_samples, SplitMix64::mix(seed) ^ 0x2222, workers);
  return out;
}

}  // namespace eqloc
