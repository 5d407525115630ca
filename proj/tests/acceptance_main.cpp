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

#include <cstdio>
#include <cstdlib>
#include <string>

#include "eqloc/verify.hpp"

// Runs every acceptance criterion and prints one pass/fail line each.
// Seed and worker count come from LOCALIZE_SEED / LOCALIZE_WORKERS when set.
int main() {
  eqloc::verify::Config cfg;
  if (const char* env = std::getenv("LOCALIZE_SEED"))
    cfg.seed = std::strtoull(env, nullptr, 0);
  if (const char* env = std::getenv("LOCALIZE_WORKERS"))
    cfg.workers = std::max(1, std::atoi(env));

  const auto results = eqloc::verify::run_all(cfg);
  int failures = 0;
  for (const auto& r : results) {
    std::printf("[%2d/10] %s  %-32s (%.1f ms, budget %.0f ms)\n", r.id,
                r.pass ? "PASS" : "FAIL", r.name.c_str(), r.runtime_ms,
                r.runtime_budget_ms);
    for (const auto& check : r.checks) {
      std::printf("        %s  %-58s measured %.3e  gate %.3e\n",
                  check.pass ? "ok  " : "FAIL", check.name.c_str(),
                  check.measured, check.threshold);
    }
    if (!r.pass) ++failures;
  }
  std::printf("%d/10 criteria passed (seed 0x%llx, workers %d)\n",
              10 - failures, static_cast<unsigned long long>(cfg.seed),
              cfg.workers);
  return failures == 0 ? 0 : 1;
}
