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
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eqloc/serialize.hpp"
#include "eqloc/verify.hpp"

namespace {

using eqloc::CartanElement;
using eqloc::Complex;
using eqloc::json;

// ---- input parsing ----------------------------------------------------------

double parse_double(const std::string& s) {
  std::size_t pos = 0;
  const double v = std::stod(s, &pos);
  if (pos != s.size())
    throw std::invalid_argument("cannot parse number: '" + s + "'");
  return v;
}

// Complex literals of the form "re", "imi" or "re+imi" ("1", "-2i", "1-2i",
// "i", "1+i").
Complex parse_complex(std::string s) {
  std::erase(s, ' ');
  if (s.empty()) throw std::invalid_argument("empty complex literal");
  if (s.back() != 'i') return {parse_double(s), 0.0};
  s.pop_back();
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      const double re = parse_double(s.substr(0, k));
      const std::string im = s.substr(k);
      if (im == "+") return {re, 1.0};
      if (im == "-") return {re, -1.0};
      return {re, parse_double(im)};
    }
  }
  if (s.empty() || s == "+") return {0.0, 1.0};
  if (s == "-") return {0.0, -1.0};
  return {0.0, parse_double(s)};
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream stream(s);
  std::string item;
  while (std::getline(stream, item, ',')) out.push_back(parse_double(item));
  if (out.empty()) throw std::invalid_argument("empty list: '" + s + "'");
  return out;
}

CartanElement parse_vector(const std::string& s) {
  const std::vector<double> values = parse_list(s);
  CartanElement v(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i)
    v(static_cast<Eigen::Index>(i)) = values[i];
  return v;
}

json read_json_document(const std::string& path) {
  json doc;
  if (path == "-") {
    std::cin >> doc;
    return doc;
  }
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  in >> doc;
  return doc;
}

// ---- report rendering --------------------------------------------------------

struct Row {
  std::string name;
  Complex value{0.0, 0.0};
  std::optional<Complex> oracle;
  std::optional<double> abs_diff;
  std::optional<double> rel_diff;
  std::optional<bool> pass;
};

struct Report {
  std::string command;
  json meta = json::object();
  std::vector<Row> rows;

  Row& add(const std::string& name, Complex value) {
    rows.push_back(Row{name, value, {}, {}, {}, {}});
    return rows.back();
  }
  // A gated comparison: records both values, their distance and a verdict.
  Row& add_checked(const std::string& name, Complex value, Complex oracle,
                   double tolerance, bool relative) {
    const double abs_diff = std::abs(value - oracle);
    const double scale = std::abs(oracle);
    const double rel_diff = scale > 0.0 ? abs_diff / scale : abs_diff;
    const bool pass = relative ? abs_diff <= tolerance * std::max(1.0, scale)
                               : abs_diff <= tolerance;
    rows.push_back(Row{name, value, oracle, abs_diff, rel_diff, pass});
    return rows.back();
  }
  bool ok() const {
    for (const auto& row : rows)
      if (row.pass.has_value() && !*row.pass) return false;
    return true;
  }
};

json to_json(const Row& row) {
  json j;
  j["case"] = row.name;
  j["value_re"] = row.value.real();
  j["value_im"] = row.value.imag();
  if (row.oracle) {
    j["oracle_re"] = row.oracle->real();
    j["oracle_im"] = row.oracle->imag();
  }
  if (row.abs_diff) j["abs_diff"] = *row.abs_diff;
  if (row.rel_diff) j["rel_diff"] = *row.rel_diff;
  if (row.pass) j["pass"] = *row.pass;
  return j;
}

void emit(const Report& report, const std::string& format) {
  if (format == "json") {
    json j;
    j["command"] = report.command;
    for (auto it = report.meta.begin(); it != report.meta.end(); ++it)
      j[it.key()] = it.value();
    j["rows"] = json::array();
    for (const auto& row : report.rows) j["rows"].push_back(to_json(row));
    j["pass"] = report.ok();
    std::cout << j.dump(2) << "\n";
    return;
  }
  if (format == "csv") {
    std::printf(
        "case,value_re,value_im,oracle_re,oracle_im,abs_diff,rel_diff,pass\n");
    for (const auto& row : report.rows) {
      std::printf("\"%s\",%.17g,%.17g,", row.name.c_str(), row.value.real(),
                  row.value.imag());
      if (row.oracle)
        std::printf("%.17g,%.17g,", row.oracle->real(), row.oracle->imag());
      else
        std::printf(",,");
      if (row.abs_diff)
        std::printf("%.17g,", *row.abs_diff);
      else
        std::printf(",");
      if (row.rel_diff)
        std::printf("%.17g,", *row.rel_diff);
      else
        std::printf(",");
      std::printf("%s\n", row.pass ? (*row.pass ? "true" : "false") : "");
    }
    return;
  }
  // table
  std::printf("%s\n", report.command.c_str());
  for (auto it = report.meta.begin(); it != report.meta.end(); ++it)
    std::printf("  %s = %s\n", it.key().c_str(), it.value().dump().c_str());
  for (const auto& row : report.rows) {
    std::printf("  %-52s % .12g %+.12gi", row.name.c_str(), row.value.real(),
                row.value.imag());
    if (row.oracle)
      std::printf("   vs % .12g %+.12gi", row.oracle->real(),
                  row.oracle->imag());
    if (row.abs_diff) std::printf("   |diff| %.3e", *row.abs_diff);
    if (row.pass) std::printf("   %s", *row.pass ? "PASS" : "FAIL");
    std::printf("\n");
  }
  std::printf("  overall: %s\n", report.ok() ? "PASS" : "FAIL");
}

// ---- shared option state ------------------------------------------------------

struct Options {
  std::string theta_arg, t_arg, c_arg = "1", matrix_arg, s_arg;
  std::string input_path, spec_path, epsilons_arg = "1e-2,1e-3,1e-4";
  std::string cycle_arg = "c-h", format = "json";
  int n = 0;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
  bool seed_given = false;
  int workers = 1;
  double regular_tol = eqloc::kRegularityTol;

  std::uint64_t resolve_seed() const {
    if (seed_given) return seed;
    if (const char* env = std::getenv("LOCALIZE_SEED"))
      return std::strtoull(env, nullptr, 0);
    return eqloc::kDefaultSeed;
  }
};

void stamp_meta(Report& report, const Options& opt) {
  report.meta["seed"] = opt.resolve_seed();
  report.meta["workers"] = opt.workers;
}

// ---- subcommands ---------------------------------------------------------------

Report run_pfaffian(const Options& opt) {
  Report report;
  report.command = "pfaffian";
  stamp_meta(report, opt);
  json doc = read_json_document(opt.input_path);
  if (doc.is_object() && doc.contains("matrix")) doc = doc["matrix"];
  const Eigen::MatrixXd m = eqloc::matrix_from_json(doc);
  const double pf = eqloc::pfaffian(m);
  const double det = m.determinant();
  report.add("pfaffian", {pf, 0.0});
  report.add_checked("pfaffian^2 vs det", {pf * pf, 0.0}, {det, 0.0}, 1e-9,
                     true);
  if (!eqloc::is_degenerate_skew(m)) {
    const auto pairing = eqloc::skew_canonical_form(m);
    report.add("sqrt_det", {eqloc::sqrt_det(m), 0.0});
    report.meta["rotation_weights"] = eqloc::to_json(pairing.weights);
    report.meta["canonical_basis"] = eqloc::to_json(pairing.basis);
  }
  return report;
}

Report run_iz(const Options& opt) {
  Report report;
  report.command = "iz";
  stamp_meta(report, opt);
  const CartanElement theta = parse_vector(opt.theta_arg);
  const CartanElement t = parse_vector(opt.t_arg);
  if (opt.n != 0 && opt.n != theta.size())
    throw std::invalid_argument("--n does not match the length of --theta");

  if (!opt.spec_path.empty()) {
    const auto spec = eqloc::load_root_system_file(opt.spec_path);
    report.add("hciz weyl-sum form (custom root data)",
               eqloc::hciz_generic(spec, theta, t, opt.regular_tol));
    return report;
  }

  const Complex exact = eqloc::hciz_exact(theta, t, opt.regular_tol);
  report.add("hciz determinant form", exact);
  const auto spec = eqloc::unitary_root_system(static_cast<int>(theta.size()));
  report.add_checked("hciz weyl-sum form",
                     eqloc::hciz_generic(spec, theta, t, opt.regular_tol),
                     exact, 1e-9, true);
  if (opt.samples > 0) {
    const eqloc::HaarEstimate est =
        eqloc::iz_mc(theta, t, opt.samples, opt.resolve_seed(), opt.workers);
    Row& row = report.add("haar monte carlo mean", est.mean);
    row.oracle = exact;
    row.abs_diff = std::abs(est.mean - exact);
    row.rel_diff = std::abs(exact) > 0 ? *row.abs_diff / std::abs(exact)
                                       : *row.abs_diff;
    const double gate = 4.0 * est.stderr_of_mean;
    row.pass = std::abs(est.mean.real() - exact.real()) <= gate &&
               std::abs(est.mean.imag() - exact.imag()) <= gate;
    report.meta["estimate"] = eqloc::to_json(est);
    report.meta["gate"] = gate;
  }
  return report;
}

Report run_hc_sum(const Options& opt) {
  Report report;
  report.command = "hc-sum";
  stamp_meta(report, opt);
  const CartanElement theta = parse_vector(opt.theta_arg);
  const CartanElement t = parse_vector(opt.t_arg);
  const Complex c = parse_complex(opt.c_arg);
  const auto spec =
      opt.spec_path.empty()
          ? eqloc::unitary_root_system(static_cast<int>(theta.size()))
          : eqloc::load_root_system_file(opt.spec_path);
  report.add("weyl fixed-point sum",
             eqloc::harish_chandra_sum(spec, theta, t, c, opt.regular_tol));
  report.meta["c"] = eqloc::to_json(c);
  return report;
}

Report run_volume(const Options& opt) {
  Report report;
  report.command = "volume";
  stamp_meta(report, opt);
  const CartanElement t = parse_vector(opt.t_arg);
  if (!opt.spec_path.empty()) {
    const auto spec = eqloc::load_root_system_file(opt.spec_path);
    report.add("orbit volume (root data)",
               {eqloc::coadjoint_volume(spec, t, opt.regular_tol), 0.0});
    return report;
  }
  const double closed = eqloc::coadjoint_volume_un(t, opt.regular_tol);
  report.add("orbit volume (closed form)", {closed, 0.0});
  const auto spec = eqloc::unitary_root_system(static_cast<int>(t.size()));
  report.add_checked("orbit volume (root data)",
                     {eqloc::coadjoint_volume(spec, t, opt.regular_tol), 0.0},
                     {closed, 0.0}, 1e-12, true);
  return report;
}

Report run_volume_limit(const Options& opt) {
  Report report;
  report.command = "volume-limit";
  stamp_meta(report, opt);
  const CartanElement t = parse_vector(opt.t_arg);
  const std::vector<double> epsilons = parse_list(opt.epsilons_arg);
  const auto profile =
      eqloc::volume_limit_profile(t, epsilons, opt.regular_tol);
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    std::ostringstream name;
    name << "determinant form at eps = " << epsilons[i];
    report.add(name.str(), profile.samples[i]);
  }
  report.add_checked("extrapolated volume", {profile.extrapolated, 0.0},
                     {eqloc::coadjoint_volume_un(t, opt.regular_tol), 0.0},
                     1e-6, true);
  return report;
}

Report run_dh_sphere(const Options& opt) {
  Report report;
  report.command = "dh-sphere";
  stamp_meta(report, opt);
  const Complex c = parse_complex(opt.c_arg);
  const eqloc::SphereCheck check = eqloc::sphere_dh_check(c);
  report.add_checked("fixed-point sum vs quadrature", check.fixed_point_value,
                     check.quadrature_value, 1e-8, true);
  report.meta["c"] = eqloc::to_json(c);
  return report;
}

Report run_dh_sum(const Options& opt) {
  Report report;
  report.command = "dh-sum";
  stamp_meta(report, opt);
  const eqloc::DHProblem problem =
      eqloc::dh_problem_from_json(read_json_document(opt.input_path));
  report.add("stationary-phase fixed-point sum",
             eqloc::dh_fixed_point_sum(problem));
  report.meta["n"] = problem.n;
  report.meta["c"] = eqloc::to_json(problem.c);
  report.meta["points"] = problem.points.size();
  return report;
}

Report run_noncompact(const Options& opt) {
  Report report;
  report.command = "noncompact";
  stamp_meta(report, opt);
  const std::vector<double> entries = parse_list(opt.matrix_arg);
  if (entries.size() != 3)
    throw std::invalid_argument("--matrix expects three reals a,b,c");
  const eqloc::sl2::Sl2Element x{entries[0], entries[1], entries[2]};
  const Complex s =
      opt.s_arg.empty() ? eqloc::sl2::kDefaultS : parse_complex(opt.s_arg);
  const auto cycle = [&] {
    if (opt.cycle_arg == "c-h") return eqloc::sl2::CycleChoice::CHUpper;
    if (opt.cycle_arg == "conormal")
      return eqloc::sl2::CycleChoice::ConormalCircle;
    throw std::invalid_argument("--cycle must be 'c-h' or 'conormal'");
  }();

  report.meta["class"] = eqloc::sl2::to_string(eqloc::sl2::classify(x));
  const auto zeros = eqloc::sl2::zero_data(x, cycle);
  json zeros_json = json::array();
  for (const auto& z : zeros) zeros_json.push_back(eqloc::to_json(z));
  report.meta["zeros"] = zeros_json;
  report.meta["s"] = eqloc::to_json(s);
  for (int i = 0; i < 2; ++i) {
    report.add("weight of zero " + std::to_string(i + 1) +
                   " (multiplicity " + std::to_string(zeros[i].multiplicity) +
                   ")",
               zeros[i].mu);
  }
  report.add("localized value", eqloc::sl2::localization_value(x, s, cycle));
  return report;
}

Report run_haar_check(const Options& opt) {
  Report report;
  report.command = "haar-check";
  stamp_meta(report, opt);
  const int n = opt.n > 0 ? opt.n : 3;
  const std::int64_t samples = opt.samples > 0 ? opt.samples : 100000;
  report.meta["n"] = n;
  report.meta["samples"] = samples;
  const auto check =
      eqloc::haar_column_check(n, samples, opt.resolve_seed(), opt.workers);
  {
    Row& row = report.add("max unitarity residual",
                          {check.max_unitarity_residual, 0.0});
    row.pass = check.max_unitarity_residual <= 1e-12;
  }
  for (int j = 0; j < n; ++j) {
    const auto& est = check.first_row_abs2[j];
    Row& row = report.add("E|U_1" + std::to_string(j + 1) + "|^2",
                          est.mean);
    row.oracle = Complex(1.0 / n, 0.0);
    row.abs_diff = std::abs(est.mean.real() - 1.0 / n);
    row.pass = *row.abs_diff <= 4.0 * est.stderr_of_mean;
  }
  const auto trace_pair = eqloc::haar_invariance_check(
      n, [n](const Eigen::MatrixXcd& u) { return u.trace() / double(n); },
      samples, opt.resolve_seed(), opt.workers);
  {
    Row& row =
        report.add("left-invariance of Tr U / n", trace_pair.translated.mean);
    row.oracle = trace_pair.plain.mean;
    row.abs_diff = trace_pair.discrepancy();
    row.pass = trace_pair.discrepancy() <= 4.0 * trace_pair.combined_stderr();
  }
  const auto entry_pair = eqloc::haar_invariance_check(
      n,
      [](const Eigen::MatrixXcd& u) {
        return Complex(std::norm(u(0, 0)), 0.0);
      },
      samples, opt.resolve_seed() ^ 0x99, opt.workers);
  {
    Row& row =
        report.add("left-invariance of |U_11|^2", entry_pair.translated.mean);
    row.oracle = entry_pair.plain.mean;
    row.abs_diff = entry_pair.discrepancy();
    row.pass = entry_pair.discrepancy() <= 4.0 * entry_pair.combined_stderr();
  }
  return report;
}

Report run_verify(const Options& opt) {
  Report report;
  report.command = "verify";
  stamp_meta(report, opt);
  eqloc::verify::Config cfg{opt.resolve_seed(), opt.workers};
  const auto results = eqloc::verify::run_all(cfg);
  json criteria = json::array();
  for (const auto& r : results) {
    criteria.push_back(
        json{{"id", r.id}, {"name", r.name}, {"pass", r.pass}});
    // Runtimes go to stderr so repeated runs stay byte-identical on stdout.
    std::fprintf(stderr, "criterion %2d %-32s %s (%.1f ms)\n", r.id,
                 r.name.c_str(), r.pass ? "PASS" : "FAIL", r.runtime_ms);
    for (const auto& check : r.checks) {
      Row& row = report.add(
          "[" + std::to_string(r.id) + "] " + r.name + ": " + check.name,
          {check.measured, 0.0});
      row.oracle = Complex(check.threshold, 0.0);
      row.abs_diff = check.measured;
      row.pass = check.pass;
    }
  }
  report.meta["criteria"] = criteria;
  return report;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "eqloc: exact fixed-point localization formulas with numerical "
      "verification oracles"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"json", "csv", "table"}));
    cmd->add_option("--seed", opt.seed, "64-bit RNG seed")
        ->each([&](const std::string&) { opt.seed_given = true; });
    cmd->add_option("--workers", opt.workers, "Monte Carlo worker threads")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--regular-tol", opt.regular_tol,
                    "tolerance on pairwise gaps for regularity checks");
  };

  CLI::App* pfaffian = app.add_subcommand(
      "pfaffian", "Pfaffian, square-root determinant and rotation weights of "
                  "a skew matrix (JSON array of rows)");
  pfaffian->add_option("--input", opt.input_path, "JSON file, or - for stdin")
      ->required();
  add_common(pfaffian);

  CLI::App* iz = app.add_subcommand(
      "iz", "orbital phase integral over the unitary group: determinant "
            "form, Weyl-sum form, optional Haar Monte Carlo oracle");
  iz->add_option("--theta", opt.theta_arg, "comma list")->required();
  iz->add_option("--t", opt.t_arg, "comma list")->required();
  iz->add_option("--n", opt.n, "dimension (must match --theta)");
  iz->add_option("--mc-samples", opt.samples, "Monte Carlo sample count");
  iz->add_option("--spec-file", opt.spec_path, "root-system document");
  add_common(iz);

  CLI::App* hc = app.add_subcommand(
      "hc-sum", "Weyl fixed-point sum of the orbital integral at general c");
  hc->add_option("--theta", opt.theta_arg, "comma list")->required();
  hc->add_option("--t", opt.t_arg, "comma list")->required();
  hc->add_option("--c", opt.c_arg, "complex, e.g. 1, -i, 0.5+2i");
  hc->add_option("--spec-file", opt.spec_path, "root-system document");
  add_common(hc);

  CLI::App* volume =
      app.add_subcommand("volume", "symplectic volume of a coadjoint orbit");
  volume->add_option("--t", opt.t_arg, "comma list")->required();
  volume->add_option("--spec-file", opt.spec_path, "root-system document");
  add_common(volume);

  CLI::App* volume_limit = app.add_subcommand(
      "volume-limit",
      "volume as the confluent limit of the determinant form");
  volume_limit->add_option("--t", opt.t_arg, "comma list")->required();
  volume_limit->add_option("--epsilons", opt.epsilons_arg,
                           "decreasing comma list");
  add_common(volume_limit);

  CLI::App* dh_sphere = app.add_subcommand(
      "dh-sphere",
      "rotating-sphere exactness: fixed-point sum vs adaptive quadrature");
  dh_sphere->add_option("--c", opt.c_arg, "complex, e.g. 1, -i, 0.5+2i");
  add_common(dh_sphere);

  CLI::App* dh_sum = app.add_subcommand(
      "dh-sum", "stationary-phase fixed-point sum of a JSON problem");
  dh_sum->add_option("--input", opt.input_path, "JSON file, or - for stdin")
      ->required();
  add_common(dh_sum);

  CLI::App* noncompact = app.add_subcommand(
      "noncompact", "sl(2,R) on CP^1: classification, zeros, weights, "
                    "multiplicities and the localized value");
  noncompact->add_option("--matrix", opt.matrix_arg, "a,b,c")->required();
  noncompact->add_option("--s", opt.s_arg, "scale (default i/(2 pi))");
  noncompact->add_option("--cycle", opt.cycle_arg, "c-h or conormal");
  add_common(noncompact);

  CLI::App* haar = app.add_subcommand(
      "haar-check", "statistical checks of the Haar sampler");
  haar->add_option("--n", opt.n, "matrix dimension");
  haar->add_option("--mc-samples", opt.samples, "sample count");
  add_common(haar);

  CLI::App* verify = app.add_subcommand(
      "verify", "run every acceptance criterion and report pass/fail");
  add_common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    Report report;
    if (*pfaffian) report = run_pfaffian(opt);
    else if (*iz) report = run_iz(opt);
    else if (*hc) report = run_hc_sum(opt);
    else if (*volume) report = run_volume(opt);
    else if (*volume_limit) report = run_volume_limit(opt);
    else if (*dh_sphere) report = run_dh_sphere(opt);
    else if (*dh_sum) report = run_dh_sum(opt);
    else if (*noncompact) report = run_noncompact(opt);
    else if (*haar) report = run_haar_check(opt);
    else report = run_verify(opt);
    emit(report, opt.format);
    return report.ok() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
