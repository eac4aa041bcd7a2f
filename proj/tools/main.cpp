// SPDX-License-Identifier: Apache-2.0
//
// Command-line front door: verification suites, process simulation, kernel
// tables, and voting-scheme verdicts. The only component with side effects;
// everything it writes is reproducible from the seed.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "levygauss/suites.hpp"
#include "report.hpp"

namespace {

using namespace levygauss;
using cli::format_double;

void write_file(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << content;
}

std::vector<double> parse_weights(const std::string& csv) {
  std::vector<double> weights;
  std::stringstream stream(csv);
  std::string item;
  while (std::getline(stream, item, ',')) weights.push_back(std::stod(item));
  return weights;
}

FiniteAtomicMeasure parse_atoms(const std::string& spec) {
  FiniteAtomicMeasure measure;
  std::stringstream stream(spec);
  std::string item;
  while (std::getline(stream, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos)
      throw CLI::ValidationError("--atoms", "expected t:mass pairs separated by commas");
    measure.atoms.emplace_back(std::stod(item.substr(0, colon)),
                               std::stod(item.substr(colon + 1)));
  }
  return measure;
}

int run_suite_command(const std::string& name, const SuiteConfig& config,
                      const std::string& out_path) {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<SuiteReport> reports = run_suites(name, config);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_file(out_path, cli::report_to_json(reports, config));
  bool all_passed = true;
  int total = 0, passed = 0;
  for (const auto& report : reports) {
    for (const auto& check : report.checks) {
      ++total;
      if (check.pass)
        ++passed;
      else
        std::cerr << "FAIL " << check.id << "  value=" << format_double(check.value)
                  << " tolerance=" << format_double(check.tolerance) << "\n";
    }
    all_passed = all_passed && report.all_passed();
  }
  std::cerr << "suite " << name << ": " << passed << "/" << total << " checks passed in "
            << format_double(elapsed) << " s\n";
  return all_passed ? 0 : 1;
}

int run_simulate_command(const std::string& kind, double mass, const std::string& partition_csv,
                         const std::string& atoms_csv, double eps, int count,
                         const SuiteConfig& config, const std::string& out_path) {
  std::string out;
  out += "# kind=" + kind + " seed=" + std::to_string(config.seed) +
         " n=" + std::to_string(count) + "\n";
  if (kind == "poisson") {
    out += "# mass=" + format_double(mass) + "\n";
    out += "sample,x,mark\n";
    for (int s = 0; s < count; ++s) {
      CounterRng rng(config.seed, stream_id("simulate.poisson") + s);
      for (const auto& p : sample_poisson_config(mass, rng).points)
        out += std::to_string(s) + "," + format_double(p.location) + "," +
               format_double(p.mark) + "\n";
    }
  } else if (kind == "gauss" || kind == "gamma") {
    const std::vector<double> weights =
        partition_csv.empty() ? std::vector<double>{1.0} : parse_weights(partition_csv);
    std::vector<double> bounds{0.0};
    for (double w : weights) bounds.push_back(bounds.back() + w);
    if (std::abs(bounds.back() - 1.0) > 1e-12)
      throw CLI::ValidationError("--partition", "cell masses must sum to 1");
    bounds.back() = 1.0;
    const PartitionOfBase partition(bounds);
    out += "# partition=" + (partition_csv.empty() ? "1" : partition_csv) + "\n";
    out += "sample,cell,value\n";
    for (int s = 0; s < count; ++s) {
      CounterRng rng(config.seed, stream_id("simulate." + kind) + s);
      const std::vector<double> values =
          (kind == "gauss") ? sample_white_noise(partition, rng).cell_values
                            : exact_gamma_increments(partition, rng);
      for (size_t c = 0; c < values.size(); ++c)
        out += std::to_string(s) + "," + std::to_string(c) + "," + format_double(values[c]) +
               "\n";
    }
  } else if (kind == "levy") {
    LevySpec spec;
    if (atoms_csv.empty()) {
      spec = gamma_spec();
      out += "# measure=gamma eps=" + format_double(eps) + "\n";
    } else {
      spec = LevySpec{0, 0, parse_atoms(atoms_csv)};
      out += "# measure=atoms(" + atoms_csv + ")\n";
    }
    out += "sample,x,mark\n";
    for (int s = 0; s < count; ++s) {
      CounterRng rng(config.seed, stream_id("simulate.levy") + s);
      for (const auto& p : sample_levy(spec, eps, rng).points)
        out += std::to_string(s) + "," + format_double(p.location) + "," +
               format_double(p.mark) + "\n";
    }
  } else {
    throw CLI::ValidationError("--kind", "unknown simulation kind '" + kind + "'");
  }
  write_file(out_path, out);
  return 0;
}

int run_kernel_table_command(double a, int max_k, double x_min, double x_max, double x_step,
                             int truncation, const std::string& out_path) {
  if (!(a > 0)) throw CLI::ValidationError("--a", "variance must be positive");
  std::string out;
  out += "# kernel table a=" + format_double(a) + " truncation=" + std::to_string(truncation) +
         "\n";
  out += "x";
  for (int k = 0; k <= max_k; ++k) out += ",k" + std::to_string(k);
  out += ",row_sum_error\n";
  for (double x = x_min; x <= x_max + 1e-12; x += x_step) {
    out += format_double(x);
    for (int k = 0; k <= max_k; ++k) out += "," + format_double(kernel_1d(k, x, a));
    out += "," + format_double(std::abs(kernel_row_sum(a, x, truncation) - 1.0));
    out += "\n";
  }
  if (a != 1.0) {
    const NormalizationVerdict v = resolve_identity_normalization(a, 0.5, 2, 300);
    out += "# series_weight_certificate: ";
    switch (v.match) {
      case NormalizationVerdict::Match::kDenominator:
        out += "1/(a^n n!)";
        break;
      case NormalizationVerdict::Match::kNumerator:
        out += "a^n/n!";
        break;
      case NormalizationVerdict::Match::kBoth:
        out += "both";
        break;
      case NormalizationVerdict::Match::kNeither:
        out += "neither";
        break;
    }
    out += " residual_denominator=" + format_double(v.residual_denominator) +
           " residual_numerator=" + format_double(v.residual_numerator) + "\n";
  }
  write_file(out_path, out);
  return 0;
}

int run_gram_table_command(const std::string& weights_csv, int max_degree,
                           const std::string& out_path) {
  const FiniteBase base(parse_weights(weights_csv));
  const std::vector<MultiIndex> block = multi_indices_up_to(base.size(), max_degree);
  const Eigen::MatrixXd gram = mapped_basis_gram(base, max_degree);
  std::string out;
  out += "# mapped-basis gram, weights=" + weights_csv +
         " max_total_degree=" + std::to_string(max_degree) + "\n";
  out += "index";
  for (const auto& k : block) {
    out += ",";
    for (size_t j = 0; j < k.degrees.size(); ++j)
      out += (j ? "|" : "") + std::to_string(k.degrees[j]);
  }
  out += "\n";
  double defect = 0;
  for (Eigen::Index r = 0; r < gram.rows(); ++r) {
    for (size_t j = 0; j < block[r].degrees.size(); ++j)
      out += (j ? "|" : "") + std::to_string(block[r].degrees[j]);
    for (Eigen::Index c = 0; c < gram.cols(); ++c) {
      out += "," + format_double(gram(r, c));
      defect = std::max(defect, std::abs(gram(r, c) - (r == c ? 1.0 : 0.0)));
    }
    out += "\n";
  }
  out += "# unitarity_defect=" + format_double(defect) + "\n";
  write_file(out_path, out);
  return 0;
}

int run_chaos_gram_command(const std::string& kind, int samples, const SuiteConfig& config,
                           const std::string& out_path) {
  const FactorizationKind fk =
      kind == "gauss" ? FactorizationKind::kGauss : FactorizationKind::kPoisson;
  if (kind != "gauss" && kind != "poisson")
    throw CLI::ValidationError("--kind", "expected gauss or poisson");
  const TestFunction f(PartitionOfBase::uniform(2), std::vector<double>{1.0, 1.0});
  const TestFunction g(PartitionOfBase::uniform(2), std::vector<double>{1.0, -1.0});
  std::vector<ChaosEntry> entries;
  entries.push_back({0, {}});
  entries.push_back({1, {f}});
  entries.push_back({2, {f, g}});
  entries.push_back({3, {f, f, g}});
  const GramEstimate est =
      chaos_gram_mc(fk, entries, samples, config.seed ^ stream_id("cli.chaos_gram"));
  std::string out;
  out += "# chaos gram (orders 0..3), kind=" + kind + " samples=" + std::to_string(samples) +
         " seed=" + std::to_string(config.seed) + "\n";
  out += "row,col,mean,std_error\n";
  for (Eigen::Index r = 0; r < est.mean.rows(); ++r)
    for (Eigen::Index c = 0; c < est.mean.cols(); ++c)
      out += std::to_string(r) + "," + std::to_string(c) + "," + format_double(est.mean(r, c)) +
             "," + format_double(est.std_error(r, c)) + "\n";
  write_file(out_path, out);
  return 0;
}

int run_log_profile_command(const std::string& kind, double level, int steps, int samples,
                            const SuiteConfig& config, const std::string& out_path) {
  const FactorizationKind fk =
      kind == "gauss" ? FactorizationKind::kGauss : FactorizationKind::kPoisson;
  if (kind != "gauss" && kind != "poisson")
    throw CLI::ValidationError("--kind", "expected gauss or poisson");
  const TestFunction h = TestFunction::constant(level);
  std::vector<PartitionOfBase> refinements;
  for (int step = 0, cells = 1; step < steps; ++step, cells *= 2)
    refinements.push_back(PartitionOfBase::uniform(cells));
  const auto profile = log_convergence_profile(fk, h, refinements, samples,
                                               config.seed ^ stream_id("cli.log_profile"));
  std::string out;
  out += "# logarithm convergence profile, kind=" + kind + " level=" + format_double(level) +
         " samples=" + std::to_string(samples) + " seed=" + std::to_string(config.seed) + "\n";
  out += "cells,delta,distance_sq\n";
  for (size_t i = 0; i < profile.size(); ++i)
    out += std::to_string(1 << i) + "," + format_double(profile[i].delta) + "," +
           format_double(profile[i].distance_sq) + "\n";
  write_file(out_path, out);
  return 0;
}

int run_jump_basis_command(const std::string& atoms_csv, int max_degree,
                           const std::string& out_path) {
  const LevySpec spec =
      atoms_csv.empty() ? gamma_spec() : LevySpec{0, 0, parse_atoms(atoms_csv)};
  const JumpPolynomialBasis basis = build_jump_basis(spec, max_degree);
  std::string out;
  out += "# jump polynomial basis, measure=" +
         (atoms_csv.empty() ? std::string("gamma") : "atoms(" + atoms_csv + ")") + "\n";
  out += "degree,norm_sq,coefficients_low_to_high\n";
  for (int k = 0; k < basis.size(); ++k) {
    out += std::to_string(k) + "," + format_double(basis.norms_sq[k]);
    for (double c : basis.coefficients[k]) out += "," + format_double(c);
    out += "\n";
  }
  write_file(out_path, out);
  return 0;
}

int run_levy_gram_command(const std::string& atoms_csv, const std::string& pairs_csv, int samples,
                          double eps, const SuiteConfig& config, const std::string& out_path) {
  const LevySpec spec =
      atoms_csv.empty() ? gamma_spec() : LevySpec{0, 0, parse_atoms(atoms_csv)};
  std::vector<std::pair<int, int>> pairs;
  std::stringstream stream(pairs_csv);
  std::string item;
  while (std::getline(stream, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos)
      throw CLI::ValidationError("--pairs", "expected n:k pairs separated by commas");
    pairs.emplace_back(std::stoi(item.substr(0, colon)), std::stoi(item.substr(colon + 1)));
  }
  const GramEstimate est =
      vnk_gram_mc(spec, pairs, samples, config.seed ^ stream_id("cli.levy_gram"), eps);
  std::string out;
  out += "# order/jump-degree gram, pairs=" + pairs_csv + " samples=" + std::to_string(samples) +
         " seed=" + std::to_string(config.seed) + "\n";
  out += "row,col,mean,std_error\n";
  for (Eigen::Index r = 0; r < est.mean.rows(); ++r)
    for (Eigen::Index c = 0; c < est.mean.cols(); ++c)
      out += std::to_string(r) + "," + std::to_string(c) + "," + format_double(est.mean(r, c)) +
             "," + format_double(est.std_error(r, c)) + "\n";
  write_file(out_path, out);
  return 0;
}

int run_voting_command(const std::string& scheme_path, const std::string& builtin, int root_order,
                       const std::string& out_path) {
  VotingScheme scheme = majority_scheme();
  std::string label = builtin;
  if (!scheme_path.empty()) {
    std::ifstream in(scheme_path);
    if (!in) throw CLI::ValidationError("--scheme", "cannot open " + scheme_path);
    scheme = read_scheme(in);
    label = scheme_path;
  } else if (builtin == "majority") {
    scheme = majority_scheme();
  } else if (builtin == "ternary") {
    scheme = ternary_pair_scheme();
  } else if (builtin == "xor") {
    scheme = xor_scheme();
  } else {
    throw CLI::ValidationError("--builtin", "unknown scheme '" + builtin + "'");
  }

  const SchemeValidation validation = validate_scheme(scheme);
  const AbundanceResult abundance = is_abundant(scheme);
  const int dim = antiadditive_solution_dim(scheme);
  const auto characters = antimultiplicative_search(scheme, root_order);

  std::string out;
  out += "{\n";
  out += "  \"scheme\": \"" + label + "\",\n";
  out += "  \"arity\": " + std::to_string(scheme.arity()) + ",\n";
  out += "  \"alphabet\": " + std::to_string(scheme.alphabet_size()) + ",\n";
  out += "  \"balanced\": " + std::string(validation.balanced ? "true" : "false") + ",\n";
  out += "  \"preimage_counts\": [";
  for (size_t i = 0; i < validation.preimage_counts.size(); ++i) {
    out += std::to_string(validation.preimage_counts[i]);
    if (i + 1 < validation.preimage_counts.size()) out += ", ";
  }
  out += "],\n";
  out += "  \"abundant\": " + std::string(abundance.abundant ? "true" : "false") + ",\n";
  out += "  \"abundance_witness\": [";
  for (size_t i = 0; i < abundance.witness_word.size(); ++i) {
    out += std::to_string(abundance.witness_word[i]);
    if (i + 1 < abundance.witness_word.size()) out += ", ";
  }
  out += "],\n";
  out += "  \"antiadditive_dimension\": " + std::to_string(dim) + ",\n";
  out += "  \"antiadditive\": " + std::string(dim == 1 ? "true" : "false") + ",\n";
  out += "  \"character_search_order\": " + std::to_string(root_order) + ",\n";
  out += "  \"nonconstant_characters\": [";
  for (size_t s = 0; s < characters.size(); ++s) {
    out += "{\"g\": [";
    for (size_t i = 0; i < characters[s].g_values.size(); ++i) {
      out += std::to_string(characters[s].g_values[i]);
      if (i + 1 < characters[s].g_values.size()) out += ", ";
    }
    out += "], \"f\": [";
    for (size_t i = 0; i < characters[s].f_values.size(); ++i) {
      out += std::to_string(characters[s].f_values[i]);
      if (i + 1 < characters[s].f_values.size()) out += ", ";
    }
    out += "]}";
    if (s + 1 < characters.size()) out += ", ";
  }
  out += "]\n";
  out += "}\n";
  write_file(out_path, out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"canonical correspondences between Levy-process and white-noise L2 spaces"};
  app.require_subcommand(1);
  app.set_config("--config");

  SuiteConfig config;
  app.add_option("--seed", config.seed, "global seed; per-check streams derive from it");
  app.add_option("--samples", config.samples, "Monte Carlo sample count")->check(CLI::PositiveNumber);
  app.add_option("--tolerance-scale", config.tolerance_scale,
                 "multiplier applied to every check tolerance");

  auto* suite_cmd = app.add_subcommand("suite", "run a verification suite and emit a JSON report");
  suite_cmd->fallthrough();
  std::string suite_name = "all";
  std::string suite_out = "-";
  suite_cmd->add_option("--suite", suite_name, "identities|isometry|processes|chaos|levy|nonfock|all");
  suite_cmd->add_option("--out", suite_out, "report path ('-' for stdout)");

  auto* sim_cmd = app.add_subcommand("simulate", "sample process realizations to CSV");
  sim_cmd->fallthrough();
  std::string sim_kind, sim_partition, sim_atoms;
  std::string sim_out = "-";
  double sim_mass = 1.0, sim_eps = 1e-6;
  int sim_count = 10;
  sim_cmd->add_option("--kind", sim_kind, "poisson|gauss|gamma|levy")->required();
  sim_cmd->add_option("--mass", sim_mass, "total intensity for poisson");
  sim_cmd->add_option("--partition", sim_partition, "comma-separated cell masses (gauss, gamma)");
  sim_cmd->add_option("--atoms", sim_atoms, "jump atoms t:mass,... (levy); empty means gamma");
  sim_cmd->add_option("--eps", sim_eps, "jump-size truncation for the gamma measure");
  sim_cmd->add_option("--n", sim_count, "number of realizations")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--out", sim_out, "CSV path ('-' for stdout)");

  auto* kernel_cmd = app.add_subcommand("kernel-table", "tabulate the one-point kernel");
  kernel_cmd->fallthrough();
  double kt_a = 1.0, kt_xmin = -2.0, kt_xmax = 2.0, kt_xstep = 0.5;
  int kt_maxk = 8, kt_truncation = 200;
  std::string kt_out = "-";
  kernel_cmd->add_option("--a", kt_a, "variance / rate parameter");
  kernel_cmd->add_option("--max-k", kt_maxk, "largest count index");
  kernel_cmd->add_option("--x-min", kt_xmin);
  kernel_cmd->add_option("--x-max", kt_xmax);
  kernel_cmd->add_option("--x-step", kt_xstep)->check(CLI::PositiveNumber);
  kernel_cmd->add_option("--truncation", kt_truncation, "terms in the row-sum diagnostic");
  kernel_cmd->add_option("--out", kt_out, "CSV path ('-' for stdout)");

  auto* gram_cmd = app.add_subcommand("gram-table", "mapped-basis gram matrix on a finite base");
  gram_cmd->fallthrough();
  std::string gram_weights = "1";
  int gram_degree = 4;
  std::string gram_out = "-";
  gram_cmd->add_option("--weights", gram_weights, "comma-separated cell weights");
  gram_cmd->add_option("--max-degree", gram_degree, "largest total degree in the block");
  gram_cmd->add_option("--out", gram_out, "CSV path ('-' for stdout)");

  auto* cgram_cmd = app.add_subcommand("chaos-gram", "Monte Carlo gram of chaos functionals");
  cgram_cmd->fallthrough();
  std::string cgram_kind = "poisson";
  std::string cgram_out = "-";
  cgram_cmd->add_option("--kind", cgram_kind, "gauss|poisson");
  cgram_cmd->add_option("--out", cgram_out, "CSV path ('-' for stdout)");

  auto* profile_cmd = app.add_subcommand("log-profile",
                                         "logarithm convergence profile under dyadic refinement");
  profile_cmd->fallthrough();
  std::string profile_kind = "poisson";
  double profile_level = 0.5;
  int profile_steps = 5;
  std::string profile_out = "-";
  profile_cmd->add_option("--kind", profile_kind, "gauss|poisson");
  profile_cmd->add_option("--level", profile_level, "constant value of the test function");
  profile_cmd->add_option("--steps", profile_steps, "number of dyadic refinements")
      ->check(CLI::Range(1, 12));
  profile_cmd->add_option("--out", profile_out, "CSV path ('-' for stdout)");

  auto* basis_cmd = app.add_subcommand("jump-basis",
                                       "orthogonal polynomials for the squared jump measure");
  basis_cmd->fallthrough();
  std::string basis_atoms;
  int basis_degree = 4;
  std::string basis_out = "-";
  basis_cmd->add_option("--atoms", basis_atoms, "jump atoms t:mass,...; empty means gamma");
  basis_cmd->add_option("--max-degree", basis_degree)->check(CLI::Range(0, 16));
  basis_cmd->add_option("--out", basis_out, "CSV path ('-' for stdout)");

  auto* lgram_cmd = app.add_subcommand("levy-gram",
                                       "Monte Carlo gram of order/jump-degree chaos blocks");
  lgram_cmd->fallthrough();
  std::string lgram_atoms, lgram_pairs = "1:1,1:2,2:1";
  double lgram_eps = 1e-6;
  std::string lgram_out = "-";
  lgram_cmd->add_option("--atoms", lgram_atoms, "jump atoms t:mass,...; empty means gamma");
  lgram_cmd->add_option("--pairs", lgram_pairs, "n:k blocks, comma separated");
  lgram_cmd->add_option("--eps", lgram_eps, "gamma jump truncation");
  lgram_cmd->add_option("--out", lgram_out, "CSV path ('-' for stdout)");

  auto* voting_cmd = app.add_subcommand("voting", "validate a voting scheme and emit the verdict");
  voting_cmd->fallthrough();
  std::string voting_scheme_path, voting_builtin = "majority";
  std::string voting_out = "-";
  int voting_root_order = 6;
  voting_cmd->add_option("--scheme", voting_scheme_path, "scheme file: 'm r' then the multiset table");
  voting_cmd->add_option("--builtin", voting_builtin, "majority|ternary|xor");
  voting_cmd->add_option("--root-order", voting_root_order, "largest root-of-unity order searched")
      ->check(CLI::Range(1, 12));
  voting_cmd->add_option("--out", voting_out, "verdict path ('-' for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return 0;  // --help
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (suite_cmd->parsed()) {
      if (suite_name != "all") {
        const auto& names = suite_names();
        if (std::find(names.begin(), names.end(), suite_name) == names.end()) {
          std::cerr << "unknown suite '" << suite_name << "'\n";
          return 2;
        }
      }
      return run_suite_command(suite_name, config, suite_out);
    }
    if (sim_cmd->parsed())
      return run_simulate_command(sim_kind, sim_mass, sim_partition, sim_atoms, sim_eps,
                                  sim_count, config, sim_out);
    if (kernel_cmd->parsed())
      return run_kernel_table_command(kt_a, kt_maxk, kt_xmin, kt_xmax, kt_xstep, kt_truncation,
                                      kt_out);
    if (gram_cmd->parsed()) return run_gram_table_command(gram_weights, gram_degree, gram_out);
    if (cgram_cmd->parsed())
      return run_chaos_gram_command(cgram_kind, config.samples, config, cgram_out);
    if (profile_cmd->parsed())
      return run_log_profile_command(profile_kind, profile_level, profile_steps, config.samples,
                                     config, profile_out);
    if (basis_cmd->parsed()) return run_jump_basis_command(basis_atoms, basis_degree, basis_out);
    if (lgram_cmd->parsed())
      return run_levy_gram_command(lgram_atoms, lgram_pairs, config.samples, lgram_eps, config,
                                   lgram_out);
    if (voting_cmd->parsed())
      return run_voting_command(voting_scheme_path, voting_builtin, voting_root_order,
                                voting_out);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
