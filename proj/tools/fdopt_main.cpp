// Command-line front end: coefficient construction (coeffs), formula
// verification (verify), root-based representation (spectral), and the ODE
// benchmark (integrate, convergence). Machine-readable JSON/CSV output.

#include <CLI11.hpp>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fdopt/errors.hpp"
#include "fdopt/serialize.hpp"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitSolver = 2;
constexpr int kExitVerify = 3;
constexpr int kExitSpectral = 4;

struct CommonOpts {
  int m = 3;
  int N = 10;
  int k = 5;
  unsigned precision_bits = 256;
  std::string format = "json";
  std::string out_path;
  std::uint64_t seed = 12345;
};

void emit(const CommonOpts& opts, const std::string& content) {
  if (opts.out_path.empty()) {
    std::cout << content;
    if (!content.empty() && content.back() != '\n') std::cout << '\n';
  } else {
    fdopt::write_file_atomic(opts.out_path, content);
  }
}

fdopt::FormulaParams make_params(const CommonOpts& opts) {
  fdopt::FormulaParams params{opts.m, opts.N, opts.k};
  params.validate();
  return params;
}

void warn_condition(const fdopt::OptimalFormula& opt) {
  if (opt.condition_estimate > fdopt::Real("1e20")) {
    std::cerr << "warning: condition estimate " << opt.condition_estimate.str(4)
              << " exceeds 1e20; coefficients may lose accuracy\n";
  }
}

fdopt::Real max_relative(const std::vector<fdopt::Real>& values, const std::vector<fdopt::Real>& scales) {
  fdopt::Real worst = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const fdopt::Real scale = scales[i] > 0 ? scales[i] : fdopt::Real(1);
    worst = std::max(worst, fdopt::Real(abs(values[i]) / scale));
  }
  return worst;
}

bool is_adams_left(const fdopt::FdFormula& f) {
  const int k = f.params.k;
  if (f.C[k] != 1 || f.C[k - 1] != -1) return false;
  for (int b = 0; b <= k - 2; ++b) {
    if (f.C[b] != 0) return false;
  }
  return true;
}

int cmd_coeffs(const CommonOpts& opts) {
  const fdopt::FormulaParams params = make_params(opts);
  const fdopt::OptimalFormula opt = fdopt::solve_adams(params);
  warn_condition(opt);

  const fdopt::BabuskaReport babuska = fdopt::babuska_report(opt);
  nlohmann::json j = fdopt::formula_to_json(opt.formula);
  j["diagnostics"] = fdopt::diagnostics_to_json(opt, max_relative(babuska.residuals, babuska.scales));
  emit(opts, j.dump(2));
  return 0;
}

int cmd_verify(const CommonOpts& opts, const std::string& formula_path,
               const std::optional<double>& tolerance) {
  // The formula under test comes from a file ("-" = stdin) or from a fresh
  // solve of the given parameters.
  fdopt::FdFormula formula;
  if (!formula_path.empty()) {
    nlohmann::json j;
    if (formula_path == "-") {
      std::cin >> j;
    } else {
      std::ifstream in(formula_path);
      if (!in) {
        std::cerr << "error: cannot open " << formula_path << "\n";
        return kExitConfig;
      }
      in >> j;
    }
    formula = fdopt::formula_from_json(j);
  } else {
    formula = fdopt::solve_adams(make_params(opts)).formula;
  }
  const fdopt::FormulaParams& params = formula.params;

  const fdopt::Real constraint_tol =
      tolerance ? fdopt::Real(*tolerance) : fdopt::admissibility_tolerance();

  nlohmann::json report;
  std::vector<std::string> failures;

  // 1. Exactness constraints.
  const fdopt::ConstraintReport constraints = fdopt::constraint_report(formula);
  const fdopt::Real constraint_worst = max_relative(constraints.residuals, constraints.scales);
  report["constraint_max_relative"] = fdopt::real_to_decimal(constraint_worst);
  const bool admissible = constraint_worst <= constraint_tol;
  if (!admissible) failures.push_back("constraint_residuals");

  // 2. Norm of the error functional.
  if (admissible) {
    const fdopt::Real ns = fdopt::norm_squared(formula);
    report["norm_squared"] = fdopt::real_to_decimal(ns);
    if (ns < fdopt::Real("-1e-35")) failures.push_back("norm_nonnegative");
  }

  // 3. Optimality under constraint-preserving perturbations.
  const bool adams_like = is_adams_left(formula) && formula.C1[params.k] == 0;
  if (admissible) {
    const auto support = [&] {
      std::vector<int> s;
      for (int b = 0; b <= (adams_like ? params.k - 1 : params.k); ++b) s.push_back(b);
      return s;
    }();
    const fdopt::Matrix constraints_m = fdopt::constraint_matrix(params, support);
    const auto basis = fdopt::null_space_basis(constraints_m);
    const fdopt::NormCache cache = fdopt::make_norm_cache(params, formula.C);
    const fdopt::Real base = cache.norm_squared(formula.C1);
    const fdopt::Real eps("1e-3");
    fdopt::Real min_margin = 0;
    for (int trial = 0; trial < 100; ++trial) {
      const std::vector<fdopt::Real> z = fdopt::seeded_null_direction(basis, opts.seed, trial);
      std::vector<fdopt::Real> c1 = formula.C1;
      for (std::size_t i = 0; i < support.size(); ++i) c1[support[i]] += eps * z[i];
      const fdopt::Real margin = cache.norm_squared(c1) - base;
      if (margin < min_margin) min_margin = margin;
    }
    report["perturbation_min_margin"] = fdopt::real_to_decimal(min_margin);
    if (min_margin < fdopt::Real("-1e-25")) failures.push_back("perturbation_optimality");
  }

  // 4. Variational residuals of a fresh solve of the same system.
  {
    const fdopt::OptimalFormula reference =
        adams_like ? fdopt::solve_adams(params)
                   : fdopt::solve(fdopt::assemble_generic(params, formula.C));
    fdopt::OptimalFormula probe = reference;
    probe.formula.C1 = formula.C1;
    const fdopt::BabuskaReport babuska = fdopt::babuska_report(probe);
    const fdopt::Real worst = max_relative(babuska.residuals, babuska.scales);
    report["babuska_max_relative"] = fdopt::real_to_decimal(worst);
    if (worst > fdopt::Real("1e-24")) failures.push_back("babuska_residuals");
  }

  report["passed"] = failures.empty();
  report["failed_checks"] = failures;
  emit(opts, report.dump(2));
  if (!failures.empty()) {
    std::cerr << "verification failed:";
    for (const auto& f : failures) std::cerr << ' ' << f;
    std::cerr << '\n';
    return kExitVerify;
  }
  return 0;
}

int cmd_spectral(const CommonOpts& opts) {
  const fdopt::FormulaParams params = make_params(opts);
  if (params.k - 2 < 2 * (params.m - 2)) {
    std::cerr << "error: spectral fit requires k-2 >= 2(m-2)\n";
    return kExitConfig;
  }
  const fdopt::CrossValidation cv = fdopt::cross_validate(params);
  warn_condition(cv.direct);
  nlohmann::json j = fdopt::spectral_to_json(cv.rep);
  j["boundary_c0_discrepancy"] = fdopt::real_to_decimal(cv.boundary_c0_discrepancy);
  j["boundary_ck1_discrepancy"] = fdopt::real_to_decimal(cv.boundary_ck1_discrepancy);
  j["palindromy_residual"] = fdopt::real_to_decimal(cv.palindromy_residual);
  emit(opts, j.dump(2));
  return 0;
}

fdopt::Startup parse_startup(const std::string& name) {
  if (name == "exact") return fdopt::Startup::Exact;
  if (name == "rk4") return fdopt::Startup::Rk4;
  throw std::invalid_argument("unknown startup mode '" + name + "' (expected exact or rk4)");
}

int cmd_integrate(const CommonOpts& opts, const std::string& problem_name, const std::string& startup,
                  bool multiprecision) {
  const fdopt::IvpProblem* problem = fdopt::find_problem(problem_name);
  if (problem == nullptr) {
    std::cerr << "error: unknown problem '" << problem_name << "'\n";
    return kExitConfig;
  }
  const fdopt::FormulaParams params = make_params(opts);
  const fdopt::Trajectory t =
      fdopt::integrate_optimal(*problem, params, parse_startup(startup), multiprecision);
  if (opts.format == "csv") {
    emit(opts, fdopt::trajectory_to_csv(t));
  } else {
    nlohmann::json j = fdopt::trajectory_to_json(t);
    j["problem"] = problem->name;
    emit(opts, j.dump(2));
  }
  return 0;
}

int cmd_convergence(const CommonOpts& opts, const std::string& problem_name,
                    const std::vector<int>& n_list, const std::string& startup, int ab_steps) {
  const fdopt::IvpProblem* problem = fdopt::find_problem(problem_name);
  if (problem == nullptr) {
    std::cerr << "error: unknown problem '" << problem_name << "'\n";
    return kExitConfig;
  }
  const fdopt::Startup mode = parse_startup(startup);

  const std::string opt_name = "optimal(m=" + std::to_string(opts.m) + ",k=" + std::to_string(opts.k) + ")";
  const fdopt::ConvergenceReport optimal = fdopt::measure_order(
      [&](int N) {
        fdopt::FormulaParams params{opts.m, N, opts.k};
        params.validate();
        return fdopt::integrate_optimal(*problem, params, mode);
      },
      opt_name, problem->name, n_list);

  const fdopt::ConvergenceReport ab = fdopt::measure_order(
      [&](int N) { return fdopt::integrate_adams_bashforth(*problem, ab_steps, N, mode); },
      "adams-bashforth(" + std::to_string(ab_steps) + ")", problem->name, n_list);

  if (opts.format == "csv") {
    emit(opts, fdopt::convergence_to_csv(optimal) + fdopt::convergence_to_csv(ab));
  } else {
    emit(opts, nlohmann::json{{"optimal", fdopt::convergence_to_json(optimal)},
                              {"adams_bashforth", fdopt::convergence_to_json(ab)}}
                   .dump(2));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal explicit Adams-type finite-difference formulas: construction, verification, "
               "root-based representation, and an ODE benchmark"};
  app.require_subcommand(1);

  CommonOpts opts;
  app.add_option("--precision-bits", opts.precision_bits, "working mantissa bits (>= 53)")
      ->capture_default_str();
  app.add_option("--seed", opts.seed, "seed for the perturbation draws")->capture_default_str();

  auto add_grid = [&](CLI::App* sub, bool need_n = true) {
    sub->add_option("--m", opts.m, "smoothness order (>= 3)")->capture_default_str();
    if (need_n) sub->add_option("--N", opts.N, "grid density, h = 1/N")->capture_default_str();
    sub->add_option("--k", opts.k, "step count")->capture_default_str();
  };
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--format", opts.format, "json or csv")->capture_default_str();
    sub->add_option("--out", opts.out_path, "output path (default stdout)");
  };

  auto* coeffs = app.add_subcommand("coeffs", "solve for the optimal derivative coefficients");
  add_grid(coeffs);
  add_output(coeffs);

  auto* verify = app.add_subcommand("verify", "check constraints, optimality and variational residuals");
  add_grid(verify);
  add_output(verify);
  std::string formula_path;
  std::optional<double> tolerance;
  verify->add_option("--formula", formula_path, "formula JSON to verify ('-' = stdin); omit to re-solve");
  double tolerance_value = 0;
  auto* tol_opt = verify->add_option("--tolerance", tolerance_value, "constraint tolerance override");

  auto* spectral = app.add_subcommand("spectral", "characteristic roots, amplitudes and boundary coefficients");
  add_grid(spectral);
  add_output(spectral);

  auto* integrate = app.add_subcommand("integrate", "march one problem with the optimal formula");
  add_grid(integrate);
  add_output(integrate);
  std::string problem_name = "exp-decay";
  std::string startup = "rk4";
  bool multiprecision = false;
  integrate->add_option("--problem", problem_name, "exp-decay | exp-growth | poly | logistic")
      ->capture_default_str();
  integrate->add_option("--startup", startup, "exact or rk4")->capture_default_str();
  integrate->add_flag("--mp", multiprecision, "march at full working precision");

  auto* convergence = app.add_subcommand("convergence", "measured orders for optimal and Adams-Bashforth");
  add_grid(convergence, false);
  add_output(convergence);
  std::vector<int> n_list;
  int ab_steps = 2;
  convergence->add_option("--problem", problem_name, "exp-decay | exp-growth | poly | logistic")
      ->capture_default_str();
  convergence->add_option("--N-list", n_list, "comma-separated grid densities")->delimiter(',')->required();
  convergence->add_option("--startup", startup, "exact or rk4")->capture_default_str();
  convergence->add_option("--ab-steps", ab_steps, "Adams-Bashforth step count (1..5)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    fdopt::apply(fdopt::PrecisionContext{opts.precision_bits, 20});
    if (tol_opt->count() > 0) tolerance = tolerance_value;

    if (coeffs->parsed()) return cmd_coeffs(opts);
    if (verify->parsed()) return cmd_verify(opts, formula_path, tolerance);
    if (spectral->parsed()) return cmd_spectral(opts);
    if (integrate->parsed()) return cmd_integrate(opts, problem_name, startup, multiprecision);
    if (convergence->parsed()) return cmd_convergence(opts, problem_name, n_list, startup, ab_steps);
  } catch (const fdopt::RootOnCircle& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSpectral;
  } catch (const fdopt::FitFailure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSpectral;
  } catch (const fdopt::SingularSystem& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSolver;
  } catch (const fdopt::NonConvergence& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSolver;
  } catch (const fdopt::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSolver;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return 0;
}
