#include "fdopt/integrator.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <stdexcept>

#include "fdopt/errors.hpp"

namespace fdopt {

namespace {

using Rational = boost::multiprecision::cpp_rational;

template <typename Scalar, typename Rhs, typename Exact>
std::vector<Scalar> march(const Rhs& rhs, const Exact& exact, bool use_exact_startup, Scalar y0,
                          const std::vector<Scalar>& weights, int window, int N, const Scalar& h) {
  std::vector<Scalar> y(N + 1);
  y[0] = y0;
  for (int i = 1; i < window; ++i) {
    if (use_exact_startup) {
      y[i] = exact(Scalar(h * i));
    } else {
      // Classical four-stage Runge-Kutta at the same step.
      const Scalar x = h * (i - 1);
      const Scalar& yy = y[i - 1];
      const Scalar k1 = rhs(x, yy);
      const Scalar k2 = rhs(Scalar(x + h / 2), Scalar(yy + h * k1 / 2));
      const Scalar k3 = rhs(Scalar(x + h / 2), Scalar(yy + h * k2 / 2));
      const Scalar k4 = rhs(Scalar(x + h), Scalar(yy + h * k3));
      y[i] = yy + h * (k1 + 2 * k2 + 2 * k3 + k4) / 6;
    }
  }
  for (int n = window; n <= N; ++n) {
    Scalar acc = 0;
    for (int b = 0; b < static_cast<int>(weights.size()); ++b) {
      const int idx = n - window + b;
      acc += weights[b] * rhs(Scalar(h * idx), y[idx]);
    }
    y[n] = y[n - 1] + h * acc;
  }
  return y;
}

Trajectory finish(const IvpProblem& problem, std::vector<double> y, int N) {
  Trajectory out;
  out.y = std::move(y);
  out.x.resize(N + 1);
  const double h = 1.0 / N;
  for (int i = 0; i <= N; ++i) out.x[i] = h * i;
  if (problem.has_exact()) {
    out.error.resize(N + 1);
    for (int i = 0; i <= N; ++i) out.error[i] = std::abs(out.y[i] - problem.exact(out.x[i]));
  }
  return out;
}

void require_startup(const IvpProblem& problem, Startup startup) {
  if (startup == Startup::Exact && !problem.has_exact()) {
    throw StartupUnavailable("exact startup requested but problem '" + problem.name +
                             "' has no exact solution");
  }
}

}  // namespace

double Trajectory::max_abs_error() const {
  if (error.empty()) throw Error("trajectory has no error column (no exact solution)");
  double out = 0;
  for (const double e : error) out = std::max(out, e);
  return out;
}

Trajectory integrate_optimal(const IvpProblem& problem, const OptimalFormula& opt, Startup startup,
                             bool multiprecision) {
  const FormulaParams& params = opt.formula.params;
  const int k = params.k;
  const int N = params.N;
  require_startup(problem, startup);
  const bool use_exact = startup == Startup::Exact;

  if (multiprecision) {
    if (!problem.rhs_mp || (use_exact && !problem.exact_mp)) {
      throw std::invalid_argument("problem '" + problem.name + "' lacks multiprecision callables");
    }
    std::vector<Real> w(opt.formula.C1.begin(), opt.formula.C1.begin() + k);
    const std::vector<Real> y =
        march<Real>(problem.rhs_mp, problem.exact_mp, use_exact, Real(problem.y0), w, k, N, params.h());
    std::vector<double> yd(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) yd[i] = static_cast<double>(y[i]);
    return finish(problem, std::move(yd), N);
  }

  std::vector<double> w(k);
  for (int b = 0; b < k; ++b) w[b] = static_cast<double>(opt.formula.C1[b]);
  const std::vector<double> y =
      march<double>(problem.rhs, problem.exact, use_exact, problem.y0, w, k, N, 1.0 / N);
  return finish(problem, y, N);
}

Trajectory integrate_optimal(const IvpProblem& problem, const FormulaParams& params, Startup startup,
                             bool multiprecision) {
  return integrate_optimal(problem, solve_adams(params), startup, multiprecision);
}

std::vector<Real> adams_bashforth_weights(int k_steps) {
  if (k_steps < 1 || k_steps > 5) {
    throw std::invalid_argument("adams_bashforth_weights: k_steps must be in 1..5");
  }
  const int n = k_steps;
  // Conditions sum_i b_i (-i)^j = 1/(j+1), j = 0..n-1, where b_i multiplies
  // the value i steps back from the newest node.
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
  std::vector<Rational> rhs(n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      Rational p = 1;
      for (int t = 0; t < j; ++t) p *= Rational(-i);
      a[j][i] = p;
    }
    rhs[j] = Rational(1, j + 1);
  }
  // Exact Gaussian elimination over the rationals.
  for (int col = 0; col < n; ++col) {
    int piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) throw Error("adams_bashforth_weights: moment matrix is singular");
    std::swap(a[piv], a[col]);
    std::swap(rhs[piv], rhs[col]);
    for (int r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col] / a[col][col];
      for (int j2 = col; j2 < n; ++j2) a[r][j2] -= f * a[col][j2];
      rhs[r] -= f * rhs[col];
    }
  }
  std::vector<Real> weights(n);
  for (int i = 0; i < n; ++i) {
    const Rational b_i = rhs[i] / a[i][i];  // multiplies f_{newest - i}
    weights[n - 1 - i] = Real(boost::multiprecision::numerator(b_i).str()) /
                         Real(boost::multiprecision::denominator(b_i).str());
  }
  return weights;
}

Trajectory integrate_adams_bashforth(const IvpProblem& problem, int k_steps, int N, Startup startup) {
  if (N < k_steps) throw std::invalid_argument("integrate_adams_bashforth: N must be >= k_steps");
  require_startup(problem, startup);
  const std::vector<Real> w_mp = adams_bashforth_weights(k_steps);
  std::vector<double> w(w_mp.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = static_cast<double>(w_mp[i]);
  const std::vector<double> y = march<double>(problem.rhs, problem.exact, startup == Startup::Exact,
                                              problem.y0, w, k_steps, N, 1.0 / N);
  return finish(problem, y, N);
}

ConvergenceReport measure_order(const std::function<Trajectory(int)>& run, const std::string& method_name,
                                const std::string& problem_name, const std::vector<int>& n_list) {
  if (n_list.size() < 3) throw std::invalid_argument("measure_order: need at least 3 grid densities");
  for (std::size_t i = 1; i < n_list.size(); ++i) {
    if (n_list[i] <= n_list[i - 1]) {
      throw std::invalid_argument("measure_order: N list must be strictly increasing");
    }
  }

  ConvergenceReport report;
  report.method = method_name;
  report.problem = problem_name;

  constexpr double kExactFloor = 1e-13;
  bool exact = false;
  for (const int N : n_list) {
    const Trajectory t = run(N);
    const double err = t.max_abs_error();
    if (!std::isfinite(err)) throw Error("measure_order: non-finite error at N=" + std::to_string(N));
    if (err < kExactFloor) exact = true;
    report.rows.push_back({N, err});
  }
  if (exact) {
    report.exact_reproduction = true;
    return report;
  }

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(report.rows.size());
  for (const auto& row : report.rows) {
    const double lx = std::log(static_cast<double>(row.N));
    const double ly = -std::log(row.max_abs_error);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  report.fitted_order = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return report;
}

const std::vector<IvpProblem>& builtin_problems() {
  static const std::vector<IvpProblem> problems = [] {
    std::vector<IvpProblem> out;

    IvpProblem decay;
    decay.name = "exp-decay";
    decay.rhs = [](double, double y) { return -y; };
    decay.y0 = 1.0;
    decay.exact = [](double x) { return std::exp(-x); };
    decay.rhs_mp = [](const Real&, const Real& y) { return -y; };
    decay.exact_mp = [](const Real& x) { return exp(-x); };
    out.push_back(decay);

    IvpProblem growth;
    growth.name = "exp-growth";
    growth.rhs = [](double, double y) { return y; };
    growth.y0 = 1.0;
    growth.exact = [](double x) { return std::exp(x); };
    growth.rhs_mp = [](const Real&, const Real& y) { return y; };
    growth.exact_mp = [](const Real& x) { return exp(x); };
    out.push_back(growth);

    IvpProblem poly;
    poly.name = "poly";
    poly.rhs = [](double x, double) { return 3 * x * x; };
    poly.y0 = 0.0;
    poly.exact = [](double x) { return x * x * x; };
    poly.rhs_mp = [](const Real& x, const Real&) { return 3 * x * x; };
    poly.exact_mp = [](const Real& x) { return x * x * x; };
    out.push_back(poly);

    IvpProblem logistic;
    logistic.name = "logistic";
    logistic.rhs = [](double, double y) { return y * (1 - y); };
    logistic.y0 = 0.5;
    logistic.exact = [](double x) { return 1.0 / (1.0 + std::exp(-x)); };
    logistic.rhs_mp = [](const Real&, const Real& y) { return y * (1 - y); };
    logistic.exact_mp = [](const Real& x) { return 1 / (1 + exp(-x)); };
    out.push_back(logistic);

    return out;
  }();
  return problems;
}

const IvpProblem* find_problem(const std::string& name) {
  for (const auto& p : builtin_problems()) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

}  // namespace fdopt
