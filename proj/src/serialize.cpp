#include "fdopt/serialize.hpp"

#include <filesystem>
#include <fstream>
#include <ios>
#include <sstream>
#include <stdexcept>

namespace fdopt {

namespace {

nlohmann::json reals_to_json(const std::vector<Real>& v) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& e : v) out.push_back(real_to_decimal(e));
  return out;
}

std::vector<Real> reals_from_json(const nlohmann::json& j) {
  std::vector<Real> out;
  for (const auto& e : j) out.push_back(real_from_decimal(e.get<std::string>()));
  return out;
}

nlohmann::json cplx_to_json(const Cplx& z) {
  return nlohmann::json{{"re", real_to_decimal(z.re)}, {"im", real_to_decimal(z.im)}};
}

}  // namespace

std::string real_to_decimal(const Real& v) {
  // Zero digits requests every digit the mantissa carries.
  return v.str(0, std::ios_base::scientific);
}

Real real_from_decimal(const std::string& s) { return Real(s); }

nlohmann::json formula_to_json(const FdFormula& f) {
  return nlohmann::json{{"m", f.params.m},
                        {"N", f.params.N},
                        {"k", f.params.k},
                        {"C", reals_to_json(f.C)},
                        {"C1", reals_to_json(f.C1)}};
}

FdFormula formula_from_json(const nlohmann::json& j) {
  FdFormula f;
  f.params.m = j.at("m").get<int>();
  f.params.N = j.at("N").get<int>();
  f.params.k = j.at("k").get<int>();
  f.params.validate();
  f.C = reals_from_json(j.at("C"));
  f.C1 = reals_from_json(j.at("C1"));
  f.validate_sizes();
  return f;
}

nlohmann::json diagnostics_to_json(const OptimalFormula& opt, const Real& babuska_max_relative) {
  return nlohmann::json{{"condition_estimate", real_to_decimal(opt.condition_estimate)},
                        {"residual_norm", real_to_decimal(opt.residual_norm)},
                        {"babuska_max_residual", real_to_decimal(babuska_max_relative)}};
}

nlohmann::json spectral_to_json(const SpectralRep& rep) {
  nlohmann::json lambda = nlohmann::json::array();
  nlohmann::json m = nlohmann::json::array();
  nlohmann::json n = nlohmann::json::array();
  for (std::size_t i = 0; i < rep.roots.size(); ++i) {
    lambda.push_back(cplx_to_json(rep.roots[i]));
    m.push_back(cplx_to_json(rep.M[i]));
    n.push_back(cplx_to_json(rep.N[i]));
  }
  return nlohmann::json{{"params", {{"m", rep.params.m}, {"N", rep.params.N}, {"k", rep.params.k}}},
                        {"lambda", lambda},
                        {"M", m},
                        {"N", n},
                        {"C0", real_to_decimal(rep.C0)},
                        {"Ck1", real_to_decimal(rep.Ck1)},
                        {"max_reconstruction_residual", real_to_decimal(rep.max_fit_residual)}};
}

nlohmann::json trajectory_to_json(const Trajectory& t) {
  nlohmann::json out{{"x", t.x}, {"y", t.y}};
  if (!t.error.empty()) {
    out["error"] = t.error;
    out["max_abs_error"] = t.max_abs_error();
  }
  return out;
}

std::string trajectory_to_csv(const Trajectory& t) {
  std::ostringstream os;
  os.precision(17);
  os << (t.error.empty() ? "x,y\n" : "x,y,error\n");
  for (std::size_t i = 0; i < t.x.size(); ++i) {
    os << t.x[i] << ',' << t.y[i];
    if (!t.error.empty()) os << ',' << t.error[i];
    os << '\n';
  }
  return os.str();
}

nlohmann::json convergence_to_json(const ConvergenceReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"N", row.N}, {"max_abs_error", row.max_abs_error}});
  }
  nlohmann::json out{{"method", r.method}, {"problem", r.problem}, {"rows", rows}};
  if (r.exact_reproduction) {
    out["fitted_order"] = "exact";
  } else if (r.fitted_order) {
    out["fitted_order"] = *r.fitted_order;
  }
  return out;
}

std::string convergence_to_csv(const ConvergenceReport& r) {
  std::ostringstream os;
  os.precision(17);
  os << "method,problem,N,max_abs_error\n";
  for (const auto& row : r.rows) {
    os << r.method << ',' << r.problem << ',' << row.N << ',' << row.max_abs_error << '\n';
  }
  return os.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << content;
    if (!out.flush()) throw std::runtime_error("failed writing " + tmp.string());
  }
  fs::rename(tmp, target);
}

}  // namespace fdopt
