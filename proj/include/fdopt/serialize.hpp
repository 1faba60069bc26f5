#pragma once

#include <json.hpp>
#include <string>

#include "fdopt/direct_solver.hpp"
#include "fdopt/integrator.hpp"
#include "fdopt/spectral.hpp"

namespace fdopt {

// Coefficients cross the JSON boundary as decimal strings carrying the full
// working precision, so a round trip reproduces the same bits.
std::string real_to_decimal(const Real& v);
Real real_from_decimal(const std::string& s);

nlohmann::json formula_to_json(const FdFormula& f);
FdFormula formula_from_json(const nlohmann::json& j);

nlohmann::json diagnostics_to_json(const OptimalFormula& opt, const Real& babuska_max_relative);

nlohmann::json spectral_to_json(const SpectralRep& rep);

nlohmann::json trajectory_to_json(const Trajectory& t);
std::string trajectory_to_csv(const Trajectory& t);

nlohmann::json convergence_to_json(const ConvergenceReport& r);
std::string convergence_to_csv(const ConvergenceReport& r);

// Writes via a temporary file in the same directory plus an atomic rename.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace fdopt
