#pragma once

#include <string>

#include "pgb/states.hpp"

namespace pgb {

// On-disk JSON formats:
//   density:  {"dims": [d1, ...], "matrix": [[re, im], ...]}  (row-major)
//   ensemble: {"priors": [p0, ...], "states": [<density>, ...]}
// Loaders validate every state invariant; malformed syntax or structure
// raises ParseError, invariant failures raise the states-module errors.

DensityOperator density_from_json_text(const std::string& text);
Ensemble ensemble_from_json_text(const std::string& text);

std::string density_to_json_text(const DensityOperator& rho);
std::string ensemble_to_json_text(const Ensemble& e);

DensityOperator load_density(const std::string& path);
Ensemble load_ensemble(const std::string& path);

void save_density(const DensityOperator& rho, const std::string& path);
void save_ensemble(const Ensemble& e, const std::string& path);

}  // namespace pgb
