#pragma once

// JSON and CSV rendering shared by the command-line tool.

#include <string>

#include <json.hpp>

#include "mdpwave/pde_verifier.hpp"

namespace mdpwave::report {

nlohmann::json to_json(const pde::ResidualReport& r);
nlohmann::json to_json(const pde::GridSpec& g);
nlohmann::json to_json(const ParamEnv& env);

/// Metadata of every catalogued family.
nlohmann::json catalog_json();

/// Shortest decimal that round-trips to `v`.
std::string format_double(double v);

}  // namespace mdpwave::report
