#include "mdpwave/report.hpp"

#include <charconv>

#include "mdpwave/catalog.hpp"

namespace mdpwave::report {

nlohmann::json to_json(const pde::ResidualReport& r) {
  return {{"max_abs", r.max_abs},
          {"max_scaled", r.max_scaled},
          {"points_evaluated", r.points_evaluated},
          {"points_skipped", r.points_skipped},
          {"domain_errors", r.domain_errors},
          {"tolerance", r.tolerance},
          {"method", r.method},
          {"pass", r.pass}};
}

nlohmann::json to_json(const pde::GridSpec& g) {
  return {{"x0", g.x0}, {"x1", g.x1}, {"nx", g.nx}, {"t0", g.t0}, {"t1", g.t1}, {"nt", g.nt}, {"eps_den", g.eps_den}};
}

nlohmann::json to_json(const ParamEnv& env) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [k, v] : env) j[k] = v;
  return j;
}

nlohmann::json catalog_json() {
  nlohmann::json families = nlohmann::json::array();
  for (const auto& f : catalog::list()) {
    nlohmann::json params = nlohmann::json::array();
    for (const auto& p : f.params) {
      nlohmann::json entry = {{"name", p.name}};
      if (p.default_value) entry["default"] = *p.default_value;
      params.push_back(std::move(entry));
    }
    nlohmann::json constraints = nlohmann::json::array();
    for (const auto& c : f.constraints) constraints.push_back(c.label);
    families.push_back({{"id", f.id},
                        {"method", catalog::name_of(f.method)},
                        {"summary", f.summary},
                        {"parameters", std::move(params)},
                        {"constraints", std::move(constraints)},
                        {"wave_speed", f.speed_formula},
                        {"profile", to_prefix(f.profile)},
                        {"singular_denominator", to_prefix(f.denominator)}});
  }
  return {{"count", families.size()}, {"families", std::move(families)}};
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace mdpwave::report
