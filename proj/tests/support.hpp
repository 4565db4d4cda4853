#pragma once

// Parameter samples shared by the unit and acceptance tests.

#include <cmath>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "mdpwave/cole_hopf.hpp"
#include "mdpwave/expr.hpp"
#include "mdpwave/riccati.hpp"

namespace mdpwave::testing {

struct Sample {
  std::string family;
  ParamEnv params;
};

inline std::vector<Sample> catalog_samples() {
  std::vector<Sample> out;
  const double bs[] = {-0.5, 1.0, 3.0, 5.0};

  struct Branch {
    double b, mu;
    cole_hopf::Branch which;
  };
  for (const Branch& br : {Branch{3, 1, cole_hopf::Branch::plus}, Branch{1, 0.7, cole_hopf::Branch::minus},
                           Branch{-0.5, 0.5, cole_hopf::Branch::plus}, Branch{5, 0.9, cole_hopf::Branch::minus}}) {
    const auto p = cole_hopf::branch_params(br.which, br.b, br.mu);
    out.push_back({"cole-hopf", {{"b", br.b}, {"A", p.A}, {"B", p.B}, {"mu", p.mu}, {"lambda", p.lambda}}});
  }
  const double mus[] = {0.8, 1.0, 0.6, 0.9};
  for (const char* id : {"u1", "u2"})
    for (int i = 0; i < 4; ++i) out.push_back({id, {{"b", bs[i]}, {"mu", mus[i]}}});
  for (const char* id : {"u3", "u4", "u5", "u6"})
    for (double b : bs) out.push_back({id, {{"b", b}}});
  for (const char* id : {"u7", "u8"})
    for (double b : bs)
      for (double s : {1.5, -1.5}) out.push_back({id, {{"b", b}, {"a2", s / (b + 1)}}});
  for (const char* id : {"u9", "u10"})
    for (double b : bs)
      for (double c2 : {2.0, -2.0}) out.push_back({id, {{"b", b}, {"c2", c2}}});

  auto riccati_family = [&](const char* id, std::vector<std::array<double, 3>> triples) {
    for (std::size_t i = 0; i < triples.size(); ++i) {
      const auto& t = triples[i];
      out.push_back({id, {{"b", bs[i % 4]}, {"alpha", t[0]}, {"beta", t[1]}, {"gamma", t[2]}}});
    }
  };
  riccati_family("u11", {{1, 2, 1}, {0.25, 1, 1}, {1, -2, 1}, {0.5, 1, 0.5}});
  for (const char* id : {"u12", "u13"}) riccati_family(id, {{0, 1, -1}, {0, 0.8, -0.5}, {0, 0.5, 1}, {0, 1, 0.5}});
  for (const char* id : {"u14", "u15"})
    riccati_family(id, {{0.25, 0, 0.25}, {0.2, 0, 0.25}, {-0.25, 0, -0.25}, {0.125, 0, 0.5}});
  for (const char* id : {"u16", "u17", "u18", "u19"})
    riccati_family(id, {{0.5, 0, 0.5}, {0.25, 0, 0.5}, {-0.5, 0, -0.5}, {0.1, 0, 0.4}});
  for (const char* id : {"u20", "u21", "u22", "u23"})
    riccati_family(id, {{0.75, 2, 1}, {0.1, 1, 0.5}, {0.1, 0.5, -0.5}, {-0.25, 0.5, 0.25}});
  return out;
}

/// Families whose every sample is free of real poles on the default grid.
inline bool pole_free(const std::string& id) {
  for (const char* f : {"cole-hopf", "u1", "u2", "u3", "u6", "u20", "u21"})
    if (id == f) return true;
  return false;
}

/// Draws coefficients satisfying exactly the condition of `c` under the
/// classification precedence.
inline riccati::Coefficients random_triple(riccati::Case c, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> mag(0.2, 2.0);
  std::bernoulli_distribution coin(0.5);
  auto nz = [&] { return coin(rng) ? mag(rng) : -mag(rng); };
  std::uniform_real_distribution<double> any(-2.0, 2.0);
  using riccati::Case;
  switch (c) {
    case Case::exp_alpha_zero: return {0.0, nz(), any(rng)};
    case Case::rational: return {0.0, 0.0, nz()};
    case Case::exp_gamma_zero: return {nz(), nz(), 0.0};
    case Case::pure: return {nz(), 0.0, nz()};
    case Case::degenerate: {
      const double a = nz(), b = nz();
      return {a, b, b * b / (4.0 * a)};
    }
    case Case::tan: {
      const double s = coin(rng) ? 1.0 : -1.0;
      const double a = s * mag(rng), g = s * mag(rng);
      const double lim = std::sqrt(4.0 * a * g);
      std::uniform_real_distribution<double> bd(-0.9 * lim, 0.9 * lim);
      return {a, bd(rng), g};
    }
    case Case::tanh: {
      const double a = nz(), g = nz();
      const double lim = std::sqrt(std::max(0.0, 4.0 * a * g));
      const double b = (lim + 0.1 + mag(rng)) * (coin(rng) ? 1.0 : -1.0);
      return {a, b, g};
    }
  }
  return {0, 0, 0};
}

}  // namespace mdpwave::testing
