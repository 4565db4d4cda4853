#include "mdpwave/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "mdpwave/catalog.hpp"
#include "mdpwave/cole_hopf.hpp"
#include "mdpwave/errors.hpp"
#include "mdpwave/pde_verifier.hpp"
#include "mdpwave/rational.hpp"
#include "mdpwave/rational_hyperbolic.hpp"
#include "mdpwave/report.hpp"
#include "mdpwave/riccati.hpp"
#include "mdpwave/tanh_coth.hpp"

namespace mdpwave {

namespace {

using nlohmann::json;

struct RunConfig {
  std::string command;
  std::string family;
  std::vector<std::string> params;
  pde::GridSpec grid;
  std::optional<double> tol;
  bool fd = false;
  double fd_step = pde::kDefaultFdStep;
  std::string out;
  // riccati
  std::string alpha, beta, gamma;
  // cole-hopf
  std::string branch;
  // pipeline
  int order = 2;
  std::string case_name;
  std::string system_file;
  unsigned seeds = 400;
  std::uint64_t rng_seed = 7;
  unsigned threads = 1;
  // equiv
  std::string left, right;
  std::vector<std::string> left_params, right_params;
  unsigned points = 100;
  // plot-data
  double t = 0.0;
};

/// name=value bindings kept both exactly and as doubles.
struct Bindings {
  std::map<std::string, Rational, std::less<>> exact;
  ParamEnv env;
};

Bindings parse_params(const std::vector<std::string>& raw) {
  Bindings b;
  for (const auto& item : raw) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw InvalidParams("parameter '" + item + "' is not of the form name=value");
    const std::string name = item.substr(0, eq);
    Rational v;
    try {
      v = parse_rational(std::string_view(item).substr(eq + 1));
    } catch (const std::invalid_argument&) {
      throw InvalidParams("parameter '" + name + "' has a non-numeric value");
    }
    if (b.exact.count(name)) throw InvalidParams("parameter '" + name + "' given twice");
    b.exact.emplace(name, v);
    b.env.emplace(name, to_double(v));
  }
  return b;
}

double parse_real(const std::string& text, const char* what) {
  try {
    return to_double(parse_rational(text));
  } catch (const std::invalid_argument&) {
    throw InvalidParams(std::string("option --") + what + " needs a number, got '" + text + "'");
  }
}

const Rational& require_exact(const Bindings& b, const char* name) {
  auto it = b.exact.find(name);
  if (it == b.exact.end()) throw InvalidParams(std::string("missing --param ") + name + "=...");
  return it->second;
}

double require(const Bindings& b, const char* name) { return to_double(require_exact(b, name)); }

json config_json(const RunConfig& c) {
  json j = {{"command", c.command}};
  if (!c.family.empty()) j["family"] = c.family;
  j["params"] = c.params;
  j["grid"] = report::to_json(c.grid);
  if (c.tol) j["tolerance"] = *c.tol;
  if (c.command == "verify") {
    j["fd"] = c.fd;
    j["fd_step"] = c.fd_step;
  }
  if (c.command == "riccati") j["coefficients"] = {c.alpha, c.beta, c.gamma};
  if (c.command == "cole-hopf" && !c.branch.empty()) j["branch"] = c.branch;
  if (c.command.rfind("pipeline", 0) == 0) {
    j["order"] = c.order;
    if (!c.case_name.empty()) j["case"] = c.case_name;
    if (!c.system_file.empty()) j["system"] = c.system_file;
    j["seeds"] = c.seeds;
    j["rng_seed"] = c.rng_seed;
    j["threads"] = c.threads;
  }
  if (c.command == "equiv") {
    j["left"] = c.left;
    j["right"] = c.right;
    j["left_params"] = c.left_params;
    j["right_params"] = c.right_params;
    j["points"] = c.points;
  }
  if (c.command == "plot-data") j["t"] = c.t;
  if (!c.out.empty()) j["out"] = c.out;
  return j;
}

void emit(const RunConfig& c, std::ostream& out, const std::string& text) {
  if (c.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw InvalidParams("cannot open output file '" + c.out + "'");
  f << text;
}

void emit_json(const RunConfig& c, std::ostream& out, json j) {
  j["config"] = config_json(c);
  emit(c, out, j.dump(2) + "\n");
}

// ---------------------------------------------------------------------------

int cmd_catalog_list(const RunConfig& c, std::ostream& out) {
  emit_json(c, out, report::catalog_json());
  return kPass;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
  const Bindings p = parse_params(c.params);
  const auto& fam = catalog::get(c.family);
  const ParamEnv env = catalog::with_defaults(fam, p.env);
  const Expr u = catalog::build(c.family, env);
  const Expr guard = catalog::singular_denominator(c.family, env);
  const double b = env.at("b");
  const pde::ResidualReport rep =
      c.fd ? pde::verify_on_grid_fd(u, b, c.grid, c.tol.value_or(pde::kDefaultFdTolerance), guard, c.fd_step)
           : pde::verify_on_grid(u, Expr::from_double(b), c.grid, c.tol.value_or(pde::kDefaultTolerance), guard);
  json j = report::to_json(rep);
  j["family"] = c.family;
  j["params"] = report::to_json(env);
  j["wave_speed"] = catalog::wave_speed(c.family, env);
  j["grid"] = report::to_json(c.grid);
  emit_json(c, out, std::move(j));
  return rep.pass ? kPass : kFail;
}

int cmd_riccati(const RunConfig& c, std::ostream& out) {
  const riccati::Coefficients co(parse_real(c.alpha, "alpha"), parse_real(c.beta, "beta"), parse_real(c.gamma, "gamma"));
  const riccati::Solution sol = riccati::solve(co);
  const riccati::ResidualProbe probe(sol.phi, co);
  const Evaluator guard(sol.pole_guard);
  constexpr int n = 200;
  constexpr double tol = 1e-9;
  double worst = 0.0;
  int evaluated = 0, skipped = 0;
  for (int k = 0; k < n; ++k) {
    const double xi = -3.0 + 6.0 * k / (n - 1);
    try {
      if (std::abs(guard(Point::at_xi(xi))) <= 1e-6) {
        ++skipped;
        continue;
      }
      worst = std::max(worst, probe(xi));
      ++evaluated;
    } catch (const DomainError&) {
      ++skipped;
    }
  }
  const bool pass = evaluated > 0 && worst < tol;
  emit_json(c, out,
            {{"case", static_cast<int>(sol.id)},
             {"delta", co.delta},
             {"phi", to_prefix(sol.phi)},
             {"pole_guard", to_prefix(sol.pole_guard)},
             {"samples", n},
             {"points_evaluated", evaluated},
             {"points_skipped", skipped},
             {"max_scaled_residual", worst},
             {"tolerance", tol},
             {"pass", pass}});
  return pass ? kPass : kFail;
}

int cmd_cole_hopf(const RunConfig& c, std::ostream& out) {
  const Bindings p = parse_params(c.params);
  const double b = require(p, "b");
  const double delta = p.env.count("delta") ? p.env.at("delta") : 0.0;
  cole_hopf::Params cp;
  if (!c.branch.empty()) {
    if (c.branch != "plus" && c.branch != "minus") throw InvalidParams("--branch must be plus or minus");
    cp = cole_hopf::branch_params(c.branch == "plus" ? cole_hopf::Branch::plus : cole_hopf::Branch::minus, b,
                                  require(p, "mu"), delta);
  } else {
    cp = {require(p, "A"), require(p, "B"), require(p, "mu"), require(p, "lambda"), delta};
  }
  const Expr u = cole_hopf::cole_hopf_u(cp);
  const auto stated = cole_hopf::system_residuals(cp, b);
  const auto derived = cole_hopf::derived_system_residuals(cp, b);
  auto max_abs = [](const std::array<double, 6>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  };
  const auto rep = pde::verify_on_grid(u, Expr::from_double(b), c.grid, c.tol.value_or(pde::kDefaultTolerance));
  emit_json(c, out,
            {{"A", cp.A},
             {"B", cp.B},
             {"mu", cp.mu},
             {"lambda", cp.lambda},
             {"delta", cp.delta},
             {"b", b},
             {"system_residuals", stated},
             {"system_max_abs", max_abs(stated)},
             {"derived_system_residuals", derived},
             {"derived_system_max_abs", max_abs(derived)},
             {"report", report::to_json(rep)},
             {"pass", rep.pass}});
  return rep.pass ? kPass : kFail;
}

int cmd_rh(const RunConfig& c, std::ostream& out) {
  const Bindings p = parse_params(c.params);
  const double b = require(p, "b");
  rh::AnsatzParams ap;
  if (!c.family.empty()) {
    std::optional<double> free_value;
    if (p.env.count("a2")) free_value = p.env.at("a2");
    if (p.env.count("c2")) free_value = p.env.at("c2");
    ap = rh::family_params(c.family, b, free_value);
  } else {
    ap = {require(p, "lambda"), require(p, "a0"), require(p, "a1"), require(p, "a2"), require(p, "c1"), require(p, "c2")};
  }
  const auto res = rh::collocation_identity_check(ap, b);
  json samples = json::array();
  for (std::size_t i = 0; i < res.xi.size(); ++i) samples.push_back({{"xi", res.xi[i]}, {"scaled", res.scaled[i]}});
  emit_json(c, out,
            {{"ansatz", {{"lambda", ap.lambda}, {"a0", ap.a0}, {"a1", ap.a1}, {"a2", ap.a2}, {"c1", ap.c1}, {"c2", ap.c2}}},
             {"b", b},
             {"degree_bound", rh::kDegreeBound},
             {"samples", std::move(samples)},
             {"max_scaled", res.max_scaled},
             {"tolerance", rh::kCollocationTolerance},
             {"resamples", res.resamples},
             {"pass", res.pass}});
  return res.pass ? kPass : kFail;
}

tanh_coth::AlgebraicSystem load_system(const RunConfig& c) {
  if (c.system_file.empty()) return tanh_coth::generate_system(c.order);
  std::ifstream f(c.system_file);
  if (!f) throw InvalidParams("cannot read system file '" + c.system_file + "'");
  json j;
  try {
    j = json::parse(f);
  } catch (const json::exception& e) {
    throw InvalidParams(std::string("system file is not JSON: ") + e.what());
  }
  return tanh_coth::system_from_json(j);
}

int cmd_pipeline_generate(const RunConfig& c, std::ostream& out) {
  const auto s = tanh_coth::generate_system(c.order);
  json j = tanh_coth::to_json(s);
  j["order"] = c.order;
  emit_json(c, out, std::move(j));
  return kPass;
}

int cmd_pipeline_check(const RunConfig& c, std::ostream& out) {
  using namespace tanh_coth;
  const Bindings p = parse_params(c.params);
  const SolutionCase pc = case_from_name(c.case_name);
  const Rational &b = require_exact(p, "b"), &alpha = require_exact(p, "alpha"), &beta = require_exact(p, "beta"),
                 &gamma = require_exact(p, "gamma");
  const AlgebraicSystem s = load_system(c);
  const auto approx = case_tuples(pc, to_double(b), to_double(alpha), to_double(beta), to_double(gamma));
  const auto exact = exact_case_tuples(pc, b, alpha, beta, gamma);
  constexpr double float_tol = 1e-9;
  bool all_pass = true;
  json families = json::array();
  for (const auto& t : approx) {
    json entry = {{"family", t.family}};
    auto ex = std::find_if(exact.begin(), exact.end(), [&](const auto& e) { return e.family == t.family; });
    bool pass = true;
    if (ex != exact.end()) {
      json unknowns = json::array(), residuals = json::array();
      for (const auto& v : ex->unknowns) unknowns.push_back(to_fraction_string(v));
      for (const auto& r : check_assignment(s, assignment(b, alpha, beta, gamma, ex->unknowns))) {
        residuals.push_back(to_fraction_string(r));
        pass = pass && r == 0;
      }
      entry["exact"] = true;
      entry["unknowns"] = std::move(unknowns);
      entry["residuals"] = std::move(residuals);
    } else {
      double worst = 0.0;
      const auto r = check_assignment(
          s, assignment(to_double(b), to_double(alpha), to_double(beta), to_double(gamma), t.unknowns));
      for (double v : r) worst = std::max(worst, std::abs(v));
      pass = worst < float_tol;
      entry["exact"] = false;
      entry["unknowns"] = t.unknowns;
      entry["residuals"] = r;
      entry["max_abs"] = worst;
    }
    entry["pass"] = pass;
    all_pass = all_pass && pass;
    families.push_back(std::move(entry));
  }
  emit_json(c, out,
            {{"case", c.case_name}, {"equations", s.equations.size()}, {"families", std::move(families)}, {"pass", all_pass}});
  return all_pass ? kPass : kFail;
}

int cmd_pipeline_solve(const RunConfig& c, std::ostream& out) {
  using namespace tanh_coth;
  const Bindings p = parse_params(c.params);
  const AlgebraicSystem s = load_system(c);
  NewtonOptions opts;
  opts.seeds = c.seeds;
  opts.rng_seed = c.rng_seed;
  opts.threads = c.threads;
  const auto roots = newton_solve(s, require_exact(p, "b"), require_exact(p, "alpha"), require_exact(p, "beta"),
                                  require_exact(p, "gamma"), opts);
  json list = json::array();
  for (const auto& r : roots) {
    json entry;
    for (std::size_t i = 0; i < kUnknowns.size(); ++i) entry[std::string(poly::name_of(kUnknowns[i]))] = r.unknowns[i];
    entry["residual"] = r.residual;
    list.push_back(std::move(entry));
  }
  emit_json(c, out, {{"count", roots.size()}, {"roots", std::move(list)}});
  return kPass;
}

/// Parameters for one side of `equiv`: shared bindings the family declares,
/// overridden by side-specific ones.
ParamEnv side_params(const catalog::SolutionFamily& f, const Bindings& shared, const Bindings& own) {
  ParamEnv env;
  for (const auto& spec : f.params)
    if (auto it = shared.env.find(spec.name); it != shared.env.end()) env[spec.name] = it->second;
  for (const auto& [k, v] : own.env) env[k] = v;
  return catalog::with_defaults(f, env);
}

int cmd_equiv(const RunConfig& c, std::ostream& out) {
  const Bindings shared = parse_params(c.params);
  const auto& lf = catalog::get(c.left);
  const auto& rf = catalog::get(c.right);
  const ParamEnv le = side_params(lf, shared, parse_params(c.left_params));
  const ParamEnv re = side_params(rf, shared, parse_params(c.right_params));
  const Evaluator lu(catalog::build(c.left, le)), ru(catalog::build(c.right, re));
  const Evaluator lg(catalog::singular_denominator(c.left, le)), rg(catalog::singular_denominator(c.right, re));
  const double tol = c.tol.value_or(1e-10);
  // Low-discrepancy (R2) sequence over the grid rectangle.
  constexpr double g1 = 0.7548776662466927, g2 = 0.5698402909980532;
  double worst = 0.0;
  unsigned compared = 0, skipped = 0;
  for (unsigned k = 0; k < c.points; ++k) {
    const double x = c.grid.x0 + (c.grid.x1 - c.grid.x0) * std::fmod(0.5 + g1 * (k + 1), 1.0);
    const double t = c.grid.t0 + (c.grid.t1 - c.grid.t0) * std::fmod(0.5 + g2 * (k + 1), 1.0);
    const Point pt = Point::xt(x, t);
    try {
      if (std::abs(lg(pt)) < c.grid.eps_den || std::abs(rg(pt)) < c.grid.eps_den) {
        ++skipped;
        continue;
      }
      worst = std::max(worst, std::abs(lu(pt) - ru(pt)));
      ++compared;
    } catch (const DomainError&) {
      ++skipped;
    }
  }
  const bool pass = compared > 0 && worst < tol;
  emit_json(c, out,
            {{"left", {{"family", c.left}, {"params", report::to_json(le)}}},
             {"right", {{"family", c.right}, {"params", report::to_json(re)}}},
             {"points_compared", compared},
             {"points_skipped", skipped},
             {"max_abs_difference", worst},
             {"tolerance", tol},
             {"pass", pass}});
  return pass ? kPass : kFail;
}

int cmd_plot_data(const RunConfig& c, std::ostream& out) {
  const Bindings p = parse_params(c.params);
  const auto& fam = catalog::get(c.family);
  const ParamEnv env = catalog::with_defaults(fam, p.env);
  const Evaluator u(catalog::build(c.family, env));
  const Evaluator guard(catalog::singular_denominator(c.family, env));
  c.grid.validate();
  std::string csv = "x,u\n";
  for (std::size_t i = 0; i < c.grid.nx; ++i) {
    const double x = c.grid.x_at(i);
    const Point pt = Point::xt(x, c.t);
    csv += report::format_double(x);
    csv += ',';
    try {
      if (std::abs(guard(pt)) >= c.grid.eps_den) csv += report::format_double(u(pt));
    } catch (const DomainError&) {
    }
    csv += '\n';
  }
  emit(c, out, csv);
  return kPass;
}

void add_params(CLI::App* sub, RunConfig& c) {
  sub->add_option("--param", c.params, "name=value binding (repeatable)")->allow_extra_args(false);
}

void add_grid(CLI::App* sub, RunConfig& c) {
  sub->add_option("--x0", c.grid.x0, "left end of the x range")->capture_default_str();
  sub->add_option("--x1", c.grid.x1, "right end of the x range")->capture_default_str();
  sub->add_option("--nx", c.grid.nx, "number of x points")->capture_default_str();
  sub->add_option("--t0", c.grid.t0, "start of the t range")->capture_default_str();
  sub->add_option("--t1", c.grid.t1, "end of the t range")->capture_default_str();
  sub->add_option("--nt", c.grid.nt, "number of t points")->capture_default_str();
  sub->add_option("--eps-den", c.grid.eps_den, "guard threshold on |singular denominator|")->capture_default_str();
}

void add_tol(CLI::App* sub, RunConfig& c) {
  sub->add_option_function<double>("--tol", [&c](double v) { c.tol = v; }, "pass tolerance");
}

void add_out(CLI::App* sub, RunConfig& c) { sub->add_option("--out", c.out, "write output to this file"); }

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact traveling-wave solutions of the modified generalized Degasperis-Procesi equation", "mdpwave"};
  app.require_subcommand(1, 1);
  RunConfig c;

  auto* catalog_cmd = app.add_subcommand("catalog", "solution catalog");
  catalog_cmd->require_subcommand(1, 1);
  auto* catalog_list = catalog_cmd->add_subcommand("list", "print every family as JSON");
  add_out(catalog_list, c);

  auto* verify = app.add_subcommand("verify", "grid residual check of one family");
  verify->add_option("--family", c.family, "family id")->required();
  add_params(verify, c);
  add_grid(verify, c);
  add_tol(verify, c);
  verify->add_flag("--fd", c.fd, "use finite differences instead of symbolic derivatives");
  verify->add_option("--fd-step", c.fd_step, "finite-difference step")->capture_default_str();
  add_out(verify, c);

  auto* ric = app.add_subcommand("riccati", "classify (alpha, beta, gamma) and check phi");
  ric->add_option("--alpha", c.alpha)->required();
  ric->add_option("--beta", c.beta)->required();
  ric->add_option("--gamma", c.gamma)->required();
  add_out(ric, c);

  auto* ch = app.add_subcommand("cole-hopf", "Cole-Hopf form: stated system and grid check");
  ch->add_option("--branch", c.branch, "plus or minus; otherwise A, B, mu, lambda are read from --param");
  add_params(ch, c);
  add_grid(ch, c);
  add_tol(ch, c);
  add_out(ch, c);

  auto* rhc = app.add_subcommand("rh", "rational-hyperbolic collocation check");
  rhc->add_option("--family", c.family, "u3..u10; otherwise the ansatz is read from --param");
  add_params(rhc, c);
  add_out(rhc, c);

  auto* pipe = app.add_subcommand("pipeline", "tanh-coth coefficient system");
  pipe->require_subcommand(1, 1);
  auto* gen = pipe->add_subcommand("generate", "emit the exact system as JSON");
  gen->add_option("--order", c.order, "ansatz order m")->capture_default_str();
  add_out(gen, c);
  auto* check = pipe->add_subcommand("check", "evaluate the catalogued tuples of one case");
  check->add_option("--case", c.case_name, "first|second|third|fourth")->required();
  check->add_option("--system", c.system_file, "read the system from JSON instead of generating it");
  add_params(check, c);
  add_out(check, c);
  auto* solve = pipe->add_subcommand("solve", "multistart Newton on the system");
  solve->add_option("--seeds", c.seeds, "number of random starts")->capture_default_str();
  solve->add_option("--rng-seed", c.rng_seed, "generator seed")->capture_default_str();
  solve->add_option("--threads", c.threads, "worker threads")->capture_default_str();
  solve->add_option("--system", c.system_file, "read the system from JSON instead of generating it");
  add_params(solve, c);
  add_out(solve, c);

  auto* eq = app.add_subcommand("equiv", "pointwise comparison of two families");
  eq->add_option("--left", c.left, "left family id")->required();
  eq->add_option("--right", c.right, "right family id")->required();
  add_params(eq, c);
  eq->add_option("--left-param", c.left_params, "binding for the left family only");
  eq->add_option("--right-param", c.right_params, "binding for the right family only");
  eq->add_option("--points", c.points, "number of sample points")->capture_default_str();
  add_grid(eq, c);
  add_tol(eq, c);
  add_out(eq, c);

  auto* plot = app.add_subcommand("plot-data", "CSV of u(x, t) at fixed t");
  plot->add_option("--family", c.family, "family id")->required();
  add_params(plot, c);
  plot->add_option("--t", c.t, "time")->capture_default_str();
  add_grid(plot, c);
  add_out(plot, c);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kInvalidInput;
  }

  try {
    if (catalog_list->parsed()) {
      c.command = "catalog list";
      return cmd_catalog_list(c, out);
    }
    if (verify->parsed()) {
      c.command = "verify";
      return cmd_verify(c, out);
    }
    if (ric->parsed()) {
      c.command = "riccati";
      return cmd_riccati(c, out);
    }
    if (ch->parsed()) {
      c.command = "cole-hopf";
      return cmd_cole_hopf(c, out);
    }
    if (rhc->parsed()) {
      c.command = "rh";
      return cmd_rh(c, out);
    }
    if (gen->parsed()) {
      c.command = "pipeline generate";
      return cmd_pipeline_generate(c, out);
    }
    if (check->parsed()) {
      c.command = "pipeline check";
      return cmd_pipeline_check(c, out);
    }
    if (solve->parsed()) {
      c.command = "pipeline solve";
      return cmd_pipeline_solve(c, out);
    }
    if (eq->parsed()) {
      c.command = "equiv";
      return cmd_equiv(c, out);
    }
    if (plot->parsed()) {
      c.command = "plot-data";
      return cmd_plot_data(c, out);
    }
    err << "no command given\n";
    return kInvalidInput;
  } catch (const ConstraintViolation& e) {
    json j = {{"error", "constraint_violation"}, {"violations", e.violations()}};
    try {
      emit_json(c, out, std::move(j));
    } catch (const Error&) {
    }
    err << e.what() << '\n';
    return kInvalidInput;
  } catch (const SampleAtPole& e) {
    err << e.what() << '\n';
    return kFail;
  } catch (const Error& e) {
    // Remaining library errors all stem from the inputs: bad parameters,
    // unclassifiable coefficients, unsupported order, a swallowed grid.
    err << e.what() << '\n';
    return kInvalidInput;
  } catch (const std::invalid_argument& e) {
    err << e.what() << '\n';
    return kInvalidInput;
  } catch (const std::out_of_range& e) {
    err << e.what() << '\n';
    return kInvalidInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
}

}  // namespace mdpwave
