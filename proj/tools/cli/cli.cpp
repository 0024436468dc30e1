// SPDX-License-Identifier: Apache-2.0
#include "cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <span>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "hetero/asymptotics.hpp"
#include "hetero/dirichlet.hpp"
#include "hetero/error.hpp"
#include "hetero/format.hpp"
#include "hetero/heteroclinic.hpp"

namespace hetero::cli {

namespace {

using Json = nlohmann::ordered_json;

enum class Format { csv, json };

struct OutputSpec {
  std::string target = "-";
  std::string format;  // empty: infer
};

struct Sink {
  std::ostream* stream = nullptr;
  std::unique_ptr<std::ofstream> file;
  std::optional<std::filesystem::path> path;
  Format format = Format::json;
};

std::filesystem::path resolve_path(const std::string& target) {
  std::filesystem::path p(target);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("HETERO_OUTPUT_DIR"); dir != nullptr && *dir != '\0') {
      p = std::filesystem::path(dir) / p;
    }
  }
  return p;
}

Format parse_format(const std::string& s) {
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  throw PreconditionError("--format: expected csv or json, got '" + s + "'");
}

Sink open_sink(const OutputSpec& spec, Format fallback, std::ostream& out) {
  Sink sink;
  sink.format = spec.format.empty() ? fallback : parse_format(spec.format);
  if (spec.target == "-" || spec.target == "csv" || spec.target == "json") {
    if (spec.target != "-" && spec.format.empty()) sink.format = parse_format(spec.target);
    sink.stream = &out;
    return sink;
  }
  const auto path = resolve_path(spec.target);
  if (spec.format.empty()) {
    const auto ext = path.extension().string();
    if (ext == ".csv") sink.format = Format::csv;
    if (ext == ".json") sink.format = Format::json;
  }
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  sink.file = std::make_unique<std::ofstream>(path, std::ios::binary);
  if (!*sink.file) throw PreconditionError("--out: cannot open '" + path.string() + "' for writing");
  sink.stream = sink.file.get();
  sink.path = path;
  return sink;
}

void emit_json(std::ostream& os, const Json& j) { os << j.dump(2) << '\n'; }

Json number_array(std::span<const double> v) {
  Json a = Json::array();
  for (double x : v) a.push_back(x);
  return a;
}

void add_output_options(CLI::App* sub, OutputSpec& spec) {
  sub->add_option("--out", spec.target, "csv | json | - | file path")->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  sub->add_option("--format", spec.format, "csv or json, overrides the inferred format")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
}

template <class T>
CLI::Option* opt(CLI::App* sub, const std::string& name, T& value, const std::string& desc) {
  return sub->add_option(name, value, desc)->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
}

void require_positive(double v, const char* field) {
  if (!(v > 0.0) || !std::isfinite(v)) throw PreconditionError(std::string(field) + ": must be positive");
}

// ---------------------------------------------------------------- reports

Json solve_report_json(const LatticeProfile& p, int K, const std::string& potential, double value,
                       double residual, bool converged) {
  Json j;
  j["K"] = K;
  j["r"] = p.r();
  j["potential"] = potential;
  j["value"] = value;
  j["el_residual"] = residual;
  j["values"] = number_array(p.values());
  j["symmetry"] = to_string(p.symmetry());
  j["converged"] = converged;
  return j;
}

void write_lattice_csv(std::ostream& os, const LatticeProfile& p) {
  os << "n,value\n";
  for (long n = p.n_min(); n <= p.n_max(); ++n) os << n << ',' << format_double(p[n]) << '\n';
}

// ---------------------------------------------------------------- commands

struct Common {
  std::string potential = "quartic";
  OutputSpec out;
};

struct HeteroArgs {
  Common common;
  int K = 0;
  double r = 0.0;
  std::string symmetry = "none";
  SolverOptions solver;
};

int cmd_solve_heteroclinic(const HeteroArgs& a, std::ostream& out) {
  require_positive(a.r, "--r");
  const auto W = DoubleWell::by_name(a.common.potential);
  const Symmetry sym = symmetry_from_string(a.symmetry);
  SolveReport rep = [&] {
    switch (sym) {
      case Symmetry::node_odd:
        return solve_symmetric_node(a.K, a.r, W, a.solver);
      case Symmetry::bond_odd:
        return solve_symmetric_bond(a.K, a.r, W, a.solver);
      case Symmetry::none:
        break;
    }
    return solve_discrete_dirichlet(a.K, a.r, W, a.solver);
  }();
  Sink sink = open_sink(a.common.out, Format::json, out);
  if (sink.format == Format::csv) {
    write_lattice_csv(*sink.stream, rep.minimizer);
  } else {
    emit_json(*sink.stream,
              solve_report_json(rep.minimizer, rep.K, W.name(), rep.value, rep.el_residual, rep.converged));
  }
  return rep.converged ? kOk : kNonConvergence;
}

struct ShootArgs {
  Common common;
  double r = 0.0;
  std::string symmetry;
  double tol = 1e-9;
  int horizon = 4000;
};

int cmd_shoot(const ShootArgs& a, std::ostream& out) {
  require_positive(a.r, "--r");
  const auto W = DoubleWell::by_name(a.common.potential);
  const Symmetry sym = symmetry_from_string(a.symmetry);
  if (sym == Symmetry::none) throw PreconditionError("--symmetry: shoot needs node or bond");
  const LatticeProfile p = shoot_heteroclinic(a.r, W, sym, a.tol, a.horizon);
  // Same K convention as the symmetric solvers: w_j = 1 for j >= K (node),
  // z_j = 1 for j >= K - 1 (bond).
  const int K = static_cast<int>(sym == Symmetry::node_odd ? p.n_max() + 1 : p.n_max() + 2);
  const double value = discrete_energy(p, W, -K, K);
  Sink sink = open_sink(a.common.out, Format::json, out);
  if (sink.format == Format::csv) {
    write_lattice_csv(*sink.stream, p);
  } else {
    emit_json(*sink.stream, solve_report_json(p, K, W.name(), value, el_residual(p, W), true));
  }
  return kOk;
}

struct DirichletArgs {
  OutputSpec out;
  double a = 0.0;
  double b = 1.0;
  double r = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  std::optional<double> f_const;
  std::vector<double> f_poly;
  double h = 1e-3;
};

int cmd_solve_dirichlet(const DirichletArgs& d, std::ostream& out, std::ostream& err) {
  require_positive(d.r, "--r");
  require_positive(d.h, "--h");
  if (!(d.a < d.b)) throw PreconditionError("--a/--b: need a < b");
  std::vector<double> coeffs = d.f_poly;
  if (d.f_const) coeffs = {*d.f_const};
  if (coeffs.empty()) coeffs = {0.0};
  DrProblem p;
  p.a = d.a;
  p.b = d.b;
  p.r = d.r;
  p.alpha = [v = d.alpha](double) { return v; };
  p.beta = [v = d.beta](double) { return v; };
  p.f = [coeffs](double x) {
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
  };
  const DrSolution sol = solve_dr_on_grid(p, d.h);

  Sink sink = open_sink(d.out, Format::csv, out);
  const Json jumps = number_array(sol.jump_points);
  if (sink.format == Format::csv) {
    write_csv(*sink.stream, sol.samples);
    if (sink.path) {
      auto side = *sink.path;
      side += ".jumps.json";
      std::ofstream js(side, std::ios::binary);
      if (!js) throw PreconditionError("--out: cannot open '" + side.string() + "' for writing");
      emit_json(js, Json{{"jumps", jumps}});
    } else {
      err << Json{{"jumps", jumps}}.dump() << '\n';
    }
  } else {
    Json j;
    j["a"] = d.a;
    j["b"] = d.b;
    j["r"] = d.r;
    j["h"] = d.h;
    Json xs = Json::array();
    for (std::size_t i = 0; i < sol.samples.size(); ++i) xs.push_back(sol.samples.x_at(i));
    j["x"] = std::move(xs);
    j["u"] = number_array(sol.samples.values());
    j["jumps"] = jumps;
    emit_json(*sink.stream, j);
  }
  return kOk;
}

struct ConvergeArgs {
  Common common;
  std::vector<double> r_list;
  int horizon = 4000;
  double tol = 1e-9;
};

int cmd_converge_study(const ConvergeArgs& c, std::ostream& out) {
  if (c.r_list.empty()) throw PreconditionError("--r: give at least one value");
  for (double r : c.r_list) require_positive(r, "--r");
  const auto W = DoubleWell::by_name(c.common.potential);
  const auto rows = convergence_study(W, c.r_list, c.horizon, c.tol);
  Sink sink = open_sink(c.common.out, Format::json, out);
  if (sink.format == Format::csv) {
    *sink.stream << "r,err,err_aligned,energy\n";
    for (const auto& row : rows) {
      *sink.stream << format_double(row.r) << ',' << format_double(row.err) << ','
                   << format_double(row.err_aligned) << ',' << format_double(row.energy) << '\n';
    }
  } else {
    Json arr = Json::array();
    for (const auto& row : rows) {
      arr.push_back(Json{{"r", row.r}, {"err", row.err}, {"err_aligned", row.err_aligned}, {"energy", row.energy}});
    }
    emit_json(*sink.stream, arr);
  }
  return kOk;
}

struct BoundsArgs {
  Common common;
  double r = 0.0;
};

int cmd_bounds(const BoundsArgs& b, std::ostream& out) {
  require_positive(b.r, "--r");
  const auto W = DoubleWell::by_name(b.common.potential);
  const BoundsReport rep = energy_upper_bounds(b.r, W);
  Sink sink = open_sink(b.common.out, Format::json, out);
  if (sink.format == Format::csv) {
    *sink.stream << "bound,value\n";
    *sink.stream << "four_over_r," << format_double(rep.four_over_r) << '\n';
    *sink.stream << "four_plus_cw," << format_double(rep.four_plus_cw) << '\n';
    if (rep.ramp) *sink.stream << "ramp," << format_double(*rep.ramp) << '\n';
  } else {
    Json j;
    j["four_over_r"] = rep.four_over_r;
    j["four_plus_cw"] = rep.four_plus_cw;
    j["ramp"] = rep.ramp ? Json(*rep.ramp) : Json(nullptr);
    j["binding"] = rep.binding;
    j["binding_name"] = rep.binding_name;
    emit_json(*sink.stream, j);
  }
  return kOk;
}

struct ValidateArgs {
  Common common;
  double step = 1e-3;
};

int cmd_validate_potential(const ValidateArgs& v, std::ostream& out) {
  require_positive(v.step, "--step");
  const auto W = DoubleWell::by_name(v.common.potential);
  const ValidationReport rep = validate_double_well(W, v.step);
  Sink sink = open_sink(v.common.out, Format::json, out);
  if (sink.format == Format::csv) {
    *sink.stream << "check,passed,worst_point,worst_value\n";
    for (const auto& c : rep.checks) {
      *sink.stream << '"' << c.name << "\"," << (c.passed ? "true" : "false") << ','
                   << format_double(c.worst_point) << ',' << format_double(c.worst_value) << '\n';
    }
  } else {
    Json checks = Json::array();
    for (const auto& c : rep.checks) {
      checks.push_back(
          Json{{"name", c.name}, {"passed", c.passed}, {"worst_point", c.worst_point}, {"worst_value", c.worst_value}});
    }
    emit_json(*sink.stream, Json{{"potential", W.name()},
                                 {"grid_step", rep.grid_step},
                                 {"c_w", W.cw()},
                                 {"ok", rep.ok()},
                                 {"checks", checks}});
  }
  return rep.ok() ? kOk : kPrecondition;
}

// ---------------------------------------------------------------- config

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Moves "--config FILE" out of args and inserts its key=value pairs as flags
// right after the subcommand, so explicit flags (parsed later) win.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::vector<std::string> flags;
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string file;
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw CLI::ArgumentMismatch("--config: missing file name");
      file = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
    } else if (args[i].rfind("--config=", 0) == 0) {
      file = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
    } else {
      continue;
    }
    --i;
    std::ifstream in(file);
    if (!in) throw PreconditionError("--config: cannot read '" + file + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      line = trim(line);
      if (line.empty() || line[0] == '#') continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos) {
        throw PreconditionError("--config: " + file + ":" + std::to_string(lineno) + ": expected key=value");
      }
      std::string key = trim(line.substr(0, eq));
      if (key.rfind("--", 0) != 0) key = "--" + key;
      flags.push_back(key);
      flags.push_back(trim(line.substr(eq + 1)));
    }
  }
  if (!flags.empty() && !args.empty()) args.insert(args.begin() + 1, flags.begin(), flags.end());
  return args;
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lattice heteroclinics of a nonlocal double-well energy and the D_r Dirichlet problem", "hetero"};
  app.require_subcommand(1);

  const std::vector<std::string> potentials{"quartic", "pendulum"};
  const auto add_potential = [&](CLI::App* sub, Common& c) {
    opt(sub, "--potential", c.potential, "quartic or pendulum")->check(CLI::IsMember(potentials));
    add_output_options(sub, c.out);
  };

  HeteroArgs ha;
  auto* solve = app.add_subcommand("solve-heteroclinic", "Minimise the general, node-odd or bond-odd lattice problem");
  add_potential(solve, ha.common);
  opt(solve, "--K", ha.K, "number of free lattice points")->required();
  opt(solve, "--r", ha.r, "radius")->required();
  opt(solve, "--symmetry", ha.symmetry, "none, node or bond");
  opt(solve, "--tol", ha.solver.tol, "Euler-Lagrange residual target");
  opt(solve, "--max-iters", ha.solver.max_iters, "iterations per start");
  opt(solve, "--starts", ha.solver.starts, "number of starts");
  opt(solve, "--seed", ha.solver.seed, "seed for the random starts");

  ShootArgs sa;
  auto* shoot = app.add_subcommand("shoot", "Shoot the odd lattice heteroclinic from the recurrence");
  add_potential(shoot, sa.common);
  opt(shoot, "--r", sa.r, "radius")->required();
  opt(shoot, "--symmetry", sa.symmetry, "node or bond")->required();
  opt(shoot, "--tol", sa.tol, "distance to 1 where the orbit is truncated");
  opt(shoot, "--horizon", sa.horizon, "maximum orbit length");

  DirichletArgs da;
  auto* dir = app.add_subcommand("solve-dirichlet", "Sample the explicit solution of D_r u = f");
  dir->set_help_flag("--help", "Print this help message and exit");  // frees the name h for --h
  add_output_options(dir, da.out);
  opt(dir, "--a", da.a, "left end")->required();
  opt(dir, "--b", da.b, "right end")->required();
  opt(dir, "--r", da.r, "radius")->required();
  opt(dir, "--alpha-const", da.alpha, "constant left datum");
  opt(dir, "--beta-const", da.beta, "constant right datum");
  auto* fc = dir->add_option_function<double>("--f-const", [&](const double& v) { da.f_const = v; }, "constant source");
  fc->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  auto* fp = dir->add_option("--f-poly", da.f_poly, "source coefficients c0,c1,...")->delimiter(',');
  fc->excludes(fp);
  opt(dir, "--h", da.h, "sample spacing");

  ConvergeArgs ca;
  auto* conv = app.add_subcommand("converge-study", "Compare shot profiles with the classical heteroclinic");
  add_potential(conv, ca.common);
  conv->add_option("--r", ca.r_list, "decreasing radii, comma separated")->required()->delimiter(',');
  opt(conv, "--horizon", ca.horizon, "maximum orbit length");
  opt(conv, "--tol", ca.tol, "shooting truncation tolerance");

  BoundsArgs ba;
  auto* bounds = app.add_subcommand("bounds", "Energy upper bounds");
  add_potential(bounds, ba.common);
  opt(bounds, "--r", ba.r, "radius")->required();

  ValidateArgs va;
  auto* val = app.add_subcommand("validate-potential", "Sample-based check of the double-well assumptions");
  add_potential(val, va.common);
  opt(val, "--step", va.step, "grid step on [-3, 3]");

  try {
    std::vector<std::string> args = expand_config(raw_args);
    if (args.empty()) {
      err << app.help();
      return kUsage;
    }
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);

    if (solve->parsed()) return cmd_solve_heteroclinic(ha, out);
    if (shoot->parsed()) return cmd_shoot(sa, out);
    if (dir->parsed()) return cmd_solve_dirichlet(da, out, err);
    if (conv->parsed()) return cmd_converge_study(ca, out);
    if (bounds->parsed()) return cmd_bounds(ba, out);
    if (val->parsed()) return cmd_validate_potential(va, out);
    err << app.help();
    return kUsage;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kPrecondition;
  } catch (const CLI::ConversionError& e) {
    err << "error: " << e.what() << '\n';
    return kPrecondition;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << "run with --help for usage\n";
    return kUsage;
  } catch (const NonConvergenceError& e) {
    err << "error: " << e.what() << '\n';
    return kNonConvergence;
  } catch (const NoBracketError& e) {
    err << "error: " << e.what() << '\n';
    return kNonConvergence;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kPrecondition;
  }
}

}  // namespace hetero::cli
