// SPDX-License-Identifier: Apache-2.0
// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "hetero/asymptotics.hpp"
#include "hetero/dirichlet.hpp"
#include "hetero/heteroclinic.hpp"
#include "hetero/potential.hpp"
#include "hetero/sampled.hpp"
#include "hetero/sliding_window.hpp"
#include "oracles.hpp"

using namespace hetero;

namespace {

int failures = 0;

void report(const char* id, const char* title, bool ok, const std::string& detail) {
  std::printf("[%s] %s %s: %s\n", ok ? "PASS" : "FAIL", id, title, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

const DoubleWell kQuartic = DoubleWell::quartic();

std::vector<SolveReport> all_minimizers;

void c01() {
  const auto u = SampledFunction::sample([](double x) { return x < 0.0 ? -1.0 : 1.0; }, -3.5, 3.5, 1e-3);
  const double e = energy_E(u, -3.0, 3.0, 0.5, kQuartic).total;
  report("C01", "step-function energy", std::abs(e - 8.0) <= 1e-2, fmt("E = %.9f, expected 8 +- 1e-2", e));
}

void c02() {
  const double cw = oracle::riemann(oracle::quartic, -1.0, 1.0, 2'000'000);
  const auto u = SampledFunction::sample([](double x) { return std::clamp(x, -1.0, 1.0); }, -4.0, 4.0, 1e-4);
  const double e = energy_E(u, -3.0, 3.0, 0.5, kQuartic).total;
  const double expected = 8.0 * 0.5 / 3.0 + 4.0 * 0.5 + kQuartic.cw();
  const bool ok = std::abs(e - 3.6) <= 2e-3 && std::abs(expected - 3.6) <= 1e-8 && std::abs(cw - 4.0 / 15.0) <= 1e-8 &&
                  std::abs(kQuartic.cw() - cw) <= 1e-8;
  report("C02", "ramp competitor energy", ok,
         fmt("E = %.9f (3.6 +- 2e-3), c_W = %.12f, Riemann oracle %.12f", e, kQuartic.cw(), cw));
}

void c03() {
  bool ok = true;
  double worst_node = -1e300;
  double worst_bond = -1e300;
  double worst_mono = -1e300;
  for (double r : {0.25, 0.5, 1.0}) {
    double prev_node = std::numeric_limits<double>::infinity();
    double prev_bond = prev_node;
    for (int K = 2; K <= 32; ++K) {
      auto node = solve_symmetric_node(K, r, kQuartic);
      auto bond = solve_symmetric_bond(K, r, kQuartic);
      const double dn = node.value - (1.0 / (r * r) + kQuartic.value(0.0));
      const double db = bond.value - 2.0 / (r * r);
      worst_node = std::max(worst_node, dn);
      worst_bond = std::max(worst_bond, db);
      if (K > 2) worst_mono = std::max({worst_mono, node.value - prev_node, bond.value - prev_bond});
      ok = ok && dn <= 1e-10 && db <= 1e-10 && node.value <= prev_node + 1e-10 && bond.value <= prev_bond + 1e-10;
      prev_node = node.value;
      prev_bond = bond.value;
      all_minimizers.push_back(std::move(node));
      all_minimizers.push_back(std::move(bond));
    }
  }
  report("C03", "discrete bounds", ok,
         fmt("max(m1 - 1/r^2 - W(0)) = %.3e, max(m2 - 2/r^2) = %.3e, max(m_{K+1} - m_K) = %.3e over 186 solves",
             worst_node, worst_bond, worst_mono));
}

void c04() {
  const auto g = oracle::grid_search(
      [](double w) { return 0.5 * (w + 1) * (w + 1) + 0.5 * (1 - w) * (1 - w) + oracle::quartic(w); }, -1, 1, 1e-6);
  auto rep = solve_discrete_dirichlet(1, 1.0, kQuartic);
  const double w1 = rep.minimizer[1];
  const bool ok = std::abs(w1) <= 1e-6 && std::abs(rep.value - 1.25) <= 1e-8 && std::abs(rep.value - g.value) <= 1e-8 &&
                  std::abs(w1 - g.arg) <= 1e-6;
  report("C04", "K=1 oracle", ok, fmt("w_1 = %.3e, m = %.12f, grid oracle (%.3e, %.12f)", w1, rep.value, g.arg, g.value));
  all_minimizers.push_back(std::move(rep));
}

void c05() {
  const double r = 0.5;
  double worst = 0.0;
  for (int K : {4, 8, 16}) {
    auto rep = solve_discrete_dirichlet(K, r, kQuartic);
    const auto u = lift_profile(rep.minimizer, 0.0, 1.0 / 512.0);
    const auto win = lifted_window(rep.minimizer, 0.0);
    const double F = energy_F(u, win.a, win.b, r, kQuartic).total;
    worst = std::max(worst, std::abs(F - 2.0 * r * rep.value));
    all_minimizers.push_back(std::move(rep));
  }
  report("C05", "energy lifting identity", worst <= 1e-6, fmt("max |F - 2 r m| = %.3e for K = 4, 8, 16", worst));
}

std::vector<LatticeProfile> shots;

void c06() {
  for (double r : {0.05, 0.1, 0.25, 0.5, 1.0}) {
    for (auto s : {Symmetry::node_odd, Symmetry::bond_odd}) {
      shots.push_back(shoot_heteroclinic(r, kQuartic, s));
      shots.push_back(shoot_heteroclinic(r, DoubleWell::pendulum(), s));
    }
  }
  bool ok = true;
  double worst = 0.0;
  std::size_t unconverged = 0;
  for (const auto& rep : all_minimizers) {
    if (!rep.converged) {
      ++unconverged;
      ok = false;
      continue;
    }
    const double res = el_residual(rep.minimizer, kQuartic);
    worst = std::max(worst, res);
    ok = ok && res <= 1e-8 && rep.minimizer.is_monotone();
  }
  double worst_shot = 0.0;
  for (std::size_t i = 0; i < shots.size(); ++i) {
    const auto& W = (i % 2 == 0) ? kQuartic : DoubleWell::pendulum();
    const double res = el_residual(shots[i], W);
    worst_shot = std::max(worst_shot, res);
    ok = ok && res <= 1e-8 && shots[i].is_monotone();
  }
  report("C06", "EL residual and monotonicity", ok,
         fmt("%zu minimisers (max residual %.3e, %zu unconverged), %zu shot profiles (max residual %.3e)",
             all_minimizers.size(), worst, unconverged, shots.size(), worst_shot));
}

double shift_distance(const LatticeProfile& a, const LatticeProfile& b) {
  double best = std::numeric_limits<double>::infinity();
  const long lo = std::min(a.n_min(), b.n_min()) - 2;
  const long hi = std::max(a.n_max(), b.n_max()) + 2;
  const long span = hi - lo;
  for (long k = -span; k <= span; ++k) {
    double d = 0.0;
    for (long n = lo - span; n <= hi + span; ++n) d = std::max(d, std::abs(a[n] - b[n + k]));
    best = std::min(best, d);
  }
  return best;
}

void c07() {
  const auto node = shoot_heteroclinic(0.5, kQuartic, Symmetry::node_odd);
  const auto bond = shoot_heteroclinic(0.5, kQuartic, Symmetry::bond_odd);
  bool sym = node[0] == 0.0;
  for (long n = 0; n <= node.n_max() + 1; ++n) sym = sym && node[n] + node[-n] == 0.0;
  for (long n = 0; n <= bond.n_max() + 1; ++n) sym = sym && bond[n] + bond[-n - 1] == 0.0;
  const double rn = el_residual(node, kQuartic);
  const double rb = el_residual(bond, kQuartic);
  const double reach = std::max({1.0 - node[node.n_max()], node[node.n_min()] + 1.0, 1.0 - bond[bond.n_max()],
                                 bond[bond.n_min()] + 1.0});
  const double dist = shift_distance(node, bond);
  const bool ok = sym && rn <= 1e-8 && rb <= 1e-8 && reach <= 1e-6 && dist > 1e-3;
  report("C07", "nonuniqueness", ok,
         fmt("residuals %.3e / %.3e, odd symmetry %s, max distance to +-1 at the window ends %.3e, "
             "shift-optimised sup distance %.6f",
             rn, rb, sym ? "exact" : "BROKEN", reach, dist));
}

struct Instance {
  DrProblem p;
  bool f_zero;
  std::string label;
};

std::vector<Instance> random_instances() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::uniform_int_distribution<int> deg(0, 3);
  std::vector<Instance> out;
  for (int i = 0; i < 20; ++i) {
    const double a = 2.0 * u(rng);
    const double b = a + 0.2 + 2.5 * u01(rng);
    const double r = 0.03 + 0.6 * u01(rng);
    const double a0 = u(rng), a1 = u(rng), b0 = u(rng), b1 = u(rng);
    const bool f_zero = i % 4 == 3;
    std::vector<double> c(static_cast<std::size_t>(deg(rng)) + 1);
    for (double& x : c) x = f_zero ? 0.0 : 2.0 * u(rng);
    DrProblem p{a, b, r, [a0, a1](double x) { return a0 + a1 * x; }, [b0, b1](double x) { return b0 + b1 * x; },
                [c](double x) {
                  double acc = 0.0;
                  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
                  return acc;
                }};
    out.push_back({std::move(p), f_zero,
                   fmt("a=%.4f b=%.4f r=%.4f alpha=%.4f%+.4fx beta=%.4f%+.4fx", a, b, r, a0, a1, b0, b1)});
  }
  return out;
}

void c08(const std::vector<Instance>& inst) {
  double worst = 0.0;
  for (const auto& in : inst) worst = std::max(worst, residual_check(in.p, 1000));
  report("C08", "explicit Dirichlet residual", worst <= 1e-9, fmt("max residual %.3e over %zu instances", worst, inst.size()));
}

void c09() {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const double a = u(rng);
    const int n = 2 + 3 * i;
    const double r = 0.05 + 0.3 * u01(rng);
    const double b = a + n * r;
    const double c0 = u(rng), c1 = u(rng), c2 = u(rng), c3 = u(rng);
    const double a0 = u(rng), a1 = u(rng), b0 = u(rng), b1 = u(rng);
    const oracle::Fn f = [=](double x) { return c0 + x * (c1 + x * (c2 + x * c3)); };
    const DrProblem p{a, b, r, [=](double x) { return a0 + a1 * x; }, [=](double x) { return b0 + b1 * x; }, f};
    for (double theta : {0.17, 0.5, 0.83}) {
      const double x0 = a + theta * r;
      const auto ref = oracle::stencil_chain(x0, r, static_cast<std::size_t>(n), p.alpha(x0 - r), p.beta(x0 + n * r), f);
      for (int j = 0; j < n; ++j) worst = std::max(worst, std::abs(solve_dr_explicit(p, x0 + j * r) - ref[j]));
    }
  }
  report("C09", "linear-system oracle", worst <= 1e-10, fmt("max |explicit - dense| = %.3e over 10 instances", worst));
}

void c10() {
  const DrProblem p{0.0, 1.0, 0.25, [](double) { return 0.0; }, [](double) { return 1.0; }, [](double) { return 0.0; }};
  const double h = 1e-3;
  const auto sol = solve_dr_on_grid(p, h);
  bool ok = sol.jump_points.size() == 3;
  for (std::size_t i = 0; ok && i < 3; ++i) ok = std::abs(sol.jump_points[i] - 0.25 * static_cast<double>(i + 1)) <= h;
  double plateau_err = 0.0;
  for (int k = 0; k < 4; ++k) {
    for (double t : {0.1, 0.5, 0.9}) plateau_err = std::max(plateau_err, std::abs(sol.eval(0.25 * (k + t)) - (k + 1) / 5.0));
  }
  const double u03 = sol.eval(0.3);
  const double res = residual_check(p, 1000);
  ok = ok && plateau_err <= 1e-12 && std::abs(u03 - 0.4) <= 1e-12 && res <= 1e-13;
  std::string jumps;
  for (double x : sol.jump_points) jumps += fmt("%s%.6f", jumps.empty() ? "" : ", ", x);
  report("C10", "discontinuous example", ok,
         fmt("jumps {%s}, plateau error %.3e, u(0.3) = %.15f, residual %.3e", jumps.c_str(), plateau_err, u03, res));
}

void c11() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  double sup = -std::numeric_limits<double>::infinity();
  bool ok = true;
  for (int i = 0; i < 200; ++i) {
    const double a = 2.0 * u(rng);
    const double b = a + 0.2 + 2.0 * u01(rng);
    const double r = 0.03 + 0.6 * u01(rng);
    const double s0 = u01(rng), s1 = u01(rng), f0 = u01(rng), f1 = u01(rng);
    const DrProblem p{a, b, r, [=](double x) { return -s0 * (x - a) * (x - a); },
                      [=](double x) { return -s1 * (x - b) * (x - b) - s0 * s1; },
                      [=](double x) { return f0 + f1 * (x - a) * (x - a); }};
    const auto rep = max_principle_check(p, 500);
    sup = std::max(sup, rep.sup);
    ok = ok && rep.passed;
  }
  double worst = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < 100; ++i) {
    const double a = 2.0 * u(rng);
    const double b = a + 0.2 + 2.0 * u01(rng);
    const double r = 0.03 + 0.6 * u01(rng);
    const double a0 = u(rng), a1 = u(rng), b0 = u(rng), b1 = u(rng), c0 = u(rng), c1 = u(rng);
    const double da = u01(rng), db = u01(rng), df = u01(rng);
    const DrProblem lo{a, b, r, [=](double x) { return a0 + a1 * x; }, [=](double x) { return b0 + b1 * x; },
                       [=](double x) { return c0 + c1 * x + df; }};
    const DrProblem hi{a, b, r, [=](double x) { return a0 + a1 * x + da; }, [=](double x) { return b0 + b1 * x + db; },
                       [=](double x) { return c0 + c1 * x; }};
    for (int k = 0; k <= 500; ++k) {
      const double x = a - r + (b - a + 2.0 * r) * k / 500.0;
      worst = std::max(worst, solve_dr_explicit(lo, x) - solve_dr_explicit(hi, x));
    }
  }
  ok = ok && worst <= 1e-12;
  report("C11", "maximum and comparison principle", ok,
         fmt("max sup u = %.3e over 200 instances, max (u1 - u2) = %.3e over 100 pairs", sup, worst));
}

void c12(const std::vector<Instance>& inst) {
  bool ok = true;
  double linf_margin = std::numeric_limits<double>::infinity();
  std::string violations;
  int jump_checked = 0;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    const auto rep = regularity_bounds(inst[i].p);
    linf_margin = std::min(linf_margin, rep.linf_bound - rep.measured_sup);
    ok = ok && rep.linf_ok;
    if (inst[i].f_zero) {
      ++jump_checked;
      if (!rep.jump_ok.value_or(false)) {
        ok = false;
        violations += fmt("\n    instance %zu (%s): jump %.6f at x = %.6f > bound %.6f (with osc beta: %.6f)", i,
                          inst[i].label.c_str(), rep.measured_max_jump, rep.worst_jump_point, rep.jump_bound,
                          rep.jump_bound_with_beta);
      }
    }
  }
  report("C12", "regularity bounds", ok,
         fmt("sup-norm bound holds with min margin %.3e on %zu instances; jump bound checked on %d f=0 instances%s",
             linf_margin, inst.size(), jump_checked, violations.c_str()));
}

void c13() {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> level(-256, 256);
  std::uniform_int_distribution<int> run(1, 30);
  std::uniform_int_distribution<int> radius(1, 12);
  std::size_t mismatches = 0;
  std::size_t points = 0;
  for (int t = 0; t < 500; ++t) {
    std::vector<double> v;
    while (v.size() < 400) {
      const double x = level(rng) / 256.0;
      for (int k = run(rng); k > 0 && v.size() < 400; --k) v.push_back(x);
    }
    const SampledFunction u(0.0, 1.0 / 32.0, v);
    const double r = radius(rng) / 32.0;
    const double c = level(rng) / 256.0;
    const auto whole = window_oscillation(u, r);
    const auto lo = window_oscillation(truncate(u, c, TruncateMode::min), r);
    const auto hi = window_oscillation(truncate(u, c, TruncateMode::max), r);
    for (std::size_t i = 0; i < whole.size(); ++i, ++points) mismatches += whole[i] != lo[i] + hi[i];
  }
  report("C13", "oscillation split", mismatches == 0,
         fmt("%zu mismatches at %zu window positions over 500 functions", mismatches, points));
}

void c14() {
  const std::array<double, 4> rs{0.4, 0.2, 0.1, 0.05};
  const auto rows = convergence_study(kQuartic, rs);
  bool ok = rows.size() == 4;
  std::string table;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    table += fmt("%s%.2f:%.6f", i ? ", " : "", rows[i].r, rows[i].err_aligned);
    if (i > 0) ok = ok && rows[i].err_aligned < rows[i - 1].err_aligned;
  }
  ok = ok && rows.back().err_aligned < 0.05;
  const ClassicalHeteroclinic u(kQuartic);
  const double h = 1e-5;
  double fi = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double x = -10.0 + 20.0 * (i + 0.5) / 1000.0;
    const double du = (u(x + h) - u(x - h)) / (2 * h);
    fi = std::max(fi, std::abs(2 * du * du - kQuartic.value(u(x))));
  }
  ok = ok && fi <= 1e-6;
  report("C14", "small-r convergence", ok, fmt("aligned errors {%s}, first-integral defect %.3e", table.c_str(), fi));
}

void c15() {
  std::vector<double> grid;
  for (int i = 1; i <= 10; ++i) grid.push_back(0.05 * i);
  const auto w = step_is_not_minimal(0.5, kQuartic, grid);
  const double threshold = 4.0 / (4.0 + kQuartic.cw());
  const auto b = energy_upper_bounds(0.2, kQuartic);
  const bool ok = w.beats_step && w.best_energy < 8.0 && 0.2 < threshold && b.four_plus_cw < b.four_over_r;
  report("C15", "step non-minimality", ok,
         fmt("r=0.5: E(v_eps) = %.6f at eps = %.2f < 8; r=0.2: 4 + c_W = %.6f < 4/r = %.1f", w.best_energy, w.best_eps,
             b.four_plus_cw, b.four_over_r));
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<std::function<void()>> steps{c01, c02, c03, c04, c05, c06, c07};
  for (const auto& s : steps) s();
  const auto inst = random_instances();
  c08(inst);
  c09();
  c10();
  c11();
  c12(inst);
  c13();
  c14();
  c15();
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%d of 15 criteria failed (%.1f s)\n", failures, secs);
  return failures == 0 ? 0 : 1;
}
