// SPDX-License-Identifier: Apache-2.0
#include "hetero/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hetero/error.hpp"
#include "hetero/format.hpp"

namespace hetero {

void DrProblem::validate() const {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) throw DomainError("DrProblem: need finite a < b");
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("DrProblem: r must be positive");
  if (!alpha || !beta || !f) throw DomainError("DrProblem: alpha, beta and f must all be set");
}

namespace {

struct Ceil {
  long value;
  bool on_lattice;
};

Ceil snapped_ceil(double t) {
  const double n = std::round(t);
  if (std::abs(t - n) <= 1e-12 * std::max(1.0, std::abs(t))) return {static_cast<long>(n), true};
  return {static_cast<long>(std::ceil(t)), false};
}

void check_inside(double x, double a, double b, double r) {
  if (!(r > 0.0)) throw DomainError("k: r must be positive");
  if (!(x > a && x < b)) throw DomainError("k: x = " + format_double(x) + " is outside (a, b)");
}

}  // namespace

long kbar(double x, double a, double b, double r) {
  check_inside(x, a, b, r);
  return std::max(1L, snapped_ceil((b - x) / r).value);
}

long kunder(double x, double a, double b, double r) {
  check_inside(x, a, b, r);
  return std::max(1L, snapped_ceil((x - a) / r).value);
}

double dr_apply(const std::function<double(double)>& u, double x, double r) {
  if (!(r > 0.0)) throw DomainError("dr_apply: r must be positive");
  return (u(x + r) + u(x - r) - 2.0 * u(x)) / (r * r);
}

double dr_apply(const SampledFunction& u, double x, double r) {
  return dr_apply([&u](double y) { return u.at(y); }, x, r);
}

double solve_dr_explicit(const DrProblem& p, double x) {
  p.validate();
  const double a = p.a;
  const double b = p.b;
  const double r = p.r;
  const double slack = 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
  if (!(x >= a - r - slack && x <= b + r + slack)) {
    throw DomainError("solve_dr_explicit: x = " + format_double(x) + " is outside [a - r, b + r]");
  }
  if (x <= a) return p.alpha(x);
  if (x >= b) return p.beta(x);

  const Ceil cu = snapped_ceil((x - a) / r);
  // Right-continuous representative: on a + rN the chain starts one step further left.
  const long ku = cu.on_lattice ? cu.value + 1 : std::max(1L, cu.value);
  const long kb = std::max(1L, snapped_ceil((b - x) / r).value);
  const double n = static_cast<double>(ku + kb);
  const double dku = static_cast<double>(ku);
  const double dkb = static_cast<double>(kb);

  double left = p.alpha(x - dku * r);
  double right = p.beta(x + dkb * r);
  double left_sum = 0.0;
  for (long j = 1; j < ku; ++j) left_sum += static_cast<double>(j) * p.f(x - static_cast<double>(ku - j) * r);
  double right_sum = 0.0;
  for (long j = 1; j < kb; ++j) right_sum += static_cast<double>(j) * p.f(x + static_cast<double>(kb - j) * r);
  const double r2 = r * r;
  left -= r2 * left_sum;
  right -= r2 * right_sum;
  return (dkb * left + dku * right) / n - r2 * dku * dkb / n * p.f(x);
}

DrSolution solve_dr_on_grid(const DrProblem& p, double h) {
  p.validate();
  if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("solve_dr_on_grid: h must be positive");
  const double span = p.b - p.a + 2.0 * p.r;
  const auto cells = static_cast<std::size_t>(std::floor(span / h + 1e-9));
  if (cells < 1) throw DomainError("solve_dr_on_grid: h is wider than [a - r, b + r]");
  const double x0 = p.a - p.r;
  std::vector<double> v(cells + 1);
  for (std::size_t i = 0; i <= cells; ++i) v[i] = solve_dr_explicit(p, x0 + static_cast<double>(i) * h);

  DrSolution sol{p, SampledFunction(x0, h, v), {}, {}};
  const double tol = 1e-12 * std::max({1.0, std::abs(p.a), std::abs(p.b)});
  const auto step = [&](std::size_t i) { return std::abs(v[i + 1] - v[i]); };
  for (std::size_t i = 0; i < cells; ++i) {
    const double lo_x = x0 + static_cast<double>(i) * h;
    const double hi_x = x0 + static_cast<double>(i + 1) * h;
    // Jumps at a and b are the boundary collars, not interior discontinuities.
    if (lo_x < p.a + tol || hi_x > p.b - tol) continue;
    double neighbour = 0.0;
    if (i > 0) neighbour = std::max(neighbour, step(i - 1));
    if (i + 1 < cells) neighbour = std::max(neighbour, step(i + 1));
    const double d = step(i);
    if (!(d > 10.0 * neighbour + 1e-9)) continue;

    double lo = lo_x;
    double hi = hi_x;
    double ulo = v[i];
    double uhi = v[i + 1];
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      const double um = solve_dr_explicit(p, mid);
      if (std::abs(um - ulo) > std::abs(uhi - um)) {
        hi = mid;
        uhi = um;
      } else {
        lo = mid;
        ulo = um;
      }
    }
    sol.jump_points.push_back(hi);
    sol.jump_sizes.push_back(d);
  }
  return sol;
}

namespace {

// Distance from x to the nearest point of base + rZ.
double lattice_distance(double x, double base, double r) {
  const double t = (x - base) / r;
  return std::abs(t - std::round(t)) * r;
}

constexpr double kGolden = 0.6180339887498948482;

}  // namespace

double residual_check(const DrProblem& p, std::size_t n_samples, double exclusion_tol) {
  p.validate();
  if (n_samples < 1) throw DomainError("residual_check: n_samples must be >= 1");
  const auto u = [&p](double y) { return solve_dr_explicit(p, y); };
  double worst = 0.0;
  std::size_t taken = 0;
  for (std::size_t k = 1; taken < n_samples && k <= 100 * n_samples; ++k) {
    const double frac = std::fmod(0.5 + static_cast<double>(k) * kGolden, 1.0);
    const double x = p.a + frac * (p.b - p.a);
    if (!(x > p.a && x < p.b)) continue;
    if (lattice_distance(x, p.a, p.r) <= exclusion_tol || lattice_distance(x, p.b, p.r) <= exclusion_tol) continue;
    worst = std::max(worst, std::abs(dr_apply(u, x, p.r) - p.f(x)));
    ++taken;
  }
  return worst;
}

namespace {

std::vector<double> sample_points(double lo, double hi, std::size_t n) {
  std::vector<double> xs(n);
  if (n == 1) {
    xs[0] = 0.5 * (lo + hi);
    return xs;
  }
  for (std::size_t i = 0; i < n; ++i) xs[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return xs;
}

}  // namespace

MaxPrincipleReport max_principle_check(const DrProblem& p, std::size_t n_samples) {
  p.validate();
  if (n_samples < 2) throw DomainError("max_principle_check: n_samples must be >= 2");
  for (double x : sample_points(p.a - p.r, p.a, n_samples)) {
    if (p.alpha(x) > 0.0) throw PreconditionError("max_principle_check: alpha > 0 at x = " + format_double(x));
  }
  for (double x : sample_points(p.b, p.b + p.r, n_samples)) {
    if (p.beta(x) > 0.0) throw PreconditionError("max_principle_check: beta > 0 at x = " + format_double(x));
  }
  for (double x : sample_points(p.a, p.b, n_samples)) {
    if (p.f(x) < 0.0) throw PreconditionError("max_principle_check: f < 0 at x = " + format_double(x));
  }
  MaxPrincipleReport rep;
  rep.sup = -std::numeric_limits<double>::infinity();
  for (double x : sample_points(p.a - p.r, p.b + p.r, n_samples)) {
    const double u = solve_dr_explicit(p, x);
    if (u > rep.sup) {
      rep.sup = u;
      rep.worst_point = x;
    }
  }
  rep.samples = n_samples;
  rep.passed = rep.sup <= 1e-12;
  return rep;
}

RegularityReport regularity_bounds(const DrProblem& p, std::size_t n_samples) {
  p.validate();
  if (n_samples < 2) throw DomainError("regularity_bounds: n_samples must be >= 2");
  RegularityReport rep;

  double a_min = std::numeric_limits<double>::infinity();
  double a_max = -a_min;
  for (double x : sample_points(p.a - p.r, p.a, n_samples)) {
    const double v = p.alpha(x);
    a_min = std::min(a_min, v);
    a_max = std::max(a_max, v);
    rep.norm_alpha = std::max(rep.norm_alpha, std::abs(v));
  }
  double b_min = std::numeric_limits<double>::infinity();
  double b_max = -b_min;
  for (double x : sample_points(p.b, p.b + p.r, n_samples)) {
    const double v = p.beta(x);
    b_min = std::min(b_min, v);
    b_max = std::max(b_max, v);
  }
  rep.osc_alpha = a_max - a_min;
  rep.osc_beta = b_max - b_min;
  rep.sup_alpha_beta = std::max(std::abs(a_max - b_min), std::abs(b_max - a_min));
  rep.f_is_zero = true;
  for (double x : sample_points(p.a, p.b, n_samples)) {
    const double v = p.f(x);
    rep.norm_f = std::max(rep.norm_f, std::abs(v));
    if (v != 0.0) rep.f_is_zero = false;
  }

  const double len = p.b - p.a;
  rep.linf_bound = rep.norm_alpha + rep.sup_alpha_beta + (len * len + p.r * p.r) * rep.norm_f;
  for (double x : sample_points(p.a - p.r, p.b + p.r, n_samples)) {
    rep.measured_sup = std::max(rep.measured_sup, std::abs(solve_dr_explicit(p, x)));
  }
  rep.linf_ok = rep.measured_sup <= rep.linf_bound * (1.0 + 1e-12) + 1e-12;

  rep.jump_bound = rep.osc_alpha + p.r / len * rep.sup_alpha_beta;
  rep.f_term_coefficient = p.r / len * (len * len + p.r * p.r) * rep.norm_f;
  rep.jump_bound_with_beta = rep.jump_bound + rep.osc_beta;

  std::vector<double> points;
  for (long m = 1; p.a + static_cast<double>(m) * p.r < p.b; ++m) points.push_back(p.a + static_cast<double>(m) * p.r);
  for (long m = 1; p.b - static_cast<double>(m) * p.r > p.a; ++m) points.push_back(p.b - static_cast<double>(m) * p.r);
  const double delta = 1e-9 * p.r;
  for (double x : points) {
    if (!(x - delta > p.a && x + delta < p.b)) continue;
    const double jump = std::abs(solve_dr_explicit(p, x + delta) - solve_dr_explicit(p, x - delta));
    if (jump > rep.measured_max_jump) {
      rep.measured_max_jump = jump;
      rep.worst_jump_point = x;
    }
  }
  if (rep.f_is_zero) rep.jump_ok = rep.measured_max_jump <= rep.jump_bound * (1.0 + 1e-9) + 1e-9;
  return rep;
}

}  // namespace hetero
