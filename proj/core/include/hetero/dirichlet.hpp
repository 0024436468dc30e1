// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "hetero/sampled.hpp"

namespace hetero {

/// D_r u = f on (a, b) with u = alpha on [a - r, a] and u = beta on [b, b + r].
struct DrProblem {
  using Fn = std::function<double(double)>;

  double a = 0.0;
  double b = 1.0;
  double r = 0.25;
  Fn alpha;
  Fn beta;
  Fn f;

  /// Throws DomainError unless a < b, r > 0 and all three callables are set.
  void validate() const;
};

/// ceil((b - x) / r) and ceil((x - a) / r) for x in (a, b), with a 1e-12 snap
/// to the nearest integer. Both are at least 1. Throws DomainError outside (a, b).
long kbar(double x, double a, double b, double r);
long kunder(double x, double a, double b, double r);

/// (u(x + r) + u(x - r) - 2 u(x)) / r^2.
double dr_apply(const std::function<double(double)>& u, double x, double r);
/// Same on a sampled function; throws DomainError if x - r or x + r is off its domain.
double dr_apply(const SampledFunction& u, double x, double r);

/// The explicit solution at x in [a - r, b + r]. On the null set a + rN the
/// right-continuous representative is returned. Throws DomainError outside.
double solve_dr_explicit(const DrProblem& p, double x);

struct DrSolution {
  DrProblem problem;
  SampledFunction samples;
  /// Discontinuities in (a, b), located by bisection between grid samples.
  std::vector<double> jump_points;
  std::vector<double> jump_sizes;

  double eval(double x) const { return solve_dr_explicit(problem, x); }
};

/// Samples the explicit solution at a - r + i h up to b + r and scans
/// consecutive samples for jumps: a step counts when it exceeds ten times the
/// larger neighbouring step plus 1e-9.
DrSolution solve_dr_on_grid(const DrProblem& p, double h);

/// max |D_r u(x) - f(x)| over n_samples quasi-random x in (a, b) that stay at
/// least exclusion_tol away from a + rZ and b - rZ.
double residual_check(const DrProblem& p, std::size_t n_samples, double exclusion_tol = 1e-9);

struct MaxPrincipleReport {
  bool passed = false;
  double sup = 0.0;          ///< largest sampled value of u on [a - r, b + r]
  double worst_point = 0.0;  ///< where it is attained
  std::size_t samples = 0;
};

/// Checks alpha <= 0, beta <= 0 and f >= 0 on n_samples points of each
/// domain (PreconditionError naming the first violating point), then checks
/// u <= 1e-12 on n_samples points of [a - r, b + r].
MaxPrincipleReport max_principle_check(const DrProblem& p, std::size_t n_samples);

struct RegularityReport {
  double norm_alpha = 0.0;     ///< sup |alpha| on [a - r, a]
  double osc_alpha = 0.0;
  double osc_beta = 0.0;
  double sup_alpha_beta = 0.0; ///< sup |alpha(p) - beta(q)|
  double norm_f = 0.0;
  bool f_is_zero = false;      ///< f vanished at every sample

  double linf_bound = 0.0;     ///< norm_alpha + sup_alpha_beta + ((b-a)^2 + r^2) norm_f
  double measured_sup = 0.0;   ///< sup |u| over the samples
  bool linf_ok = false;

  /// osc alpha + r / (b - a) sup_alpha_beta; the f-term has an unquantified
  /// constant and is left out.
  double jump_bound = 0.0;
  /// r / (b - a) ((b - a)^2 + r^2) norm_f, to be multiplied by that constant.
  double f_term_coefficient = 0.0;
  /// jump_bound + osc beta: jumps at b - rN also move the beta argument.
  double jump_bound_with_beta = 0.0;
  double measured_max_jump = 0.0;
  double worst_jump_point = 0.0;
  /// Set only when f is zero; otherwise the jump bound is not asserted.
  std::optional<bool> jump_ok;
};

/// Evaluates the sup-norm and jump bounds and measures sup |u| and
/// the largest jump. Jumps are measured at every point of (a + rN) u (b - rN)
/// inside (a, b) from one-sided evaluations; sup norms use n_samples points.
RegularityReport regularity_bounds(const DrProblem& p, std::size_t n_samples = 4096);

}  // namespace hetero
