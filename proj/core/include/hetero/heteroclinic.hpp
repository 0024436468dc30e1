// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hetero/lattice.hpp"
#include "hetero/potential.hpp"
#include "hetero/sampled.hpp"

namespace hetero {

struct SolverOptions {
  double tol = 1e-10;          ///< target for the EL residual
  int max_iters = 100000;      ///< per start, gradient and Newton steps together
  int starts = 8;              ///< ramp, 3 quarter steps, then seeded random monotone starts
  std::uint64_t seed = 0x5eedULL;
  double armijo = 1e-4;
  double shrink = 0.5;
  /// Optional extra start, given as values of the free variables in
  /// increasing lattice order (w_1..w_K, w_1..w_{K-1} or z_0..z_{K-2}).
  std::optional<std::vector<double>> initial;
};

struct SolveReport {
  LatticeProfile minimizer;
  double value = 0.0;
  double el_residual = 0.0;
  int iterations = 0;
  bool converged = false;
  int K = 0;
  /// Final objective of every start, in start order.
  std::vector<double> start_values;
  /// Number of starts whose value ties the reported one to 1e-12.
  int ties = 0;
};

/// sum_{j=j_lo}^{j_hi} (w_{j+1} - w_j)^2 / (2 r^2) + W(w_j), with the
/// implicit -1 / +1 extension of the profile.
double discrete_energy(const LatticeProfile& p, const DoubleWell& W, long j_lo, long j_hi);

/// Minimises sum_{j=0}^{K} (w_{j+1} - w_j)^2 / (2 r^2) + W(w_j) over
/// w_1..w_K in [-1, 1] with w_0 = -1 and w_{K+1} = 1. Projected gradient with
/// Armijo backtracking from several starts, then a damped Newton polish.
/// Non-convergence is reported, not thrown.
SolveReport solve_discrete_dirichlet(int K, double r, const DoubleWell& W, const SolverOptions& opts = {});

/// Same sum over j = -K..K with w_0 = 0, w_{-j} = -w_j and w_j = 1 for j >= K.
/// Free variables w_1..w_{K-1}; the minimiser is stored on [-(K-1), K-1].
SolveReport solve_symmetric_node(int K, double r, const DoubleWell& W, const SolverOptions& opts = {});

/// Same sum over j = -K..K with z_{-j-1} = -z_j and z_j = 1 for j >= K - 1.
/// Free variables z_0..z_{K-2}; the minimiser is stored on [-(K-1), K-2].
SolveReport solve_symmetric_bond(int K, double r, const DoubleWell& W, const SolverOptions& opts = {});

/// max over the stored window of |w_{n+1} - 2 w_n + w_{n-1} - r^2 W'(w_n)|.
double el_residual(const LatticeProfile& p, const DoubleWell& W);

/// One forward step of the discrete Euler-Lagrange recurrence:
/// 2 u_{n+1} - u_n + r^2 W'(u_{n+1}).
double recurrence_step(double u_n, double u_np1, double r, const DoubleWell& W);

/// Bisection on the free initial value (w_1 with w_0 = 0, or z_0 with
/// z_{-1} = -z_0) of the recurrence. Orbits that exceed 1 + 1e-9 mean the
/// value is too large; orbits that turn back mean it is too small. The
/// returned profile is truncated where the orbit is within tol of 1 and
/// extended by +-1 beyond. Orbits are iterated in extended precision.
/// Throws NoBracketError or NonConvergenceError.
LatticeProfile shoot_heteroclinic(double r, const DoubleWell& W, Symmetry symmetry, double tol = 1e-9,
                                  int horizon = 4000);

/// Piecewise-constant lifting: w_n on [x_offset + 2 n r, x_offset + 2 (n+1) r)
/// for n from n_min - pad to n_max + pad. h must divide 2r.
SampledFunction lift_profile(const LatticeProfile& p, double x_offset, double h, int pad = 1);

/// Interval (a, b) of the lifted profile (pad = 1) whose energy contains every
/// transition: a = x_offset + (2 n_min - 1) r, b = x_offset + (2 n_max + 3) r.
struct Interval {
  double a = 0.0;
  double b = 0.0;
};
Interval lifted_window(const LatticeProfile& p, double x_offset);

struct BoundsReport {
  double four_over_r = 0.0;
  double four_plus_cw = 0.0;
  /// 8r/3 + 4(1 - r) + c_W; only defined for r <= 1.
  std::optional<double> ramp;
  double binding = 0.0;
  const char* binding_name = "";
};

/// Energy bounds from the step, the abstract 4 + c_W bound and the ramp
/// competitor. Throws DomainError for r <= 0.
BoundsReport energy_upper_bounds(double r, const DoubleWell& W);

struct WitnessEntry {
  double eps = 0.0;
  double energy = 0.0;
};

struct WitnessReport {
  double step_energy = 0.0;  ///< 4 / r
  std::vector<WitnessEntry> entries;
  double best_eps = 0.0;
  double best_energy = 0.0;
  bool beats_step = false;        ///< some eps gives E(v_eps) < 4 / r
  bool ramp_beats_step = false;   ///< 4 + c_W < 4 / r, i.e. r < 4 / (4 + c_W)
};

/// Energy of the perturbed step v_eps (-1 on x < 0, 1 - eps on (0, 2r), 1
/// after): 4/r + 2 eps^2 / r - 4 eps / r + 2 r W(1 - eps).
double perturbed_step_energy(double r, double eps, const DoubleWell& W);

WitnessReport step_is_not_minimal(double r, const DoubleWell& W, std::span<const double> eps_grid);

}  // namespace hetero
