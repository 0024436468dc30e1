// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

#include "hetero/potential.hpp"

namespace hetero {

/// The classical heteroclinic of 4 u'' = W'(u) with u(0) = 0 and limits +-1,
/// obtained by inverting x(u) = integral_0^u sqrt(2 / W(s)) ds.
///
/// x(u) is tabulated in the variable theta = -log(1 - |u|), in which the
/// integrand stays bounded up to the wells, on 512 equal segments out to
/// |u| = 1 - tol. Evaluation finds the segment and inverts with a
/// bisection-safeguarded Newton iteration. Beyond the table the profile is
/// clamped to sign(x) (1 - tol). The quartic uses tanh(x / (2 sqrt 2)) unless
/// force_quadrature is set.
class ClassicalHeteroclinic {
 public:
  explicit ClassicalHeteroclinic(const DoubleWell& W, double tol = 1e-10, bool force_quadrature = false);

  double operator()(double x) const;
  /// x(u) for |u| <= 1 - tol.
  double position(double u) const;
  double tol() const noexcept { return tol_; }
  bool closed_form() const noexcept { return closed_form_; }

 private:
  struct Branch {
    int sign = 1;
    std::vector<double> theta;
    std::vector<double> x;
  };

  double integrand(const Branch& br, double theta) const;
  double branch_position(const Branch& br, double theta) const;
  double invert(const Branch& br, double x) const;
  Branch build(int sign) const;

  DoubleWell W_;
  double tol_;
  bool closed_form_;
  Branch pos_;
  Branch neg_;
};

/// One-off evaluation; builds the table every call.
double classical_heteroclinic(const DoubleWell& W, double x, double tol = 1e-10);

struct ConvergenceRow {
  double r = 0.0;
  double err = 0.0;          ///< max over plateau midpoints (2n + 1) r of |u_r - u|
  double err_aligned = 0.0;  ///< same, minimised over 64 shifts in [-r, r]
  double best_shift = 0.0;
  double energy = 0.0;       ///< 2 r times the lattice energy of the shot profile
  long lattice_points = 0;
};

/// For each r, shoots the node-odd lattice heteroclinic (w_0 = 0, w_n < 0 for
/// n < 0), lifts it with plateaus [2 n r, 2 (n + 1) r) and compares it with
/// the classical profile. r_list must be positive and strictly decreasing.
std::vector<ConvergenceRow> convergence_study(const DoubleWell& W, std::span<const double> r_list,
                                              int horizon = 4000, double shoot_tol = 1e-9);

}  // namespace hetero
