// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace hetero {

enum class PotentialKind { quartic, pendulum, custom };

/// A double-well potential W with wells at -1 and +1.
///
/// Built-ins:
///   quartic   W(u) = (1 - u^2)^2 / 4
///   pendulum  W(q) = (1 + cos(pi q)) / pi on [-1, 1], pi (|q| - 1)^2 / 2 outside
///
/// Custom potentials supply W and optionally W' (and W'') as callables; no
/// symbolic differentiation is attempted. Instances are immutable after
/// construction, so one object can be shared by concurrent callers.
class DoubleWell {
 public:
  using Fn = std::function<double(double)>;

  static DoubleWell quartic();
  static DoubleWell pendulum();
  static DoubleWell custom(Fn w, Fn dw = {}, Fn d2w = {}, std::string name = "custom");
  /// "quartic" or "pendulum"; throws DomainError otherwise.
  static DoubleWell by_name(std::string_view name);

  PotentialKind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }
  bool has_derivative() const noexcept { return static_cast<bool>(dw_) || kind_ != PotentialKind::custom; }

  double value(double t) const;
  double derivative(double t) const;
  /// W''. Built-ins are analytic; custom potentials fall back to a central
  /// difference of W' when no W'' was supplied.
  double second_derivative(double t) const;
  /// W' in extended precision. Only the built-ins gain accuracy from this.
  long double derivative_ext(long double t) const;

  /// c_W = integral of W over [-1, 1], cached at construction (tol 1e-10).
  double cw() const noexcept { return cw_; }

 private:
  DoubleWell(PotentialKind kind, std::string name, Fn w, Fn dw, Fn d2w);

  PotentialKind kind_;
  std::string name_;
  Fn w_;
  Fn dw_;
  Fn d2w_;
  double cw_ = 0.0;
};

/// W(t). Throws DomainError for non-finite t.
double eval_w(const DoubleWell& W, double t);
/// W'(t). Throws DomainError for non-finite t and UnsupportedOperation for a
/// custom potential without a derivative.
double eval_dw(const DoubleWell& W, double t);

struct ValidationCheck {
  std::string name;
  bool passed = true;
  double worst_point = 0.0;  ///< grid point with the largest violation
  double worst_value = 0.0;  ///< size of that violation (0 when passed)
};

struct ValidationReport {
  double grid_step = 0.0;
  std::vector<ValidationCheck> checks;

  bool ok() const;
  const ValidationCheck* find(std::string_view name) const;
};

/// Sample-based check of the double-well assumptions on the grid
/// -3, -3 + step, ..., 3 (plus the points -1, 0, 1). Sampling cannot certify
/// the assumptions between grid points; failures are report entries.
ValidationReport validate_double_well(const DoubleWell& W, double grid_step = 1e-3);

/// Adaptive Simpson approximation of c_W with absolute error <= tol.
double compute_cw(const DoubleWell& W, double tol = 1e-10);

}  // namespace hetero
