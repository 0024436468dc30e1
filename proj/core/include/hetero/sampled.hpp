// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "hetero/potential.hpp"

namespace hetero {

/// Real function on a uniform grid, read as a right-continuous step function:
/// values[i] holds on the cell [x0 + i h, x0 + (i + 1) h).
class SampledFunction {
 public:
  /// Throws DomainError unless h > 0, at least 2 samples, all finite.
  SampledFunction(double x0, double h, std::vector<double> values);

  /// Samples fn at the left end of each cell covering [a, b).
  static SampledFunction sample(const std::function<double(double)>& fn, double a, double b, double h);

  double x0() const noexcept { return x0_; }
  double h() const noexcept { return h_; }
  std::size_t size() const noexcept { return values_.size(); }
  double end() const noexcept { return x0_ + static_cast<double>(values_.size()) * h_; }
  double x_at(std::size_t i) const noexcept { return x0_ + static_cast<double>(i) * h_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }

  /// Cell lookup. Outside [x0, end) this throws DomainError unless
  /// allow_extension is set, in which case the nearest endpoint value is used.
  double at(double x, bool allow_extension = false) const;

  /// Index of the grid node at x; throws DomainError if x is not a node
  /// (relative tolerance 1e-9 in units of h).
  std::size_t node_index(double x) const;

 private:
  double x0_;
  double h_;
  std::vector<double> values_;
};

struct EnergyBreakdown {
  double osc_term = 0.0;
  double potential_term = 0.0;
  double total = 0.0;
  double a = 0.0;
  double b = 0.0;
  double r = 0.0;
};

/// Number of cells spanned by r; throws DomainError unless r is an integer
/// multiple of h up to 1e-9.
std::size_t cells_per_radius(double r, double h);

/// x -> sup - inf of u over (x - r, x + r), per cell. For a point inside cell
/// i the open window meets exactly cells i - m .. i + m (m = r / h), so the
/// value is exact for grid-aligned step functions. The result covers the
/// cells whose window fits inside u's domain.
SampledFunction window_oscillation(const SampledFunction& u, double r);

/// Nonlocal energy on (a, b): (1 / 2r^2) * integral of osc^2 plus the
/// integral of W(u), both by the midpoint rule on u's cells. a and b must be
/// grid nodes and u must cover [a - r, b + r).
EnergyBreakdown energy_E(const SampledFunction& u, double a, double b, double r, const DoubleWell& W);

/// Same as energy_E with (u(x + r) - u(x - r))^2 in place of the squared
/// oscillation.
EnergyBreakdown energy_F(const SampledFunction& u, double a, double b, double r, const DoubleWell& W);

enum class TruncateMode { min, max };

/// Pointwise min{u, c} or max{u, c}.
SampledFunction truncate(const SampledFunction& u, double c, TruncateMode mode);

/// CSV with header "x,value", one row per sample, LF endings, shortest
/// round-trip number formatting.
void write_csv(std::ostream& os, const SampledFunction& u);

}  // namespace hetero
