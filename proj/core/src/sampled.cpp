// SPDX-License-Identifier: Apache-2.0
#include "hetero/sampled.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>
#include <utility>

#include "hetero/error.hpp"
#include "hetero/format.hpp"
#include "hetero/sliding_window.hpp"

namespace hetero {

SampledFunction::SampledFunction(double x0, double h, std::vector<double> values)
    : x0_(x0), h_(h), values_(std::move(values)) {
  if (!std::isfinite(x0_)) throw DomainError("SampledFunction: x0 must be finite");
  if (!(h_ > 0.0) || !std::isfinite(h_)) throw DomainError("SampledFunction: h must be positive");
  if (values_.size() < 2) throw DomainError("SampledFunction: at least 2 samples required");
  for (double v : values_) {
    if (!std::isfinite(v)) throw DomainError("SampledFunction: samples must be finite");
  }
}

SampledFunction SampledFunction::sample(const std::function<double(double)>& fn, double a, double b, double h) {
  if (!(b > a)) throw DomainError("SampledFunction::sample: need a < b");
  if (!(h > 0.0)) throw DomainError("SampledFunction::sample: h must be positive");
  const double cells = (b - a) / h;
  const auto n = static_cast<std::size_t>(std::llround(cells));
  if (std::abs(cells - static_cast<double>(n)) > 1e-9 * std::max(1.0, cells)) {
    throw DomainError("SampledFunction::sample: (b - a) must be a multiple of h");
  }
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = fn(a + static_cast<double>(i) * h);
  return SampledFunction(a, h, std::move(v));
}

double SampledFunction::at(double x, bool allow_extension) const {
  const double pos = (x - x0_) / h_;
  // Nodes are snapped so that x0 + i h evaluates to cell i despite rounding.
  const double nearest = std::round(pos);
  const double idx = std::abs(pos - nearest) < 1e-9 ? nearest : std::floor(pos);
  if (idx < 0.0 || idx >= static_cast<double>(values_.size())) {
    if (!allow_extension) throw DomainError("SampledFunction::at: x outside the sampled domain");
    return idx < 0.0 ? values_.front() : values_.back();
  }
  return values_[static_cast<std::size_t>(idx)];
}

std::size_t SampledFunction::node_index(double x) const {
  const double pos = (x - x0_) / h_;
  const double nearest = std::round(pos);
  if (std::abs(pos - nearest) > 1e-9 * std::max(1.0, std::abs(pos))) {
    throw DomainError("point is not a grid node");
  }
  if (nearest < 0.0 || nearest > static_cast<double>(values_.size())) {
    throw DomainError("grid node outside the sampled domain");
  }
  return static_cast<std::size_t>(nearest);
}

std::size_t cells_per_radius(double r, double h) {
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("r must be positive");
  const double ratio = r / h;
  const double m = std::round(ratio);
  if (m < 1.0 || std::abs(ratio - m) >= 1e-9 * std::max(1.0, ratio)) {
    throw DomainError("r must be an integer multiple of the sample spacing");
  }
  return static_cast<std::size_t>(m);
}

SampledFunction window_oscillation(const SampledFunction& u, double r) {
  const std::size_t m = cells_per_radius(r, u.h());
  const std::size_t window = 2 * m + 1;
  if (window + 1 > u.size()) throw DomainError("window_oscillation: window wider than the domain");
  const auto ext = sliding_extrema(u.values(), window);
  std::vector<double> osc(ext.min.size());
  for (std::size_t j = 0; j < osc.size(); ++j) osc[j] = ext.max[j] - ext.min[j];
  return SampledFunction(u.x_at(m), u.h(), std::move(osc));
}

namespace {

struct CellRange {
  std::size_t first;  // first cell inside (a, b)
  std::size_t last;   // one past the last cell
  std::size_t m;
};

CellRange energy_cells(const SampledFunction& u, double a, double b, double r) {
  if (!(b - a > 2.0 * r)) throw DomainError("energy: need b - a > 2r");
  const std::size_t m = cells_per_radius(r, u.h());
  const std::size_t first = u.node_index(a);
  const std::size_t last = u.node_index(b);
  if (first < m || last + m > u.size()) {
    throw DomainError("energy: samples must cover [a - r, b + r)");
  }
  return {first, last, m};
}

template <class Increment>
EnergyBreakdown integrate(const SampledFunction& u, double a, double b, double r, const DoubleWell& W,
                          Increment&& increment) {
  const auto cells = energy_cells(u, a, b, r);
  const auto v = u.values();
  double osc_sum = 0.0;
  double pot_sum = 0.0;
  for (std::size_t i = cells.first; i < cells.last; ++i) {
    const double d = increment(v, i, cells.m);
    osc_sum += d * d;
    pot_sum += W.value(v[i]);
  }
  EnergyBreakdown e;
  e.osc_term = osc_sum * u.h() / (2.0 * r * r);
  e.potential_term = pot_sum * u.h();
  e.total = e.osc_term + e.potential_term;
  e.a = a;
  e.b = b;
  e.r = r;
  return e;
}

}  // namespace

EnergyBreakdown energy_E(const SampledFunction& u, double a, double b, double r, const DoubleWell& W) {
  const auto cells = energy_cells(u, a, b, r);
  const std::size_t window = 2 * cells.m + 1;
  const auto v = u.values();
  const std::size_t lo = cells.first - cells.m;
  const auto ext = sliding_extrema(v.subspan(lo, cells.last + cells.m - lo), window);
  return integrate(u, a, b, r, W, [&](std::span<const double>, std::size_t i, std::size_t m) {
    const std::size_t j = i - m - lo;
    return ext.max[j] - ext.min[j];
  });
}

EnergyBreakdown energy_F(const SampledFunction& u, double a, double b, double r, const DoubleWell& W) {
  return integrate(u, a, b, r, W,
                   [](std::span<const double> v, std::size_t i, std::size_t m) { return v[i + m] - v[i - m]; });
}

SampledFunction truncate(const SampledFunction& u, double c, TruncateMode mode) {
  std::vector<double> out(u.values().begin(), u.values().end());
  for (double& x : out) x = mode == TruncateMode::min ? std::min(x, c) : std::max(x, c);
  return SampledFunction(u.x0(), u.h(), std::move(out));
}

void write_csv(std::ostream& os, const SampledFunction& u) {
  os << "x,value\n";
  for (std::size_t i = 0; i < u.size(); ++i) {
    os << format_double(u.x_at(i)) << ',' << format_double(u[i]) << '\n';
  }
}

}  // namespace hetero
