// SPDX-License-Identifier: Apache-2.0
#include "hetero/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hetero/error.hpp"
#include "hetero/heteroclinic.hpp"
#include "hetero/quadrature.hpp"

namespace hetero {

namespace {

constexpr int kSegments = 512;
constexpr double kSegmentTol = 1e-13;

// W(sign (1 - delta)) without the cancellation in 1 - delta for the built-ins.
double well_gap_value(const DoubleWell& W, int sign, double delta) {
  switch (W.kind()) {
    case PotentialKind::quartic: {
      const double g = delta * (2.0 - delta);
      return 0.25 * g * g;
    }
    case PotentialKind::pendulum: {
      const double s = std::sin(0.5 * std::numbers::pi * delta);
      return 2.0 * s * s / std::numbers::pi;
    }
    case PotentialKind::custom:
      break;
  }
  return W.value(sign * (1.0 - delta));
}

}  // namespace

ClassicalHeteroclinic::ClassicalHeteroclinic(const DoubleWell& W, double tol, bool force_quadrature)
    : W_(W), tol_(tol), closed_form_(W.kind() == PotentialKind::quartic && !force_quadrature) {
  if (!(tol > 0.0 && tol < 0.5)) throw DomainError("ClassicalHeteroclinic: tol must be in (0, 0.5)");
  if (!closed_form_) {
    pos_ = build(1);
    neg_ = build(-1);
  }
}

double ClassicalHeteroclinic::integrand(const Branch& br, double theta) const {
  const double delta = std::exp(-theta);
  const double w = well_gap_value(W_, br.sign, delta);
  if (!(w > 0.0)) throw DomainError("ClassicalHeteroclinic: W vanishes inside (-1, 1)");
  return std::sqrt(2.0 / w) * delta;
}

ClassicalHeteroclinic::Branch ClassicalHeteroclinic::build(int sign) const {
  Branch br;
  br.sign = sign;
  const double theta_max = -std::log(tol_);
  br.theta.resize(kSegments + 1);
  br.x.resize(kSegments + 1);
  br.theta[0] = 0.0;
  br.x[0] = 0.0;
  const auto phi = [&](double t) { return integrand(br, t); };
  for (int i = 1; i <= kSegments; ++i) {
    br.theta[i] = theta_max * static_cast<double>(i) / kSegments;
    br.x[i] = br.x[i - 1] + adaptive_simpson(phi, br.theta[i - 1], br.theta[i], kSegmentTol);
  }
  return br;
}

double ClassicalHeteroclinic::branch_position(const Branch& br, double theta) const {
  auto it = std::upper_bound(br.theta.begin(), br.theta.end(), theta);
  const auto i = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, (it - br.theta.begin()) - 1));
  const auto phi = [&](double t) { return integrand(br, t); };
  return br.x[i] + adaptive_simpson(phi, br.theta[i], theta, kSegmentTol);
}

double ClassicalHeteroclinic::invert(const Branch& br, double x) const {
  if (x >= br.x.back()) return br.theta.back();
  auto it = std::upper_bound(br.x.begin(), br.x.end(), x);
  const auto i = static_cast<std::size_t>((it - br.x.begin()) - 1);
  double lo = br.theta[i];
  double hi = br.theta[i + 1];
  const auto phi = [&](double t) { return integrand(br, t); };
  double t = lo + (hi - lo) * (x - br.x[i]) / (br.x[i + 1] - br.x[i]);
  for (int iter = 0; iter < 100; ++iter) {
    const double g = br.x[i] + adaptive_simpson(phi, br.theta[i], t, kSegmentTol) - x;
    if (std::abs(g) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, x)) break;
    if (g > 0.0) {
      hi = t;
    } else {
      lo = t;
    }
    double next = t - g / phi(t);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == t || hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) break;
    t = next;
  }
  return t;
}

double ClassicalHeteroclinic::operator()(double x) const {
  if (!std::isfinite(x)) {
    if (std::isnan(x)) throw DomainError("ClassicalHeteroclinic: x is NaN");
    return std::copysign(1.0 - tol_, x);
  }
  if (x == 0.0) return 0.0;
  if (closed_form_) {
    const double u = std::tanh(x / (2.0 * std::numbers::sqrt2));
    return std::clamp(u, -(1.0 - tol_), 1.0 - tol_);
  }
  const Branch& br = x > 0.0 ? pos_ : neg_;
  const double theta = invert(br, std::abs(x));
  return std::copysign(std::min(-std::expm1(-theta), 1.0 - tol_), x);
}

double ClassicalHeteroclinic::position(double u) const {
  if (!(std::abs(u) <= 1.0 - tol_)) throw DomainError("ClassicalHeteroclinic::position: |u| > 1 - tol");
  if (u == 0.0) return 0.0;
  if (closed_form_) return 2.0 * std::numbers::sqrt2 * std::atanh(u);
  const Branch& br = u > 0.0 ? pos_ : neg_;
  return std::copysign(branch_position(br, -std::log1p(-std::abs(u))), u);
}

double classical_heteroclinic(const DoubleWell& W, double x, double tol) {
  return ClassicalHeteroclinic(W, tol)(x);
}

std::vector<ConvergenceRow> convergence_study(const DoubleWell& W, std::span<const double> r_list, int horizon,
                                              double shoot_tol) {
  for (std::size_t i = 0; i < r_list.size(); ++i) {
    if (!(r_list[i] > 0.0) || !std::isfinite(r_list[i])) throw DomainError("convergence_study: r must be positive");
    if (i > 0 && !(r_list[i] < r_list[i - 1])) {
      throw DomainError("convergence_study: r_list must be strictly decreasing");
    }
  }
  const ClassicalHeteroclinic classical(W);
  constexpr int kShifts = 64;

  std::vector<ConvergenceRow> rows;
  for (double r : r_list) {
    const LatticeProfile p = shoot_heteroclinic(r, W, Symmetry::node_odd, shoot_tol, horizon);
    ConvergenceRow row;
    row.r = r;
    row.lattice_points = p.n_max() - p.n_min() + 1;

    const auto sup_error = [&](double shift) {
      double worst = 0.0;
      for (long n = p.n_min() - 2; n <= p.n_max() + 2; ++n) {
        const double x = static_cast<double>(2 * n + 1) * r;
        worst = std::max(worst, std::abs(p[n] - classical(x - shift)));
      }
      return worst;
    };
    row.err = sup_error(0.0);
    row.err_aligned = std::numeric_limits<double>::infinity();
    for (int k = 0; k < kShifts; ++k) {
      const double shift = -r + 2.0 * r * static_cast<double>(k) / (kShifts - 1);
      const double e = sup_error(shift);
      if (e < row.err_aligned) {
        row.err_aligned = e;
        row.best_shift = shift;
      }
    }
    row.energy = 2.0 * r * discrete_energy(p, W, p.n_min() - 1, p.n_max());
    rows.push_back(row);
  }
  return rows;
}

}  // namespace hetero
