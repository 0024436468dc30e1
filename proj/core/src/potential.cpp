// SPDX-License-Identifier: Apache-2.0
#include "hetero/potential.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "hetero/error.hpp"
#include "hetero/quadrature.hpp"

namespace hetero {

namespace {

constexpr double kPi = std::numbers::pi;

void require_finite(double t, const char* what) {
  if (!std::isfinite(t)) {
    throw DomainError(std::string(what) + ": argument must be finite");
  }
}

}  // namespace

DoubleWell::DoubleWell(PotentialKind kind, std::string name, Fn w, Fn dw, Fn d2w)
    : kind_(kind), name_(std::move(name)), w_(std::move(w)), dw_(std::move(dw)), d2w_(std::move(d2w)) {
  if (!w_) throw DomainError("DoubleWell: potential callable is empty");
  cw_ = compute_cw(*this, 1e-10);
}

DoubleWell DoubleWell::quartic() {
  return DoubleWell(
      PotentialKind::quartic, "quartic",
      [](double u) {
        const double s = 1.0 - u * u;
        return 0.25 * s * s;
      },
      [](double u) { return u * u * u - u; }, [](double u) { return 3.0 * u * u - 1.0; });
}

// (1 + cos(pi q)) / pi on [-1, 1]. The cosine is periodic, so outside the
// wells it is continued by its second-order Taylor polynomial pi (|q| - 1)^2 / 2,
// which keeps W, W' and W'' continuous and W monotone beyond +-1.
DoubleWell DoubleWell::pendulum() {
  return DoubleWell(
      PotentialKind::pendulum, "pendulum",
      [](double q) {
        const double e = std::abs(q) - 1.0;
        return e > 0.0 ? 0.5 * kPi * e * e : (1.0 + std::cos(kPi * q)) / kPi;
      },
      [](double q) {
        const double e = std::abs(q) - 1.0;
        return e > 0.0 ? std::copysign(kPi * e, q) : -std::sin(kPi * q);
      },
      [](double q) { return std::abs(q) > 1.0 ? kPi : -kPi * std::cos(kPi * q); });
}

DoubleWell DoubleWell::custom(Fn w, Fn dw, Fn d2w, std::string name) {
  return DoubleWell(PotentialKind::custom, std::move(name), std::move(w), std::move(dw), std::move(d2w));
}

DoubleWell DoubleWell::by_name(std::string_view name) {
  if (name == "quartic") return quartic();
  if (name == "pendulum") return pendulum();
  throw DomainError("unknown potential '" + std::string(name) + "' (expected quartic|pendulum)");
}

double DoubleWell::value(double t) const { return w_(t); }

double DoubleWell::derivative(double t) const {
  if (!dw_) throw UnsupportedOperation("custom potential '" + name_ + "' has no derivative");
  return dw_(t);
}

double DoubleWell::second_derivative(double t) const {
  if (d2w_) return d2w_(t);
  constexpr double h = 1e-6;
  return (derivative(t + h) - derivative(t - h)) / (2.0 * h);
}

long double DoubleWell::derivative_ext(long double t) const {
  switch (kind_) {
    case PotentialKind::quartic:
      return t * t * t - t;
    case PotentialKind::pendulum: {
      const long double pi = 3.141592653589793238462643383279502884L;
      const long double e = std::abs(t) - 1.0L;
      return e > 0.0L ? std::copysign(pi * e, t) : -std::sin(pi * t);
    }
    case PotentialKind::custom:
      break;
  }
  return derivative(static_cast<double>(t));
}

double eval_w(const DoubleWell& W, double t) {
  require_finite(t, "eval_w");
  return W.value(t);
}

double eval_dw(const DoubleWell& W, double t) {
  require_finite(t, "eval_dw");
  return W.derivative(t);
}

bool ValidationReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const ValidationCheck& c) { return c.passed; });
}

const ValidationCheck* ValidationReport::find(std::string_view name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

namespace {

// Records the largest violation seen for one named condition.
struct Tracker {
  ValidationCheck check;

  explicit Tracker(std::string name) { check.name = std::move(name); }

  void violate(double at, double amount) {
    if (!check.passed && amount <= check.worst_value) return;
    check.passed = false;
    check.worst_point = at;
    check.worst_value = amount;
  }
};

}  // namespace

ValidationReport validate_double_well(const DoubleWell& W, double grid_step) {
  if (!(grid_step > 0.0) || !std::isfinite(grid_step)) {
    throw DomainError("validate_double_well: grid_step must be positive");
  }
  ValidationReport report;
  report.grid_step = grid_step;

  const auto n = static_cast<long>(std::floor(6.0 / grid_step + 1e-9));
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(n) + 4);
  for (long i = 0; i <= n; ++i) grid.push_back(-3.0 + static_cast<double>(i) * grid_step);
  for (double p : {-1.0, 0.0, 1.0}) grid.push_back(p);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end(),
                         [&](double x, double y) { return std::abs(x - y) < 1e-3 * grid_step; }),
             grid.end());
  // Snap the near-duplicates of the special points onto them.
  for (double& t : grid) {
    for (double p : {-1.0, 0.0, 1.0}) {
      if (std::abs(t - p) < 1e-3 * grid_step) t = p;
    }
  }

  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) values[i] = W.value(grid[i]);

  Tracker zeros("W(+-1)=0");
  Tracker positive("W>0 off the wells");
  Tracker left_decreasing("W decreasing on (-inf,-1)");
  Tracker right_increasing("W increasing on (1,+inf)");
  Tracker even("W even on [-1,1]");
  Tracker unique_max("unique local max at 0");
  Tracker derivative("W' consistent with W");
  Tracker cw_positive("c_W>0");

  for (double p : {-1.0, 1.0}) {
    const double v = W.value(p);
    if (!(std::abs(v) <= 1e-12)) zeros.violate(p, std::abs(v));
  }

  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = grid[i];
    const double v = values[i];
    if (!std::isfinite(v)) {
      positive.violate(t, INFINITY);
      continue;
    }
    if (t != -1.0 && t != 1.0 && !(v > 0.0)) positive.violate(t, -v);
    if (i + 1 < grid.size()) {
      const double t1 = grid[i + 1];
      const double v1 = values[i + 1];
      if (t1 <= -1.0 && !(v1 < v)) left_decreasing.violate(t1, v1 - v);
      if (t >= 1.0 && !(v1 > v)) right_increasing.violate(t1, v - v1);
      // Strictly increasing on [-1, 0] and strictly decreasing on [0, 1]
      // is the sampled form of "unique local maximum at 0".
      if (t >= -1.0 && t1 <= 0.0 && !(v1 > v)) unique_max.violate(t1, v - v1);
      if (t >= 0.0 && t1 <= 1.0 && !(v1 < v)) unique_max.violate(t1, v1 - v);
    }
    if (t >= -1.0 && t <= 1.0) {
      const double mirror = W.value(-t);
      const double gap = std::abs(v - mirror);
      if (gap > 1e-12 * std::max(1.0, std::abs(v))) even.violate(t, gap);
    }
  }

  if (W.has_derivative()) {
    constexpr double h = 1e-5;
    for (double t : grid) {
      const double fd = (W.value(t + h) - W.value(t - h)) / (2.0 * h);
      const double d = W.derivative(t);
      const double gap = std::abs(fd - d);
      if (!(gap <= 1e-6 * (1.0 + std::abs(d)))) derivative.violate(t, gap);
    }
  }

  if (!(W.cw() > 0.0)) cw_positive.violate(0.0, -W.cw());

  report.checks = {zeros.check,      positive.check,   left_decreasing.check, right_increasing.check,
                   even.check,       unique_max.check, derivative.check,      cw_positive.check};
  return report;
}

double compute_cw(const DoubleWell& W, double tol) {
  if (!(tol > 0.0)) throw DomainError("compute_cw: tol must be positive");
  return adaptive_simpson([&](double s) { return W.value(s); }, -1.0, 1.0, tol);
}

}  // namespace hetero
