// SPDX-License-Identifier: Apache-2.0
#include "hetero/heteroclinic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <utility>

#include "hetero/error.hpp"

namespace hetero {

double discrete_energy(const LatticeProfile& p, const DoubleWell& W, long j_lo, long j_hi) {
  const double inv = 1.0 / (2.0 * p.r() * p.r());
  double sum = 0.0;
  for (long j = j_lo; j <= j_hi; ++j) {
    const double d = p[j + 1] - p[j];
    sum += inv * d * d + W.value(p[j]);
  }
  return sum;
}

double el_residual(const LatticeProfile& p, const DoubleWell& W) {
  const double r2 = p.r() * p.r();
  double worst = 0.0;
  for (long n = p.n_min(); n <= p.n_max(); ++n) {
    const double res = p[n + 1] - 2.0 * p[n] + p[n - 1] - r2 * W.derivative(p[n]);
    worst = std::max(worst, std::abs(res));
  }
  return worst;
}

double recurrence_step(double u_n, double u_np1, double r, const DoubleWell& W) {
  return 2.0 * u_np1 - u_n + r * r * W.derivative(u_np1);
}

namespace {

// A finite lattice minimisation: the energy window j_lo..j_hi over a full
// array of positions j_lo..j_hi+1, some pinned and the rest driven by free
// variables through signed slots (w_p = sign * x_k).
class LatticeProblem {
 public:
  struct Slot {
    std::size_t index;
    double sign;
  };

  LatticeProblem(double r, const DoubleWell& W, long j_lo, long j_hi)
      : r_(r), W_(W), j_lo_(j_lo), j_hi_(j_hi), pinned_(static_cast<std::size_t>(j_hi - j_lo + 2), 0.0) {}

  void pin(long pos, double value) { pinned_[index(pos)] = value; }

  void add_free(std::vector<std::pair<long, double>> slots) {
    std::vector<Slot> s;
    for (auto [pos, sign] : slots) s.push_back({index(pos), sign});
    slots_.push_back(std::move(s));
    primary_.push_back(slots.front().first);
  }

  /// Normalised location of each free variable between the last -1 pin and
  /// the first +1 pin, used to build starting profiles.
  void set_span(long left, long right) {
    left_ = left;
    right_ = right;
  }

  std::size_t free_count() const { return slots_.size(); }
  long primary(std::size_t k) const { return primary_[k]; }
  double location(std::size_t k) const {
    return static_cast<double>(primary_[k] - left_) / static_cast<double>(right_ - left_);
  }
  long j_lo() const { return j_lo_; }

  void expand(const std::vector<double>& x, std::vector<double>& full) const {
    full = pinned_;
    for (std::size_t k = 0; k < slots_.size(); ++k) {
      for (const auto& s : slots_[k]) full[s.index] = s.sign * x[k];
    }
  }

  double energy(const std::vector<double>& full) const {
    const double inv = 1.0 / (2.0 * r_ * r_);
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < full.size(); ++i) {
      const double d = full[i + 1] - full[i];
      sum += inv * d * d + W_.value(full[i]);
    }
    return sum;
  }

  // Partial derivative of the energy with respect to an interior position.
  double full_gradient(const std::vector<double>& full, std::size_t i) const {
    return (2.0 * full[i] - full[i - 1] - full[i + 1]) / (r_ * r_) + W_.derivative(full[i]);
  }

  void gradient(const std::vector<double>& full, std::vector<double>& g) const {
    g.assign(slots_.size(), 0.0);
    for (std::size_t k = 0; k < slots_.size(); ++k) {
      for (const auto& s : slots_[k]) g[k] += s.sign * full_gradient(full, s.index);
    }
  }

  /// Euler-Lagrange residual r^2 |dE/dw_p| at the primary slots.
  double residual(const std::vector<double>& full) const {
    double worst = 0.0;
    for (const auto& slots : slots_) {
      const std::size_t i = slots.front().index;
      worst = std::max(worst, std::abs(r_ * r_ * full_gradient(full, i)));
    }
    return worst;
  }

  /// Newton direction from the tridiagonal Hessian in the free variables.
  /// Returns false when the Hessian is not positive definite.
  bool newton_direction(const std::vector<double>& full, const std::vector<double>& g,
                        std::vector<double>& dir) const {
    const std::size_t n = slots_.size();
    std::vector<double> diag(n, 0.0);
    std::vector<double> off(n > 0 ? n - 1 : 0, 0.0);
    const double inv = 1.0 / (r_ * r_);
    std::vector<std::ptrdiff_t> owner(full.size(), -1);
    std::vector<double> owner_sign(full.size(), 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      for (const auto& s : slots_[k]) {
        owner[s.index] = static_cast<std::ptrdiff_t>(k);
        owner_sign[s.index] = s.sign;
      }
    }
    for (std::size_t k = 0; k < n; ++k) {
      for (const auto& s : slots_[k]) {
        const std::size_t i = s.index;
        diag[k] += s.sign * s.sign * (2.0 * inv + W_.second_derivative(full[i]));
        for (std::size_t j : {i - 1, i + 1}) {
          if (owner[j] < 0) continue;
          const auto l = static_cast<std::size_t>(owner[j]);
          const double h = s.sign * owner_sign[j] * (-inv);
          if (l == k) {
            diag[k] += h;
          } else if (l == k + 1) {
            off[k] += h;  // the (k + 1, k) entry is the same by symmetry
          } else if (l + 1 != k) {
            return false;  // not tridiagonal; never happens for the built-in problems
          }
        }
      }
    }
    // LDL^T of the symmetric tridiagonal matrix.
    std::vector<double> d(n);
    std::vector<double> l(n, 0.0);
    d[0] = diag[0];
    if (!(d[0] > 0.0)) return false;
    for (std::size_t k = 1; k < n; ++k) {
      l[k] = off[k - 1] / d[k - 1];
      d[k] = diag[k] - l[k] * off[k - 1];
      if (!(d[k] > 0.0)) return false;
    }
    dir.assign(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) dir[k] = -g[k] - (k > 0 ? l[k] * dir[k - 1] : 0.0);
    for (std::size_t k = 0; k < n; ++k) dir[k] /= d[k];
    for (std::size_t k = n - 1; k-- > 0;) dir[k] -= l[k + 1] * dir[k + 1];
    return true;
  }

 private:
  std::size_t index(long pos) const { return static_cast<std::size_t>(pos - j_lo_); }

  double r_;
  const DoubleWell& W_;
  long j_lo_;
  long j_hi_;
  std::vector<double> pinned_;
  std::vector<std::vector<Slot>> slots_;
  std::vector<long> primary_;
  long left_ = 0;
  long right_ = 1;
};

struct StartResult {
  std::vector<double> x;
  double value = 0.0;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

void project(std::vector<double>& x) {
  for (double& v : x) v = std::clamp(v, -1.0, 1.0);
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

StartResult descend(const LatticeProblem& prob, std::vector<double> x, const SolverOptions& opts, double r) {
  project(x);
  std::vector<double> full;
  std::vector<double> trial_full;
  std::vector<double> g;
  std::vector<double> dir;
  std::vector<double> trial(x.size());

  prob.expand(x, full);
  double f = prob.energy(full);
  prob.gradient(full, g);
  double res = prob.residual(full);
  double alpha = r * r;
  const double alpha_max = 16.0 * r * r;

  StartResult out;
  int it = 0;
  for (; it < opts.max_iters; ++it) {
    if (res <= opts.tol) {
      out.converged = true;
      break;
    }
    bool moved = false;

    if (res < 1e-2 && prob.newton_direction(full, g, dir)) {
      const double slope = dot(g, dir);
      for (double t = 1.0; t > 1e-6; t *= opts.shrink) {
        for (std::size_t k = 0; k < x.size(); ++k) trial[k] = x[k] + t * dir[k];
        project(trial);
        prob.expand(trial, trial_full);
        const double ft = prob.energy(trial_full);
        const double rt = prob.residual(trial_full);
        // Near the optimum the energy decrease drops below rounding, so a
        // step that halves the residual without raising the energy counts.
        const bool armijo = ft <= f + opts.armijo * t * slope;
        const bool flat = rt < 0.5 * res && ft <= f + 1e-13 * std::max(1.0, std::abs(f));
        if (armijo || flat) {
          x = trial;
          full = trial_full;
          f = ft;
          res = rt;
          moved = true;
          break;
        }
      }
    }

    if (!moved) {
      for (; alpha > 1e-18; alpha *= opts.shrink) {
        for (std::size_t k = 0; k < x.size(); ++k) trial[k] = x[k] - alpha * g[k];
        project(trial);
        double decrease = 0.0;
        for (std::size_t k = 0; k < x.size(); ++k) decrease += g[k] * (trial[k] - x[k]);
        prob.expand(trial, trial_full);
        const double ft = prob.energy(trial_full);
        if (ft <= f + opts.armijo * decrease && decrease < 0.0) {
          x = trial;
          full = trial_full;
          f = ft;
          res = prob.residual(full);
          moved = true;
          break;
        }
      }
      alpha = std::min(alpha * 2.0, alpha_max);
    }

    if (!moved) break;  // stalled: no descent direction survives rounding
    prob.gradient(full, g);
  }

  out.x = std::move(x);
  out.value = f;
  out.residual = res;
  out.iterations = it;
  return out;
}

std::vector<std::vector<double>> make_starts(const LatticeProblem& prob, const SolverOptions& opts) {
  const std::size_t n = prob.free_count();
  std::vector<std::vector<double>> starts;
  if (opts.initial) {
    if (opts.initial->size() != n) throw DomainError("solver: initial guess has the wrong length");
    starts.push_back(*opts.initial);
  }
  const int count = std::max(1, opts.starts);
  for (int s = 0; s < count; ++s) {
    std::vector<double> x(n);
    if (s == 0) {
      for (std::size_t k = 0; k < n; ++k) x[k] = -1.0 + 2.0 * prob.location(k);
    } else if (s <= 3) {
      const double q = 0.25 * s;
      for (std::size_t k = 0; k < n; ++k) x[k] = prob.location(k) < q ? -1.0 : 1.0;
    } else {
      std::mt19937_64 rng(opts.seed + static_cast<std::uint64_t>(s));
      std::uniform_real_distribution<double> dist(-1.0, 1.0);
      for (double& v : x) v = dist(rng);
      std::sort(x.begin(), x.end());
    }
    starts.push_back(std::move(x));
  }
  return starts;
}

SolveReport run_solver(const LatticeProblem& prob, const SolverOptions& opts, double r, int K,
                       const std::function<LatticeProfile(const std::vector<double>&)>& to_profile) {
  if (!(opts.tol > 0.0)) throw DomainError("solver: tol must be positive");
  if (opts.max_iters < 1) throw DomainError("solver: max_iters must be positive");
  if (!(opts.shrink > 0.0 && opts.shrink < 1.0)) throw DomainError("solver: shrink must be in (0, 1)");

  std::vector<StartResult> results;
  for (auto& start : make_starts(prob, opts)) results.push_back(descend(prob, std::move(start), opts, r));

  const bool any_converged =
      std::any_of(results.begin(), results.end(), [](const StartResult& s) { return s.converged; });
  const StartResult* best = nullptr;
  for (const auto& s : results) {
    if (any_converged && !s.converged) continue;
    if (best == nullptr || s.value < best->value - 1e-12) {
      best = &s;
    } else if (std::abs(s.value - best->value) <= 1e-12 && s.x < best->x) {
      best = &s;  // deterministic tie-break: lexicographically smallest values
    }
  }

  SolveReport report{to_profile(best->x), 0.0, 0.0, 0, false, 0, {}, 0};
  report.value = best->value;
  report.el_residual = best->residual;
  report.iterations = best->iterations;
  report.converged = best->converged;
  report.K = K;
  for (const auto& s : results) {
    report.start_values.push_back(s.value);
    if (std::abs(s.value - best->value) <= 1e-12) ++report.ties;
  }
  return report;
}

void check_common(int K, int min_K, double r, const DoubleWell& W) {
  if (K < min_K) throw DomainError("solver: K must be >= " + std::to_string(min_K));
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("solver: r must be positive");
  if (!W.has_derivative()) throw UnsupportedOperation("solver: potential needs a derivative");
}

}  // namespace

SolveReport solve_discrete_dirichlet(int K, double r, const DoubleWell& W, const SolverOptions& opts) {
  check_common(K, 1, r, W);
  LatticeProblem prob(r, W, 0, K);
  prob.pin(0, -1.0);
  prob.pin(K + 1, 1.0);
  for (long j = 1; j <= K; ++j) prob.add_free({{j, 1.0}});
  prob.set_span(0, K + 1);
  return run_solver(prob, opts, r, K, [&](const std::vector<double>& x) {
    return LatticeProfile(r, 1, x, Symmetry::none);
  });
}

SolveReport solve_symmetric_node(int K, double r, const DoubleWell& W, const SolverOptions& opts) {
  check_common(K, 2, r, W);
  LatticeProblem prob(r, W, -K, K);
  prob.pin(-K, -1.0);
  prob.pin(0, 0.0);
  prob.pin(K, 1.0);
  prob.pin(K + 1, 1.0);
  for (long j = 1; j < K; ++j) prob.add_free({{j, 1.0}, {-j, -1.0}});
  prob.set_span(-K, K);
  return run_solver(prob, opts, r, K, [&](const std::vector<double>& x) {
    std::vector<double> v(static_cast<std::size_t>(2 * K - 1));
    const auto mid = static_cast<std::size_t>(K - 1);
    v[mid] = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
      v[mid + 1 + k] = x[k];
      v[mid - 1 - k] = -x[k];
    }
    return LatticeProfile(r, -(K - 1), std::move(v), Symmetry::node_odd);
  });
}

SolveReport solve_symmetric_bond(int K, double r, const DoubleWell& W, const SolverOptions& opts) {
  check_common(K, 2, r, W);
  LatticeProblem prob(r, W, -K, K);
  prob.pin(-K, -1.0);
  prob.pin(K - 1, 1.0);
  prob.pin(K, 1.0);
  prob.pin(K + 1, 1.0);
  for (long j = 0; j <= K - 2; ++j) prob.add_free({{j, 1.0}, {-j - 1, -1.0}});
  prob.set_span(-K, K - 1);
  return run_solver(prob, opts, r, K, [&](const std::vector<double>& x) {
    // Window [-(K-1), K-2]; z_j sits at offset j + K - 1.
    std::vector<double> v(static_cast<std::size_t>(2 * K - 2));
    const auto zero = static_cast<std::size_t>(K - 1);
    for (std::size_t k = 0; k < x.size(); ++k) {
      v[zero + k] = x[k];
      v[zero - 1 - k] = -x[k];
    }
    return LatticeProfile(r, -(K - 1), std::move(v), Symmetry::bond_odd);
  });
}

namespace {

enum class Fate { escape, turnback, undetermined };

struct Orbit {
  std::vector<long double> w;  // node: w_0, w_1, ...; bond: z_0, z_1, ...
  Fate fate = Fate::undetermined;
};

constexpr long double kEscape = 1e-9L;
constexpr long double kTurnback = 1e-12L;

Orbit run_orbit(long double s, Symmetry symmetry, long double r2, const DoubleWell& W, int horizon) {
  Orbit o;
  long double prev;
  long double cur;
  if (symmetry == Symmetry::node_odd) {
    o.w = {0.0L, s};
    prev = 0.0L;
    cur = s;
  } else {
    o.w = {s};
    prev = -s;
    cur = s;
  }
  if (cur > 1.0L + kEscape) {
    o.fate = Fate::escape;
    return o;
  }
  for (int n = 0; n < horizon; ++n) {
    const long double next = 2.0L * cur - prev + r2 * W.derivative_ext(cur);
    if (next > 1.0L + kEscape) {
      o.fate = Fate::escape;
      return o;
    }
    if (next < cur - kTurnback) {
      o.fate = Fate::turnback;
      return o;
    }
    o.w.push_back(next);
    prev = cur;
    cur = next;
  }
  return o;
}

// First index whose value lies in (1 - tol, 1]; -1 if none.
long arrival_index(const Orbit& o, long double tol) {
  for (std::size_t n = 0; n < o.w.size(); ++n) {
    if (o.w[n] > 1.0L - tol && o.w[n] <= 1.0L) return static_cast<long>(n);
  }
  return -1;
}

long double closest_approach(const Orbit& o) {
  long double best = std::numeric_limits<long double>::infinity();
  for (long double v : o.w) best = std::min(best, std::abs(1.0L - v));
  return best;
}

}  // namespace

LatticeProfile shoot_heteroclinic(double r, const DoubleWell& W, Symmetry symmetry, double tol, int horizon) {
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("shoot: r must be positive");
  if (horizon < 10) throw DomainError("shoot: horizon must be >= 10");
  if (!(tol > 0.0 && tol < 1.0)) throw DomainError("shoot: tol must be in (0, 1)");
  if (symmetry == Symmetry::none) throw DomainError("shoot: symmetry must be node_odd or bond_odd");
  if (!W.has_derivative()) throw UnsupportedOperation("shoot: potential needs a derivative");

  const long double r2 = static_cast<long double>(r) * static_cast<long double>(r);
  long double lo = 0.0L;  // w = 0 is a fixed point, never escapes
  long double hi = 1.0L;
  Orbit hi_orbit = run_orbit(hi, symmetry, r2, W, horizon);
  if (hi_orbit.fate != Fate::escape) {
    throw NoBracketError("shoot: the orbit from initial value 1 does not escape; no bracket in (0, 1]");
  }
  Orbit lo_orbit = run_orbit(lo, symmetry, r2, W, horizon);
  for (int it = 0; it < 256; ++it) {
    const long double mid = 0.5L * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    Orbit o = run_orbit(mid, symmetry, r2, W, horizon);
    if (o.fate == Fate::escape) {
      hi = mid;
      hi_orbit = std::move(o);
    } else {
      lo = mid;
      lo_orbit = std::move(o);
    }
  }

  const long double ltol = static_cast<long double>(tol);
  const Orbit* chosen = &lo_orbit;
  long N = arrival_index(lo_orbit, ltol);
  if (N < 0) {
    chosen = &hi_orbit;
    N = arrival_index(hi_orbit, ltol);
  }
  if (N < 0) {
    const double reached = static_cast<double>(std::min(closest_approach(lo_orbit), closest_approach(hi_orbit)));
    throw NonConvergenceError("shoot: orbit never came within tol of 1 (closest " + std::to_string(reached) +
                              "); tol may be below the reachable precision or horizon too short");
  }

  const auto& w = chosen->w;
  std::vector<double> values;
  if (symmetry == Symmetry::node_odd) {
    // w_0 .. w_N stored, window [-N, N].
    values.resize(static_cast<std::size_t>(2 * N + 1));
    const auto mid = static_cast<std::size_t>(N);
    values[mid] = 0.0;
    for (long n = 1; n <= N; ++n) {
      const double v = static_cast<double>(w[static_cast<std::size_t>(n)]);
      values[mid + static_cast<std::size_t>(n)] = v;
      values[mid - static_cast<std::size_t>(n)] = -v;
    }
    return LatticeProfile(r, -N, std::move(values), Symmetry::node_odd);
  }
  // z_0 .. z_N stored, window [-N-1, N].
  values.resize(static_cast<std::size_t>(2 * N + 2));
  const auto zero = static_cast<std::size_t>(N + 1);
  for (long n = 0; n <= N; ++n) {
    const double v = static_cast<double>(w[static_cast<std::size_t>(n)]);
    values[zero + static_cast<std::size_t>(n)] = v;
    values[zero - 1 - static_cast<std::size_t>(n)] = -v;
  }
  return LatticeProfile(r, -N - 1, std::move(values), Symmetry::bond_odd);
}

SampledFunction lift_profile(const LatticeProfile& p, double x_offset, double h, int pad) {
  if (!(h > 0.0)) throw DomainError("lift_profile: h must be positive");
  if (pad < 0) throw DomainError("lift_profile: pad must be >= 0");
  const double ratio = 2.0 * p.r() / h;
  const double cells = std::round(ratio);
  if (cells < 1.0 || std::abs(ratio - cells) > 1e-9 * ratio) {
    throw DomainError("lift_profile: h must divide 2r");
  }
  const auto per = static_cast<std::size_t>(cells);
  const long first = p.n_min() - pad;
  const long last = p.n_max() + pad;
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(last - first + 1) * per);
  for (long n = first; n <= last; ++n) v.insert(v.end(), per, p[n]);
  return SampledFunction(x_offset + 2.0 * static_cast<double>(first) * p.r(), h, std::move(v));
}

Interval lifted_window(const LatticeProfile& p, double x_offset) {
  return {x_offset + static_cast<double>(2 * p.n_min() - 1) * p.r(),
          x_offset + static_cast<double>(2 * p.n_max() + 3) * p.r()};
}

BoundsReport energy_upper_bounds(double r, const DoubleWell& W) {
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("energy_upper_bounds: r must be positive");
  BoundsReport b;
  b.four_over_r = 4.0 / r;
  b.four_plus_cw = 4.0 + W.cw();
  b.binding = b.four_over_r;
  b.binding_name = "four_over_r";
  if (b.four_plus_cw < b.binding) {
    b.binding = b.four_plus_cw;
    b.binding_name = "four_plus_cw";
  }
  if (r <= 1.0) {
    b.ramp = 8.0 * r / 3.0 + 4.0 * (1.0 - r) + W.cw();
    if (*b.ramp < b.binding) {
      b.binding = *b.ramp;
      b.binding_name = "ramp";
    }
  }
  return b;
}

double perturbed_step_energy(double r, double eps, const DoubleWell& W) {
  return 4.0 / r + 2.0 * eps * eps / r - 4.0 * eps / r + 2.0 * r * W.value(1.0 - eps);
}

WitnessReport step_is_not_minimal(double r, const DoubleWell& W, std::span<const double> eps_grid) {
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("step_is_not_minimal: r must be positive");
  WitnessReport rep;
  rep.step_energy = 4.0 / r;
  rep.best_energy = rep.step_energy;
  for (double eps : eps_grid) {
    const double e = perturbed_step_energy(r, eps, W);
    rep.entries.push_back({eps, e});
    if (e < rep.best_energy) {
      rep.best_energy = e;
      rep.best_eps = eps;
    }
  }
  rep.beats_step = rep.best_energy < rep.step_energy;
  rep.ramp_beats_step = 4.0 + W.cw() < rep.step_energy;
  return rep;
}

}  // namespace hetero
