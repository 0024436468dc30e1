// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>

#include "hetero/error.hpp"

namespace hetero {

namespace detail {

template <class F>
double simpson_refine(F& f, double a, double b, double fa, double fm, double fb,
                      double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return simpson_refine(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_refine(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Adaptive Simpson quadrature of f over [a, b] with Richardson correction.
/// The absolute error target is split evenly between the two halves at each
/// refinement.
template <class F>
double adaptive_simpson(F&& f, double a, double b, double tol, int max_depth = 48) {
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    throw DomainError("adaptive_simpson: tolerance must be positive");
  }
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw DomainError("adaptive_simpson: non-finite interval");
  }
  if (a == b) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::simpson_refine(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

}  // namespace hetero
