// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <deque>
#include <span>
#include <vector>

#include "hetero/error.hpp"

namespace hetero {

/// Minimum and maximum of every contiguous window of fixed length.
/// Entry j of each vector covers values[j .. j + window - 1].
struct WindowExtrema {
  std::vector<double> min;
  std::vector<double> max;
};

/// Monotone-deque sliding extrema, O(N) total. Each deque holds indices whose
/// values are monotone, so the front is always the current extremum.
inline WindowExtrema sliding_extrema(std::span<const double> values, std::size_t window) {
  if (window == 0 || window > values.size()) {
    throw DomainError("sliding_extrema: window must be in [1, N]");
  }
  const std::size_t count = values.size() - window + 1;
  WindowExtrema out;
  out.min.resize(count);
  out.max.resize(count);

  std::deque<std::size_t> lo;  // increasing values
  std::deque<std::size_t> hi;  // decreasing values
  for (std::size_t i = 0; i < values.size(); ++i) {
    while (!lo.empty() && values[lo.back()] >= values[i]) lo.pop_back();
    while (!hi.empty() && values[hi.back()] <= values[i]) hi.pop_back();
    lo.push_back(i);
    hi.push_back(i);
    if (i + 1 < window) continue;
    const std::size_t start = i + 1 - window;
    if (lo.front() < start) lo.pop_front();
    if (hi.front() < start) hi.pop_front();
    out.min[start] = values[lo.front()];
    out.max[start] = values[hi.front()];
  }
  return out;
}

}  // namespace hetero
