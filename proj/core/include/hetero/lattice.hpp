// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <string_view>
#include <vector>

namespace hetero {

/// Symmetry class of an odd heteroclinic sequence.
///   node_odd: w_0 = 0 and w_{-n} = -w_n
///   bond_odd: z_{-n-1} = -z_n
enum class Symmetry { none, node_odd, bond_odd };

std::string_view to_string(Symmetry s) noexcept;
/// Accepts none|node|node_odd|bond|bond_odd; throws DomainError otherwise.
Symmetry symmetry_from_string(std::string_view s);

/// Integer-indexed sequence w_n with w_n = -1 below the stored window and
/// w_n = +1 above it. Lifted to the real line each entry occupies an interval
/// of length 2r.
class LatticeProfile {
 public:
  /// Throws DomainError if r <= 0, the window is empty, a value is outside
  /// [-1, 1], or the declared symmetry does not hold exactly. Symmetric
  /// profiles need a window that is symmetric under the matching reflection.
  LatticeProfile(double r, long n_min, std::vector<double> values, Symmetry symmetry = Symmetry::none);

  double r() const noexcept { return r_; }
  long n_min() const noexcept { return n_min_; }
  long n_max() const noexcept { return n_min_ + static_cast<long>(values_.size()) - 1; }
  std::span<const double> values() const noexcept { return values_; }
  Symmetry symmetry() const noexcept { return symmetry_; }

  /// w_n including the implicit -1 / +1 extension.
  double operator[](long n) const noexcept {
    if (n < n_min_) return -1.0;
    if (n > n_max()) return 1.0;
    return values_[static_cast<std::size_t>(n - n_min_)];
  }

  /// w_n <= w_{n+1} + slack over the stored window and its two neighbours.
  bool is_monotone(double slack = 0.0) const noexcept;
  /// Bitwise check of the declared symmetry.
  bool symmetry_holds() const noexcept;

 private:
  double r_;
  long n_min_;
  std::vector<double> values_;
  Symmetry symmetry_;
};

}  // namespace hetero
