// SPDX-License-Identifier: Apache-2.0
#include "hetero/lattice.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "hetero/error.hpp"

namespace hetero {

std::string_view to_string(Symmetry s) noexcept {
  switch (s) {
    case Symmetry::none:
      return "none";
    case Symmetry::node_odd:
      return "node_odd";
    case Symmetry::bond_odd:
      return "bond_odd";
  }
  return "none";
}

Symmetry symmetry_from_string(std::string_view s) {
  if (s == "none") return Symmetry::none;
  if (s == "node" || s == "node_odd") return Symmetry::node_odd;
  if (s == "bond" || s == "bond_odd") return Symmetry::bond_odd;
  throw DomainError("unknown symmetry '" + std::string(s) + "' (expected none|node|bond)");
}

LatticeProfile::LatticeProfile(double r, long n_min, std::vector<double> values, Symmetry symmetry)
    : r_(r), n_min_(n_min), values_(std::move(values)), symmetry_(symmetry) {
  if (!(r_ > 0.0) || !std::isfinite(r_)) throw DomainError("LatticeProfile: r must be positive");
  if (values_.empty()) throw DomainError("LatticeProfile: empty window");
  for (double v : values_) {
    if (!(v >= -1.0 && v <= 1.0)) throw DomainError("LatticeProfile: values must lie in [-1, 1]");
  }
  if (symmetry_ == Symmetry::node_odd && n_min_ != -n_max()) {
    throw DomainError("LatticeProfile: node_odd profiles need a window [-N, N]");
  }
  if (symmetry_ == Symmetry::bond_odd && n_min_ != -n_max() - 1) {
    throw DomainError("LatticeProfile: bond_odd profiles need a window [-N-1, N]");
  }
  if (!symmetry_holds()) throw DomainError("LatticeProfile: declared symmetry does not hold");
}

bool LatticeProfile::is_monotone(double slack) const noexcept {
  for (long n = n_min_ - 1; n <= n_max(); ++n) {
    if ((*this)[n] > (*this)[n + 1] + slack) return false;
  }
  return true;
}

bool LatticeProfile::symmetry_holds() const noexcept {
  switch (symmetry_) {
    case Symmetry::none:
      return true;
    case Symmetry::node_odd:
      if ((*this)[0] != 0.0) return false;
      for (long n = 1; n <= n_max() + 1; ++n) {
        if ((*this)[n] + (*this)[-n] != 0.0) return false;
      }
      return true;
    case Symmetry::bond_odd:
      for (long n = 0; n <= n_max() + 1; ++n) {
        if ((*this)[n] + (*this)[-n - 1] != 0.0) return false;
      }
      return true;
  }
  return false;
}

}  // namespace hetero
