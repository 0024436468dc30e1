// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>

namespace hetero {

/// Input outside the mathematical domain of an operation (non-finite values,
/// empty windows, misaligned grids, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The operation needs data the caller did not supply, e.g. W' of a custom
/// potential built without a derivative.
class UnsupportedOperation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A documented hypothesis of the operation is violated by the data.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Shooting could not bracket the saddle connection.
class NoBracketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative method stopped before meeting its tolerance.
class NonConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hetero
