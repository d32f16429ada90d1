#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cbq {

/// Malformed or out-of-contract input (bad dimension, unknown name, d = 0, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DimensionError : public InputError {
 public:
  using InputError::InputError;
};

/// Raised for constructions that need a coordinate with nonzero imaginary part.
class NoImaginaryPivot : public InputError {
 public:
  NoImaginaryPivot() : InputError("no imaginary pivot: point is real") {}
  explicit NoImaginaryPivot(const std::string& what) : InputError(what) {}
};

/// A tabulated map was asked for a point it does not list.
class UnsampledPoint : public InputError {
 public:
  using InputError::InputError;
};

/// The real restriction of a map is not affine with orthogonal linear part.
class FitError : public std::runtime_error {
 public:
  FitError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// A chain edge does not license label transport (phi != 1 or psi == 0).
class PropagationError : public std::runtime_error {
 public:
  PropagationError(const std::string& what, std::size_t edge)
      : std::runtime_error(what), edge_(edge) {}
  std::size_t edge() const noexcept { return edge_; }

 private:
  std::size_t edge_;
};

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cbq
