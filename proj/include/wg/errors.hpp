#pragma once

#include <stdexcept>
#include <string>

namespace wg {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// File-level problems: unreadable, ill-formed, or unsupported version.
struct FileFormatError : Error { using Error::Error; };

// A curve parametrization with (numerically) vanishing speed.
struct DegenerateParametrizationError : Error { using Error::Error; };

// No interior candidate admits a positive inscribed-disc radius.
struct NotStarShapedError : Error { using Error::Error; };

// Adaptive arc quadrature failed to stagnate within the doubling budget.
struct QuadratureConvergenceError : Error { using Error::Error; };

// Nonpositive Jacobian in the fan decomposition (element too distorted).
struct FanDegeneracyError : Error { using Error::Error; };

// Numerically singular element mass matrix.
struct DegenerateElementError : Error { using Error::Error; };

// Zero-length (or numerically zero-length) edge.
struct DegenerateEdgeError : Error { using Error::Error; };

// Inconsistent problem description (missing beta, g supplied for Poisson, ...).
struct SpecError : Error { using Error::Error; };

// The iterative solver detected an indefinite direction.
struct NotSpdError : Error { using Error::Error; };

}  // namespace wg
