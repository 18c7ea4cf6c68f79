#pragma once

#include <stdexcept>
#include <string>

namespace meshgrad {

// Mesh construction and query failures.
struct InvalidGrading : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NoCellsSelected : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SingularJacobian : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Finite element space / assembly failures.
struct UnsupportedElement : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct GramIsIdentity : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct RieszSolveFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Iterative linear algebra failures.
struct DimensionMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct MaxIterExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct EigFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Optimisation failures.
struct ZeroDirection : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvalidThreshold : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// PDE-constrained solve failures.
struct StateSolveFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct AdjointSolveFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace meshgrad
