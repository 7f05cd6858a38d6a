#pragma once

#include <vector>

#include "metricgraph/matrix.hpp"

namespace metricgraph {

struct EighResult {
    std::vector<double> eigenvalues;  // descending
    SquareMatrix eigenvectors;        // orthonormal columns, column i pairs with eigenvalues[i]
};

/// Symmetric eigendecomposition by cyclic Jacobi rotations.
///
/// Guarantees ||m - V diag(lambda) V^T||_F <= residual_tol * ||m||_F on
/// success. Eigenvalues are sorted descending; each eigenvector has its first
/// nonzero component made non-negative so results are deterministic.
/// Throws ValidationError when m is not symmetric within 1e-9 and
/// ConvergenceError (carrying the achieved residual) when max_sweeps is
/// exhausted.
EighResult symmetric_eigh(const SquareMatrix& m, int max_sweeps = 100,
                          double residual_tol = 1e-10);

}  // namespace metricgraph
