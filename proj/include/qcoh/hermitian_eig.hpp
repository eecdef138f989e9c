#ifndef QCOH_HERMITIAN_EIG_HPP
#define QCOH_HERMITIAN_EIG_HPP

#include <vector>

#include "qcoh/complex_matrix.hpp"

namespace qcoh {

// Full eigendecomposition of a Hermitian matrix: m = V diag(lambda) V^dag.
struct Spectrum {
    std::vector<double> eigenvalues; // sorted descending
    ComplexMatrix eigenvectors;      // columns, orthonormal, matching order
};

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kJacobiOffdiagTol = 1e-13;
inline constexpr int kJacobiMaxSweeps = 500;

// Cyclic complex Jacobi. Intended for the small dense matrices this library
// works with (dim <= 64). Throws NonHermitianError if the input fails the
// symmetry check, NoConvergenceError if the off-diagonal Frobenius norm is
// still above threshold after the sweep budget.
Spectrum hermitian_eig(const ComplexMatrix& m);

} // namespace qcoh

#endif
