#ifndef QCOH_STATES_HPP
#define QCOH_STATES_HPP

#include <cstddef>
#include <vector>

#include "qcoh/complex_matrix.hpp"

namespace qcoh {

// Validation tolerances for state invariants.
inline constexpr double kStateHermitianTol = 1e-12;
inline constexpr double kStateTraceTol = 1e-10;
inline constexpr double kStatePsdTol = 1e-10; // eigenvalues >= -kStatePsdTol
inline constexpr double kStateNormTol = 1e-12;

// Decode a flat basis index into per-subsystem digits (site 0 = most
// significant, matching left-to-right ket labels: |100> on three qubits
// is index 4) and back.
std::vector<std::size_t> basis_digits(std::size_t index, const std::vector<std::size_t>& dims);
std::size_t basis_index(const std::vector<std::size_t>& digits, const std::vector<std::size_t>& dims);

// Normalized complex amplitude vector over a labeled register of
// subsystem dimensions. Throws InvalidStateError unless the norm is 1
// within kStateNormTol and the register matches the vector length.
class PureState {
public:
    PureState(std::vector<cplx> amplitudes, std::vector<std::size_t> sites);

    const std::vector<cplx>& amplitudes() const { return amps_; }
    const std::vector<std::size_t>& sites() const { return sites_; }
    std::size_t dim() const { return amps_.size(); }

private:
    std::vector<cplx> amps_;
    std::vector<std::size_t> sites_;
};

// Hermitian, unit-trace, positive-semidefinite matrix over a labeled
// register. All invariants are checked at construction (PSD via the
// eigensolver), so downstream code can assume validity.
class DensityMatrix {
public:
    DensityMatrix(ComplexMatrix matrix, std::vector<std::size_t> sites);

    static DensityMatrix maximally_mixed(std::vector<std::size_t> sites);

    const ComplexMatrix& matrix() const { return m_; }
    const std::vector<std::size_t>& sites() const { return sites_; }
    std::size_t dim() const { return m_.dim(); }

private:
    ComplexMatrix m_;
    std::vector<std::size_t> sites_;
};

// |psi><psi| as a DensityMatrix on the same register.
DensityMatrix projector(const PureState& psi);

PureState tensor_product(const PureState& a, const PureState& b);
DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);

// Reduced state on the kept subsystems, in their original register order.
// Throws BadSubsystemError on empty, duplicate, or out-of-range indices.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::size_t>& keep);

// S(rho) = -sum lambda_i log2 lambda_i, in bits. Eigenvalues in
// [-kStatePsdTol, 0) are clamped to 0 (and in (1, 1+kStatePsdTol] to 1);
// anything more negative throws InvalidStateError. The ComplexMatrix
// overload serves callers holding raw Hermitian unit-trace mixtures.
double von_neumann_entropy(const ComplexMatrix& rho_like);
double von_neumann_entropy(const DensityMatrix& rho);

} // namespace qcoh

#endif
