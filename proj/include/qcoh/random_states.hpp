#ifndef QCOH_RANDOM_STATES_HPP
#define QCOH_RANDOM_STATES_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "qcoh/states.hpp"

namespace qcoh {

// Seeded generator of random matrices and states for property tests.
// mt19937_64 with explicit bit-to-double conversion, so a fixed seed gives
// the same stream on every platform.
class StateSampler {
public:
    explicit StateSampler(std::uint64_t seed) : rng_(seed) {}

    double uniform();           // [0, 1)
    double uniform_symmetric(); // [-1, 1)

    // Hermitian matrix with off-diagonal entries uniform in [-1,1] both in
    // the real and imaginary part, real uniform diagonal.
    ComplexMatrix random_hermitian(std::size_t dim);
    // exp(iH) for a random Hermitian H, built through the eigensolver.
    ComplexMatrix random_unitary(std::size_t dim);
    // Tensor product of independent single-site unitaries.
    ComplexMatrix random_local_unitary(const std::vector<std::size_t>& sites);
    // V diag(w) V^dag: eigenvectors of a random Hermitian matrix with
    // normalized uniform weights.
    DensityMatrix random_density(std::vector<std::size_t> sites);
    PureState random_pure(std::vector<std::size_t> sites);

private:
    std::mt19937_64 rng_;
};

} // namespace qcoh

#endif
