#include "qcoh/random_states.hpp"

#include <cmath>
#include <numeric>

#include "qcoh/hermitian_eig.hpp"

namespace qcoh {

namespace {

// V diag(f) V^dag for a diagonal given as complex values.
ComplexMatrix assemble(const ComplexMatrix& v, const std::vector<cplx>& diag) {
    const std::size_t n = v.dim();
    ComplexMatrix out(n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            cplx sum = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                sum += v(r, k) * diag[k] * std::conj(v(c, k));
            out(r, c) = sum;
        }
    return out;
}

} // namespace

double StateSampler::uniform() {
    return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
}

double StateSampler::uniform_symmetric() { return 2.0 * uniform() - 1.0; }

ComplexMatrix StateSampler::random_hermitian(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t r = 0; r < dim; ++r) {
        m(r, r) = uniform_symmetric();
        for (std::size_t c = r + 1; c < dim; ++c) {
            const cplx v{uniform_symmetric(), uniform_symmetric()};
            m(r, c) = v;
            m(c, r) = std::conj(v);
        }
    }
    return m;
}

ComplexMatrix StateSampler::random_unitary(std::size_t dim) {
    const Spectrum spec = hermitian_eig(random_hermitian(dim));
    std::vector<cplx> phases(dim);
    for (std::size_t k = 0; k < dim; ++k)
        phases[k] = std::exp(cplx{0.0, spec.eigenvalues[k]});
    return assemble(spec.eigenvectors, phases);
}

ComplexMatrix StateSampler::random_local_unitary(const std::vector<std::size_t>& sites) {
    ComplexMatrix u = random_unitary(sites.at(0));
    for (std::size_t k = 1; k < sites.size(); ++k) u = kron(u, random_unitary(sites[k]));
    return u;
}

DensityMatrix StateSampler::random_density(std::vector<std::size_t> sites) {
    const std::size_t d = std::accumulate(sites.begin(), sites.end(), std::size_t{1},
                                          std::multiplies<>());
    const Spectrum spec = hermitian_eig(random_hermitian(d));
    std::vector<double> w(d);
    double total = 0.0;
    for (double& x : w) {
        x = uniform() + 1e-12; // keep strictly positive before normalizing
        total += x;
    }
    std::vector<cplx> diag(d);
    for (std::size_t k = 0; k < d; ++k) diag[k] = w[k] / total;
    return DensityMatrix(assemble(spec.eigenvectors, diag), std::move(sites));
}

PureState StateSampler::random_pure(std::vector<std::size_t> sites) {
    const std::size_t d = std::accumulate(sites.begin(), sites.end(), std::size_t{1},
                                          std::multiplies<>());
    std::vector<cplx> amps(d);
    double norm2 = 0.0;
    for (cplx& a : amps) {
        a = cplx{uniform_symmetric(), uniform_symmetric()};
        norm2 += std::norm(a);
    }
    const double norm = std::sqrt(norm2);
    for (cplx& a : amps) a /= norm;
    return PureState(std::move(amps), std::move(sites));
}

} // namespace qcoh
