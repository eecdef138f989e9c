#include "qcoh/hermitian_eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qcoh/errors.hpp"

namespace qcoh {

namespace {

// One Jacobi rotation zeroing a(p,q). The 2x2 unitary is
//   [ c       sigma ]      sigma = s * e^{i phi},  e^{i phi} = a_pq / |a_pq|,
//   [ -conj(sigma) c ]     tan(theta) = t from t^2 + 2 tau t - 1 = 0,
// with tau = (a_qq - a_pp) / (2 |a_pq|); the smaller-magnitude root keeps the
// rotation angle below 45 degrees, the numerically stable classic choice.
void rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
    const cplx apq = a(p, q);
    const double r = std::abs(apq);
    if (r == 0.0) return;

    const cplx phase = apq / r;
    const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * r);
    double t;
    if (tau >= 0.0)
        t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
    else
        t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const cplx sigma = t * c * phase;

    const std::size_t n = a.dim();
    for (std::size_t i = 0; i < n; ++i) { // right-multiply columns p,q
        const cplx aip = a(i, p), aiq = a(i, q);
        a(i, p) = c * aip - std::conj(sigma) * aiq;
        a(i, q) = sigma * aip + c * aiq;
    }
    for (std::size_t j = 0; j < n; ++j) { // left-multiply rows p,q
        const cplx apj = a(p, j), aqj = a(q, j);
        a(p, j) = c * apj - sigma * aqj;
        a(q, j) = std::conj(sigma) * apj + c * aqj;
    }
    for (std::size_t i = 0; i < n; ++i) { // accumulate eigenvectors
        const cplx vip = v(i, p), viq = v(i, q);
        v(i, p) = c * vip - std::conj(sigma) * viq;
        v(i, q) = sigma * vip + c * viq;
    }
}

} // namespace

Spectrum hermitian_eig(const ComplexMatrix& m) {
    const std::size_t n = m.dim();
    const double defect = m.hermiticity_defect();
    if (defect > kHermitianTol) {
        std::ostringstream os;
        os << "hermitian_eig: matrix is not Hermitian (defect " << defect << ")";
        throw NonHermitianError(os.str());
    }

    // Work on the exactly Hermitian part; removes rounding-level asymmetry.
    ComplexMatrix a(n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            a(r, c) = 0.5 * (m(r, c) + std::conj(m(c, r)));

    ComplexMatrix v = ComplexMatrix::identity(n);
    bool converged = a.offdiag_norm() <= kJacobiOffdiagTol;
    for (int sweep = 0; sweep < kJacobiMaxSweeps && !converged; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q)
                rotate(a, v, p, q);
        converged = a.offdiag_norm() <= kJacobiOffdiagTol;
    }
    if (!converged)
        throw NoConvergenceError("hermitian_eig: Jacobi sweeps exhausted");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&a](std::size_t i, std::size_t j) {
        return a(i, i).real() > a(j, j).real();
    });

    Spectrum spec;
    spec.eigenvalues.resize(n);
    spec.eigenvectors = ComplexMatrix(n);
    for (std::size_t k = 0; k < n; ++k) {
        spec.eigenvalues[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i)
            spec.eigenvectors(i, k) = v(i, order[k]);
    }
    return spec;
}

} // namespace qcoh
