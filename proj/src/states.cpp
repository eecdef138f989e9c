#include "qcoh/states.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qcoh/errors.hpp"
#include "qcoh/hermitian_eig.hpp"

namespace qcoh {

namespace {

std::size_t product(const std::vector<std::size_t>& dims) {
    return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

void check_register(const std::vector<std::size_t>& sites, std::size_t dim, const char* who) {
    if (sites.empty())
        throw InvalidStateError(std::string(who) + ": empty register");
    for (std::size_t d : sites)
        if (d < 1) throw InvalidStateError(std::string(who) + ": zero-dimensional subsystem");
    if (product(sites) != dim) {
        std::ostringstream os;
        os << who << ": register product " << product(sites) << " != dimension " << dim;
        throw InvalidStateError(os.str());
    }
}

} // namespace

std::vector<std::size_t> basis_digits(std::size_t index, const std::vector<std::size_t>& dims) {
    std::vector<std::size_t> digits(dims.size());
    for (std::size_t k = dims.size(); k-- > 0;) {
        digits[k] = index % dims[k];
        index /= dims[k];
    }
    return digits;
}

std::size_t basis_index(const std::vector<std::size_t>& digits, const std::vector<std::size_t>& dims) {
    std::size_t index = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) index = index * dims[k] + digits[k];
    return index;
}

PureState::PureState(std::vector<cplx> amplitudes, std::vector<std::size_t> sites)
    : amps_(std::move(amplitudes)), sites_(std::move(sites)) {
    check_register(sites_, amps_.size(), "PureState");
    double norm2 = 0.0;
    for (const cplx& a : amps_) norm2 += std::norm(a);
    const double norm = std::sqrt(norm2);
    if (std::abs(norm - 1.0) > kStateNormTol) {
        std::ostringstream os;
        os << "PureState: norm " << norm << " is not 1 within " << kStateNormTol;
        throw InvalidStateError(os.str());
    }
}

DensityMatrix::DensityMatrix(ComplexMatrix matrix, std::vector<std::size_t> sites)
    : m_(std::move(matrix)), sites_(std::move(sites)) {
    check_register(sites_, m_.dim(), "DensityMatrix");
    const double defect = m_.hermiticity_defect();
    if (defect > kStateHermitianTol) {
        std::ostringstream os;
        os << "DensityMatrix: hermiticity defect " << defect;
        throw InvalidStateError(os.str());
    }
    const cplx tr = m_.trace();
    if (std::abs(tr - cplx{1.0}) > kStateTraceTol) {
        std::ostringstream os;
        os << "DensityMatrix: trace " << tr.real() << " is not 1";
        throw InvalidStateError(os.str());
    }
    const Spectrum spec = hermitian_eig(m_);
    const double lowest = spec.eigenvalues.back();
    if (lowest < -kStatePsdTol) {
        std::ostringstream os;
        os << "DensityMatrix: eigenvalue " << lowest << " below -" << kStatePsdTol;
        throw InvalidStateError(os.str());
    }
}

DensityMatrix DensityMatrix::maximally_mixed(std::vector<std::size_t> sites) {
    const std::size_t d = product(sites);
    ComplexMatrix m = ComplexMatrix::identity(d);
    m *= cplx{1.0 / static_cast<double>(d)};
    return DensityMatrix(std::move(m), std::move(sites));
}

DensityMatrix projector(const PureState& psi) {
    const std::size_t d = psi.dim();
    ComplexMatrix m(d);
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c)
            m(r, c) = psi.amplitudes()[r] * std::conj(psi.amplitudes()[c]);
    return DensityMatrix(std::move(m), psi.sites());
}

PureState tensor_product(const PureState& a, const PureState& b) {
    std::vector<cplx> amps(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < b.dim(); ++j)
            amps[i * b.dim() + j] = a.amplitudes()[i] * b.amplitudes()[j];
    std::vector<std::size_t> sites = a.sites();
    sites.insert(sites.end(), b.sites().begin(), b.sites().end());
    return PureState(std::move(amps), std::move(sites));
}

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
    std::vector<std::size_t> sites = a.sites();
    sites.insert(sites.end(), b.sites().begin(), b.sites().end());
    return DensityMatrix(kron(a.matrix(), b.matrix()), std::move(sites));
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::size_t>& keep) {
    const std::vector<std::size_t>& dims = rho.sites();
    if (keep.empty()) throw BadSubsystemError("partial_trace: empty keep list");
    std::vector<bool> kept(dims.size(), false);
    for (std::size_t k : keep) {
        if (k >= dims.size()) {
            std::ostringstream os;
            os << "partial_trace: subsystem " << k << " out of range (register size "
               << dims.size() << ")";
            throw BadSubsystemError(os.str());
        }
        if (kept[k]) throw BadSubsystemError("partial_trace: duplicate subsystem index");
        kept[k] = true;
    }

    // Kept subsystems in original register order, independent of the order
    // the caller listed them in.
    std::vector<std::size_t> keep_sorted, keep_dims, trace_idx, trace_dims;
    for (std::size_t k = 0; k < dims.size(); ++k) {
        if (kept[k]) {
            keep_sorted.push_back(k);
            keep_dims.push_back(dims[k]);
        } else {
            trace_idx.push_back(k);
            trace_dims.push_back(dims[k]);
        }
    }
    const std::size_t dk = product(keep_dims);
    const std::size_t dt = trace_dims.empty() ? 1 : product(trace_dims);

    ComplexMatrix out(dk);
    std::vector<std::size_t> full_r(dims.size()), full_c(dims.size());
    for (std::size_t rk = 0; rk < dk; ++rk) {
        const auto rkd = basis_digits(rk, keep_dims);
        for (std::size_t ck = 0; ck < dk; ++ck) {
            const auto ckd = basis_digits(ck, keep_dims);
            cplx sum = 0.0;
            for (std::size_t t = 0; t < dt; ++t) {
                const auto td = trace_dims.empty() ? std::vector<std::size_t>{}
                                                   : basis_digits(t, trace_dims);
                for (std::size_t k = 0; k < keep_sorted.size(); ++k) {
                    full_r[keep_sorted[k]] = rkd[k];
                    full_c[keep_sorted[k]] = ckd[k];
                }
                for (std::size_t k = 0; k < trace_idx.size(); ++k) {
                    full_r[trace_idx[k]] = td[k];
                    full_c[trace_idx[k]] = td[k];
                }
                sum += rho.matrix()(basis_index(full_r, dims), basis_index(full_c, dims));
            }
            out(rk, ck) = sum;
        }
    }
    return DensityMatrix(std::move(out), std::move(keep_dims));
}

double von_neumann_entropy(const ComplexMatrix& rho_like) {
    const Spectrum spec = hermitian_eig(rho_like);
    double s = 0.0;
    for (double lam : spec.eigenvalues) {
        if (lam < -kStatePsdTol) {
            std::ostringstream os;
            os << "von_neumann_entropy: eigenvalue " << lam << " below -" << kStatePsdTol;
            throw InvalidStateError(os.str());
        }
        const double p = std::min(1.0, std::max(0.0, lam));
        if (p > 0.0) s -= p * std::log2(p);
    }
    return s;
}

double von_neumann_entropy(const DensityMatrix& rho) {
    return von_neumann_entropy(rho.matrix());
}

} // namespace qcoh
