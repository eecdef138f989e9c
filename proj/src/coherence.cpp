#include "qcoh/coherence.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qcoh/errors.hpp"

namespace qcoh {

namespace {

// Clamp tiny negative rounding to zero; larger negatives are bugs.
double clamp_radicand(double value, const char* who) {
    if (value >= 0.0) return value;
    if (value >= -kRadicandTol) return 0.0;
    std::ostringstream os;
    os << who << ": radicand " << value << " below -" << kRadicandTol;
    throw InvalidStateError(os.str());
}

ComplexMatrix halfway(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix mix = a;
    mix += b;
    mix *= cplx{0.5};
    return mix;
}

double qjsd_raw(const ComplexMatrix& a, const ComplexMatrix& b) {
    const double s_mix = von_neumann_entropy(halfway(a, b));
    const double s_a = von_neumann_entropy(a);
    const double s_b = von_neumann_entropy(b);
    return clamp_radicand(s_mix - 0.5 * (s_a + s_b), "qjsd");
}

void check_partition(const std::vector<std::size_t>& dims,
                     const std::vector<std::vector<std::size_t>>& partition) {
    if (partition.empty()) throw BadPartitionError("cut_coherence: empty partition");
    std::vector<bool> seen(dims.size(), false);
    for (const auto& group : partition) {
        if (group.empty()) throw BadPartitionError("cut_coherence: empty group");
        for (std::size_t site : group) {
            if (site >= dims.size()) {
                std::ostringstream os;
                os << "cut_coherence: site " << site << " out of range";
                throw BadPartitionError(os.str());
            }
            if (seen[site]) {
                std::ostringstream os;
                os << "cut_coherence: site " << site << " listed twice";
                throw BadPartitionError(os.str());
            }
            seen[site] = true;
        }
    }
    for (std::size_t k = 0; k < dims.size(); ++k)
        if (!seen[k]) {
            std::ostringstream os;
            os << "cut_coherence: site " << k << " not covered by the partition";
            throw BadPartitionError(os.str());
        }
}

// Tensor product of the group-reduced states, assembled directly in the
// original register ordering, so non-contiguous groups work too.
DensityMatrix group_product(const DensityMatrix& rho,
                            const std::vector<std::vector<std::size_t>>& partition) {
    const std::vector<std::size_t>& dims = rho.sites();
    check_partition(dims, partition);

    std::vector<std::vector<std::size_t>> groups; // each sorted ascending
    std::vector<DensityMatrix> parts;
    groups.reserve(partition.size());
    parts.reserve(partition.size());
    for (const auto& g : partition) {
        std::vector<std::size_t> sorted = g;
        std::sort(sorted.begin(), sorted.end());
        parts.push_back(partial_trace(rho, sorted)); // kept in register order
        groups.push_back(std::move(sorted));
    }

    const std::size_t d = rho.dim();
    ComplexMatrix out(d);
    std::vector<std::size_t> sub_r, sub_c;
    for (std::size_t r = 0; r < d; ++r) {
        const auto rd = basis_digits(r, dims);
        for (std::size_t c = 0; c < d; ++c) {
            const auto cd = basis_digits(c, dims);
            cplx v = 1.0;
            for (std::size_t gi = 0; gi < groups.size() && v != cplx{}; ++gi) {
                const auto& sites = groups[gi];
                const auto& part_dims = parts[gi].sites();
                sub_r.clear();
                sub_c.clear();
                for (std::size_t site : sites) {
                    sub_r.push_back(rd[site]);
                    sub_c.push_back(cd[site]);
                }
                v *= parts[gi].matrix()(basis_index(sub_r, part_dims),
                                        basis_index(sub_c, part_dims));
            }
            out(r, c) = v;
        }
    }
    return DensityMatrix(std::move(out), dims);
}

std::vector<std::vector<std::size_t>> singletons(std::size_t n_sites) {
    std::vector<std::vector<std::size_t>> partition(n_sites);
    for (std::size_t k = 0; k < n_sites; ++k) partition[k] = {k};
    return partition;
}

} // namespace

double qjsd(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim()) {
        std::ostringstream os;
        os << "qjsd: dimension mismatch " << rho.dim() << " vs " << sigma.dim();
        throw DimensionMismatchError(os.str());
    }
    return qjsd_raw(rho.matrix(), sigma.matrix());
}

double coherence_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
    return std::sqrt(qjsd(rho, sigma));
}

DensityMatrix product_of_marginals(const DensityMatrix& rho) {
    if (rho.sites().size() < 2)
        throw InvalidParamError("product_of_marginals: needs a multi-site register");
    return group_product(rho, singletons(rho.sites().size()));
}

double total_coherence(const DensityMatrix& rho) {
    return coherence_distance(rho, DensityMatrix::maximally_mixed(rho.sites()));
}

double local_coherence(const DensityMatrix& rho) {
    return coherence_distance(product_of_marginals(rho),
                              DensityMatrix::maximally_mixed(rho.sites()));
}

double collective_coherence(const DensityMatrix& rho) {
    return coherence_distance(rho, product_of_marginals(rho));
}

CoherenceTriple coherence_triple(const DensityMatrix& rho) {
    // Shared-entropy evaluation: five eigensolves instead of nine.
    const DensityMatrix pi = product_of_marginals(rho);
    const std::size_t d = rho.dim();
    const double log2d = std::log2(static_cast<double>(d));
    ComplexMatrix eye = ComplexMatrix::identity(d);
    eye *= cplx{1.0 / static_cast<double>(d)};

    const double s_rho = von_neumann_entropy(rho.matrix());
    const double s_pi = von_neumann_entropy(pi.matrix());
    const double s_rho_eye = von_neumann_entropy(halfway(rho.matrix(), eye));
    const double s_pi_eye = von_neumann_entropy(halfway(pi.matrix(), eye));
    const double s_rho_pi = von_neumann_entropy(halfway(rho.matrix(), pi.matrix()));

    CoherenceTriple t;
    t.total = std::sqrt(clamp_radicand(s_rho_eye - 0.5 * (s_rho + log2d), "total_coherence"));
    t.local = std::sqrt(clamp_radicand(s_pi_eye - 0.5 * (s_pi + log2d), "local_coherence"));
    t.collective =
        std::sqrt(clamp_radicand(s_rho_pi - 0.5 * (s_rho + s_pi), "collective_coherence"));

    if (t.total > t.local + t.collective + kTradeoffTol) {
        std::ostringstream os;
        os << "coherence_triple: trade-off violated, total " << t.total << " > local "
           << t.local << " + collective " << t.collective;
        throw TradeoffViolationError(os.str());
    }
    return t;
}

double cut_coherence(const DensityMatrix& rho,
                     const std::vector<std::vector<std::size_t>>& partition) {
    return std::sqrt(
        clamp_radicand(qjsd_raw(rho.matrix(), group_product(rho, partition).matrix()),
                       "cut_coherence"));
}

MonogamyReport monogamy(const DensityMatrix& rho) {
    const std::size_t n = rho.sites().size();
    if (n < 3) throw InvalidParamError("monogamy: needs at least 3 sites");

    MonogamyReport report;
    double pair_sum = 0.0;
    for (std::size_t site = 1; site < n; ++site) {
        const DensityMatrix pair = partial_trace(rho, {0, site});
        const double value = cut_coherence(pair, {{0}, {1}});
        report.pairwise["1:" + std::to_string(site + 1)] = value;
        pair_sum += value;
    }
    std::vector<std::size_t> rest(n - 1);
    for (std::size_t k = 1; k < n; ++k) rest[k - 1] = k;
    report.headcut = cut_coherence(rho, {{0}, rest});
    report.m = pair_sum - report.headcut;
    return report;
}

TripartiteBound tripartite_bound_check(const DensityMatrix& rho) {
    if (rho.sites().size() != 3)
        throw InvalidParamError("tripartite_bound_check: needs exactly 3 sites");

    TripartiteBound b;
    b.lhs = total_coherence(rho);
    b.rhs = 0.0;
    for (std::size_t site = 0; site < 3; ++site)
        b.rhs += total_coherence(partial_trace(rho, {site}));
    b.rhs += cut_coherence(partial_trace(rho, {1, 2}), {{0}, {1}});
    b.rhs += cut_coherence(rho, {{0}, {1, 2}});
    b.holds = b.lhs <= b.rhs + kTradeoffTol;
    return b;
}

} // namespace qcoh
