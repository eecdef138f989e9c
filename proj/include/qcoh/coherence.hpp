#ifndef QCOH_COHERENCE_HPP
#define QCOH_COHERENCE_HPP

#include <map>
#include <string>
#include <vector>

#include "qcoh/states.hpp"

namespace qcoh {

// Rounding slack: QJSD radicands in [-kRadicandTol, 0) clamp to zero,
// anything more negative is an implementation bug and throws.
inline constexpr double kRadicandTol = 1e-10;
// Numerical slack on the trade-off bound total <= local + collective.
inline constexpr double kTradeoffTol = 1e-9;

// Total, local, and collective coherence of one state (all in sqrt-bits).
struct CoherenceTriple {
    double total = 0.0;
    double local = 0.0;
    double collective = 0.0;
};

// Pairwise-cut coherences of site 1 with each partner, the head cut
// 1 : rest, and the monogamy score m = sum(pairwise) - headcut.
// m > 0 means the sharing is polygamous, m <= 0 monogamous.
struct MonogamyReport {
    std::map<std::string, double> pairwise; // keys "1:2", "1:3", ...
    double headcut = 0.0;
    double m = 0.0;
};

struct TripartiteBound {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
};

// Quantum Jensen-Shannon divergence T(rho, sigma) =
// S((rho+sigma)/2) - (S(rho)+S(sigma))/2, in bits; in [0, 1] for base-2
// entropies. Throws DimensionMismatchError on unequal dimensions.
double qjsd(const DensityMatrix& rho, const DensityMatrix& sigma);

// sqrt(qjsd): a metric on density matrices.
double coherence_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

// Tensor product of all single-site reduced states, in register order.
DensityMatrix product_of_marginals(const DensityMatrix& rho);

// Distance from rho to the maximally mixed state I/d.
double total_coherence(const DensityMatrix& rho);
// Distance from the product of marginals to I/d: coherence localized
// inside individual subsystems.
double local_coherence(const DensityMatrix& rho);
// Distance from rho to its product of marginals: coherence from joint
// participation of subsystems.
double collective_coherence(const DensityMatrix& rho);

// All three measures of one state; enforces the trade-off bound
// total <= local + collective (+ slack) and throws TradeoffViolationError
// if it fails, which would indicate a bug rather than a physical state.
CoherenceTriple coherence_triple(const DensityMatrix& rho);

// Distance from rho to the tensor product of its reduced states over the
// given partition (disjoint site groups covering the register). The
// all-singletons partition reproduces collective_coherence exactly: it is
// the same code path.
double cut_coherence(const DensityMatrix& rho,
                     const std::vector<std::vector<std::size_t>>& partition);

// Pairwise cuts 1:n on the reduced two-site states plus the head cut of
// the full state; needs at least 3 sites.
MonogamyReport monogamy(const DensityMatrix& rho);

// Checks C_123 <= C_1 + C_2 + C_3 + C_{2:3} + C_{1:23} on a 3-site state.
TripartiteBound tripartite_bound_check(const DensityMatrix& rho);

} // namespace qcoh

#endif
