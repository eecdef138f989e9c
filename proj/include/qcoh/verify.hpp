#ifndef QCOH_VERIFY_HPP
#define QCOH_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace qcoh {

// Outcome of one verification suite: how many individual checks ran, the
// worst residual observed, and whether everything stayed under tolerance.
struct SuiteResult {
    std::string name;
    bool passed = false;
    int checks = 0;
    double worst_residual = 0.0;
};

struct VerifyReport {
    std::uint64_t seed = 0;
    bool all_passed = false;
    std::vector<SuiteResult> suites;
};

// Runs the oracle and property suites: metric axioms, local-unitary
// invariance, trade-off, Hamiltonian oracles, flow fixed points (with the
// reciprocal-q negative control), and chain-rule agreement. Deterministic
// for a fixed seed.
VerifyReport run_verification(std::uint64_t seed);

} // namespace qcoh

#endif
