#ifndef QCOH_SPIN_MODELS_HPP
#define QCOH_SPIN_MODELS_HPP

#include <optional>
#include <vector>

#include "qcoh/complex_matrix.hpp"
#include "qcoh/states.hpp"

namespace qcoh {

enum class Model { itf, dm };

// Iterated couplings diverge doubly-exponentially; past these thresholds a
// coupling is replaced by a freeze flag and downstream consumers use the
// exact limit state instead.
inline constexpr double kFreezeHigh = 1e8;
inline constexpr double kFreezeLow = 1e-8;

// A flow coupling: either a finite value or one of the two freeze flags.
class Coupling {
public:
    static Coupling finite(double value);
    static Coupling frozen_zero();
    static Coupling frozen_infinite();

    bool is_finite() const { return kind_ == Kind::finite; }
    bool is_frozen_zero() const { return kind_ == Kind::zero; }
    bool is_frozen_infinite() const { return kind_ == Kind::infinite; }
    bool is_frozen() const { return kind_ != Kind::finite; }
    double value() const; // throws InvalidParamError on a frozen coupling

private:
    enum class Kind { finite, zero, infinite };
    Kind kind_ = Kind::finite;
    double value_ = 0.0;
};

// One renormalization step: the next coupling and the factor J'/J by which
// the overall energy scale shrinks.
struct FlowStep {
    double next = 0.0;
    double strength_ratio = 0.0;
};

// --- transverse-field Ising chain (two-site blocks) ---

// g' = g^2, J' = J * 2s/(1+s^2) with s = sqrt(g^2+1) + g.
FlowStep itf_flow_step(double g);
// d(g')/dg = 2g, the chain-rule factor along the flow.
double itf_flow_derivative(double g);
// alpha|00> + beta|11>, alpha = s/sqrt(s^2+1), beta = 1/sqrt(s^2+1).
PureState itf_ground_state(double g);
PureState itf_ground_state(const Coupling& g);
// Verification oracle: H = -J(sx sx + g sz_1) on one block; the closed-form
// states above are its exact degenerate ground pair with energy
// -J sqrt(1+g^2).
ComplexMatrix itf_block_hamiltonian(double exchange, double field);
double itf_ground_energy(double exchange, double field);

// --- Ising chain with DM interaction (three-site blocks) ---

// q = sqrt(1+8D^2); D' = 16D^3/(1+q)^2, J' = J ((1+q)/(2q))^2.
FlowStep dm_flow_step(double d);
// dD'/dD = 48D^2/(1+q)^2 - 256D^4/(q(1+q)^3).
double dm_flow_derivative(double d);
// which = 0: (1/sqrt(2q(1+q))) [2D|100> + i(1+q)|010> - 2D|001>];
// which = 1: the same amplitudes on (|110>, |101>, |011>).
// Throws InvalidParamError at D = 0 (use the frozen-zero coupling for the
// i|010> limit state).
PureState dm_ground_state(double d, int which = 0);
PureState dm_ground_state(const Coupling& d, int which = 0);
// Verification oracle: H = (J/4)[sz1 sz2 + sz2 sz3 + D(sy1 sx2 - sx1 sy2 +
// sy2 sx3 - sx2 sy3)], ground energy -(J/4)(1+q), doubly degenerate.
ComplexMatrix dm_block_hamiltonian(double exchange, double dm);
double dm_ground_energy(double exchange, double dm);

// --- flow iteration ---

// Couplings x_0..x_n and cumulative strengths J_0=1..J_n under the model's
// flow map. Once a coupling crosses a freeze threshold every later entry
// carries the same flag and the strength stops updating.
struct FlowTrajectory {
    Model model = Model::itf;
    std::vector<Coupling> couplings;
    std::vector<double> strengths;

    int block_size() const { return model == Model::itf ? 2 : 3; }
    // Sites represented after n renormalizations: b^(n+1).
    double system_size(int n) const;
    // Index of the first frozen coupling, if any.
    std::optional<std::size_t> frozen_at() const;
};

FlowTrajectory iterate_flow(Model model, double x0, int n_steps);

// Root of flow_step(x) - x on [lo, hi] by bisection to width 1e-12.
// Throws NoSignChangeError if the bracket does not straddle a root.
double find_fixed_point(Model model, double lo, double hi);

// Dispatch helper: the block ground state of either model at a possibly
// frozen coupling.
PureState block_ground_state(Model model, const Coupling& x, int which = 0);
FlowStep flow_step(Model model, double x);
double flow_derivative(Model model, double x);

} // namespace qcoh

#endif
