#include "qcoh/spin_models.hpp"

#include <cmath>
#include <sstream>

#include "qcoh/errors.hpp"

namespace qcoh {

namespace {

void require_finite_nonneg(double x, const char* who) {
    if (!std::isfinite(x) || x < 0.0) {
        std::ostringstream os;
        os << who << ": coupling " << x << " must be finite and >= 0";
        throw InvalidParamError(os.str());
    }
}

ComplexMatrix pauli_x() {
    ComplexMatrix m(2);
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    return m;
}

ComplexMatrix pauli_y() {
    ComplexMatrix m(2);
    m(0, 1) = cplx{0.0, -1.0};
    m(1, 0) = cplx{0.0, 1.0};
    return m;
}

ComplexMatrix pauli_z() {
    // sz|0> = +|0>
    ComplexMatrix m(2);
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    return m;
}

// Operator acting with `op` on one site of an n-qubit register.
ComplexMatrix on_site(const ComplexMatrix& op, std::size_t site, std::size_t n_sites) {
    ComplexMatrix out = site == 0 ? op : ComplexMatrix::identity(2);
    for (std::size_t k = 1; k < n_sites; ++k)
        out = kron(out, k == site ? op : ComplexMatrix::identity(2));
    return out;
}

Coupling freeze(double x) {
    if (x > kFreezeHigh) return Coupling::frozen_infinite();
    if (x < kFreezeLow) return Coupling::frozen_zero();
    return Coupling::finite(x);
}

} // namespace

Coupling Coupling::finite(double value) {
    Coupling c;
    c.kind_ = Kind::finite;
    c.value_ = value;
    return c;
}

Coupling Coupling::frozen_zero() {
    Coupling c;
    c.kind_ = Kind::zero;
    return c;
}

Coupling Coupling::frozen_infinite() {
    Coupling c;
    c.kind_ = Kind::infinite;
    return c;
}

double Coupling::value() const {
    if (kind_ != Kind::finite)
        throw InvalidParamError("Coupling::value: coupling is frozen");
    return value_;
}

FlowStep itf_flow_step(double g) {
    require_finite_nonneg(g, "itf_flow_step");
    const double s = std::sqrt(g * g + 1.0) + g;
    return FlowStep{g * g, 2.0 * s / (1.0 + s * s)};
}

double itf_flow_derivative(double g) {
    require_finite_nonneg(g, "itf_flow_derivative");
    return 2.0 * g;
}

PureState itf_ground_state(double g) {
    require_finite_nonneg(g, "itf_ground_state");
    const double s = std::sqrt(g * g + 1.0) + g;
    const double norm = std::sqrt(s * s + 1.0);
    std::vector<cplx> amps(4);
    amps[0] = s / norm; // |00>
    amps[3] = 1.0 / norm; // |11>
    return PureState(std::move(amps), {2, 2});
}

PureState itf_ground_state(const Coupling& g) {
    if (g.is_frozen_infinite()) {
        std::vector<cplx> amps(4);
        amps[0] = 1.0; // |00>
        return PureState(std::move(amps), {2, 2});
    }
    if (g.is_frozen_zero()) return itf_ground_state(0.0); // Bell limit
    return itf_ground_state(g.value());
}

ComplexMatrix itf_block_hamiltonian(double exchange, double field) {
    require_finite_nonneg(field, "itf_block_hamiltonian");
    ComplexMatrix h = kron(pauli_x(), pauli_x());
    ComplexMatrix zfield = kron(pauli_z(), ComplexMatrix::identity(2));
    zfield *= cplx{field};
    h += zfield;
    h *= cplx{-exchange};
    return h;
}

double itf_ground_energy(double exchange, double field) {
    return -exchange * std::sqrt(1.0 + field * field);
}

FlowStep dm_flow_step(double d) {
    require_finite_nonneg(d, "dm_flow_step");
    const double q = std::sqrt(1.0 + 8.0 * d * d);
    const double next = 16.0 * d * d * d / ((1.0 + q) * (1.0 + q));
    const double ratio = (1.0 + q) / (2.0 * q);
    return FlowStep{next, ratio * ratio};
}

double dm_flow_derivative(double d) {
    require_finite_nonneg(d, "dm_flow_derivative");
    const double q = std::sqrt(1.0 + 8.0 * d * d);
    const double p = 1.0 + q;
    return 48.0 * d * d / (p * p) - 256.0 * std::pow(d, 4) / (q * p * p * p);
}

PureState dm_ground_state(double d, int which) {
    require_finite_nonneg(d, "dm_ground_state");
    if (d == 0.0)
        throw InvalidParamError(
            "dm_ground_state: D = 0 degenerates; use the frozen-zero coupling");
    if (which != 0 && which != 1)
        throw InvalidParamError("dm_ground_state: which must be 0 or 1");
    const double q = std::sqrt(1.0 + 8.0 * d * d);
    const double norm = std::sqrt(2.0 * q * (1.0 + q));
    std::vector<cplx> amps(8);
    // which = 0 lives on (|100>, |010>, |001>) = indices (4, 2, 1);
    // which = 1 on (|110>, |101>, |011>) = indices (6, 5, 3).
    const std::size_t up = which == 0 ? 4 : 6;
    const std::size_t mid = which == 0 ? 2 : 5;
    const std::size_t down = which == 0 ? 1 : 3;
    amps[up] = 2.0 * d / norm;
    amps[mid] = cplx{0.0, (1.0 + q) / norm};
    amps[down] = -2.0 * d / norm;
    return PureState(std::move(amps), {2, 2, 2});
}

PureState dm_ground_state(const Coupling& d, int which) {
    if (d.is_frozen_infinite()) {
        std::vector<cplx> amps(8);
        const std::size_t up = which == 0 ? 4 : 6;
        const std::size_t mid = which == 0 ? 2 : 5;
        const std::size_t down = which == 0 ? 1 : 3;
        amps[up] = 0.5;
        amps[mid] = cplx{0.0, 1.0 / std::sqrt(2.0)};
        amps[down] = -0.5;
        return PureState(std::move(amps), {2, 2, 2});
    }
    if (d.is_frozen_zero()) {
        std::vector<cplx> amps(8);
        amps[which == 0 ? 2 : 5] = cplx{0.0, 1.0}; // i|010> / i|101>
        return PureState(std::move(amps), {2, 2, 2});
    }
    return dm_ground_state(d.value(), which);
}

ComplexMatrix dm_block_hamiltonian(double exchange, double dm) {
    require_finite_nonneg(dm, "dm_block_hamiltonian");
    const ComplexMatrix sx = pauli_x(), sy = pauli_y(), sz = pauli_z();
    ComplexMatrix h = on_site(sz, 0, 3) * on_site(sz, 1, 3);
    h += on_site(sz, 1, 3) * on_site(sz, 2, 3);
    // DM bond orientation chosen so the closed-form ground states are exact
    // eigenvectors; the reversed orientation is related by the local unitary
    // sx (x) sx (x) sx and gives identical spectra and coherence.
    ComplexMatrix dterm = on_site(sy, 0, 3) * on_site(sx, 1, 3);
    dterm -= on_site(sx, 0, 3) * on_site(sy, 1, 3);
    dterm += on_site(sy, 1, 3) * on_site(sx, 2, 3);
    dterm -= on_site(sx, 1, 3) * on_site(sy, 2, 3);
    dterm *= cplx{dm};
    h += dterm;
    h *= cplx{exchange / 4.0};
    return h;
}

double dm_ground_energy(double exchange, double dm) {
    const double q = std::sqrt(1.0 + 8.0 * dm * dm);
    return -(exchange / 4.0) * (1.0 + q);
}

double FlowTrajectory::system_size(int n) const {
    return std::pow(static_cast<double>(block_size()), n + 1);
}

std::optional<std::size_t> FlowTrajectory::frozen_at() const {
    for (std::size_t k = 0; k < couplings.size(); ++k)
        if (couplings[k].is_frozen()) return k;
    return std::nullopt;
}

FlowStep flow_step(Model model, double x) {
    return model == Model::itf ? itf_flow_step(x) : dm_flow_step(x);
}

double flow_derivative(Model model, double x) {
    return model == Model::itf ? itf_flow_derivative(x) : dm_flow_derivative(x);
}

PureState block_ground_state(Model model, const Coupling& x, int which) {
    return model == Model::itf ? itf_ground_state(x) : dm_ground_state(x, which);
}

FlowTrajectory iterate_flow(Model model, double x0, int n_steps) {
    require_finite_nonneg(x0, "iterate_flow");
    if (n_steps < 0 || n_steps > 64)
        throw InvalidParamError("iterate_flow: n_steps must be in [0, 64]");

    FlowTrajectory traj;
    traj.model = model;
    traj.couplings.reserve(n_steps + 1);
    traj.strengths.reserve(n_steps + 1);
    traj.couplings.push_back(freeze(x0));
    traj.strengths.push_back(1.0);
    for (int k = 0; k < n_steps; ++k) {
        const Coupling& prev = traj.couplings.back();
        if (prev.is_frozen()) {
            traj.couplings.push_back(prev);
            traj.strengths.push_back(traj.strengths.back());
            continue;
        }
        const FlowStep step = flow_step(model, prev.value());
        traj.couplings.push_back(freeze(step.next));
        traj.strengths.push_back(traj.strengths.back() * step.strength_ratio);
    }
    return traj;
}

double find_fixed_point(Model model, double lo, double hi) {
    if (!(lo < hi)) throw InvalidParamError("find_fixed_point: need lo < hi");
    auto f = [model](double x) { return flow_step(model, x).next - x; };
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo < 0.0) == (fhi < 0.0)) {
        std::ostringstream os;
        os << "find_fixed_point: no sign change on [" << lo << ", " << hi << "]";
        throw NoSignChangeError(os.str());
    }
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = f(mid);
        if (fmid == 0.0) return mid;
        if ((fmid < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace qcoh
