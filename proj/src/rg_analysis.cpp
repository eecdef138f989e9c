#include "qcoh/rg_analysis.hpp"

#include <cmath>
#include <optional>
#include <sstream>

#include "qcoh/errors.hpp"

namespace qcoh {

namespace {

CoherenceTriple triple_at(Model model, const Coupling& x) {
    return coherence_triple(projector(block_ground_state(model, x)));
}

void check_window(const Window& w, const char* who) {
    if (!(w.lo < w.hi)) {
        std::ostringstream os;
        os << who << ": window [" << w.lo << ", " << w.hi << "] is empty";
        throw InvalidParamError(os.str());
    }
}

} // namespace

std::vector<SweepRecord> sweep(Model model, const std::vector<double>& param_grid,
                               int n_steps) {
    if (n_steps < 0 || n_steps > 40)
        throw InvalidParamError("sweep: n_steps must be in [0, 40]");
    std::vector<SweepRecord> records;
    records.reserve(param_grid.size());
    for (double x : param_grid) {
        const FlowTrajectory traj = iterate_flow(model, x, n_steps);
        SweepRecord rec;
        rec.param = x;
        rec.n_steps = n_steps;
        rec.effective = traj.couplings.back();
        rec.coherence = triple_at(model, rec.effective);
        records.push_back(rec);
    }
    return records;
}

DerivativeRecord derivative_along_flow(Model model, double x, int n_steps, double h) {
    const FlowTrajectory traj = iterate_flow(model, x, n_steps);
    if (traj.frozen_at()) {
        std::ostringstream os;
        os << "derivative_along_flow: flow frozen at depth " << *traj.frozen_at()
           << " for x = " << x;
        throw FlowSaturatedError(os.str());
    }
    const double xn = traj.couplings.back().value();
    if (xn < kDerivEffectiveMin || xn > kDerivEffectiveMax) {
        std::ostringstream os;
        os << "derivative_along_flow: effective coupling " << xn
           << " is saturation-adjacent at x = " << x;
        throw FlowSaturatedError(os.str());
    }

    double factor = 1.0;
    for (int k = 0; k < n_steps; ++k)
        factor *= flow_derivative(model, traj.couplings[k].value());

    const double step = h > 0.0 ? h : 1e-6 * std::max(1.0, std::abs(xn));
    const CoherenceTriple plus = triple_at(model, Coupling::finite(xn + step));
    const CoherenceTriple minus = triple_at(model, Coupling::finite(xn - step));

    DerivativeRecord rec;
    rec.param = x;
    rec.n_steps = n_steps;
    rec.d_collective = (plus.collective - minus.collective) / (2.0 * step) * factor;
    rec.d_local = (plus.local - minus.local) / (2.0 * step) * factor;
    return rec;
}

std::pair<double, double> parabola_vertex(double x0, double dx, double ym, double y0,
                                          double yp) {
    const double curvature = ym - 2.0 * y0 + yp;
    if (curvature == 0.0) return {x0, y0};
    const double offset = 0.5 * (ym - yp) / curvature;
    return {x0 + offset * dx, y0 - 0.25 * (ym - yp) * offset};
}

Extremum locate_extremum(Model model, Observable which, int n_steps, Window window) {
    check_window(window, "locate_extremum");
    const int n_grid = kExtremumGridPoints;
    const double dx = (window.hi - window.lo) / (n_grid - 1);

    std::vector<std::optional<double>> mag(n_grid);
    int best = -1;
    for (int i = 0; i < n_grid; ++i) {
        const double x = window.lo + i * dx;
        try {
            const DerivativeRecord rec = derivative_along_flow(model, x, n_steps);
            mag[i] = std::abs(which == Observable::collective ? rec.d_collective
                                                              : rec.d_local);
            if (best < 0 || *mag[i] > *mag[best]) best = i;
        } catch (const FlowSaturatedError&) {
            // missing record; skip
        }
    }
    if (best < 0)
        throw FlowSaturatedError("locate_extremum: no valid derivative in window");

    Extremum ext;
    if (best == 0 || best == n_grid - 1 || !mag[best - 1] || !mag[best + 1]) {
        ext.location = window.lo + best * dx;
        ext.magnitude = *mag[best];
        ext.at_boundary = true;
        return ext;
    }
    const auto [loc, val] = parabola_vertex(window.lo + best * dx, dx, *mag[best - 1],
                                            *mag[best], *mag[best + 1]);
    ext.location = loc;
    ext.magnitude = val;
    ext.at_boundary = false;
    return ext;
}

LinearFit least_squares(const std::vector<std::pair<double, double>>& xy) {
    if (xy.size() < 2)
        throw InvalidParamError("least_squares: need at least 2 points");
    const double n = static_cast<double>(xy.size());
    double sx = 0.0, sy = 0.0;
    for (const auto& [x, y] : xy) {
        sx += x;
        sy += y;
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (const auto& [x, y] : xy) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if (sxx == 0.0) throw InvalidParamError("least_squares: degenerate abscissae");

    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0.0, ss_tot = 0.0;
    for (const auto& [x, y] : xy) {
        const double r = y - (fit.slope * x + fit.intercept);
        ss_res += r * r;
        ss_tot += (y - my) * (y - my);
    }
    fit.r_squared = ss_tot == 0.0 ? (ss_res == 0.0 ? 1.0 : 0.0) : 1.0 - ss_res / ss_tot;
    return fit;
}

ScalingFit scaling_fit(Model model, Observable which, const std::vector<int>& depths,
                       Window window) {
    if (depths.size() < 3)
        throw InvalidParamError("scaling_fit: need at least 3 depths");
    check_window(window, "scaling_fit");

    const double ln_b = std::log(model == Model::itf ? 2.0 : 3.0);
    ScalingFit fit;
    std::vector<std::pair<double, double>> xy;
    for (int n : depths) {
        std::optional<Extremum> ext;
        try {
            ext = locate_extremum(model, which, n, window);
        } catch (const FlowSaturatedError&) {
        }
        fit.located.emplace_back(n, ext);
        if (!ext || ext->at_boundary || ext->magnitude <= 0.0) {
            fit.depths_dropped.push_back(n);
            continue;
        }
        ScalingPoint pt;
        pt.depth = n;
        pt.ln_system_size = (n + 1) * ln_b;
        pt.ln_derivative = std::log(ext->magnitude);
        pt.location = ext->location;
        fit.points.push_back(pt);
        fit.depths_used.push_back(n);
        xy.emplace_back(pt.ln_system_size, pt.ln_derivative);
    }
    if (xy.size() < 3)
        throw InvalidParamError("scaling_fit: fewer than 3 usable depths after drops");

    const LinearFit ls = least_squares(xy);
    fit.theta = ls.slope;
    fit.intercept = ls.intercept;
    fit.r_squared = ls.r_squared;
    return fit;
}

} // namespace qcoh
