#ifndef QCOH_RG_ANALYSIS_HPP
#define QCOH_RG_ANALYSIS_HPP

#include <optional>
#include <utility>
#include <vector>

#include "qcoh/coherence.hpp"
#include "qcoh/spin_models.hpp"

namespace qcoh {

enum class Observable { collective, local };

// Derivatives are meaningful only while the effective coupling is well away
// from its saturation tails: outside this range the state is within ~1e-7 of
// its exact limit and the central difference measures cancellation noise,
// which the chain factor (up to ~1e9 at depth 8) then amplifies into garbage.
// Such records are reported missing, like records past a literal freeze flag.
inline constexpr double kDerivEffectiveMin = 1e-3;
inline constexpr double kDerivEffectiveMax = 1e3;

inline constexpr int kExtremumGridPoints = 2001;
inline constexpr double kDefaultWindowLo = 0.8;
inline constexpr double kDefaultWindowHi = 1.2;

struct Window {
    double lo = kDefaultWindowLo;
    double hi = kDefaultWindowHi;
};

// Coherence of the block ground state at depth n for one bare coupling.
struct SweepRecord {
    double param = 0.0;
    int n_steps = 0;
    Coupling effective = Coupling::finite(0.0);
    CoherenceTriple coherence;
};

std::vector<SweepRecord> sweep(Model model, const std::vector<double>& param_grid,
                               int n_steps);

// d C / d x at the bare coupling x, computed along the flow: central
// difference with respect to the effective coupling times the chain factor
// prod_{k<n} f'(x_k).
struct DerivativeRecord {
    double param = 0.0;
    int n_steps = 0;
    double d_collective = 0.0;
    double d_local = 0.0;
};

// h <= 0 means the default step 1e-6 * max(1, |effective coupling|).
// Throws FlowSaturatedError when the trajectory freezes within depth
// n_steps or the effective coupling leaves the guarded range above (the
// record is missing in either case).
DerivativeRecord derivative_along_flow(Model model, double x, int n_steps,
                                       double h = 0.0);

// Peak of |dC/dx| over a window around the critical point.
struct Extremum {
    double location = 0.0;
    double magnitude = 0.0;
    // True when the best sample sits on the window edge or against missing
    // records, so no interior parabolic vertex exists: the peak is clipped,
    // not measured.
    bool at_boundary = false;
};

Extremum locate_extremum(Model model, Observable which, int n_steps, Window window);

// Vertex abscissa of the parabola through three equally spaced samples
// (x0 - dx, ym), (x0, y0), (x0 + dx, yp), and its value there.
std::pair<double, double> parabola_vertex(double x0, double dx, double ym, double y0,
                                          double yp);

// Ordinary least squares y = slope * x + intercept with r^2.
struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

LinearFit least_squares(const std::vector<std::pair<double, double>>& xy);

// Log-log fit of the extremum magnitude against system size b^(n+1).
struct ScalingPoint {
    int depth = 0;
    double ln_system_size = 0.0;
    double ln_derivative = 0.0;
    double location = 0.0;
};

struct ScalingFit {
    std::vector<ScalingPoint> points; // the depths actually fitted
    std::vector<int> depths_used;
    std::vector<int> depths_dropped; // missing or boundary-clipped extrema
    // Raw located extremum per requested depth (nullopt when the whole
    // window is saturation-adjacent), including boundary-clipped ones that
    // the regression excludes; lets consumers report unfitted depths too.
    std::vector<std::pair<int, std::optional<Extremum>>> located;
    double theta = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    double nu() const { return 1.0 / theta; }
};

// Depths whose extremum is missing or boundary-clipped are excluded from
// the regression and listed in depths_dropped; at least 3 usable depths
// are required.
ScalingFit scaling_fit(Model model, Observable which, const std::vector<int>& depths,
                       Window window);

} // namespace qcoh

#endif
