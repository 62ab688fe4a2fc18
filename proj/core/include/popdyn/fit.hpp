#ifndef POPDYN_FIT_HPP
#define POPDYN_FIT_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "popdyn/params.hpp"
#include "popdyn/spread.hpp"

namespace popdyn {

/// Observed daily view counts of one video, counts[d] = views on day d since
/// upload. Sparse ingestion fills missing days with zero.
struct ViewTrace {
    std::string video_id;
    std::vector<double> counts;
};

/// Counts divided by the peak daily count; the maximum of the result is 1.
/// Throws DegenerateTraceError when every count is zero.
std::vector<double> normalize_peak(const ViewTrace& trace);

struct FitOptions {
    std::size_t max_evals_per_start = 2000;
    double simplex_tol = 1e-4;  ///< stop when the log-space simplex diameter is below this
    double step_scale = 0.2;    ///< integrator substep budget for objective evaluations
};

/// Least-squares match of the model's daily view curve to an observed trace.
///
/// Free parameters are (A, B, V_total, gamma) where V_total is the
/// asymptotic total view count; day d's prediction is
/// V_total * (w(d+1) - w(d)) of the unit-M model. N and q never appear
/// separately in the view curve, so they are not recoverable; the result
/// reports m_adopters = V_total with scale = 1 view per model user.
///
/// The search runs a deterministic 3x3x3x3 log-space multistart grid
/// (A, B over [1e-5, 1], gamma over [1e-3, 1e2], V_total seeded from the
/// trace sum), Nelder-Mead simplex descent from each start, best final sse
/// wins with ties broken by the lowest start index.
struct FitResult {
    ReducedParams reduced;
    double scale;       ///< views per model user (1 by the convention above)
    double sse;
    std::size_t n_evals;
    bool converged;     ///< false when evals ran out or a bound was hit
    int start_index;
};

FitResult fit(const ViewTrace& trace, const FitOptions& options = {});

/// Objective value at explicit parameters; the fit result's sse reproduces
/// this exactly for (reduced, scale) it returns. Exposed for verification.
double fit_objective(const ViewTrace& trace, const ReducedParams& reduced, double scale,
                     double step_scale = 0.2);

/// Regime of the fitted parameters (thresholds depend only on A and B).
Regime classify_trace(const FitResult& result);

}  // namespace popdyn

#endif  // POPDYN_FIT_HPP
