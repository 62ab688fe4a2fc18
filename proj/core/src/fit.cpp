#include "popdyn/fit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include "popdyn/errors.hpp"
#include "popdyn/reaction.hpp"

namespace popdyn {

std::vector<double> normalize_peak(const ViewTrace& trace) {
    if (trace.counts.empty()) {
        throw DegenerateTraceError("trace '" + trace.video_id + "' has no days");
    }
    const double peak = *std::max_element(trace.counts.begin(), trace.counts.end());
    if (!(peak > 0.0)) {
        throw DegenerateTraceError("trace '" + trace.video_id + "' has no positive view count");
    }
    std::vector<double> out(trace.counts.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = trace.counts[i] / peak;
    return out;
}

namespace {

// Box bounds in log space. V bounds are relative to the observed trace sum.
constexpr double kLogABLo = -18.420680743952367;  // ln 1e-8
constexpr double kLogABHi = 4.605170185988092;    // ln 1e2
constexpr double kLogGammaLo = -11.512925464970229;  // ln 1e-5
constexpr double kLogGammaHi = 6.907755278982137;    // ln 1e3
constexpr double kHuge = 1e300;

struct Objective {
    const std::vector<double>& counts;
    double step_scale;
    double log_v_lo;
    double log_v_hi;

    double operator()(const std::array<double, 4>& theta) const {
        if (theta[0] < kLogABLo || theta[0] > kLogABHi || theta[1] < kLogABLo ||
            theta[1] > kLogABHi || theta[2] < log_v_lo || theta[2] > log_v_hi ||
            theta[3] < kLogGammaLo || theta[3] > kLogGammaHi) {
            return kHuge;
        }
        const double a = std::exp(theta[0]);
        const double b = std::exp(theta[1]);
        const double v = std::exp(theta[2]);
        const double gamma = std::exp(theta[3]);

        const TimeGrid grid(1.0, counts.size() + 1);
        ReactionOptions opts;
        opts.step_scale = step_scale;
        opts.max_rk4_substeps = 8;  // prefer the exponential step once stiff
        const ReactionTrajectory traj =
            solve_reaction(ReducedParams(a, b, 1.0, gamma), grid, opts);

        double sse = 0.0;
        for (std::size_t d = 0; d < counts.size(); ++d) {
            const double pred = v * (traj.w[d + 1] - traj.w[d]);
            const double r = pred - counts[d];
            sse += r * r;
        }
        return std::isfinite(sse) ? sse : kHuge;
    }
};

struct SimplexOutcome {
    std::array<double, 4> best;
    double f_best;
    std::size_t evals;
    bool converged;
};

// Nelder-Mead with the standard coefficients (reflect 1, expand 2,
// contract 1/2, shrink 1/2); stops on log-space diameter or eval budget.
SimplexOutcome nelder_mead(const Objective& obj, const std::array<double, 4>& start,
                           std::size_t max_evals, double diameter_tol) {
    constexpr int kDim = 4;
    using Point = std::array<double, 4>;
    std::array<Point, kDim + 1> xs;
    std::array<double, kDim + 1> fs;
    std::size_t evals = 0;

    auto eval = [&](const Point& p) {
        ++evals;
        return obj(p);
    };

    xs[0] = start;
    fs[0] = eval(xs[0]);
    for (int i = 0; i < kDim; ++i) {
        Point p = start;
        p[i] += std::max(0.25, 0.05 * std::fabs(start[i]));
        xs[i + 1] = p;
        fs[i + 1] = eval(p);
    }

    auto order = [&] {
        std::array<int, kDim + 1> idx;
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return fs[a] < fs[b]; });
        std::array<Point, kDim + 1> xs2;
        std::array<double, kDim + 1> fs2;
        for (int i = 0; i <= kDim; ++i) {
            xs2[i] = xs[idx[i]];
            fs2[i] = fs[idx[i]];
        }
        xs = xs2;
        fs = fs2;
    };
    auto diameter = [&] {
        double d = 0.0;
        for (int i = 1; i <= kDim; ++i) {
            for (int c = 0; c < kDim; ++c) {
                d = std::max(d, std::fabs(xs[i][c] - xs[0][c]));
            }
        }
        return d;
    };

    order();
    bool converged = false;
    while (evals < max_evals) {
        if (diameter() < diameter_tol) {
            converged = true;
            break;
        }
        Point centroid{};
        for (int i = 0; i < kDim; ++i) {
            for (int c = 0; c < kDim; ++c) centroid[c] += xs[i][c];
        }
        for (int c = 0; c < kDim; ++c) centroid[c] /= kDim;

        auto blend = [&](double coef) {
            Point p;
            for (int c = 0; c < kDim; ++c) {
                p[c] = centroid[c] + coef * (centroid[c] - xs[kDim][c]);
            }
            return p;
        };

        const Point refl = blend(1.0);
        const double f_refl = eval(refl);
        if (f_refl < fs[0]) {
            const Point expd = blend(2.0);
            const double f_expd = eval(expd);
            if (f_expd < f_refl) {
                xs[kDim] = expd;
                fs[kDim] = f_expd;
            } else {
                xs[kDim] = refl;
                fs[kDim] = f_refl;
            }
        } else if (f_refl < fs[kDim - 1]) {
            xs[kDim] = refl;
            fs[kDim] = f_refl;
        } else {
            const bool outside = f_refl < fs[kDim];
            const Point cont = blend(outside ? 0.5 : -0.5);
            const double f_cont = eval(cont);
            if (f_cont < (outside ? f_refl : fs[kDim])) {
                xs[kDim] = cont;
                fs[kDim] = f_cont;
            } else {
                for (int i = 1; i <= kDim; ++i) {
                    for (int c = 0; c < kDim; ++c) {
                        xs[i][c] = xs[0][c] + 0.5 * (xs[i][c] - xs[0][c]);
                    }
                    fs[i] = eval(xs[i]);
                }
            }
        }
        order();
    }

    return SimplexOutcome{xs[0], fs[0], evals, converged};
}

}  // namespace

double fit_objective(const ViewTrace& trace, const ReducedParams& reduced, double scale,
                     double step_scale) {
    const double sum =
        std::accumulate(trace.counts.begin(), trace.counts.end(), 0.0);
    const double v_ref = std::max(sum, 1.0);
    const Objective obj{trace.counts, step_scale, std::log(1e-6 * v_ref),
                        std::log(1e9 * v_ref)};
    return obj({std::log(reduced.a_direct), std::log(reduced.b_wom),
                std::log(reduced.m_adopters * scale), std::log(reduced.gamma)});
}

FitResult fit(const ViewTrace& trace, const FitOptions& options) {
    if (trace.counts.size() < 3) {
        throw DegenerateTraceError("trace '" + trace.video_id +
                                   "' is shorter than 3 days; cannot fit");
    }
    const double sum = std::accumulate(trace.counts.begin(), trace.counts.end(), 0.0);
    bool any_positive = false;
    for (double c : trace.counts) {
        if (c < 0.0 || !std::isfinite(c)) {
            throw std::invalid_argument("view counts must be finite and nonnegative");
        }
        if (c > 0.0) any_positive = true;
    }
    if (!any_positive) {
        throw DegenerateTraceError("trace '" + trace.video_id + "' is all zero; cannot fit");
    }

    const double v_ref = std::max(sum, 1.0);
    const Objective obj{trace.counts, options.step_scale, std::log(1e-6 * v_ref),
                        std::log(1e9 * v_ref)};

    static const std::array<double, 3> kAStarts = {1e-5, 3.1622776601683795e-3, 1.0};
    static const std::array<double, 3> kBStarts = kAStarts;
    static const std::array<double, 3> kGammaStarts = {1e-3, 0.31622776601683794, 1e2};
    const std::array<double, 3> v_starts = {1.1 * v_ref, 2.0 * v_ref, 4.0 * v_ref};

    SimplexOutcome best{};
    int best_start = -1;
    std::size_t total_evals = 0;
    int start_index = 0;
    for (double a0 : kAStarts) {
        for (double b0 : kBStarts) {
            for (double v0 : v_starts) {
                for (double g0 : kGammaStarts) {
                    const std::array<double, 4> theta0 = {std::log(a0), std::log(b0),
                                                          std::log(v0), std::log(g0)};
                    SimplexOutcome run = nelder_mead(obj, theta0, options.max_evals_per_start,
                                                     options.simplex_tol);
                    total_evals += run.evals;
                    if (best_start < 0 || run.f_best < best.f_best) {
                        best = run;
                        best_start = start_index;
                    }
                    ++start_index;
                }
            }
        }
    }

    const double a = std::exp(best.best[0]);
    const double b = std::exp(best.best[1]);
    const double v = std::exp(best.best[2]);
    const double gamma = std::exp(best.best[3]);

    // A bound-hugging optimum means the model degenerated (for example a
    // spike trace pushing gamma to the cap); flag it as not converged.
    const double edge = 1e-6;
    const bool at_bound = best.best[0] < kLogABLo + edge || best.best[0] > kLogABHi - edge ||
                          best.best[1] < kLogABLo + edge || best.best[1] > kLogABHi - edge ||
                          best.best[2] < obj.log_v_lo + edge ||
                          best.best[2] > obj.log_v_hi - edge ||
                          best.best[3] < kLogGammaLo + edge ||
                          best.best[3] > kLogGammaHi - edge;

    FitResult result{ReducedParams(a, b, v, gamma), 1.0,  best.f_best,
                     total_evals,                   best.converged && !at_bound, best_start};
    return result;
}

Regime classify_trace(const FitResult& result) {
    return classify_reduced(result.reduced.a_direct, result.reduced.b_wom);
}

}  // namespace popdyn
