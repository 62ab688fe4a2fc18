#include "popdyn/reaction.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "popdyn/errors.hpp"

namespace popdyn {

namespace {

// Moments I_j = int_0^D s^j e^{-gamma (D - s)} ds for j = 0..3. Series in
// u = gamma D below 1 (all terms positive), integration-by-parts recurrence
// above (cancellation bounded by j/u).
struct DecayMoments {
    double e;  // e^{-gamma D}
    double i[4];
};

DecayMoments decay_moments(double gamma, double dt) {
    DecayMoments m{};
    const double u = gamma * dt;
    m.e = std::exp(-u);
    if (u <= 1.0) {
        for (int j = 0; j < 4; ++j) {
            double sum = 0.0, term = 1.0;
            for (int k = 0;; ++k) {
                const double c = term / static_cast<double>(j + k + 1);
                sum += c;
                if (c < 1e-19 * sum || k > 40) break;
                term *= u / static_cast<double>(k + 1);
            }
            m.i[j] = std::pow(dt, j + 1) * m.e * sum;
        }
    } else {
        m.i[0] = -std::expm1(-u) / gamma;
        double dpow = 1.0;
        for (int j = 1; j < 4; ++j) {
            dpow *= dt;
            m.i[j] = (dpow - static_cast<double>(j) * m.i[j - 1]) / gamma;
        }
    }
    return m;
}

// One exact-decay step of length dt: forcing x' replaced by its cubic
// Hermite interpolant p(s) built from endpoint values/slopes (f0, d0) and
// (f1, d1). Updates z and w in place. The convolution term cancels exactly
// in z + w, so mass balance reduces to the quadrature of p.
struct ExpoStepper {
    double gamma;
    DecayMoments m;

    void step(double dt, double f0, double d0, double f1, double d1, double& z,
              double& w) const {
        const double c0 = f0;
        const double c1 = d0;
        const double c2 = 3.0 * (f1 - f0) / (dt * dt) - (2.0 * d0 + d1) / dt;
        const double c3 = 2.0 * (f0 - f1) / (dt * dt * dt) + (d0 + d1) / (dt * dt);
        const double conv = c0 * m.i[0] + c1 * m.i[1] + c2 * m.i[2] + c3 * m.i[3];
        const double integral_p =
            dt * (c0 + dt * (c1 / 2.0 + dt * (c2 / 3.0 + dt * c3 / 4.0)));
        const double z_next = z * m.e + conv;
        w += z * (-std::expm1(-gamma * dt)) + integral_p - conv;
        z = z_next;
    }
};

// One classical RK4 step of length dt on (z, w); f0/fm/f1 are the forcing
// x' at the left endpoint, midpoint and right endpoint.
void rk4_step(double gamma, double dt, double f0, double fm, double f1, double& z,
              double& w) {
    const double k1z = -gamma * z + f0;
    const double k1w = gamma * z;
    const double z2 = z + 0.5 * dt * k1z;
    const double k2z = -gamma * z2 + fm;
    const double k2w = gamma * z2;
    const double z3 = z + 0.5 * dt * k2z;
    const double k3z = -gamma * z3 + fm;
    const double k3w = gamma * z3;
    const double z4 = z + dt * k3z;
    const double k4z = -gamma * z4 + f1;
    const double k4w = gamma * z4;
    z += dt / 6.0 * (k1z + 2.0 * k2z + 2.0 * k3z + k4z);
    w += dt / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
}

}  // namespace

ReactionTrajectory solve_reaction(const SpreadModel& model, const TimeGrid& grid,
                                  const ReactionOptions& opts) {
    const double gamma = model.has_full_params() ? model.full_params().gamma : 0.0;
    if (gamma <= 0.0) {
        throw std::logic_error("solve_reaction needs gamma; build the model from "
                               "ModelParams/ReducedParams overloads");
    }
    return solve_reaction(ReducedParams(model.a(), model.b(), model.m(), gamma), grid, opts);
}

ReactionTrajectory solve_reaction(const ModelParams& p, const TimeGrid& grid,
                                  const ReactionOptions& opts) {
    return solve_reaction(ReducedParams::from(p), grid, opts);
}

ReactionTrajectory solve_reaction(const ReducedParams& rp, const TimeGrid& grid,
                                  const ReactionOptions& opts) {
    const SpreadModel model(rp);
    const double gamma = rp.gamma;
    const double tau = model.tau();
    const double dt = grid.dt;
    const double stiffest = std::max(gamma, tau);

    ReactionTrajectory out;
    out.grid = grid;
    out.t.resize(grid.n_steps);
    out.z.resize(grid.n_steps);
    out.w.resize(grid.n_steps);
    out.dw.resize(grid.n_steps);

    int n_sub = 1;
    bool use_expo = false;
    if (!opts.allow_refinement) {
        if (dt * stiffest > 0.1) {
            throw GridTooCoarseError("grid dt exceeds 0.1/max(gamma, tau) and internal "
                                     "refinement is disabled");
        }
    } else {
        const double want = dt * stiffest / opts.step_scale;
        if (want > static_cast<double>(opts.max_rk4_substeps)) {
            use_expo = true;
            n_sub = std::max(1, static_cast<int>(std::ceil(dt * tau / opts.step_scale)));
        } else {
            n_sub = std::max(1, static_cast<int>(std::ceil(want)));
        }
    }
    const double h = dt / static_cast<double>(n_sub);

    ExpoStepper expo{gamma, decay_moments(gamma, h)};

    double z = 0.0, w = 0.0;
    double t = grid.t_start;
    // Endpoint forcing values carry over between substeps.
    double f1 = model.dx(t);
    double d1 = use_expo ? model.d2x(t) : 0.0;
    for (std::size_t k = 0; k < grid.n_steps; ++k) {
        if (k > 0) {
            for (int s = 0; s < n_sub; ++s) {
                const double t0 = t;
                const double t_next = grid.time_at(k - 1) + (s + 1) * h;
                const double f0 = f1, d0 = d1;
                f1 = model.dx(t_next);
                if (use_expo) {
                    d1 = model.d2x(t_next);
                    expo.step(h, f0, d0, f1, d1, z, w);
                } else {
                    const double fm = model.dx(t0 + 0.5 * h);
                    rk4_step(gamma, h, f0, fm, f1, z, w);
                }
                t = t_next;
            }
        }
        out.t[k] = grid.time_at(k);
        out.z[k] = z;
        out.w[k] = w;
        out.dw[k] = gamma * z;
    }
    return out;
}

double z_quadrature(const SpreadModel& model, double t, double rel_tol) {
    const double gamma = model.has_full_params() ? model.full_params().gamma : 0.0;
    if (gamma <= 0.0) {
        throw std::logic_error("z_quadrature needs gamma from full ModelParams");
    }
    return z_quadrature(ReducedParams(model.a(), model.b(), model.m(), gamma), t, rel_tol);
}

double z_quadrature(const ModelParams& p, double t, double rel_tol) {
    return z_quadrature(ReducedParams::from(p), t, rel_tol);
}

double z_quadrature(const ReducedParams& rp, double t, double rel_tol) {
    if (t < 0.0) throw std::invalid_argument("z_quadrature needs t >= 0");
    if (t == 0.0) return 0.0;
    const SpreadModel model(rp);
    const double gamma = rp.gamma;
    const double tau = model.tau();

    // The integrand x'(u) e^{-gamma (t-u)} lives where both factors are
    // alive: the decay kernel kills u older than 45/gamma, and x' decays at
    // rate tau away from its peak at max(t', 0). Both cuts discard less than
    // e^-45 of the value, and they keep the midpoint cells on the actual
    // feature instead of spreading them over a mostly-dead interval.
    const double lo = std::max(0.0, t - 45.0 / gamma);
    const double spike = std::max(model.critical_times().t_prime, 0.0);
    double hi = std::min(t, spike + 120.0 / tau);
    if (hi <= lo) hi = t;
    const double len = hi - lo;
    if (len <= 0.0) return 0.0;

    auto midpoint_sum = [&](long k_intervals) {
        const double dt = len / static_cast<double>(k_intervals);
        double acc = 0.0;
        for (long i = 0; i < k_intervals; ++i) {
            const double u = lo + (static_cast<double>(i) + 0.5) * dt;
            acc += model.dx(u) * std::exp(-gamma * (t - u));
        }
        return acc * dt;
    };

    // Double K until two consecutive refinements agree to rel_tol; a single
    // agreement can be a fluke while the feature is still under-resolved.
    long k = 64;
    double prev = midpoint_sum(k);
    int agreements = 0;
    for (int round = 0; round < 18; ++round) {
        k *= 2;
        const double cur = midpoint_sum(k);
        if (std::fabs(cur - prev) <= rel_tol * std::max(std::fabs(cur), 1e-300)) {
            ++agreements;
            if (agreements >= 2) return cur;
        } else {
            agreements = 0;
        }
        prev = cur;
    }
    return prev;
}

PeakReport find_peak(const SpreadModel& model, double horizon, std::size_t n_cells) {
    const double gamma = model.has_full_params() ? model.full_params().gamma : 0.0;
    if (gamma <= 0.0) {
        throw std::logic_error("find_peak needs gamma from full ModelParams");
    }
    return find_peak(ReducedParams(model.a(), model.b(), model.m(), gamma), horizon, n_cells);
}

PeakReport find_peak(const ModelParams& p, double horizon, std::size_t n_cells) {
    return find_peak(ReducedParams::from(p), horizon, n_cells);
}

PeakReport find_peak(const ReducedParams& rp, double horizon, std::size_t n_cells) {
    if (!(horizon > 0.0) || !std::isfinite(horizon)) {
        throw std::invalid_argument("find_peak needs a positive finite horizon");
    }
    if (n_cells < 8) throw std::invalid_argument("find_peak needs at least 8 cells");

    const SpreadModel model(rp);
    const double dt = horizon / static_cast<double>(n_cells);
    const TimeGrid grid(dt, n_cells + 1);
    const ReactionTrajectory traj = solve_reaction(rp, grid);

    std::size_t k_max = 0;
    for (std::size_t k = 1; k < traj.dw.size(); ++k) {
        if (traj.dw[k] > traj.dw[k_max]) k_max = k;
    }
    if (k_max + 1 == traj.dw.size()) {
        throw HorizonTooShortError("view rate dw is still rising at the horizon; extend it");
    }

    // dw is unimodal, so the true peak lies inside the cells adjacent to the
    // sampled argmax; golden-section on the quadrature form refines it.
    const double inv_phi = 0.6180339887498949;
    double a = traj.t[k_max > 0 ? k_max - 1 : 0];
    double b = traj.t[k_max + 1];
    auto value = [&](double u) { return z_quadrature(rp, u, 1e-6); };
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = value(x1), f2 = value(x2);
    const double width_tol = std::max(1e-9 * horizon, 1e-12);
    while (b - a > width_tol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = value(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = value(x1);
        }
    }
    const double t_peak = 0.5 * (a + b);

    PeakReport report{};
    report.grid_dt = dt;
    report.t_peak_dx = model.a() >= model.b() ? 0.0 : model.critical_times().t_prime;
    report.t_peak_dw = t_peak;
    report.dw_max = rp.gamma * value(t_peak);
    return report;
}

}  // namespace popdyn
