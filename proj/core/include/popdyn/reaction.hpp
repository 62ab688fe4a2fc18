#ifndef POPDYN_REACTION_HPP
#define POPDYN_REACTION_HPP

#include <cstddef>
#include <vector>

#include "popdyn/params.hpp"
#include "popdyn/spread.hpp"

namespace popdyn {

/// Controls for the reaction-process integrator.
///
/// The solver integrates z' = -gamma z + x'(t), w' = gamma z with classical
/// RK4 on internal substeps of at most step_scale / max(gamma, tau). When
/// that would take more than max_rk4_substeps per output cell (stiff gamma),
/// it falls back to an exact exponential step: the closed-form forcing x' is
/// replaced by its cubic Hermite interpolant per substep (x' and x'' are
/// available exactly), and the decay convolution is integrated analytically,
/// so substeps only need to resolve tau.
struct ReactionOptions {
    bool allow_refinement = true;  ///< if false, one RK4 step per grid cell or throw
    double step_scale = 0.02;      ///< substep length in units of the stiffest rate
    int max_rk4_substeps = 256;    ///< per output cell, before the exponential fallback
};

/// Reaction-process sample: pending viewers z, cumulative views w, and view
/// rate dw = gamma * z at every grid point. z(0) = w(0) = 0.
struct ReactionTrajectory {
    TimeGrid grid;
    std::vector<double> t, z, w, dw;
};

/// Location of the view-rate peak against the spreading-rate peak.
/// t_peak_dx is 0 when A >= B, else t'; t_peak_dw is the unique maximizer
/// of dw (never earlier than t_peak_dx - grid_dt).
struct PeakReport {
    double t_peak_dx;
    double t_peak_dw;
    double dw_max;
    double grid_dt;  ///< scan resolution the peak was bracketed at
};

ReactionTrajectory solve_reaction(const SpreadModel& model, const TimeGrid& grid,
                                  const ReactionOptions& opts = {});
ReactionTrajectory solve_reaction(const ModelParams& p, const TimeGrid& grid,
                                  const ReactionOptions& opts = {});
ReactionTrajectory solve_reaction(const ReducedParams& rp, const TimeGrid& grid,
                                  const ReactionOptions& opts = {});

/// Independent evaluation of z(t) by midpoint quadrature of
/// z(t) = int_0^t x'(u) e^{-gamma (t-u)} du, with the interval count doubled
/// until successive values agree to rel_tol. The kernel factor is kept in
/// combined e^{-gamma(t-u)} form and contributions older than 45/gamma are
/// dropped (they are below e^-45 of the peak). This is the cross-check
/// oracle for the ODE path.
double z_quadrature(const SpreadModel& model, double t, double rel_tol = 1e-4);
double z_quadrature(const ModelParams& p, double t, double rel_tol = 1e-4);
double z_quadrature(const ReducedParams& rp, double t, double rel_tol = 1e-4);

/// Scan [0, horizon] on n_cells cells for the maximum of dw, then refine by
/// golden-section inside the bracketing pair of cells (valid because dw is
/// unimodal). Throws HorizonTooShortError when dw is still rising at the
/// horizon.
PeakReport find_peak(const SpreadModel& model, double horizon, std::size_t n_cells = 4096);
PeakReport find_peak(const ModelParams& p, double horizon, std::size_t n_cells = 4096);
PeakReport find_peak(const ReducedParams& rp, double horizon, std::size_t n_cells = 4096);

}  // namespace popdyn

#endif  // POPDYN_REACTION_HPP
