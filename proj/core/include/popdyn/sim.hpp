#ifndef POPDYN_SIM_HPP
#define POPDYN_SIM_HPP

#include <cstdint>
#include <vector>

#include "popdyn/params.hpp"

namespace popdyn {

/// Discrete-time agent simulation of the underlying stochastic process.
///
/// Per slot of length dt_slot, in this order:
///   1. each pending viewer (Z) views with probability 1 - e^{-gamma dt};
///   2. each unaware user (S) is informed with probability
///      1 - e^{-(alpha + beta x) dt}, joining X (and Z) with probability q,
///      else Y.
/// Users informed in a slot therefore roll their first view decision in the
/// next slot, matching the slot recursion z(t+1) = z(t)(1-gamma) + dx(t).
/// Draws are binomial per compartment (agents are exchangeable), so a slot
/// costs O(1) instead of O(N).
struct SimConfig {
    ModelParams params;  ///< n_users must be integral
    double dt_slot = 1.0;
    std::size_t n_slots = 1;
    std::uint64_t seed = 0;
    std::size_t n_runs = 1;
    /// Use exact exponential per-slot probabilities (always valid). When
    /// false, linearized rate*dt probabilities are used and a value > 1
    /// raises ProbabilityOverflowError.
    bool exact_exponential = true;
};

/// Per-slot counts; index 0 is the initial state. dw[k] is the number of
/// views during slot k (dw[0] = 0). x+y+s == N and z+w == x hold exactly at
/// every slot.
struct SimTrace {
    std::vector<std::int64_t> x, y, s, z, w, dw;
    std::size_t n_slots() const { return x.empty() ? 0 : x.size() - 1; }
};

/// Per-slot mean and sample standard deviation over a set of runs.
struct SimStats {
    std::vector<double> x_mean, y_mean, s_mean, z_mean, w_mean, dw_mean;
    std::vector<double> x_sd, y_sd, s_sd, z_sd, w_sd, dw_sd;
};

void validate(const SimConfig& config);

/// One run; run_index selects the deterministic SplitMix64 stream derived
/// from (seed, run_index), so any subset of runs can be reproduced alone.
SimTrace simulate_run(const SimConfig& config, std::size_t run_index);

/// All n_runs traces, in run order.
std::vector<SimTrace> simulate(const SimConfig& config);

SimStats aggregate(const std::vector<SimTrace>& traces);

}  // namespace popdyn

#endif  // POPDYN_SIM_HPP
