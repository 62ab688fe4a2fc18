#include "popdyn/sim.hpp"

#include <cmath>
#include <stdexcept>

#include "popdyn/errors.hpp"
#include "popdyn/rng.hpp"

namespace popdyn {

void validate(const SimConfig& config) {
    const double n = config.params.n_users;
    if (std::floor(n) != n || n > 9.007199254740992e15) {
        throw std::invalid_argument("simulation needs an integral n_users (within 2^53)");
    }
    if (!(config.dt_slot > 0.0) || !std::isfinite(config.dt_slot)) {
        throw std::invalid_argument("dt_slot must be positive");
    }
    if (config.n_slots < 1) throw std::invalid_argument("n_slots must be >= 1");
    if (config.n_runs < 1) throw std::invalid_argument("n_runs must be >= 1");
}

namespace {

double slot_probability(double rate, double dt, bool exact) {
    if (exact) return -std::expm1(-rate * dt);
    const double p = rate * dt;
    if (p > 1.0) {
        throw ProbabilityOverflowError("linearized slot probability exceeds 1; enable the "
                                       "exact-exponential form or shrink dt_slot");
    }
    return p;
}

}  // namespace

SimTrace simulate_run(const SimConfig& config, std::size_t run_index) {
    validate(config);
    const ModelParams& p = config.params;
    const double dt = config.dt_slot;
    SplitMix64 rng(SplitMix64::stream_seed(config.seed, run_index));

    const std::int64_t n_total = static_cast<std::int64_t>(p.n_users);
    std::int64_t x = 0, y = 0, s = n_total, z = 0, w = 0;

    SimTrace trace;
    trace.x.reserve(config.n_slots + 1);
    trace.y.reserve(config.n_slots + 1);
    trace.s.reserve(config.n_slots + 1);
    trace.z.reserve(config.n_slots + 1);
    trace.w.reserve(config.n_slots + 1);
    trace.dw.reserve(config.n_slots + 1);
    auto record = [&](std::int64_t views) {
        trace.x.push_back(x);
        trace.y.push_back(y);
        trace.s.push_back(s);
        trace.z.push_back(z);
        trace.w.push_back(w);
        trace.dw.push_back(views);
    };
    record(0);

    const double p_view = slot_probability(p.gamma, dt, config.exact_exponential);
    for (std::size_t k = 0; k < config.n_slots; ++k) {
        // Views first: only users already pending at the slot start may view.
        const std::int64_t views = binomial(rng, z, p_view);
        z -= views;
        w += views;

        const double hazard = p.alpha + p.beta * static_cast<double>(x);
        const double p_inform = slot_probability(hazard, dt, config.exact_exponential);
        const std::int64_t informed = binomial(rng, s, p_inform);
        const std::int64_t joined_x = binomial(rng, informed, p.q);
        s -= informed;
        x += joined_x;
        y += informed - joined_x;
        z += joined_x;

        record(views);
    }
    return trace;
}

std::vector<SimTrace> simulate(const SimConfig& config) {
    validate(config);
    std::vector<SimTrace> traces;
    traces.reserve(config.n_runs);
    for (std::size_t r = 0; r < config.n_runs; ++r) {
        traces.push_back(simulate_run(config, r));
    }
    return traces;
}

SimStats aggregate(const std::vector<SimTrace>& traces) {
    if (traces.empty()) throw std::invalid_argument("aggregate needs at least one trace");
    const std::size_t len = traces[0].x.size();
    for (const SimTrace& t : traces) {
        if (t.x.size() != len) {
            throw std::invalid_argument("aggregate needs traces of equal length");
        }
    }

    SimStats stats;
    const double n = static_cast<double>(traces.size());
    auto reduce = [&](auto member, std::vector<double>& mean, std::vector<double>& sd) {
        mean.assign(len, 0.0);
        sd.assign(len, 0.0);
        for (std::size_t k = 0; k < len; ++k) {
            double acc = 0.0;
            for (const SimTrace& t : traces) acc += static_cast<double>((t.*member)[k]);
            const double mu = acc / n;
            mean[k] = mu;
            if (traces.size() > 1) {
                double ss = 0.0;
                for (const SimTrace& t : traces) {
                    const double d = static_cast<double>((t.*member)[k]) - mu;
                    ss += d * d;
                }
                sd[k] = std::sqrt(ss / (n - 1.0));
            }
        }
    };
    reduce(&SimTrace::x, stats.x_mean, stats.x_sd);
    reduce(&SimTrace::y, stats.y_mean, stats.y_sd);
    reduce(&SimTrace::s, stats.s_mean, stats.s_sd);
    reduce(&SimTrace::z, stats.z_mean, stats.z_sd);
    reduce(&SimTrace::w, stats.w_mean, stats.w_sd);
    reduce(&SimTrace::dw, stats.dw_mean, stats.dw_sd);
    return stats;
}

}  // namespace popdyn
