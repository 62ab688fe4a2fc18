#ifndef POPDYN_PARAMS_HPP
#define POPDYN_PARAMS_HPP

#include <cstddef>

namespace popdyn {

/// Full parameter set of the two-process popularity model.
///
/// The information-spreading process moves users from the unaware pool S
/// into the interested pool X (rate alpha of direct recommendation plus
/// beta * x(t) of word-of-mouth, thinned by the attractiveness q); the
/// reaction process drains X into the viewed set W at rate gamma.
struct ModelParams {
    double n_users;  ///< total user population N (fluid limit)
    double alpha;    ///< direct-recommendation rate, per unit time
    double beta;     ///< word-of-mouth rate, per unit time per interested user
    double q;        ///< attractiveness, in (0, 1]
    double gamma;    ///< reaction rate, per unit time

    ModelParams(double n_users, double alpha, double beta, double q, double gamma);
};

/// The identifiable reparameterization (A, B, M, gamma) = (alpha, beta*q*N,
/// q*N, gamma). Observable view dynamics depend on the full parameters only
/// through these combinations, so fitting works in this space. N and q are
/// not recoverable from it without one of them given externally.
struct ReducedParams {
    double a_direct;    ///< A = alpha
    double b_wom;       ///< B = beta * q * N
    double m_adopters;  ///< M = q * N, asymptotic interested-user count
    double gamma;

    ReducedParams(double a_direct, double b_wom, double m_adopters, double gamma);

    static ReducedParams from(const ModelParams& p);
};

/// Uniform sampling grid: times t_k = t_start + k * dt for k in
/// [0, n_steps). t_start is 0 everywhere in this project.
struct TimeGrid {
    double t_start = 0.0;
    double dt = 1.0;
    std::size_t n_steps = 1;

    TimeGrid() = default;
    TimeGrid(double dt, std::size_t n_steps, double t_start = 0.0);

    double time_at(std::size_t k) const { return t_start + static_cast<double>(k) * dt; }
    double t_end() const { return time_at(n_steps - 1); }
};

}  // namespace popdyn

#endif  // POPDYN_PARAMS_HPP
