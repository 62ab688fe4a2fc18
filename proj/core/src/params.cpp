#include "popdyn/params.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace popdyn {

namespace {

void require_positive_finite(double v, const char* name) {
    if (!std::isfinite(v) || v <= 0.0) {
        throw std::invalid_argument(std::string(name) + " must be a positive finite number");
    }
}

}  // namespace

ModelParams::ModelParams(double n_users, double alpha, double beta, double q, double gamma)
    : n_users(n_users), alpha(alpha), beta(beta), q(q), gamma(gamma) {
    require_positive_finite(n_users, "n_users");
    require_positive_finite(alpha, "alpha");
    require_positive_finite(beta, "beta");
    require_positive_finite(gamma, "gamma");
    if (!std::isfinite(q) || q <= 0.0 || q > 1.0) {
        throw std::invalid_argument("q must lie in (0, 1]");
    }
    const double b_wom = beta * q * n_users;
    if (!std::isfinite(b_wom) || b_wom <= 0.0) {
        throw std::invalid_argument("beta*q*n_users must be finite and positive");
    }
    if (!std::isfinite(alpha + b_wom)) {
        throw std::invalid_argument("alpha + beta*q*n_users overflows");
    }
}

ReducedParams::ReducedParams(double a_direct, double b_wom, double m_adopters, double gamma)
    : a_direct(a_direct), b_wom(b_wom), m_adopters(m_adopters), gamma(gamma) {
    require_positive_finite(a_direct, "a_direct");
    require_positive_finite(b_wom, "b_wom");
    require_positive_finite(m_adopters, "m_adopters");
    require_positive_finite(gamma, "gamma");
    if (!std::isfinite(a_direct + b_wom)) {
        throw std::invalid_argument("a_direct + b_wom overflows");
    }
}

ReducedParams ReducedParams::from(const ModelParams& p) {
    return ReducedParams(p.alpha, p.beta * p.q * p.n_users, p.q * p.n_users, p.gamma);
}

TimeGrid::TimeGrid(double dt, std::size_t n_steps, double t_start)
    : t_start(t_start), dt(dt), n_steps(n_steps) {
    if (!std::isfinite(dt) || dt <= 0.0) {
        throw std::invalid_argument("grid dt must be positive");
    }
    if (n_steps < 1) {
        throw std::invalid_argument("grid needs at least one sample");
    }
    if (!std::isfinite(t_start) || t_start < 0.0) {
        throw std::invalid_argument("grid t_start must be nonnegative");
    }
}

}  // namespace popdyn
