#include "popdyn/spread.hpp"

#include <cmath>
#include <stdexcept>

namespace popdyn {

namespace {

// ln(2 + sqrt3); the zeros of g^2 - 4g + 1 are 2 +- sqrt3, which are
// reciprocals of each other, so one constant covers both t1 and t2.
constexpr double kLogTwoPlusSqrt3 = 1.3169578969248166;

double logistic(double l) {
    // 1 / (1 + e^-l), evaluated on the non-overflowing branch.
    if (l >= 0.0) {
        return 1.0 / (1.0 + std::exp(-l));
    }
    const double e = std::exp(l);
    return e / (1.0 + e);
}

}  // namespace

RegimeFamily family_of(Regime r) {
    return (r == Regime::SCurve4Stage || r == Regime::SCurve3Stage) ? RegimeFamily::XSigmoid
                                                                    : RegimeFamily::XConcave;
}

std::string to_string(Regime r) {
    switch (r) {
        case Regime::SCurve4Stage: return "SCurve4Stage";
        case Regime::SCurve3Stage: return "SCurve3Stage";
        case Regime::ConcaveDecay2Stage: return "ConcaveDecay2Stage";
        case Regime::ConvexDecay: return "ConvexDecay";
    }
    return "unknown";
}

std::string to_string(RegimeFamily f) {
    return f == RegimeFamily::XConcave ? "XConcave" : "XSigmoid";
}

SpreadModel::SpreadModel(const ReducedParams& rp)
    : a_(rp.a_direct),
      b_(rp.b_wom),
      m_(rp.m_adopters),
      tau_(rp.a_direct + rp.b_wom),
      log_g0_(std::log(rp.a_direct / rp.b_wom)) {}

SpreadModel::SpreadModel(const ModelParams& p) : SpreadModel(ReducedParams::from(p)) {
    full_ = p;
}

double SpreadModel::g(double t) const {
    const double l = log_g(t);
    if (std::exp(-l) == 0.0) {
        throw std::overflow_error("growth factor g(t) exceeds double range even in reciprocal form");
    }
    return std::exp(l);  // saturates to +inf once past DBL_MAX; 1/g still finite
}

double SpreadModel::x(double t) const {
    // x = M (g - g0)/(g + 1) = M (1 - e^{-tau t}) * sigmoid(ln g); the
    // expm1 form keeps full precision near t = 0 and the sigmoid never
    // overflows, so the same expression serves the whole time axis.
    return m_ * (-std::expm1(-tau_ * t)) * logistic(log_g(t));
}

double SpreadModel::dx(double t) const {
    // tau^2 M g / (B (1+g)^2); g/(1+g)^2 is invariant under g -> 1/g, so
    // evaluate with r = min(g, 1/g) to avoid overflow.
    const double r = std::exp(-std::fabs(log_g(t)));
    const double onep = 1.0 + r;
    return (tau_ * tau_ * m_ / b_) * r / (onep * onep);
}

double SpreadModel::d2x(double t) const {
    // tau^3 M g (1-g) / (B (1+g)^3); under g -> 1/g the kernel flips sign.
    const double l = log_g(t);
    const double r = std::exp(-std::fabs(l));
    const double onep = 1.0 + r;
    const double kernel = r * (1.0 - r) / (onep * onep * onep);
    const double sign = l <= 0.0 ? 1.0 : -1.0;
    return (tau_ * tau_ * tau_ * m_ / b_) * sign * kernel;
}

double SpreadModel::d3x(double t) const {
    // tau^4 M g (g^2-4g+1) / (B (1+g)^4); invariant under g -> 1/g because
    // the quadratic's roots are reciprocal.
    const double r = std::exp(-std::fabs(log_g(t)));
    const double onep = 1.0 + r;
    const double tau2 = tau_ * tau_;
    return (tau2 * tau2 * m_ / b_) * r * (r * r - 4.0 * r + 1.0) / (onep * onep * onep * onep);
}

double SpreadModel::y(double t) const {
    const ModelParams& p = full_params();
    return ((1.0 - p.q) / p.q) * x(t);
}

double SpreadModel::s(double t) const {
    // s = N - x/q = N (e^{-tau t} + (1 - e^{-tau t})(1 - sigmoid(ln g))).
    // The sum-of-positives form stays strictly positive all the way to the
    // underflow threshold, where N - x/q would cancel to zero or below.
    const ModelParams& p = full_params();
    const double decay = std::exp(-tau_ * t);
    const double l = log_g(t);
    const double sig_neg = logistic(-l);  // 1 - sigmoid(l), computed directly
    return p.n_users * (decay + (1.0 - decay) * sig_neg);
}

const ModelParams& SpreadModel::full_params() const {
    if (!full_) {
        throw std::logic_error("operation needs full ModelParams (q and N are not identifiable "
                               "from reduced parameters)");
    }
    return *full_;
}

CriticalTimes SpreadModel::critical_times() const {
    const double log_ba = -log_g0_;  // ln(B/A)
    return CriticalTimes{
        log_ba / tau_,
        (log_ba + kLogTwoPlusSqrt3) / tau_,
        (log_ba - kLogTwoPlusSqrt3) / tau_,
    };
}

Regime SpreadModel::classify() const { return classify_reduced(a_, b_); }

Regime classify_reduced(double a_direct, double b_wom) {
    if (!(a_direct > 0.0) || !(b_wom > 0.0)) {
        throw std::invalid_argument("classification needs positive a_direct and b_wom");
    }
    const double hi = (2.0 + std::sqrt(3.0)) * b_wom;
    const double lo = (2.0 - std::sqrt(3.0)) * b_wom;
    if (a_direct >= hi) return Regime::ConvexDecay;
    if (a_direct >= b_wom) return Regime::ConcaveDecay2Stage;
    if (a_direct >= lo) return Regime::SCurve3Stage;
    return Regime::SCurve4Stage;
}

Trajectory sample_spread(const ModelParams& p, const TimeGrid& grid) {
    const SpreadModel model(p);

    Trajectory out;
    out.grid = grid;
    out.t.reserve(grid.n_steps);
    out.x.reserve(grid.n_steps);
    out.y.reserve(grid.n_steps);
    out.s.reserve(grid.n_steps);
    out.dx.reserve(grid.n_steps);
    for (std::size_t k = 0; k < grid.n_steps; ++k) {
        const double t = grid.time_at(k);
        out.t.push_back(t);
        out.x.push_back(model.x(t));
        out.y.push_back(model.y(t));
        out.s.push_back(model.s(t));
        out.dx.push_back(model.dx(t));
    }
    return out;
}

}  // namespace popdyn
