#ifndef POPDYN_SPREAD_HPP
#define POPDYN_SPREAD_HPP

#include <optional>
#include <string>
#include <vector>

#include "popdyn/params.hpp"

namespace popdyn {

/// Shape class of the interested-user curve x(t) and its rate x'(t),
/// determined by A = alpha against B = beta*q*N:
///
///   SCurve4Stage        A < (2-sqrt3) B   x sigmoid; x' rises convex, then
///                                         concave, falls concave, then convex
///   SCurve3Stage        (2-sqrt3) B <= A < B   x sigmoid; x' rises concave,
///                                         falls concave, then convex
///   ConcaveDecay2Stage  B <= A < (2+sqrt3) B   x concave; x' falls concave,
///                                         then convex
///   ConvexDecay         A >= (2+sqrt3) B  x concave; x' falls convex
///
/// Boundary ties resolve toward the regime listed (the family whose open
/// condition holds just above the boundary).
enum class Regime {
    SCurve4Stage,
    SCurve3Stage,
    ConcaveDecay2Stage,
    ConvexDecay,
};

/// Coarse split of Regime: XConcave (A >= B, x concave increasing, x' max at
/// t = 0) vs XSigmoid (A < B, x S-shaped, x' max at t').
enum class RegimeFamily { XConcave, XSigmoid };

RegimeFamily family_of(Regime r);
std::string to_string(Regime r);
std::string to_string(RegimeFamily f);

/// Zeros of x'' and x''': t2 < t_prime < t1 always. Negative values mean the
/// corresponding curvature stage boundary precedes t = 0; they are returned
/// unclamped.
struct CriticalTimes {
    double t_prime;  ///< inflection of x: g(t') = 1
    double t_one;    ///< upper zero of x''': g(t1) = 2 + sqrt3
    double t_two;    ///< lower zero of x''': g(t2) = 2 - sqrt3
};

/// Closed-form evaluation of the information-spreading process.
///
/// With tau = A + B and the growth factor g(t) = (A/B) e^{tau t}:
///
///   x(t)    = (M g - A M / B) / (g + 1)   == M (1 - e^{-tau t}) / (1 + 1/g)
///   x'(t)   = tau^2 M g / (B (g+1)^2)
///   x''(t)  = tau^3 M g (1-g) / (B (g+1)^3)
///   x'''(t) = tau^4 M g (g^2-4g+1) / (B (g+1)^4)
///
/// All evaluations are overflow-safe: once tau*t is large the reciprocal
/// 1/g is used, so x saturates to M instead of producing inf/NaN. Instances
/// are immutable and safe to share across threads.
class SpreadModel {
public:
    explicit SpreadModel(const ReducedParams& rp);
    explicit SpreadModel(const ModelParams& p);

    double a() const { return a_; }
    double b() const { return b_; }
    double m() const { return m_; }
    double tau() const { return tau_; }

    /// ln g(t) = ln(A/B) + tau * t; exact for any t where g itself overflows.
    double log_g(double t) const { return log_g0_ + tau_ * t; }

    /// g(t). Saturates to +inf once the value exceeds the double range;
    /// throws std::overflow_error only when even 1/g underflows to zero
    /// (prefer x()/log_g() for large tau*t).
    double g(double t) const;

    double x(double t) const;    ///< interested users who will view, in [0, M)
    double dx(double t) const;   ///< x'(t) > 0
    double d2x(double t) const;  ///< x''(t), sign(1 - g(t))
    double d3x(double t) const;  ///< x'''(t), sign(g^2 - 4g + 1)

    /// y(t) = ((1-q)/q) x(t) and s(t) = N - x(t)/q. Available only when the
    /// model was built from full ModelParams (q and N are not identifiable
    /// from ReducedParams); otherwise throws std::logic_error.
    double y(double t) const;
    double s(double t) const;

    CriticalTimes critical_times() const;
    Regime classify() const;

    bool has_full_params() const { return full_.has_value(); }
    const ModelParams& full_params() const;

private:
    double a_, b_, m_, tau_, log_g0_;
    std::optional<ModelParams> full_;
};

/// Regime from reduced parameters alone (classification depends only on the
/// ratio A/B).
Regime classify_reduced(double a_direct, double b_wom);

/// Spreading-process sample on a uniform grid: x, y, s and x' per point.
struct Trajectory {
    TimeGrid grid;
    std::vector<double> t, x, y, s, dx;
};

Trajectory sample_spread(const ModelParams& p, const TimeGrid& grid);

}  // namespace popdyn

#endif  // POPDYN_SPREAD_HPP
