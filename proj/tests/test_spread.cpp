#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "popdyn/spread.hpp"
#include "support/test_util.hpp"

using namespace popdyn;
using namespace popdyn::testutil;

namespace {

// Parameters behind the two reference figures: the x(t) pair (q = 0.5) and
// the four-regime dx set (q = 0.05), both with N = 1e6, beta = 0.1/N.
ModelParams figure_x_params(double alpha) { return ModelParams(1e6, alpha, 1e-7, 0.5, 1.0); }
ModelParams figure_dx_params(double alpha) { return ModelParams(1e6, alpha, 1e-7, 0.05, 1.0); }

}  // namespace

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(ModelParams(1e6, 0.1, 1e-7, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams(1e6, 0.1, 1e-7, 1.5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams(1e6, 0.0, 1e-7, 0.5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams(1e6, 0.1, -1e-7, 0.5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams(-1.0, 0.1, 1e-7, 0.5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams(1e6, 0.1, 1e-7, 0.5, 0.0), std::invalid_argument);
    CHECK_NOTHROW(ModelParams(1e6, 0.1, 1e-7, 1.0, 1.0));  // q = 1 is allowed

    CHECK_THROWS_AS(ReducedParams(0.0, 1.0, 1.0, 1.0), std::invalid_argument);
    const ReducedParams rp = ReducedParams::from(figure_x_params(0.1));
    CHECK(rp.a_direct == 0.1);
    CHECK(rp.b_wom == doctest::Approx(0.05).epsilon(1e-14));
    CHECK(rp.m_adopters == doctest::Approx(5e5).epsilon(1e-14));
}

TEST_CASE("growth factor anchor values") {
    const SpreadModel fast(figure_x_params(0.1));
    CHECK(fast.g(0.0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(fast.g(10.0) == doctest::Approx(2.0 * std::exp(1.5)).epsilon(1e-12));
    // ln g grows linearly at rate tau = 0.15.
    CHECK(fast.log_g(10.0) - fast.log_g(0.0) == doctest::Approx(1.5).epsilon(1e-12));

    const SpreadModel slow(figure_x_params(0.00005));
    CHECK(slow.g(0.0) == doctest::Approx(0.001).epsilon(1e-12));

    // Far past saturation even the reciprocal of g underflows.
    CHECK_THROWS_AS(slow.g(20000.0), std::overflow_error);
    CHECK(slow.x(20000.0) == doctest::Approx(5e5).epsilon(1e-12));
    CHECK(std::isfinite(slow.log_g(20000.0)));
}

TEST_CASE("initial conditions") {
    SplitMix64 rng(11);
    for (int i = 0; i < 20; ++i) {
        const ModelParams p = sample_params(rng);
        const SpreadModel model(p);
        CHECK(model.x(0.0) == 0.0);
        CHECK(model.y(0.0) == 0.0);
        CHECK(model.s(0.0) == p.n_users);
        CHECK(model.dx(0.0) ==
              doctest::Approx(p.alpha * p.q * p.n_users).epsilon(1e-12));
    }
}

TEST_CASE("closed-form values at the inflection") {
    // alpha = 0.00005, B = 0.05: tau = 0.05005, g(t') = 1.
    const ModelParams p = figure_x_params(0.00005);
    const SpreadModel model(p);
    const double t_prime = model.critical_times().t_prime;
    CHECK(t_prime == doctest::Approx(138.01708849115158).epsilon(1e-12));

    CHECK(model.x(t_prime) == doctest::Approx(249750.0).epsilon(1e-9));
    CHECK(model.dx(t_prime) == doctest::Approx(6262.50625).epsilon(1e-9));
    CHECK(model.d2x(t_prime) == doctest::Approx(0.0).scale(model.dx(t_prime)));

    // The inflection is real: x'' computed by finite differences of x'
    // changes sign across t'.
    CHECK(model.d2x(t_prime - 1.0) > 0.0);
    CHECK(model.d2x(t_prime + 1.0) < 0.0);
}

TEST_CASE("y and s follow x exactly") {
    const ModelParams p = figure_x_params(0.00005);
    const SpreadModel model(p);
    const double t = model.critical_times().t_prime;
    // q = 0.5: the refusing population equals the interested one.
    CHECK(model.y(t) == doctest::Approx(249750.0).epsilon(1e-9));
    CHECK(model.s(t) == doctest::Approx(1e6 - 499500.0).epsilon(1e-9));

    const ModelParams attractive(1e6, 0.01, 1e-7, 1.0, 1.0);
    const SpreadModel m1(attractive);
    CHECK(m1.y(10.0) == 0.0);
    CHECK(m1.y(1000.0) == 0.0);
}

TEST_CASE("limits at large time") {
    SplitMix64 rng(12);
    for (int i = 0; i < 50; ++i) {
        const ModelParams p = sample_params(rng);
        const SpreadModel model(p);
        const double m = p.q * p.n_users;
        const double t = 40.0 / model.tau();
        const double x = model.x(t);
        CHECK(x <= m);
        CHECK(m - x <= 1e-6 * m);
        CHECK(model.s(t) >= 0.0);
        CHECK(model.s(t) <= 1e-6 * p.n_users);
        const double ratio = (1.0 - p.q) / p.q;
        CHECK(model.y(t) == ratio * x);  // same floating-point expression
    }
}

TEST_CASE("derivatives agree with finite differences") {
    SplitMix64 rng(13);
    for (int i = 0; i < 15; ++i) {
        const ModelParams p = sample_params(rng);
        const SpreadModel model(p);
        const double tau = model.tau();
        const double h = 1e-4 / tau;
        const double t_prime = model.critical_times().t_prime;
        const double scale_dx = model.dx(std::max(t_prime, 0.0));

        for (const double t : {0.5 / tau, 2.0 / tau, std::max(t_prime, 0.0) + 1.0 / tau}) {
            const double fd_dx = fd1([&](double u) { return model.x(u); }, t, h);
            CHECK(fd_dx == doctest::Approx(model.dx(t)).epsilon(1e-4));

            const double fd_d2x = fd1([&](double u) { return model.dx(u); }, t, h);
            CHECK(std::fabs(fd_d2x - model.d2x(t)) <=
                  1e-3 * std::max(std::fabs(model.d2x(t)), tau * scale_dx * 1e-3));

            const double fd_d3x = fd1([&](double u) { return model.d2x(u); }, t, h);
            CHECK(std::fabs(fd_d3x - model.d3x(t)) <=
                  1e-3 * std::max(std::fabs(model.d3x(t)), tau * tau * scale_dx * 1e-3));
        }
    }
}

TEST_CASE("third derivative sign at t = 0 (four-regime set)") {
    // g(0) = alpha/B = 1.1 lies between the roots of g^2 - 4g + 1, so x''' < 0.
    const SpreadModel model(figure_dx_params(0.0055));
    CHECK(model.d3x(0.0) < 0.0);

    // Cross-check against a third-derivative stencil on x itself.
    const double h = 1e-2 / model.tau();
    const double fd = fd3([&](double u) { return model.x(u); }, 0.0, h);
    CHECK(fd == doctest::Approx(model.d3x(0.0)).epsilon(1e-3));
}

TEST_CASE("critical times: ordering, boundaries, signs") {
    SplitMix64 rng(14);
    for (int i = 0; i < 50; ++i) {
        const SpreadModel model(sample_params(rng));
        const CriticalTimes ct = model.critical_times();
        CHECK(ct.t_two < ct.t_prime);
        CHECK(ct.t_prime < ct.t_one);
    }

    // alpha = B exactly (power-of-two values keep the product exact): the
    // inflection sits at t = 0.
    const ModelParams boundary(2097152.0, 1.0, 9.5367431640625e-7, 0.5, 1.0);
    CHECK(SpreadModel(boundary).critical_times().t_prime == 0.0);

    // alpha = 0.0014 with B = 0.005: t2 < 0 (three-stage S curve).
    const SpreadModel three(figure_dx_params(0.0014));
    const CriticalTimes ct = three.critical_times();
    CHECK(ct.t_two == doctest::Approx(-6.873784548738871).epsilon(1e-12));
    CHECK(ct.t_two < 0.0);
    CHECK(three.classify() == Regime::SCurve3Stage);

    // x'' crosses zero inside one grid cell of t'.
    const SpreadModel slow(figure_x_params(0.00005));
    const double tp = slow.critical_times().t_prime;
    CHECK(slow.d2x(tp - 0.05) > 0.0);
    CHECK(slow.d2x(tp + 0.05) < 0.0);
    // x''' vanishes at t1 and t2 (relative to its own scale).
    const CriticalTimes cts = slow.critical_times();
    const double d3_scale = std::fabs(slow.d3x(0.0)) + std::fabs(slow.d3x(tp));
    CHECK(std::fabs(slow.d3x(cts.t_one)) <= 1e-9 * d3_scale);
    CHECK(std::fabs(slow.d3x(cts.t_two)) <= 1e-9 * d3_scale);
}

TEST_CASE("regime classification of the figure parameters") {
    CHECK(SpreadModel(figure_dx_params(0.00005)).classify() == Regime::SCurve4Stage);
    CHECK(SpreadModel(figure_dx_params(0.0014)).classify() == Regime::SCurve3Stage);
    CHECK(SpreadModel(figure_dx_params(0.0055)).classify() == Regime::ConcaveDecay2Stage);
    CHECK(SpreadModel(figure_dx_params(0.0188)).classify() == Regime::ConvexDecay);

    CHECK(family_of(Regime::SCurve4Stage) == RegimeFamily::XSigmoid);
    CHECK(family_of(Regime::SCurve3Stage) == RegimeFamily::XSigmoid);
    CHECK(family_of(Regime::ConcaveDecay2Stage) == RegimeFamily::XConcave);
    CHECK(family_of(Regime::ConvexDecay) == RegimeFamily::XConcave);
}

TEST_CASE("regime boundary tie-breaks") {
    const double b = 0.005;
    CHECK(classify_reduced(b, b) == Regime::ConcaveDecay2Stage);
    CHECK(classify_reduced((2.0 + std::sqrt(3.0)) * b, b) == Regime::ConvexDecay);
    CHECK(classify_reduced((2.0 - std::sqrt(3.0)) * b, b) == Regime::SCurve3Stage);
}

TEST_CASE("sign structure of x'' and x''' matches the classified regime") {
    struct Case {
        double alpha;
        std::vector<int> want_d2x;
        std::vector<int> want_d3x;
    };
    // Stage tables per regime; signs over t > 0.
    const std::vector<Case> cases = {
        {0.00005, {1, -1}, {1, -1, 1}},  // four-stage S curve
        {0.0014, {1, -1}, {-1, 1}},      // three-stage S curve
        {0.0055, {-1}, {-1, 1}},         // concave two-stage decay
        {0.0188, {-1}, {1}},             // convex decay
    };
    for (const Case& c : cases) {
        const SpreadModel model(figure_dx_params(c.alpha));
        const CriticalTimes ct = model.critical_times();
        const double t_end = 1.3 * std::max({ct.t_one, 40.0 / model.tau() / 4.0});
        const std::size_t n = 10000;
        const double dt = t_end / static_cast<double>(n);
        std::vector<double> d2(n), d3(n);
        for (std::size_t k = 0; k < n; ++k) {
            const double t = (k + 1) * dt;
            d2[k] = model.d2x(t);
            d3[k] = model.d3x(t);
        }
        const double s2 = std::fabs(model.d2x(std::max(ct.t_prime, 0.0) + 0.3 / model.tau()));
        const double s3 = std::fabs(model.d3x(0.0)) + std::fabs(model.d3x(std::max(ct.t_prime, 0.0)));
        CHECK(sign_runs(d2, 1e-12 * s2) == c.want_d2x);
        CHECK(sign_runs(d3, 1e-12 * s3) == c.want_d3x);

        // Each positive critical time is bracketed by a sign change within
        // one grid cell.
        for (const double tc : {ct.t_prime, ct.t_one, ct.t_two}) {
            if (tc <= 0.0 || tc >= t_end) continue;
            const bool is_inflection = tc == ct.t_prime;
            const auto& vals = is_inflection ? d2 : d3;
            const std::size_t k = static_cast<std::size_t>(tc / dt);
            REQUIRE(k >= 1);
            REQUIRE(k + 1 < n);
            CHECK(vals[k - 1] * vals[k + 1] < 0.0);
        }
    }
}

TEST_CASE("x' has a unique maximum at 0 or t'") {
    SplitMix64 rng(15);
    for (int i = 0; i < 30; ++i) {
        const ModelParams p = sample_params(rng);
        const SpreadModel model(p);
        const double t_end = 40.0 / model.tau();
        const std::size_t n = 4000;
        const double dt = t_end / static_cast<double>(n - 1);
        std::size_t k_max = 0;
        double best = -1.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double v = model.dx(k * dt);
            if (v > best) {
                best = v;
                k_max = k;
            }
        }
        const double a = model.a(), b = model.b();
        if (a > b) {
            CHECK(k_max == 0);
        } else if (a < b) {
            const double t_prime = model.critical_times().t_prime;
            CHECK(std::fabs(k_max * dt - t_prime) <= dt);
        }
    }
}

TEST_CASE("sampled trajectories conserve population and satisfy the rate equation") {
    SplitMix64 rng(16);
    for (int i = 0; i < 50; ++i) {
        const ModelParams p = sample_params(rng);
        const SpreadModel model(p);
        const double tau = model.tau();
        const TimeGrid grid(45.0 / tau / 999.0, 1000);
        const Trajectory traj = sample_spread(p, grid);

        const double m = p.q * p.n_users;
        const double b_wom = p.beta * p.q * p.n_users;
        double worst_cons = 0.0, worst_resid = 0.0;
        for (std::size_t k = 0; k < grid.n_steps; ++k) {
            worst_cons = std::max(worst_cons,
                                  std::fabs(traj.x[k] + traj.y[k] + traj.s[k] - p.n_users));
            const double x = traj.x[k];
            const double quadratic =
                p.alpha * m + (b_wom - p.alpha) * x - p.beta * x * x;
            worst_resid = std::max(worst_resid, std::fabs(traj.dx[k] - quadratic));
            // x saturates to M in double precision once tau*t passes ~36.
            if (traj.t[k] * tau <= 30.0) {
                CHECK(traj.x[k] < m);
            } else {
                CHECK(traj.x[k] <= m);
            }
            CHECK(traj.s[k] > 0.0);
            CHECK(traj.dx[k] > 0.0);
        }
        CHECK(worst_cons <= 1e-9 * p.n_users);
        CHECK(worst_resid <= 1e-8 * p.alpha * m);

        // Strict monotonicity holds over the resolvable part of the curve.
        for (std::size_t k = 1; k < grid.n_steps; ++k) {
            if (grid.time_at(k) * tau <= 30.0) {
                CHECK(traj.x[k] > traj.x[k - 1]);
                CHECK(traj.s[k] < traj.s[k - 1]);
            } else {
                CHECK(traj.x[k] >= traj.x[k - 1]);
                CHECK(traj.s[k] <= traj.s[k - 1]);
            }
        }
    }
}

TEST_CASE("single-point grid repeats the scalar operations") {
    const ModelParams p = figure_x_params(0.1);
    const SpreadModel model(p);
    const Trajectory traj = sample_spread(p, TimeGrid(1.0, 1));
    REQUIRE(traj.x.size() == 1);
    CHECK(traj.t[0] == 0.0);
    CHECK(traj.x[0] == model.x(0.0));
    CHECK(traj.y[0] == model.y(0.0));
    CHECK(traj.s[0] == model.s(0.0));
    CHECK(traj.dx[0] == model.dx(0.0));
}

TEST_CASE("rescaling (N, beta) -> (cN, beta/c) is observationally neutral") {
    SplitMix64 rng(17);
    for (int i = 0; i < 20; ++i) {
        const ModelParams p = sample_params(rng);
        const double c = 8.0;
        const ModelParams scaled(p.n_users * c, p.alpha, p.beta / c, p.q, p.gamma);
        const SpreadModel m1(p), m2(scaled);
        CHECK(m1.classify() == m2.classify());
        CHECK(m1.critical_times().t_prime ==
              doctest::Approx(m2.critical_times().t_prime).epsilon(1e-15));
        CHECK(m1.critical_times().t_one ==
              doctest::Approx(m2.critical_times().t_one).epsilon(1e-15));
        for (const double t : {1.0 / m1.tau(), 10.0 / m1.tau()}) {
            CHECK(m1.x(t) / p.n_users ==
                  doctest::Approx(m2.x(t) / scaled.n_users).epsilon(1e-14));
        }
    }
}
