#include "deltavar/errors.hpp"
#include "deltavar/euler_lagrange.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace deltavar;

TEST_CASE("costate recursion, worked cases") {
    // L = y1^2: dL/dy0 vanishes, so the level-0 costate is the constant -k0
    const VariationalProblem p(make_timescale({0, 1, 2, 3}), make_lagrangian("y1^2", 1), {0}, {3});
    const Trajectory y = make_trajectory(p, {0, 1, 2, 3});
    const AdjointState s = adjoint_recursion(p, y, std::vector<double>{2.5});
    REQUIRE(s.p_sigma.size() == 1);
    for (double v : s.p_sigma[0].values()) CHECK(v == -2.5);

    // zero constants and L independent of the lower slots: every level vanishes
    const VariationalProblem pz(make_timescale({0, 1, 2, 3, 4, 5}), make_lagrangian("y2^2", 2),
                                {0, 1}, {4, 1});
    const Trajectory line = make_trajectory(pz, {0, 1, 2, 3, 4, 5});
    const AdjointState sz = adjoint_recursion(pz, line, std::vector<double>{0, 0});
    for (const auto& level : sz.p_sigma) CHECK(level.max_abs() == 0);

    // r=2, L=y2^2: p1^sigma(t) = k0 (sigma(t) - a) - k1
    const AdjointState s2 = adjoint_recursion(pz, line, std::vector<double>{0.5, -1});
    const TimeScale& ts = pz.scale();
    for (std::size_t k = 0; k < s2.p_sigma[1].size(); ++k) {
        const double sig = ts.sigma(ts.point(k)).value;
        CHECK(s2.p_sigma[1][k] == doctest::Approx(0.5 * (sig - 0.0) + 1.0).epsilon(1e-14));
    }
}

TEST_CASE("residual of the necessary condition, worked cases") {
    const VariationalProblem p(make_timescale({0, 1, 2, 3}), make_lagrangian("y1^2", 1), {0}, {3});
    const Trajectory y = make_trajectory(p, {0, 1, 2, 3});
    const GridFunction r_fit = el_residual(p, y, std::vector<double>{2});
    CHECK(r_fit.max_abs() == 0); // dL/dy1 = 2 on the line, cancelled by c1 = 2

    const GridFunction r_raw = el_residual(p, y, std::vector<double>{0});
    for (double v : r_raw.values()) CHECK(v == 2);

    const VariationalProblem zero(make_timescale({0, 1, 2, 3}), make_lagrangian("0*y1", 1),
                                  {0}, {3});
    CHECK(el_residual(zero, make_trajectory(zero, {0, 2, -1, 3}), std::vector<double>{0}).max_abs() ==
          0);

    CHECK_THROWS_AS(el_residual(p, y, std::vector<double>{1, 2}), Error);
}

TEST_CASE("constant fitting, worked cases") {
    const VariationalProblem p(make_timescale({0, 1, 2, 3}), make_lagrangian("y1^2", 1), {0}, {3});
    const ELReport stat = fit_constants(p, make_trajectory(p, {0, 1, 2, 3}));
    REQUIRE(stat.constants.size() == 1);
    CHECK(stat.constants[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(stat.residual_sup <= 1e-12);
    CHECK(stat.stationary);

    const ELReport bent = fit_constants(p, make_trajectory(p, {0, 2, 1, 3}));
    CHECK(bent.residual_sup > 1e-2);
    CHECK(!bent.stationary);
    CHECK(bent.residual_l2 >= bent.residual_sup);

    const VariationalProblem zero(make_timescale({0, 1, 2, 3}), make_lagrangian("0*y1", 1),
                                  {0}, {3});
    const ELReport z = fit_constants(zero, make_trajectory(zero, {0, 2, -1, 3}));
    CHECK(z.constants[0] == 0);
    CHECK(z.residual_sup == 0);
}

TEST_CASE("the engine requires 2r+1 points") {
    const VariationalProblem deg(make_timescale({0, 1}), make_lagrangian("y1^2", 1), {0}, {1});
    const Trajectory y = embed_free(deg, {});
    CHECK_THROWS_AS(fit_constants(deg, y), Error);
    CHECK_THROWS_AS(el_residual(deg, y, std::vector<double>{0}), Error);
}

TEST_CASE("first-order closed form matches the engine and the hand formula") {
    Rng rng(17);
    for (int trial = 0; trial < 25; ++trial) {
        const auto n = static_cast<std::size_t>(rng.uniform_int(3, 12));
        const VariationalProblem p = testsupport::random_problem(rng, 1, n);
        const Trajectory y = embed_free(p, testsupport::random_free(rng, p.free_count()));
        const double c1 = rng.uniform(-2, 2);
        const GridFunction a = el_residual_r1(p, y, c1);
        const GridFunction b = el_residual(p, y, std::vector<double>{c1});
        CHECK(max_abs_diff(a, b) <= 1e-12 * (1 + a.max_abs()));
    }

    // harmonic L: residual is 2 y^delta(t) + 2 * integral of y up to sigma(t) - c1
    const VariationalProblem ph(make_timescale({0, 1, 2, 3}), make_lagrangian("y1^2 - y0^2", 1),
                                {0}, {2});
    const Trajectory yh = make_trajectory(ph, {0, 0.5, -1, 2});
    const double c1 = 0.75;
    const GridFunction res = el_residual_r1(ph, yh, c1);
    const GridFunction dy = delta_derivative(yh.y);
    const TimeScale& ts = ph.scale();
    for (std::size_t k = 0; k < res.size(); ++k) {
        double integral = 0.0;
        for (std::size_t m = 0; m <= k; ++m) integral += ts.mu_at(m) * yh.y[m];
        CHECK(res[k] == doctest::Approx(2 * dy[k] + 2 * integral - c1).epsilon(1e-13));
    }

    CHECK_THROWS_AS(el_residual_r1(testsupport::random_problem(rng, 2, 8),
                                   embed_free(testsupport::random_problem(rng, 2, 8),
                                              std::vector<double>(4, 0.0)),
                                   0.0),
                    Error);
}

TEST_CASE("second-order closed form matches the engine") {
    Rng rng(19);
    for (int trial = 0; trial < 25; ++trial) {
        const auto n = static_cast<std::size_t>(rng.uniform_int(5, 12));
        const VariationalProblem p = testsupport::random_problem(rng, 2, n);
        const Trajectory y = embed_free(p, testsupport::random_free(rng, p.free_count()));
        const double c1 = rng.uniform(-2, 2), c2 = rng.uniform(-2, 2);
        const GridFunction a = el_residual_r2(p, y, c1, c2);
        const GridFunction b = el_residual(p, y, std::vector<double>{c1, c2});
        CHECK(max_abs_diff(a, b) <= 1e-12 * (1 + a.max_abs()));
    }

    // L = y2^2 on a line with zero constants: every term vanishes
    const VariationalProblem p2(make_timescale({0, 1, 2, 3, 4, 5}), make_lagrangian("y2^2", 2),
                                {0, 1}, {4, 1});
    const Trajectory line = make_trajectory(p2, {0, 1, 2, 3, 4, 5});
    CHECK(el_residual_r2(p2, line, 0, 0).max_abs() == 0);
}

TEST_CASE("residual dependence on the constants is trajectory-free") {
    Rng rng(23);
    for (int trial = 0; trial < 15; ++trial) {
        const int r = rng.uniform_int(1, 3);
        const auto n = static_cast<std::size_t>(rng.uniform_int(2 * r + 1, 11));
        const VariationalProblem p = testsupport::random_problem(rng, r, n);
        const Trajectory y1 = embed_free(p, testsupport::random_free(rng, p.free_count()));
        const Trajectory y2 = embed_free(p, testsupport::random_free(rng, p.free_count()));
        std::vector<double> kappa(static_cast<std::size_t>(r));
        for (auto& v : kappa) v = rng.uniform(-3, 3);
        const std::vector<double> zeros(static_cast<std::size_t>(r), 0.0);

        const GridFunction d1 = el_residual(p, y1, kappa) - el_residual(p, y1, zeros);
        const GridFunction d2 = el_residual(p, y2, kappa) - el_residual(p, y2, zeros);
        CHECK(max_abs_diff(d1, d2) <= 1e-12 * (1 + d1.max_abs()));
    }
}

TEST_CASE("differentiated lattice form, worked cases") {
    // r=1, L=y1^2: the form reduces to 2 y^{delta delta}
    const VariationalProblem p(TimeScale::h_window(0, 5, 1), make_lagrangian("y1^2", 1), {0}, {5});
    const Trajectory affine = make_trajectory(p, {0, 1, 2, 3, 4, 5});
    CHECK(h_el_differentiated(p, affine).max_abs() == 0);

    const Trajectory bent = make_trajectory(p, {0, 1, 3, 3, 4, 5});
    const GridFunction form = h_el_differentiated(p, bent);
    const GridFunction ddy = delta_derivative_n(bent.y, 2);
    for (std::size_t k = 0; k < form.size(); ++k)
        CHECK(form[k] == doctest::Approx(2 * ddy[k]).epsilon(1e-13));

    // r=2, L=y2^2 on an affine trajectory
    const VariationalProblem p2(TimeScale::h_window(0, 5, 1), make_lagrangian("y2^2", 2),
                                {0, 1}, {4, 1});
    CHECK(h_el_differentiated(p2, make_trajectory(p2, {0, 1, 2, 3, 4, 5})).max_abs() == 0);

    // non-uniform scales are rejected
    const VariationalProblem pn(make_timescale({0, 1, 2.5, 3, 4.5}), make_lagrangian("y1^2", 1),
                                {0}, {1});
    CHECK_THROWS_AS(h_el_differentiated(pn, make_trajectory(pn, {0, 1, 2, 1, 0})), Error);
}

TEST_CASE("differentiated form equals the delta derivative of the fitted residual") {
    Rng rng(29);
    for (int trial = 0; trial < 25; ++trial) {
        const int r = rng.uniform_int(1, 2);
        const int n = rng.uniform_int(2 * r + 2, 12);
        const double h = std::vector<double>{0.25, 0.5, 1.0}[static_cast<std::size_t>(
            rng.uniform_int(0, 2))];
        const TimeScale ts = TimeScale::h_window(0, (n - 1) * h, h);
        auto lag = testsupport::random_convex_quadratic(rng, r);
        std::vector<double> left(static_cast<std::size_t>(r)), right(static_cast<std::size_t>(r));
        for (auto& v : left) v = rng.uniform(-1, 1);
        for (auto& v : right) v = rng.uniform(-1, 1);
        const VariationalProblem p(ts, std::move(lag), left, right);
        const Trajectory y = embed_free(p, testsupport::random_free(rng, p.free_count()));

        const ELReport rep = fit_constants(p, y);
        const GridFunction lhs = h_el_differentiated(p, y);
        const GridFunction rhs = delta_derivative_n(rep.residual, static_cast<std::size_t>(r));
        CHECK(max_abs_diff(lhs, rhs) <= 1e-9 * (1 + lhs.max_abs()));
    }
}

TEST_CASE("control form structure") {
    const VariationalProblem p2(make_timescale({0, 1, 2, 3, 4, 5}), make_lagrangian("y2^2", 2),
                                {0, 1}, {4, 1});
    const ControlForm cf2 = to_control_form(p2);
    CHECK(cf2.A == std::vector<std::vector<double>>{{0, 1}, {0, 0}});
    CHECK(cf2.B == std::vector<double>{0, 1});

    const VariationalProblem p1(make_timescale({0, 1, 2}), make_lagrangian("y1^2", 1), {0}, {2});
    const ControlForm cf1 = to_control_form(p1);
    CHECK(cf1.A == std::vector<std::vector<double>>{{0}});
    CHECK(cf1.B == std::vector<double>{1});

    // I + mu A is unit upper triangular for any mu, so A is nilpotent of index r
    std::vector<std::vector<double>> power = cf2.A;
    for (std::size_t k = 1; k < cf2.order; ++k) {
        std::vector<std::vector<double>> next(cf2.order, std::vector<double>(cf2.order, 0.0));
        for (std::size_t i = 0; i < cf2.order; ++i)
            for (std::size_t j = 0; j < cf2.order; ++j)
                for (std::size_t m = 0; m < cf2.order; ++m)
                    next[i][j] += power[i][m] * cf2.A[m][j];
        power = next;
    }
    for (const auto& row : power)
        for (double v : row) CHECK(v == 0);
}

TEST_CASE("state simulation, worked cases") {
    const VariationalProblem p1(make_timescale({0, 1, 2}), make_lagrangian("y1^2", 1), {0}, {2});
    const ControlForm cf = to_control_form(p1);

    const GridFunction u0 = GridFunction::constant(p1.scale().kappa_trunc(1), 0.0);
    const auto zero_traj = simulate_state(cf, p1.scale(), std::vector<double>{0}, u0);
    CHECK(zero_traj[0].max_abs() == 0);

    const GridFunction ones = GridFunction::constant(p1.scale().kappa_trunc(1), 1.0);
    const auto ramp = simulate_state(cf, p1.scale(), std::vector<double>{0}, ones);
    CHECK(ramp[0][0] == 0);
    CHECK(ramp[0][1] == 1);
    CHECK(ramp[0][2] == 2);

    CHECK_THROWS_AS(simulate_state(cf, p1.scale(), std::vector<double>{0, 1}, ones), Error);
}

TEST_CASE("state simulation reconstructs the derivative stack") {
    Rng rng(37);
    for (int trial = 0; trial < 25; ++trial) {
        const int r = rng.uniform_int(1, 3);
        const auto n = static_cast<std::size_t>(rng.uniform_int(2 * r + 1, 12));
        const VariationalProblem p = testsupport::random_problem(rng, r, n);
        const Trajectory y = embed_free(p, testsupport::random_free(rng, p.free_count()));
        const auto stack = derivative_stack(p, y);

        const ControlForm cf = to_control_form(p);
        std::vector<double> x_a(p.left_boundary().begin(), p.left_boundary().end());
        const auto sim = simulate_state(cf, p.scale(), x_a, stack.back());

        for (std::size_t i = 0; i < cf.order; ++i)
            for (std::size_t k = 0; k < sim[i].size(); ++k)
                CHECK(std::abs(sim[i][k] - stack[i][k]) <= 1e-12 * (1 + std::abs(stack[i][k])));
    }
}

TEST_CASE("homogeneous costate system forces zero") {
    Rng rng(43);
    for (int r = 1; r <= 3; ++r)
        for (int trial = 0; trial < 10; ++trial) {
            const auto n = static_cast<std::size_t>(rng.uniform_int(2 * r + 1, 14));
            const TimeScale ts = testsupport::random_scale(rng, n);
            CHECK(homogeneous_adjoint_sup(ts, r) <= 1e-12);
        }
    CHECK_THROWS_AS(homogeneous_adjoint_sup(make_timescale({0, 1, 2, 3}), 2), Error);
}

TEST_CASE("costate levels satisfy their defining recurrences") {
    Rng rng(47);
    const VariationalProblem p = testsupport::random_problem(rng, 3, 10);
    const Trajectory y = embed_free(p, testsupport::random_free(rng, p.free_count()));
    std::vector<double> kappa{0.3, -1.2, 0.8};
    const AdjointState s = adjoint_recursion(p, y, kappa);
    const TimeScale& ts = p.scale();

    for (std::size_t i = 0; i < 3; ++i) {
        GridFunction integrand = partial_along(p, y, static_cast<int>(i));
        if (i > 0) integrand += s.p_sigma[i - 1];
        for (std::size_t k = 0; k < s.p_sigma[i].size(); ++k) {
            double acc = 0.0;
            for (std::size_t m = 0; m <= k; ++m) acc += ts.mu_at(m) * integrand[m];
            const double expect = -acc - kappa[i];
            CHECK(std::abs(s.p_sigma[i][k] - expect) <= 1e-12 * (1 + std::abs(expect)));
        }
    }
}
