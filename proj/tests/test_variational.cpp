#include "deltavar/errors.hpp"
#include "deltavar/variational.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace deltavar;

namespace {

VariationalProblem line_r1() {
    return VariationalProblem(make_timescale({0, 1, 2}), make_lagrangian("y1^2", 1), {0}, {2});
}

} // namespace

TEST_CASE("problem construction validates shapes") {
    CHECK_THROWS_AS(VariationalProblem(make_timescale({0, 1, 2}), make_lagrangian("y1^2", 1),
                                       {0, 1}, {2}),
                    Error);
    // 2r points allowed (degenerate), fewer rejected
    const VariationalProblem deg(make_timescale({0, 1}), make_lagrangian("y1^2", 1), {0}, {2});
    CHECK(deg.degenerate());
    CHECK(deg.free_count() == 0);
    CHECK_THROWS_AS(VariationalProblem(make_timescale({0, 1, 2}), make_lagrangian("y2^2", 2),
                                       {0, 0}, {1, 1}),
                    Error);
}

TEST_CASE("functional value, worked cases") {
    const VariationalProblem p = line_r1();
    CHECK(functional_value(p, make_trajectory(p, {0, 1, 2})) == 2); // y^delta = (1,1)

    const VariationalProblem zero(make_timescale({0, 1, 2}), make_lagrangian("0*y1", 1), {0}, {2});
    CHECK(functional_value(zero, make_trajectory(zero, {0, -3, 7})) == 0);

    const VariationalProblem acc(make_timescale({0, 1, 2, 3}), make_lagrangian("y2^2", 2),
                                 {0, 1}, {2, 1});
    CHECK(functional_value(acc, make_trajectory(acc, {0, 1, 2, 3})) == 0);
}

TEST_CASE("boundary layers, worked cases") {
    // left: y(sigma(a)) = y(a) + mu(a) y^delta(a)
    const VariationalProblem p2(make_timescale({0, 1, 2, 3}), make_lagrangian("y2^2", 2),
                                {0, 3}, {5, -1});
    const BoundaryLayers layers = boundary_layer_solve(p2);
    REQUIRE(layers.left.size() == 2);
    CHECK(layers.left[0] == 0);
    CHECK(layers.left[1] == 3);
    // right: y(b) = y(rho(b)) + mu(rho(b)) y^delta(rho(b))
    REQUIRE(layers.right.size() == 2);
    CHECK(layers.right[0] == 5);
    CHECK(layers.right[1] == 4);

    const BoundaryLayers l1 = boundary_layer_solve(line_r1());
    CHECK(l1.left == std::vector<double>{0});
    CHECK(l1.right == std::vector<double>{2});
}

TEST_CASE("embedding free values") {
    const VariationalProblem p = line_r1();
    const Trajectory y = embed_free(p, std::vector<double>{1.5});
    CHECK(y.y[0] == 0);
    CHECK(y.y[1] == 1.5);
    CHECK(y.y[2] == 2);
    CHECK(is_admissible(p, y, 1e-12));

    CHECK_THROWS_AS(embed_free(p, std::vector<double>{1, 2}), Error);

    const VariationalProblem deg(make_timescale({0, 1}), make_lagrangian("y1^2", 1), {0}, {2});
    const Trajectory forced = embed_free(deg, {});
    CHECK(forced.y.size() == 2);
}

TEST_CASE("embedding is a bijection onto the admissible set") {
    Rng rng(21);
    for (int trial = 0; trial < 30; ++trial) {
        const int r = rng.uniform_int(1, 3);
        const auto n = static_cast<std::size_t>(rng.uniform_int(2 * r + 1, 12));
        const VariationalProblem p = testsupport::random_problem(rng, r, n);

        const auto free = testsupport::random_free(rng, p.free_count());
        const Trajectory y = embed_free(p, free);
        CHECK(is_admissible(p, y, 1e-10));
        const auto back = interior_values(p, y);
        REQUIRE(back.size() == free.size());
        for (std::size_t i = 0; i < free.size(); ++i) CHECK(back[i] == free[i]);

        // re-embedding the extracted interior reproduces the trajectory
        const Trajectory again = embed_free(p, back);
        CHECK(max_abs_diff(again.y, y.y) == 0);
    }
}

TEST_CASE("admissibility detects violated conditions") {
    const VariationalProblem p = line_r1();
    Trajectory y = embed_free(p, std::vector<double>{0.5});
    CHECK(is_admissible(p, y, 1e-12));

    std::vector<double> vals(y.y.values().begin(), y.y.values().end());
    vals[0] += 1.0;
    CHECK(!is_admissible(p, make_trajectory(p, vals), 1e-10));

    // r = 2: a straight line is admissible iff the slope data agree
    const VariationalProblem p2(make_timescale({0, 1, 2, 3, 4, 5}), make_lagrangian("y2^2", 2),
                                {0, 1}, {4, 1});
    const Trajectory line = make_trajectory(p2, {0, 1, 2, 3, 4, 5});
    CHECK(is_admissible(p2, line, 1e-12));
    const VariationalProblem p2bad(make_timescale({0, 1, 2, 3, 4, 5}), make_lagrangian("y2^2", 2),
                                   {0, 1}, {4, 2});
    CHECK(!is_admissible(p2bad, line, 1e-10));
}

TEST_CASE("a 2r-point problem admits exactly one trajectory") {
    const VariationalProblem d1(make_timescale({0, 1}), make_lagrangian("y1^2", 1), {0.5}, {2});
    CHECK(degenerate_constant_check(d1, 10) == 0);

    const VariationalProblem d2(make_timescale({0, 1, 2, 3}), make_lagrangian("y2^2 + y0^2", 2),
                                {0.5, 1}, {2, -3});
    CHECK(degenerate_constant_check(d2, 10) == 0);

    CHECK_THROWS_AS(degenerate_constant_check(line_r1(), 4), Error);
    CHECK_THROWS_AS(degenerate_constant_check(d1, 0), Error);
}

TEST_CASE("the r-infinity norm") {
    const VariationalProblem p = line_r1();
    const Trajectory y = make_trajectory(p, {0, 1, 0});
    const Trajectory flat = make_trajectory(p, {0, 0, 0});
    CHECK(norm_r_inf(p, y, y) == 0);
    CHECK(norm_r_inf(p, y, flat) == 2); // sup |diff| = 1 plus sup |delta diff| = 1

    const Trajectory dbl = make_trajectory(p, {0, 2, 0});
    CHECK(norm_r_inf(p, dbl, flat) == 2 * norm_r_inf(p, y, flat));
}

TEST_CASE("norm properties on random triples") {
    Rng rng(31);
    for (int trial = 0; trial < 25; ++trial) {
        const int r = rng.uniform_int(1, 3);
        const auto n = static_cast<std::size_t>(rng.uniform_int(2 * r + 1, 10));
        const VariationalProblem p = testsupport::random_problem(rng, r, n);
        auto rand_traj = [&] {
            std::vector<double> v(n);
            for (auto& x : v) x = rng.uniform(-2, 2);
            return make_trajectory(p, v);
        };
        const Trajectory a = rand_traj(), b = rand_traj(), c = rand_traj();
        const double ab = norm_r_inf(p, a, b);
        const double bc = norm_r_inf(p, b, c);
        const double ac = norm_r_inf(p, a, c);
        CHECK(ab >= 0);
        CHECK(ac <= ab + bc + 1e-12);
        CHECK(norm_r_inf(p, a, a) == 0);
        if (max_abs_diff(a.y, b.y) > 0) CHECK(ab > 0);
    }
}

TEST_CASE("the functional is a function of the derivative stack") {
    Rng rng(41);
    for (int trial = 0; trial < 10; ++trial) {
        const int r = rng.uniform_int(1, 3);
        const auto n = static_cast<std::size_t>(rng.uniform_int(2 * r + 1, 10));
        const VariationalProblem p = testsupport::random_problem(rng, r, n);
        const Trajectory y = embed_free(p, testsupport::random_free(rng, p.free_count()));

        // recompute the integral from the stack alone
        const auto stack = derivative_stack(p, y);
        double sum = 0.0;
        std::vector<double> slots(static_cast<std::size_t>(r) + 1);
        for (std::size_t k = 0; k + static_cast<std::size_t>(r) < n; ++k) {
            for (std::size_t s = 0; s < slots.size(); ++s) slots[s] = stack[s][k];
            sum += p.scale().mu_at(k) * p.lagrangian().eval(p.scale()[k], slots);
        }
        CHECK(functional_value(p, y) == doctest::Approx(sum).epsilon(1e-14));
    }
}

TEST_CASE("trajectories from other scales are rejected") {
    const VariationalProblem p = line_r1();
    const TimeScale other = make_timescale({0, 1, 2, 3});
    const GridFunction g = GridFunction::constant(other, 1.0);
    CHECK_THROWS_AS(functional_value(p, Trajectory{g}), Error);
    CHECK_THROWS_AS(make_trajectory(p, {0, 1}), Error);
}
