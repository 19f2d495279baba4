#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "heatjet/catalog.hpp"
#include "heatjet/halfline.hpp"

using namespace heatjet;

TEST_CASE("precompose with the square") {
    HalfLineFn lin = make_halfline("t");
    auto g1 = precompose_square(lin);
    CHECK(g1(2.0) == 4.0);
    CHECK(g1(-2.0) == 4.0);  // even exactly: same evaluation point

    HalfLineFn root = make_halfline("sqrt");
    auto g2 = precompose_square(root);
    CHECK(g2(0.5) == doctest::Approx(0.5));
    CHECK(g2(-0.5) == doctest::Approx(0.5));  // |x|

    HalfLineFn cs = make_halfline("cossqrt");
    auto g3 = precompose_square(cs);
    for (double x : {0.3, -0.7, 1.9}) CHECK(g3(x) == doctest::Approx(std::cos(x)).epsilon(1e-14));
}

TEST_CASE("square root is not square smooth; entire examples are") {
    SquareSmoothResult root = square_smooth_test(make_halfline("sqrt"), 4);
    CHECK_FALSE(root.square_smooth);
    CHECK(root.per_order[0].defect == doctest::Approx(2.0).epsilon(1e-9));

    SquareSmoothResult cs = square_smooth_test(make_halfline("cossqrt"), 4);
    CHECK(cs.square_smooth);

    SquareSmoothResult t2 = square_smooth_test(make_halfline("t2"), 4);
    CHECK(t2.square_smooth);
    CHECK(t2.max_defect < 1e-9);
}

TEST_CASE("overflow near zero is reported as evaluation failure, not as a defect") {
    // e^{1/t} blows past the double range on the ladder
    HalfLineFn f([](double t) { return std::exp(1.0 / t); });
    SquareSmoothResult r = square_smooth_test(f, 2);
    CHECK(r.eval_failure);
    CHECK_FALSE(r.square_smooth);
}

TEST_CASE("derivative limits at 0+") {
    auto t2 = seeley_limits(make_halfline("t2"), 3);
    CHECK(std::abs(t2[0].value) < 1e-12);
    CHECK(std::abs(t2[1].value) < 1e-10);
    CHECK(t2[2].value == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(std::abs(t2[3].value) < 1e-8);

    // cos(sqrt t) = 1 - t/2 + t^2/24 - ...
    auto cs = seeley_limits(make_halfline("cossqrt"), 2);
    CHECK(cs[0].value == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(cs[1].value == doctest::Approx(-0.5).epsilon(1e-9));
    CHECK(cs[2].value == doctest::Approx(1.0 / 12.0).epsilon(1e-8));
    CHECK(seeley_smooth(cs));

    auto root = seeley_limits(make_halfline("sqrt"), 1);
    CHECK(root[1].diverged);
    CHECK_FALSE(seeley_smooth(root));
}

TEST_CASE("square smooth implies convergent derivative limits over the corpus") {
    for (const char* name : {"t", "t2", "cossqrt", "exp"}) {
        HalfLineFn f = make_halfline(name);
        if (square_smooth_test(f, 3).square_smooth) CHECK(seeley_smooth(seeley_limits(f, 3)));
    }
}

TEST_CASE("the derivative of a square-smooth function is square smooth (one order down)") {
    HalfLineFn cs = make_halfline("cossqrt");
    REQUIRE(square_smooth_test(cs, 3).square_smooth);
    // numerically differentiated copy: only evaluations of cs are used
    HalfLineFn dcs([cs](double t) {
        const double h = std::min(t / 4.0, fd_step(1, t));
        return (cs(t + h) - cs(t - h)) / (2.0 * h);
    });
    SquareSmoothResult r = square_smooth_test(dcs, 2, 1e-3);
    CHECK(r.square_smooth);
}

TEST_CASE("extension to the whole line") {
    // linear function: the reflection weights reproduce t on the left
    Extension lin = extend_to_line(make_halfline("t"), 4);
    for (double t : {-2.0, -0.75, -0.1, -0.003}) CHECK(lin.fn(t) == doctest::Approx(t).epsilon(1e-10));

    // restriction to t >= 0 is the original function, bit-exact
    HalfLineFn cs = make_halfline("cossqrt");
    Extension ecs = extend_to_line(cs, 4);
    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
        const double t = std::ldexp(static_cast<double>(rng() >> 11), -53) * 3.0 + 1e-8;
        CHECK(ecs.fn(t) == cs(t));
    }

    // matched one-sided derivatives at 0 for cos(sqrt t): 1, -1/2, 1/12;
    // the k-th difference ladder stops before rounding noise (~ eps / h^k)
    const double targets[3] = {1.0, -0.5, 1.0 / 12.0};
    for (int k = 0; k <= 2; ++k) {
        std::vector<double> ladder;
        const int j_max = (k < 2) ? 14 : 11;
        for (int j = 4; j <= j_max; ++j) {
            const double h = std::ldexp(1.0, -j);
            if (k == 0)
                ladder.push_back(ecs.fn(-h));
            else
                ladder.push_back(forward_difference_at_zero([&](double t) { return ecs.fn(-t); }, k, h));
        }
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        CHECK(sign * richardson_limit(ladder).limit == doctest::Approx(targets[k]).epsilon(1e-6));
    }

    // flat function: extension and all derivative limits vanish
    HalfLineFn flat = make_halfline("expinv");
    auto lims = seeley_limits(flat, 4);
    for (const auto& e : lims) CHECK(std::abs(e.value) < 1e-6);
    Extension eflat = extend_to_line(flat, 4);
    for (double t : {-0.002, -0.001}) CHECK(std::abs(eflat.fn(t)) < 1e-8);
    CHECK(std::abs(eflat.fn(-0.05)) < 0.1);  // decays toward 0, not pointwise tiny

    CHECK_THROWS_AS(extend_to_line(make_halfline("t"), 13), std::invalid_argument);
    CHECK_THROWS_AS(extend_to_line(make_halfline("sqrt"), 2), std::domain_error);
}

TEST_CASE("full report wiring and the h(0)/2 cross-check") {
    SmoothnessReport rep = analyze_halfline(make_halfline("cossqrt"), 4);
    CHECK(rep.square.square_smooth);
    CHECK(rep.is_seeley_smooth);
    CHECK(rep.extended);
    CHECK(rep.derivative_crosscheck < 1e-6);

    SmoothnessReport bad = analyze_halfline(make_halfline("sqrt"), 4);
    CHECK_FALSE(bad.square.square_smooth);
    CHECK_FALSE(bad.extended);
}

TEST_CASE("half-line evaluation contract") {
    HalfLineFn f = make_halfline("t2");
    CHECK_THROWS_AS(f(-1.0), std::domain_error);
    CHECK(f(0.0) == 0.0);
    HalfLineFn bare([](double t) { return t; });
    CHECK_THROWS_AS(bare(0.0), std::domain_error);
    // the fallback derivative agrees with the oracle where both exist
    HalfLineFn e = make_halfline("exp");
    HalfLineFn e_noderiv([](double t) { return std::exp(t); });
    for (int k : {1, 2}) CHECK(e_noderiv.derivative(k, 0.8) == doctest::Approx(e.derivative(k, 0.8)).epsilon(1e-6));
}
