#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "heatjet/distribution.hpp"
#include "heatjet/heat_identities.hpp"

using namespace heatjet;

namespace {
PairingInput std_bump() { return PairingInput::from(TestFunction::bump(-1.0, 1.0)); }
}  // namespace

TEST_CASE("atom pairings are exact") {
    const PairingInput phi = std_bump();
    CHECK(pair(Distribution::dirac(), phi).value == phi(0.0));
    CHECK(pair(Distribution::dirac(0.0, 1, 1.0), phi).value == -phi.derivative(1, 0.0));
    CHECK(pair(Distribution::dirac(0.3, 2, 2.0), phi).value == 2.0 * phi.derivative(2, 0.3));
    // derivative of the point mass: two sign flips
    CHECK(pair(derivative(Distribution::dirac(), 2), phi).value == phi.derivative(2, 0.0));
    CHECK_THROWS_AS(pair(Distribution::dirac(0.0, 1), PairingInput::plateau(1.0, 1.0)),
                    std::invalid_argument);
}

TEST_CASE("gaussian-decay input against the heat kernel has a closed form") {
    const PairingInput gauss = PairingInput::gaussian();
    for (double t : {0.1, 0.5, 1.0, 2.0}) {
        const double v = pair(heat_kernel(t), gauss).value;
        CHECK(v == doctest::Approx(1.0 / std::sqrt(1.0 + 4.0 * t)).epsilon(1e-9));
    }
    CHECK(pair(heat_kernel(2.0), gauss).value == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
    CHECK(pair(heat_kernel(0.0), gauss).value == 1.0);
}

TEST_CASE("heat kernel distribution by cases") {
    Distribution k0 = heat_kernel(0.0);
    CHECK(k0.atoms().size() == 1);
    CHECK_FALSE(k0.has_density());

    Distribution kq = heat_kernel(0.25);
    REQUIRE(kq.has_density());
    for (double x : {0.0, 0.4, -1.2})
        CHECK(kq.density().rho(x) ==
              doctest::Approx(std::exp(-x * x) / std::sqrt(std::numbers::pi)).epsilon(1e-14));

    for (double t : {0.1, 1.0, 10.0})
        CHECK(pair(heat_kernel(t), PairingInput::constant(1.0)).value == doctest::Approx(1.0).epsilon(1e-13));

    CHECK_THROWS_AS(heat_kernel(-0.1), std::invalid_argument);
}

TEST_CASE("distributional derivative against densities") {
    // i(rho) with rho a bump; <i(rho)', phi> = -<i(rho), phi'>
    TestFunction rho_fn = TestFunction::bump(-0.8, 0.8, 1.5);
    Density d;
    d.rho = [rho_fn](double x) { return rho_fn(x); };
    d.decay = Decay::compact;
    d.lo = -0.8;
    d.hi = 0.8;
    Distribution i_rho = Distribution::from_density(d);
    const PairingInput phi = PairingInput::from(TestFunction::bump(-1.0, 1.0));

    const double lhs = pair(derivative(i_rho, 1), phi).value;
    const double rhs = -pair(i_rho, phi.derivative_shifted(1)).value;
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));

    // on atoms the adjunction cancels exactly
    Distribution atom = Distribution::dirac(0.2, 0, 1.7);
    CHECK(pair(derivative(atom, 1), phi).value + pair(atom, phi.derivative_shifted(1)).value == 0.0);

    // <K(t)'', phi> = <K(t), phi''>
    const double a = pair(derivative(heat_kernel(0.4), 2), phi).value;
    const double b = pair(heat_kernel(0.4), phi.derivative_shifted(2)).value;
    CHECK(a == doctest::Approx(b).epsilon(1e-10));
}

TEST_CASE("pairing is linear in the input") {
    std::mt19937_64 rng(29);
    auto u = [&] { return std::ldexp(static_cast<double>(rng() >> 11), -53) * 4.0 - 2.0; };
    Distribution k = heat_kernel(0.7);
    for (int i = 0; i < 20; ++i) {
        const double a = u(), b = u();
        TestFunction f1 = TestFunction::bump(-1.2, 0.9);
        TestFunction f2 = TestFunction::bump(-0.5, 1.4, 0.7);
        TestFunction combo = f1.scaled(a) + f2.scaled(b);
        const double lhs = pair(k, PairingInput::from(combo)).value;
        const double rhs = a * pair(k, PairingInput::from(f1)).value + b * pair(k, PairingInput::from(f2)).value;
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("heat evolution") {
    // t = 0 is the identity
    Distribution d0 = Distribution::dirac();
    Distribution same = heat_evolve(d0, 0.0);
    CHECK(same.atoms().size() == 1);

    // the point mass evolves to the gaussian kernel
    Distribution g = heat_evolve(d0, 0.6);
    REQUIRE(g.has_density());
    for (double x : {0.0, 0.5, -1.7})
        CHECK(g.density().rho(x) == doctest::Approx(gauss_kernel(x, 0.6)).epsilon(1e-13));

    // first-derivative point mass evolves to d/dx G = (-x / 2t) G
    Distribution g1 = heat_evolve(Distribution::dirac(0.0, 1, 1.0), 0.6);
    for (double x : {0.2, -0.9, 1.4})
        CHECK(g1.density().rho(x) ==
              doctest::Approx((-x / (2.0 * 0.6)) * gauss_kernel(x, 0.6)).epsilon(1e-12));

    CHECK_THROWS_AS(heat_evolve(d0, -1.0), std::invalid_argument);
    Density bad;
    bad.rho = [](double) { return 1.0; };
    bad.decay = Decay::poly_bounded;
    CHECK_THROWS_AS(heat_evolve(Distribution::from_density(bad), 0.5), std::invalid_argument);

    // compact density: evolution agrees with pairing the kernel directly
    TestFunction rho_fn = TestFunction::bump(-0.5, 0.5);
    Density d;
    d.rho = [rho_fn](double x) { return rho_fn(x); };
    d.decay = Decay::compact;
    d.lo = -0.5;
    d.hi = 0.5;
    Distribution evolved = heat_evolve(Distribution::from_density(d), 0.3);
    // <evolve(rho), phi> = integral rho(y) <K_y(t), phi> dy with K_y centered at y
    const PairingInput phi = std_bump();
    const double lhs = pair(evolved, phi).value;
    auto inner = [&](double y) {
        Density shifted;
        shifted.rho = [y](double x) { return gauss_kernel(x - y, 0.3); };
        shifted.decay = Decay::gaussian;
        shifted.gaussian_tau = 0.3;
        shifted.center = y;
        shifted.lo = y - 12.0;
        shifted.hi = y + 12.0;
        shifted.hermite_profile = [](double) { return 1.0; };
        return pair(Distribution::from_density(shifted), phi).value;
    };
    const double rhs = integrate_adaptive([&](double y) { return rho_fn(y) * inner(y); }, -0.5, 0.5).value;
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
}

TEST_CASE("mass and second moment of the evolved point mass") {
    for (double t : {0.25, 1.0}) {
        Distribution e = heat_evolve(Distribution::dirac(), t);
        const double flat = 11.0 * std::sqrt(t) + 1.0;
        CHECK(pair(e, PairingInput::plateau(flat, 1.0)).value == doctest::Approx(1.0).epsilon(1e-10));
    }
    for (double t : {0.1, 0.5, 2.0})
        CHECK(pair(heat_kernel(t), PairingInput::monomial(2)).value ==
              doctest::Approx(2.0 * t).epsilon(1e-10));
}

TEST_CASE("time-derivative identity for the pairing curve") {
    const PairingInput phi = std_bump();
    IdentityResidual r0 = phi_derivative_identity(phi, 0, 0.4);
    CHECK(r0.residual == 0.0);

    IdentityResidual r1 = phi_derivative_identity(phi, 1, 0.25);
    CHECK(r1.residual < 1e-5);

    // gaussian input: both sides have the closed form -2 (1 + 4t)^{-3/2};
    // the stencil side carries its h^4 truncation error
    const PairingInput gauss = PairingInput::gaussian();
    IdentityResidual rg = phi_derivative_identity(gauss, 1, 0.5);
    const double closed = -2.0 * std::pow(1.0 + 4.0 * 0.5, -1.5);
    CHECK(rg.rhs == doctest::Approx(closed).epsilon(1e-9));
    CHECK(rg.lhs == doctest::Approx(closed).epsilon(5e-5));
}

TEST_CASE("one-sided induction at the time origin") {
    const PairingInput phi = PairingInput::from(TestFunction::bump(-2.0, 2.0));
    BoundaryInduction b0 = boundary_induction_check(phi, 0);
    CHECK(b0.residual == 0.0);

    BoundaryInduction b1 = boundary_induction_check(phi, 1);
    CHECK_FALSE(b1.diverged);
    CHECK(b1.residual < 1e-3);

    BoundaryInduction g1 = boundary_induction_check(PairingInput::gaussian(), 1);
    CHECK(g1.limit == doctest::Approx(-2.0).epsilon(1e-6));
}

TEST_CASE("difference-quotient ladder converges to phi''(0) at first order") {
    // phi(0) = 0 and phi''(0) = 0 for x * bump: the ladder limit is 0
    TestFunction xb = TestFunction::poly_times_bump(Polynomial1D({0.0, 1.0}), Bump(-1.0, 1.0));
    LimitLadder l0 = limit_lemma_check(PairingInput::from(xb));
    CHECK(std::abs(l0.extrapolated) < 1e-8);

    LimitLadder lg = limit_lemma_check(PairingInput::gaussian());
    CHECK(lg.extrapolated == doctest::Approx(-2.0).epsilon(1e-6));

    LimitLadder lb = limit_lemma_check(std_bump());
    CHECK(lb.residual < 1e-4);
    for (double r : lb.ratios) CHECK(std::abs(r - 0.5) < 0.1);
}

TEST_CASE("integration by parts against the split function") {
    const PairingInput phi = std_bump();
    IdentityResidual r = integration_by_parts_identity(phi, 0.5);
    CHECK(r.residual < 1e-8);
    // both sides vanish as t -> 0+
    IdentityResidual small = integration_by_parts_identity(phi, 1e-4);
    CHECK(std::abs(small.lhs) < 1e-3);
    CHECK(std::abs(small.rhs) < 1e-3);
    CHECK(small.residual < 1e-8);
    CHECK_THROWS_AS(integration_by_parts_identity(phi, 0.0), std::invalid_argument);
}

TEST_CASE("nilpotent heat-equation check") {
    const PairingInput phi = PairingInput::from(TestFunction::bump(-1.6, 1.6));
    auto duals = dual_number_algebra();
    WeilElement r = synthetic_heat_check(0.25, phi, duals);
    CHECK(r.coord(0) == 0.0);
    CHECK(std::abs(r.coord(1)) < 1e-5);

    // gaussian input: eps coefficient has the closed form -2 (1 + 4 t0)^{-3/2}
    PhiCurve curve(PairingInput::gaussian());
    WeilElement lift = taylor_lift(
        [&](int n, double t) { return n == 0 ? curve(t) : curve.identity_derivative(n, t); },
        duals->unit() * 1.0 + duals->variable(0));
    CHECK(lift.coord(1) == doctest::Approx(-2.0 * std::pow(5.0, -1.5)).epsilon(1e-9));

    auto triple = build_algebra(1, 3);
    WeilElement r0 = synthetic_heat_check(0.0, PairingInput::from(TestFunction::bump(-2.0, 2.0)), triple);
    CHECK(2.0 * std::abs(r0.coord(2)) < 1e-3);

    CHECK_THROWS_AS(synthetic_heat_check(-1.0, phi, duals), std::invalid_argument);
    CHECK_THROWS_AS(synthetic_heat_check(0.5, phi, build_algebra(2, 2)), std::invalid_argument);
    // order 10 would need phi^(18), beyond the bump's derivative ceiling
    CHECK_THROWS_AS(synthetic_heat_check(0.5, phi, build_algebra(1, 10)), std::invalid_argument);
}

TEST_CASE("semigroup property of the evolution") {
    const double s = 0.3, t = 0.45;
    Distribution two = heat_evolve(heat_evolve(Distribution::dirac(), s), t);
    Distribution one = heat_kernel(s + t);
    const PairingInput phi = std_bump();
    CHECK(pair(two, phi).value == doctest::Approx(pair(one, phi).value).epsilon(1e-7));
}
