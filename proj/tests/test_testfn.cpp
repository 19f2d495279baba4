#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "heatjet/catalog.hpp"
#include "heatjet/derivatives.hpp"
#include "heatjet/plot_family.hpp"
#include "heatjet/testfn.hpp"

using namespace heatjet;

TEST_CASE("bump values and exact support") {
    Bump b(-1.0, 1.0);
    CHECK(b(0.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    for (int k = 0; k <= Bump::kMaxOrder; ++k) {
        CHECK(b.derivative(k, -1.0) == 0.0);
        CHECK(b.derivative(k, 1.0) == 0.0);
        CHECK(b.derivative(k, 1.5) == 0.0);
        CHECK(b.derivative(k, -3.0) == 0.0);
    }
    CHECK(b.derivative(1, 0.0) == 0.0);  // even about the center
    CHECK(b(0.5) > 0.0);
    CHECK_THROWS_AS(b.derivative(Bump::kMaxOrder + 1, 0.0), std::invalid_argument);

    std::mt19937_64 rng(17);
    auto u = [&] { return std::ldexp(static_cast<double>(rng() >> 11), -53); };
    TestFunction f = TestFunction::bump(-0.4, 1.3, 2.0);
    const Interval s = f.support();
    for (int i = 0; i < 10000; ++i) {
        double x = u() * 20.0 - 10.0;
        if (x >= s.lo && x <= s.hi) x = s.hi + u() * 5.0 + 1e-9;
        CHECK(f(x) == 0.0);
    }
}

TEST_CASE("bump derivatives agree with central differences inside the support") {
    // each order is checked as the first difference of the previous order,
    // which keeps the difference quotient well conditioned up to k = 6
    Bump b(-1.0, 1.0);
    const double h = std::pow(std::numeric_limits<double>::epsilon(), 1.0 / 3.0);
    for (int k = 1; k <= 6; ++k) {
        for (double x : {-0.7, -0.25, 0.1, 0.42, 0.8}) {
            const double fd =
                central_difference([&](double y) { return b.derivative(k - 1, y); }, x, 1, h);
            const double ex = b.derivative(k, x);
            const double scale = std::max(1.0, std::abs(ex));
            CHECK(std::abs(fd - ex) / scale < 1e-6);
        }
    }
}

TEST_CASE("polynomial factors and sums of translates") {
    TestFunction f = TestFunction::poly_times_bump(Polynomial1D({0.0, 1.0}), Bump(-1.0, 1.0));
    CHECK(f(0.0) == 0.0);
    CHECK(f(0.5) == doctest::Approx(0.5 * Bump(-1.0, 1.0)(0.5)));
    TestFunction g = f + TestFunction::bump(2.0, 3.0);
    CHECK(g.support().lo == -1.0);
    CHECK(g.support().hi == 3.0);
    CHECK(g(2.5) == Bump(2.0, 3.0)(2.5));
    // derivative linearity across terms
    CHECK(g.derivative(1, 2.5) == Bump(2.0, 3.0).derivative(1, 2.5));

    // (x * B)' = B + x B'
    for (double x : {-0.6, 0.2, 0.9}) {
        const double expect = Bump(-1.0, 1.0)(x) + x * Bump(-1.0, 1.0).derivative(1, x);
        CHECK(f.derivative(1, x) == doctest::Approx(expect).epsilon(1e-13));
    }
}

TEST_CASE("hadamard split") {
    const PairingInput phi = PairingInput::from(TestFunction::bump(-1.0, 1.0));
    PairingInput psi = hadamard_split(phi);

    // center-symmetric bump: psi(0) = phi'(0) = 0, psi'(0) = phi''(0)/2
    CHECK(psi(0.0) == 0.0);
    CHECK(psi.derivative(1, 0.0) == doctest::Approx(0.5 * phi.derivative(2, 0.0)).epsilon(1e-13));

    // identity phi(x) - phi(0) - x psi(x) = 0 at random probes
    std::mt19937_64 rng(3);
    for (int i = 0; i < 500; ++i) {
        const double x = std::ldexp(static_cast<double>(rng() >> 11), -53) * 6.0 - 3.0;
        const double r = phi(x) - phi(0.0) - x * psi(x);
        CHECK(std::abs(r) < 1e-12);
    }

    // phi = x * B has psi = B up to the near-origin series window
    const TestFunction xb = TestFunction::poly_times_bump(Polynomial1D({0.0, 1.0}), Bump(-1.0, 1.0));
    PairingInput psi2 = hadamard_split(PairingInput::from(xb));
    for (double x : {-0.9, -0.3, 1e-5, 0.4, 0.97, 2.5}) {
        CHECK(psi2(x) == doctest::Approx(Bump(-1.0, 1.0)(x)).epsilon(1e-10));
    }

    // decay: psi tends to 0 away from the support
    CHECK(std::abs(psi(50.0)) < 0.01);
    CHECK(std::abs(psi(50.0) - (-phi(0.0) / 50.0)) < 1e-15);
}

TEST_CASE("finitely many test functions admit one support bound") {
    std::vector<TestFunction> fns{TestFunction::bump(-1.0, 1.0), TestFunction::bump(0.5, 4.0),
                                  TestFunction::bump(-7.0, -2.0), TestFunction::bump(-0.1, 0.1)};
    double bound = 0.0;
    for (const auto& f : fns) bound = std::max({bound, std::abs(f.support().lo), std::abs(f.support().hi)});
    CHECK(bound == 7.0);
    std::mt19937_64 rng(9);
    for (int i = 0; i < 2000; ++i) {
        const double sgn = (rng() & 1) ? 1.0 : -1.0;
        const double x = sgn * (bound + std::ldexp(static_cast<double>(rng() >> 11), -53) * 10.0 + 1e-9);
        for (const auto& f : fns) CHECK(f(x) == 0.0);
    }
}

TEST_CASE("uniformly supported families pass the cover check") {
    LubsReport fixed = lubs_check(make_family("fixed"));
    CHECK(fixed.status == LubsReport::Status::bounded_with_witness);
    CHECK(fixed.cover.size() == make_family("fixed").samples().size());

    LubsReport scaled = lubs_check(make_family("scaledsupport"));
    CHECK(scaled.status == LubsReport::Status::bounded_with_witness);
    for (const auto& e : scaled.cover) CHECK(e.c == doctest::Approx(1.0 + e.t * e.t + 1.0));
}

TEST_CASE("the moving bump fails the uniform-support check near 0") {
    LubsReport rep = lubs_check(make_family("moving"));
    CHECK(rep.status == LubsReport::Status::violation);
    CHECK(rep.t0 == 0.0);
    CHECK(rep.sequence.size() >= 5);
    double prev = 0.0;
    for (const auto& e : rep.sequence) {
        CHECK(std::abs(e.x) > prev);  // points escape to infinity
        prev = std::abs(e.x);
        CHECK(e.c != 0.0);
    }
}

TEST_CASE("separating functional demonstrates the discontinuity") {
    DiscontinuityReport rep = separating_discontinuity_demo(make_family("moving"));
    CHECK(rep.demonstrates);
    CHECK(rep.value_at_t0 == 0.0);
    for (const auto& row : rep.rows) CHECK(row.functional_value >= 1.0);

    // rescaled family: same conclusion with rescaled coefficients
    DiscontinuityReport rep2 = separating_discontinuity_demo(make_family("scaled"));
    CHECK(rep2.demonstrates);

    // constant-support family: the operation refuses
    CHECK_THROWS_AS(separating_discontinuity_demo(make_family("fixed")), std::invalid_argument);
}

TEST_CASE("the functional vanishes on inputs supported inside its inner radius") {
    DiscontinuityReport rep = separating_discontinuity_demo(make_family("moving"));
    const SeparatingFunctional& T = rep.functional;
    const double rad = T.inner_radius();
    for (double hw : {0.3, 0.7, 0.99}) {
        TestFunction f = TestFunction::bump(-rad * hw, rad * hw, 2.0);
        CHECK(T([&](double x) { return f(x); }) == 0.0);
    }
}

TEST_CASE("named input parsing") {
    CHECK(make_phi("bump")(0.0) == doctest::Approx(std::exp(-1.0)));
    CHECK(make_phi("bump[0,2]").support().lo == 0.0);
    CHECK(make_phi("gauss")(0.0) == 1.0);
    PairingInput pb = make_phi("poly[0,1]*bump[-1,1]");
    CHECK(pb(0.0) == 0.0);
    CHECK_THROWS_AS(make_phi("nope"), std::invalid_argument);
    CHECK_THROWS_AS(make_phi("bump[1]"), std::invalid_argument);
}
