#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "heatjet/quadrature.hpp"

using namespace heatjet;

TEST_CASE("gauss-legendre rule integrates polynomials exactly") {
    const GaussRule& r = gauss_legendre(16);
    double sum = 0.0, m2 = 0.0;
    for (size_t i = 0; i < r.nodes.size(); ++i) {
        sum += r.weights[i];
        m2 += r.weights[i] * r.nodes[i] * r.nodes[i];
    }
    CHECK(sum == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(m2 == doctest::Approx(2.0 / 3.0).epsilon(1e-14));

    // degree 31 is still exact for the 16-point rule
    double m30 = 0.0;
    for (size_t i = 0; i < r.nodes.size(); ++i) m30 += r.weights[i] * std::pow(r.nodes[i], 30);
    CHECK(m30 == doctest::Approx(2.0 / 31.0).epsilon(1e-12));
}

TEST_CASE("adaptive integration resolves a narrow spike and reports its error") {
    // integral of the heat kernel profile over [-1, 1] at small t: erf closed form
    const double t = 1e-4;
    auto f = [t](double x) { return std::exp(-x * x / (4.0 * t)) / std::sqrt(4.0 * std::numbers::pi * t); };
    IntegralResult r = integrate_adaptive(f, -1.0, 1.0);
    const double target = std::erf(1.0 / (2.0 * std::sqrt(t)));
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(target).epsilon(1e-11));

    // an integrand that is flat zero on most of the window costs little
    auto g = [](double x) { return (x > 0.99 && x < 1.0) ? 1.0 : 0.0; };
    IntegralResult rg = integrate_adaptive(g, -1000.0, 1000.0, {}, std::vector<double>{0.99, 1.0});
    CHECK(rg.value == doctest::Approx(0.01).epsilon(1e-9));
}

TEST_CASE("empty and degenerate windows") {
    IntegralResult r = integrate_adaptive([](double) { return 1.0; }, 1.0, 1.0);
    CHECK(r.value == 0.0);
    CHECK(r.converged);
}

TEST_CASE("gauss-hermite rule: weights, moments, gaussian closed forms") {
    for (int n : {32, 96, 192}) {
        const GaussRule& r = gauss_hermite(n);
        REQUIRE(static_cast<int>(r.nodes.size()) == n);
        double s0 = 0.0, s2 = 0.0, s4 = 0.0;
        for (size_t i = 0; i < r.nodes.size(); ++i) {
            s0 += r.weights[i];
            s2 += r.weights[i] * r.nodes[i] * r.nodes[i];
            s4 += r.weights[i] * std::pow(r.nodes[i], 4);
        }
        const double rp = std::sqrt(std::numbers::pi);
        CHECK(s0 == doctest::Approx(rp).epsilon(1e-13));
        CHECK(s2 == doctest::Approx(rp / 2.0).epsilon(1e-13));
        CHECK(s4 == doctest::Approx(rp * 3.0 / 4.0).epsilon(1e-13));
        // nodes come out sorted and symmetric
        for (size_t i = 0; i + 1 < r.nodes.size(); ++i) CHECK(r.nodes[i] < r.nodes[i + 1]);
        for (size_t i = 0; i < r.nodes.size(); ++i)
            CHECK(r.nodes[i] == doctest::Approx(-r.nodes[r.nodes.size() - 1 - i]).epsilon(1e-12));
    }

    // integral e^{-u^2} e^{-a u^2} du = sqrt(pi / (1 + a))
    for (double a : {0.4, 2.0, 8.0}) {
        const double v = integrate_hermite([a](double u) { return std::exp(-a * u * u); });
        CHECK(v == doctest::Approx(std::sqrt(std::numbers::pi / (1.0 + a))).epsilon(1e-9));
    }
}

TEST_CASE("pairwise summation is order-deterministic and exact on cancelling data") {
    std::vector<double> xs;
    for (int i = 0; i < 1000; ++i) xs.push_back((i % 2 == 0) ? 1.0 : -1.0);
    CHECK(pairwise_sum(xs) == 0.0);
    std::vector<double> ys{1e16, 1.0, -1e16};
    CHECK(pairwise_sum(ys) == pairwise_sum(ys));
}
