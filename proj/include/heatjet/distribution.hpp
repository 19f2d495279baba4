#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

#include "heatjet/quadrature.hpp"
#include "heatjet/testfn.hpp"

namespace heatjet {

/// Gaussian heat kernel G(x, t) = e^{-x^2 / 4t} / sqrt(4 pi t), t > 0.
inline double gauss_kernel(double x, double t) {
    return std::exp(-x * x / (4.0 * t)) / std::sqrt(4.0 * std::numbers::pi * t);
}

/// d^m/dx^m G(x, t) = (-1)^m (4t)^{-m/2} H_m(x / (2 sqrt t)) G(x, t)
/// with physicists' Hermite polynomials.
inline double gauss_kernel_dx(int m, double x, double t) {
    const double s = 2.0 * std::sqrt(t);
    const double xi = x / s;
    double h0 = 1.0, h1 = 2.0 * xi;
    double h = (m == 0) ? h0 : h1;
    for (int k = 1; k < m; ++k) {
        const double h2 = 2.0 * xi * h1 - 2.0 * k * h0;
        h0 = h1;
        h1 = h2;
        h = h2;
    }
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    return sign * std::pow(s, -m) * h * gauss_kernel(x, t);
}

struct Atom {
    double point = 0.0;
    int order = 0;     // derivative order of the point mass
    double weight = 1.0;
};

/// Density term of a distribution. `formal_derivative` counts derivatives
/// taken distributionally: pairing integrates rho against (-1)^n phi^{(n)}.
/// [lo, hi] is the exact support for compact decay and an effective window
/// (tails below 1e-18) otherwise. `hermite_profile`, when present, exposes
/// the Gaussian factorization rho(center + 2 sqrt(tau) u) =
/// profile(u) e^{-u^2} / sqrt(4 pi tau) needed by the Hermite pairing path.
struct Density {
    std::function<double(double)> rho;
    Decay decay = Decay::compact;
    double lo = 0.0, hi = 0.0;
    double gaussian_tau = 0.0;
    double center = 0.0;
    int formal_derivative = 0;
    std::function<double(double)> hermite_profile;
};

/// Finite sum of weighted derivative-of-point-mass atoms plus an optional
/// density. Immutable after construction.
class Distribution {
public:
    Distribution() = default;

    static Distribution dirac(double point = 0.0, int order = 0, double weight = 1.0) {
        Distribution d;
        d.atoms_.push_back({point, order, weight});
        return d;
    }

    static Distribution from_atoms(std::vector<Atom> atoms) {
        Distribution d;
        d.atoms_ = std::move(atoms);
        return d;
    }

    static Distribution from_density(Density rho) {
        Distribution d;
        d.density_ = std::move(rho);
        return d;
    }

    Distribution with_density(Density rho) const {
        Distribution d = *this;
        d.density_ = std::move(rho);
        return d;
    }

    const std::vector<Atom>& atoms() const { return atoms_; }
    bool has_density() const { return density_.has_value(); }
    const Density& density() const { return *density_; }

    int max_atom_order() const {
        int m = 0;
        for (const auto& a : atoms_) m = std::max(m, a.order);
        return m;
    }

    friend Distribution derivative(const Distribution& t, int n) {
        Distribution d = t;
        for (auto& a : d.atoms_) a.order += n;
        if (d.density_) d.density_->formal_derivative += n;
        return d;
    }

private:
    std::vector<Atom> atoms_;
    std::optional<Density> density_;
};

struct PairingResult {
    double value = 0.0;
    double error = 0.0;
    bool converged = true;
};

/// <T, phi>. Atom pairing is exact: sum w (-1)^m phi^{(m)}(p). The density
/// part picks its scheme from the decay descriptors: any compact support in
/// sight gives an adaptive Gauss-Legendre window split at the endpoints;
/// a Gaussian density against a non-compact input goes through the
/// substitution x = center + 2 sqrt(tau) u onto the fixed Gauss-Hermite rule,
/// which stays conditioned as tau -> 0+.
inline PairingResult pair(const Distribution& t, const PairingInput& phi, const QuadratureConfig& q = {}) {
    PairingResult out;
    if (t.max_atom_order() > phi.max_order())
        throw std::invalid_argument("pair: input lacks derivatives for the atom orders present");
    for (const auto& a : t.atoms()) {
        const double sign = (a.order % 2 == 0) ? 1.0 : -1.0;
        out.value += a.weight * sign * phi.derivative(a.order, a.point);
    }
    if (!t.has_density()) return out;

    const Density& d = t.density();
    const int n = d.formal_derivative;
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    auto integrand = [&](double x) { return sign * d.rho(x) * phi.derivative(n, x); };

    const bool phi_compact = phi.decay() == Decay::compact;
    const bool d_compact = d.decay == Decay::compact;
    if (phi_compact || d_compact) {
        double lo, hi;
        std::vector<double> cuts;
        if (phi_compact && d_compact) {
            lo = std::max(phi.support().lo, d.lo);
            hi = std::min(phi.support().hi, d.hi);
        } else if (phi_compact) {
            lo = phi.support().lo;
            hi = phi.support().hi;
        } else {
            lo = d.lo;
            hi = d.hi;
        }
        if (!(lo < hi)) return out;
        cuts = {phi.support().lo, phi.support().hi, d.lo, d.hi};
        IntegralResult ir = integrate_adaptive(integrand, lo, hi, q, cuts);
        out.value += ir.value;
        out.error += ir.error;
        out.converged = ir.converged;
        return out;
    }

    if (d.decay == Decay::gaussian && d.hermite_profile &&
        (phi.decay() == Decay::gaussian || phi.is_polynomial())) {
        // Gaussian or polynomial input against a Gaussian density: the
        // substitution x = center + 2 sqrt(tau) u onto the fixed Hermite rule
        // is exact on polynomials, exponentially accurate on Gaussians, and
        // stays conditioned as tau -> 0+.
        const double s = 2.0 * std::sqrt(d.gaussian_tau);
        const double val = integrate_hermite(
            [&](double u) { return d.hermite_profile(u) * sign * phi.derivative(n, d.center + s * u); }, q);
        out.value += val / std::sqrt(std::numbers::pi);
        return out;
    }

    if (d.decay == Decay::gaussian) {
        // Polynomially bounded input (or a density without an exact Gaussian
        // factorization): the Hermite expansion of an algebraic tail
        // converges too slowly, so integrate the density's effective window,
        // which already scales with sqrt(tau).
        IntegralResult ir = integrate_adaptive(integrand, d.lo, d.hi, q, {});
        out.value += ir.value;
        out.error += ir.error;
        out.converged = ir.converged;
        return out;
    }

    throw std::invalid_argument("pair: density decay class admits no quadrature scheme against this input");
}

/// K(t): the single unit point mass at 0 for t = 0, the Gaussian density for
/// t > 0 (with the Hermite profile attached, so non-compact pairings stay
/// uniformly conditioned down to t = 0+).
inline Distribution heat_kernel(double t) {
    if (t < 0.0) throw std::invalid_argument("heat_kernel: t >= 0 required");
    if (t == 0.0) return Distribution::dirac();
    Density d;
    d.rho = [t](double x) { return gauss_kernel(x, t); };
    d.decay = Decay::gaussian;
    d.gaussian_tau = t;
    d.center = 0.0;
    const double halfwidth = 2.0 * std::sqrt(t) * 9.0;
    d.lo = -halfwidth;
    d.hi = halfwidth;
    d.hermite_profile = [](double) { return 1.0; };
    return Distribution::from_density(std::move(d));
}

/// Evolution by the heat semigroup: atoms map to derivative Gaussians in
/// closed form, densities are convolved numerically over their window.
/// Compact and Gaussian-decay densities are accepted (the output of an
/// earlier evolution is itself Gaussian-decay).
inline Distribution heat_evolve(const Distribution& t0, double t, const QuadratureConfig& q = {}) {
    if (t < 0.0) throw std::invalid_argument("heat_evolve: t >= 0 required");
    if (t == 0.0) return t0;
    if (t0.has_density() && t0.density().decay == Decay::poly_bounded)
        throw std::invalid_argument("heat_evolve: density must have compact or Gaussian decay");

    const std::vector<Atom> atoms = t0.atoms();
    std::optional<Density> rho0;
    if (t0.has_density()) rho0 = t0.density();

    double halfwidth = 2.0 * std::sqrt(t) * 9.0;
    for (const auto& a : atoms) halfwidth = std::max(halfwidth, std::abs(a.point) + 2.0 * std::sqrt(t) * 9.0);
    if (rho0) halfwidth += std::max(std::abs(rho0->lo), std::abs(rho0->hi));

    QuadratureConfig inner = q;
    inner.abs_tol = std::min(q.abs_tol, 1e-13);

    Density d;
    d.decay = Decay::gaussian;
    d.gaussian_tau = t + (rho0 && rho0->decay == Decay::gaussian ? rho0->gaussian_tau : 0.0);
    d.lo = -halfwidth;
    d.hi = halfwidth;
    d.rho = [atoms, rho0, t, inner](double x) {
        double v = 0.0;
        for (const auto& a : atoms) v += a.weight * gauss_kernel_dx(a.order, x - a.point, t);
        if (rho0) {
            const int n0 = rho0->formal_derivative;
            auto f = [&](double y) { return rho0->rho(y) * gauss_kernel_dx(n0, x - y, t); };
            v += integrate_adaptive(f, rho0->lo, rho0->hi, inner).value;
        }
        return v;
    };
    return Distribution::from_density(std::move(d));
}

/// Order-4 central finite-difference stencils for d^n/dt^n, n = 1..4.
inline double fd_time_derivative(const std::function<double(double)>& f, int n, double t, double h) {
    static const std::vector<std::vector<double>> stencil = {
        {},
        {1.0 / 12, -2.0 / 3, 0.0, 2.0 / 3, -1.0 / 12},
        {-1.0 / 12, 4.0 / 3, -5.0 / 2, 4.0 / 3, -1.0 / 12},
        {-1.0 / 8, 1.0, -13.0 / 8, 0.0, 13.0 / 8, -1.0, 1.0 / 8},
        {-1.0 / 6, 2.0, -13.0 / 2, 28.0 / 3, -13.0 / 2, 2.0, -1.0 / 6},
    };
    if (n < 1 || n > 4) throw std::invalid_argument("fd_time_derivative: order 1..4");
    const auto& c = stencil[static_cast<size_t>(n)];
    const int reach = static_cast<int>(c.size()) / 2;
    double sum = 0.0;
    for (size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0.0) continue;
        const int off = static_cast<int>(i) - reach;
        sum += c[i] * f(t + off * h);
    }
    return sum / std::pow(h, n);
}

/// Phi(t) = <K(t), phi> together with its two derivative estimators: the
/// identity route <K(t), phi^{(2n)}> and an order-4 finite-difference
/// stencil in t that never crosses 0.
class PhiCurve {
public:
    PhiCurve(PairingInput phi, QuadratureConfig q = {}) : phi_(std::move(phi)), q_(q) {}

    const PairingInput& input() const { return phi_; }

    double operator()(double t) const { return pair(heat_kernel(t), phi_, q_).value; }

    double identity_derivative(int n, double t) const {
        return pair(heat_kernel(t), phi_.derivative_shifted(2 * n), q_).value;
    }

    double fd_derivative(int n, double t) const {
        if (t <= 0.0) throw std::invalid_argument("PhiCurve::fd_derivative: need t > 0");
        const int reach = (n <= 2) ? 2 : 3;
        double h = std::max(1e-4, t / 16.0);
        if (t - reach * h <= 0.0) h = t / (reach + 0.5);
        return fd_time_derivative([this](double s) { return (*this)(s); }, n, t, h);
    }

private:
    PairingInput phi_;
    QuadratureConfig q_;
};

}  // namespace heatjet
