#pragma once

#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

#include "heatjet/distribution.hpp"
#include "heatjet/halfline.hpp"
#include "heatjet/richardson.hpp"
#include "heatjet/weil.hpp"

namespace heatjet {

struct IdentityResidual {
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
    bool converged = true;
};

/// | FD_n Phi(t) - <K(t), phi^{(2n)}> |: the n-th time derivative of the
/// pairing curve against its identity form.
inline IdentityResidual phi_derivative_identity(const PairingInput& phi, int n, double t,
                                                const QuadratureConfig& q = {}) {
    if (n < 0) throw std::invalid_argument("phi_derivative_identity: n >= 0");
    PhiCurve curve(phi, q);
    IdentityResidual r;
    if (n == 0) {
        r.lhs = r.rhs = curve(t);
        r.residual = 0.0;
        return r;
    }
    r.lhs = curve.fd_derivative(n, t);
    r.rhs = curve.identity_derivative(n, t);
    r.residual = std::abs(r.lhs - r.rhs);
    return r;
}

struct BoundaryInduction {
    double limit = 0.0;     // one-sided extrapolation of Phi^{(n)}(0+)
    double target = 0.0;    // phi^{(2n)}(0)
    double residual = 0.0;
    bool diverged = false;
};

/// Phi^{(n)}(0+) extracted by the half-line machinery from finite
/// differences of Phi alone, compared with phi^{(2n)}(0).
inline BoundaryInduction boundary_induction_check(const PairingInput& phi, int n,
                                                  const QuadratureConfig& q = {}) {
    BoundaryInduction out;
    out.target = phi.derivative(2 * n, 0.0);
    PhiCurve curve(phi, q);
    if (n == 0) {
        out.limit = pair(heat_kernel(0.0), phi, q).value;
        out.residual = std::abs(out.limit - out.target);
        return out;
    }
    HalfLineFn f([curve](double t) { return curve(t); });
    f.with_derivatives([curve](int k, double t) {
        const double h = t / 8.0;
        return central_difference([&](double s) { return curve(s); }, t, k, h);
    });
    const int j_max = (n <= 1) ? 13 : (n == 2 ? 10 : 8);
    auto limits = seeley_limits(f, n, 4, j_max);
    out.limit = limits[static_cast<size_t>(n)].value;
    out.diverged = limits[static_cast<size_t>(n)].diverged;
    out.residual = std::abs(out.limit - out.target);
    return out;
}

struct LimitLadder {
    std::vector<double> ts;
    std::vector<double> values;  // (Phi(t) - phi(0)) / t
    double extrapolated = 0.0;
    double target = 0.0;         // phi''(0)
    double residual = 0.0;
    std::vector<double> ratios;  // successive error ratios, ~ 1/2 for first-order decay
};

/// The difference quotient (Phi(t) - phi(0)) / t along t = 2^{-j}; its limit
/// is phi''(0), approached at first order in t.
inline LimitLadder limit_lemma_check(const PairingInput& phi, const QuadratureConfig& q = {},
                                     int j_min = 4, int j_max = 14) {
    LimitLadder lad;
    PhiCurve curve(phi, q);
    const double phi0 = phi.derivative(0, 0.0);
    lad.target = phi.derivative(2, 0.0);
    for (int j = j_min; j <= j_max; ++j) {
        const double t = std::ldexp(1.0, -j);
        lad.ts.push_back(t);
        lad.values.push_back((curve(t) - phi0) / t);
    }
    const Extrapolation ex = richardson_limit(lad.values);
    lad.extrapolated = ex.limit;
    lad.residual = std::abs(lad.extrapolated - lad.target);
    // error ratios over the established first-order regime: the opening rung
    // still carries higher-order curvature, the tail must stay above the
    // quadrature noise floor
    const double noise_floor = 100.0 * q.abs_tol / lad.ts.back();
    for (size_t j = 1; j + 1 < lad.values.size(); ++j) {
        const double e0 = std::abs(lad.values[j] - lad.target);
        const double e1 = std::abs(lad.values[j + 1] - lad.target);
        if (e0 > noise_floor && e1 > noise_floor) lad.ratios.push_back(e1 / e0);
    }
    return lad;
}

/// | <K(t), phi> - phi(0) - 2t <K(t), psi'> |  with  phi = phi(0) + x psi.
/// psi' decays only polynomially, so its pairing must go through the
/// Gaussian-weighted path.
inline IdentityResidual integration_by_parts_identity(const PairingInput& phi, double t,
                                                      const QuadratureConfig& q = {}) {
    if (t <= 0.0) throw std::invalid_argument("integration_by_parts_identity: t > 0");
    IdentityResidual r;
    const PairingInput psi = hadamard_split(phi);
    const PairingInput psi_prime = psi.derivative_shifted(1);
    const double phi0 = phi.derivative(0, 0.0);
    PairingResult lhs = pair(heat_kernel(t), phi, q);
    PairingResult rhs = pair(heat_kernel(t), psi_prime, q);
    r.lhs = lhs.value - phi0;
    r.rhs = 2.0 * t * rhs.value;
    r.residual = std::abs(r.lhs - r.rhs);
    r.converged = lhs.converged && rhs.converged;
    return r;
}

/// Lift of the pairing curve through R[eps]/(eps^m) at t0 + eps, with the
/// derivative oracle Phi^{(n)}(t0) := <K(t0), phi^{(2n)}>. The returned
/// element holds the coefficient-wise difference against independent
/// estimates of Phi^{(n)}(t0) (central stencils for t0 > 0, one-sided
/// extrapolation at t0 = 0); a zero residual says the curve obeys the heat
/// equation to nilpotent order m - 1.
inline WeilElement synthetic_heat_check(double t0, const PairingInput& phi,
                                        std::shared_ptr<const WeilAlgebra> w,
                                        const QuadratureConfig& q = {}) {
    if (!w || w->vars() != 1 || !w->generators().empty() || w->trunc_order() < 2)
        throw std::invalid_argument("synthetic_heat_check: algebra must be R[eps]/(eps^m), m >= 2");
    if (t0 < 0.0) throw std::invalid_argument("synthetic_heat_check: t0 >= 0");
    const int m = w->trunc_order();
    if (2 * (m - 1) > phi.max_order())
        throw std::invalid_argument("synthetic_heat_check: input lacks derivatives of order 2(m-1)");

    PhiCurve curve(phi, q);
    auto oracle = [&](int n, double t) {
        return n == 0 ? curve(t) : curve.identity_derivative(n, t);
    };
    WeilElement eps = w->variable(0);
    WeilElement arg = w->unit() * t0 + eps;
    WeilElement lift = taylor_lift(oracle, arg);

    // Independent derivative estimates, divided by n! to match eps^n coords.
    std::vector<double> indep(static_cast<size_t>(w->dim()), 0.0);
    double nfact = 1.0;
    for (int n = 0; n < m; ++n) {
        if (n >= 1) nfact *= n;
        double dn;
        if (n == 0)
            dn = curve(t0);
        else if (t0 > 0.0)
            dn = curve.fd_derivative(n, t0);
        else {
            BoundaryInduction b = boundary_induction_check(phi, n, q);
            dn = b.limit;
        }
        indep[static_cast<size_t>(n)] = dn / nfact;
    }
    // The basis of a pure one-variable algebra is 1, eps, ..., eps^{m-1} in
    // that order, so coordinates line up with powers.
    WeilElement residual = lift - w->element(std::move(indep));
    return residual;
}

}  // namespace heatjet
