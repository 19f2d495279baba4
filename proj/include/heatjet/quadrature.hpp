#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

namespace heatjet {

struct QuadratureConfig {
    int gl_points = 16;        // Gauss-Legendre points per panel
    int gl_max_depth = 40;     // bisection depth for the adaptive scheme
    long gl_max_evals = 400000;  // refinement budget per integral
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int hermite_nodes = 96;    // Gauss-Hermite rule for Gaussian-weighted pairings

    QuadratureConfig refined() const {
        QuadratureConfig q = *this;
        q.hermite_nodes *= 2;
        q.abs_tol = 1e-13;
        q.rel_tol = 1e-11;
        return q;
    }
};

struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Deterministic pairwise tree sum: the result depends only on the element
/// order, not on any execution schedule.
inline double pairwise_sum(std::span<const double> xs) {
    if (xs.empty()) return 0.0;
    if (xs.size() <= 8) {
        double s = 0.0;
        for (double v : xs) s += v;
        return s;
    }
    const size_t half = xs.size() / 2;
    return pairwise_sum(xs.subspan(0, half)) + pairwise_sum(xs.subspan(half));
}

/// Gauss-Legendre nodes/weights on [-1, 1] via Newton on the recurrence.
inline GaussRule make_gauss_legendre(int n) {
    GaussRule r;
    r.nodes.resize(static_cast<size_t>(n));
    r.weights.resize(static_cast<size_t>(n));
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        r.nodes[static_cast<size_t>(i)] = -z;
        r.nodes[static_cast<size_t>(n - 1 - i)] = z;
        const double w = 2.0 / ((1.0 - z * z) * pp * pp);
        r.weights[static_cast<size_t>(i)] = w;
        r.weights[static_cast<size_t>(n - 1 - i)] = w;
    }
    return r;
}

/// Gauss-Hermite rule for the weight e^{-x^2} on the whole line. Newton on
/// the orthonormal recurrence (which stays O(1) in magnitude), weights via
/// the Christoffel sum 1 / sum_k p_k(x)^2.
inline GaussRule make_gauss_hermite(int n) {
    GaussRule r;
    r.nodes.resize(static_cast<size_t>(n));
    r.weights.resize(static_cast<size_t>(n));
    const double pim4 = std::pow(std::numbers::pi, -0.25);
    auto eval = [&](double x, double& pn, double& pn1) {
        double p0 = pim4, p1 = 0.0;
        for (int k = 0; k < n; ++k) {
            const double p2 = p1;
            p1 = p0;
            p0 = x * std::sqrt(2.0 / (k + 1.0)) * p1 - std::sqrt(k / (k + 1.0)) * p2;
        }
        pn = p0;
        pn1 = p1;
    };
    const int m = (n + 1) / 2;
    std::vector<double> pos;  // positive roots found so far, descending
    double z = 0.0;
    for (int i = 0; i < m; ++i) {
        if (i == 0)
            z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
        else if (i == 1)
            z -= 1.14 * std::pow(n, 0.426) / z;
        else if (i == 2)
            z = 1.86 * z - 0.86 * pos[0];
        else if (i == 3)
            z = 1.91 * z - 0.91 * pos[1];
        else
            z = 2.0 * z - pos[static_cast<size_t>(i - 2)];
        for (int it = 0; it < 200; ++it) {
            double pn, pn1;
            eval(z, pn, pn1);
            const double dp = std::sqrt(2.0 * n) * pn1;  // derivative of the orthonormal p_n
            const double dz = pn / dp;
            z -= dz;
            if (std::abs(dz) < 1e-15 * (1.0 + std::abs(z))) break;
        }
        pos.push_back(z);
        r.nodes[static_cast<size_t>(n - 1 - i)] = z;
        r.nodes[static_cast<size_t>(i)] = -z;
    }
    if (n % 2 == 1) r.nodes[static_cast<size_t>(n / 2)] = 0.0;
    // Christoffel weights.
    for (int i = 0; i < n; ++i) {
        const double x = r.nodes[static_cast<size_t>(i)];
        double p0 = pim4, p1 = 0.0, sum = p0 * p0;
        for (int k = 0; k + 1 < n; ++k) {
            const double p2 = p1;
            p1 = p0;
            p0 = x * std::sqrt(2.0 / (k + 1.0)) * p1 - std::sqrt(k / (k + 1.0)) * p2;
            sum += p0 * p0;
        }
        r.weights[static_cast<size_t>(i)] = 1.0 / sum;
    }
    return r;
}

inline const GaussRule& gauss_legendre(int n) {
    static std::map<int, GaussRule> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, make_gauss_legendre(n)).first;
    return it->second;
}

inline const GaussRule& gauss_hermite(int n) {
    static std::map<int, GaussRule> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, make_gauss_hermite(n)).first;
    return it->second;
}

struct IntegralResult {
    double value = 0.0;
    double error = 0.0;
    bool converged = true;
    long evals = 0;
};

namespace detail {
inline double gl_panel(const std::function<double(double)>& f, double a, double b, const GaussRule& r,
                       long& evals) {
    std::vector<double> vals(r.nodes.size());
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (size_t i = 0; i < r.nodes.size(); ++i) vals[i] = r.weights[i] * f(mid + half * r.nodes[i]);
    evals += static_cast<long>(r.nodes.size());
    return half * pairwise_sum(vals);
}

inline void gl_adapt(const std::function<double(double)>& f, double a, double b, double coarse,
                     const GaussRule& r, double tol, int depth, const QuadratureConfig& q,
                     IntegralResult& out, std::vector<double>& pieces) {
    const double mid = 0.5 * (a + b);
    const double left = gl_panel(f, a, mid, r, out.evals);
    const double right = gl_panel(f, mid, b, r, out.evals);
    const double diff = std::abs(coarse - (left + right));
    if (diff <= tol || depth >= q.gl_max_depth || out.evals > q.gl_max_evals) {
        if (diff > tol) out.converged = false;
        out.error += diff;
        pieces.push_back(left);
        pieces.push_back(right);
        return;
    }
    gl_adapt(f, a, mid, left, r, tol * 0.5, depth + 1, q, out, pieces);
    gl_adapt(f, mid, b, right, r, tol * 0.5, depth + 1, q, out, pieces);
}
}  // namespace detail

/// Adaptive Gauss-Legendre over [a, b] with bisection; panel boundaries are
/// forced at the given breakpoints (support endpoints of the integrand).
inline IntegralResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                         const QuadratureConfig& q = {},
                                         std::span<const double> breakpoints = {}) {
    IntegralResult out;
    if (!(a < b)) return out;
    std::vector<double> cuts{a, b};
    for (double c : breakpoints)
        if (c > a && c < b) cuts.push_back(c);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    const GaussRule& r = gauss_legendre(q.gl_points);
    double rough = 0.0;
    std::vector<double> coarse(cuts.size() - 1);
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        coarse[i] = detail::gl_panel(f, cuts[i], cuts[i + 1], r, out.evals);
        rough += coarse[i];
    }
    const double tol = std::max(q.abs_tol, q.rel_tol * std::abs(rough));
    std::vector<double> pieces;
    for (size_t i = 0; i + 1 < cuts.size(); ++i)
        detail::gl_adapt(f, cuts[i], cuts[i + 1], coarse[i], r, tol / static_cast<double>(cuts.size() - 1), 0,
                         q, out, pieces);
    out.value = pairwise_sum(pieces);
    return out;
}

/// Gaussian-weighted integral over the whole line:
/// integral of e^{-u^2} f(u) du by the fixed Gauss-Hermite rule.
inline double integrate_hermite(const std::function<double(double)>& f, const QuadratureConfig& q = {}) {
    const GaussRule& r = gauss_hermite(q.hermite_nodes);
    std::vector<double> vals(r.nodes.size());
    for (size_t i = 0; i < r.nodes.size(); ++i) vals[i] = r.weights[i] * f(r.nodes[i]);
    return pairwise_sum(vals);
}

}  // namespace heatjet
