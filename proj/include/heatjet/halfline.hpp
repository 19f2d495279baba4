#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "heatjet/derivatives.hpp"
#include "heatjet/richardson.hpp"

namespace heatjet {

/// Function on the closed half line: evaluable for t > 0, with an optional
/// value at 0 and an optional k-th derivative oracle on t > 0.
class HalfLineFn {
public:
    explicit HalfLineFn(std::function<double(double)> f) : f_(std::move(f)) {}

    HalfLineFn& with_value_at_zero(double v) {
        f0_ = v;
        return *this;
    }
    HalfLineFn& with_derivatives(std::function<double(int, double)> d) {
        deriv_ = std::move(d);
        return *this;
    }

    bool has_value_at_zero() const { return f0_.has_value(); }
    bool has_derivatives() const { return static_cast<bool>(deriv_); }

    double operator()(double t) const {
        if (t < 0.0) throw std::domain_error("HalfLineFn: t < 0");
        if (t == 0.0) {
            if (!f0_) throw std::domain_error("HalfLineFn: no value at t = 0");
            return *f0_;
        }
        return f_(t);
    }

    /// Oracle if present, otherwise central differences with the step kept
    /// inside the half line.
    double derivative(int k, double t) const {
        if (t <= 0.0) throw std::domain_error("HalfLineFn::derivative: need t > 0");
        if (k == 0) return f_(t);
        if (deriv_) return deriv_(k, t);
        const double h = std::min(2.0 * t / (k + 2), fd_step(k, t));
        return central_difference(f_, t, k, h);
    }

private:
    std::function<double(double)> f_;
    std::optional<double> f0_;
    std::function<double(int, double)> deriv_;
};

/// g(x) = f(x^2), defined away from the origin (and at it when f(0) exists).
/// Even by construction: both signs evaluate the same point of f.
inline std::function<double(double)> precompose_square(const HalfLineFn& f) {
    return [f](double x) { return x == 0.0 ? f(0.0) : f(x * x); };
}

struct OrderLadder {
    int k = 0;
    std::vector<double> ts;
    std::vector<double> estimates;
    Extrapolation limit;
    double defect = 0.0;  // odd orders: |L+ - L-| = 2 |L+| for an even g
};

struct SquareSmoothResult {
    bool square_smooth = false;
    double max_defect = 0.0;
    bool eval_failure = false;  // overflow/NaN near 0, distinct from a failed test
    std::vector<OrderLadder> per_order;
};

/// One-sided k-th forward difference of g at 0, nodes (i+1) h, i = 0..k.
inline double forward_difference_at_zero(const std::function<double(double)>& g, int k, double h) {
    double sum = 0.0;
    for (int i = 0; i <= k; ++i) {
        const double c = ((k - i) % 2 == 0 ? 1.0 : -1.0) * binomial(k, i);
        sum += c * g((i + 1) * h);
    }
    return sum / std::pow(h, k);
}

/// Tests whether g(x) = f(x^2) has one-sided derivative limits at 0 that
/// match across the origin. g is even exactly, so the criterion is that the
/// odd-order one-sided limits vanish; even orders only need to converge.
inline SquareSmoothResult square_smooth_test(const HalfLineFn& f, int n = 4, double tol = 1e-5) {
    if (n < 1) throw std::invalid_argument("square_smooth_test: n >= 1");
    auto g = precompose_square(f);
    SquareSmoothResult res;
    res.square_smooth = true;
    const int j_min = 4;
    for (int k = 1; k <= n; ++k) {
        OrderLadder lad;
        lad.k = k;
        const int j_max = std::min(26, std::max(j_min + 4, 30 / k));
        for (int j = j_min; j <= j_max; ++j) {
            const double h = std::ldexp(1.0, -j);
            const double v = forward_difference_at_zero(g, k, h);
            if (!std::isfinite(v)) {
                res.eval_failure = true;
                break;
            }
            lad.ts.push_back(h);
            lad.estimates.push_back(v);
        }
        if (res.eval_failure) {
            res.square_smooth = false;
            res.per_order.push_back(std::move(lad));
            break;
        }
        lad.limit = richardson_limit(lad.estimates);
        if (lad.limit.diverged) res.square_smooth = false;
        if (k % 2 == 1) {
            lad.defect = 2.0 * std::abs(lad.limit.limit);
            res.max_defect = std::max(res.max_defect, lad.defect);
            if (lad.defect > tol) res.square_smooth = false;
        }
        res.per_order.push_back(std::move(lad));
    }
    return res;
}

struct LimitEstimate {
    int k = 0;
    double value = 0.0;
    double error = 0.0;
    bool diverged = false;
    std::vector<double> ts;
    std::vector<double> ladder;
};

/// Richardson-extrapolated limits of f^{(k)}(t) as t -> 0+ along the dyadic
/// ladder t = 2^{-j}. When no derivative oracle is present the ladder depth
/// is shortened with the order to stay above finite-difference noise.
inline std::vector<LimitEstimate> seeley_limits(const HalfLineFn& f, int n, int j_min = 4, int j_max = 26) {
    std::vector<LimitEstimate> out;
    for (int k = 0; k <= n; ++k) {
        LimitEstimate est;
        est.k = k;
        int jm = j_max;
        if (!f.has_derivatives() && k >= 1) jm = std::min(j_max, std::max(j_min + 5, 26 / k));
        for (int j = j_min; j <= jm; ++j) {
            const double t = std::ldexp(1.0, -j);
            const double v = f.derivative(k, t);
            if (!std::isfinite(v)) {
                est.diverged = true;
                break;
            }
            est.ts.push_back(t);
            est.ladder.push_back(v);
        }
        const Extrapolation ex = richardson_limit(est.ladder);
        est.value = ex.limit;
        est.error = ex.error;
        est.diverged = est.diverged || ex.diverged;
        out.push_back(std::move(est));
    }
    return out;
}

inline bool seeley_smooth(const std::vector<LimitEstimate>& limits) {
    for (const auto& e : limits)
        if (e.diverged) return false;
    return true;
}

struct Extension {
    std::function<double(double)> fn;
    std::vector<double> nodes;    // reflection scales b_k = 2^k
    std::vector<double> weights;  // a_k with sum a_k (-b_k)^m = 1, m = 0..n
};

/// Extension to the whole line by finitely many reflected copies:
/// for t < 0, E(t) = sum_k a_k f(-b_k t). Matching the first n+1 one-sided
/// derivatives pins the weights through a Vandermonde system; n > 12 is
/// rejected for conditioning.
inline Extension extend_to_line(const HalfLineFn& f, int n) {
    if (n < 0 || n > 12) throw std::invalid_argument("extend_to_line: order must be in [0, 12]");
    auto limits = seeley_limits(f, n);
    if (!seeley_smooth(limits)) throw std::domain_error("extend_to_line: derivative limits diverge at 0");

    const int m = n + 1;
    std::vector<double> nodes(static_cast<size_t>(m));
    for (int k = 0; k < m; ++k) nodes[static_cast<size_t>(k)] = std::ldexp(1.0, k);
    // Solve sum_k a_k (-b_k)^p = 1 for p = 0..n (partial pivoting).
    std::vector<std::vector<double>> a(static_cast<size_t>(m), std::vector<double>(static_cast<size_t>(m + 1), 0.0));
    for (int p = 0; p < m; ++p) {
        for (int k = 0; k < m; ++k) a[static_cast<size_t>(p)][static_cast<size_t>(k)] = std::pow(-nodes[static_cast<size_t>(k)], p);
        a[static_cast<size_t>(p)][static_cast<size_t>(m)] = 1.0;
    }
    for (int col = 0; col < m; ++col) {
        int piv = col;
        for (int rr = col + 1; rr < m; ++rr)
            if (std::abs(a[static_cast<size_t>(rr)][static_cast<size_t>(col)]) >
                std::abs(a[static_cast<size_t>(piv)][static_cast<size_t>(col)]))
                piv = rr;
        std::swap(a[static_cast<size_t>(col)], a[static_cast<size_t>(piv)]);
        const double d = a[static_cast<size_t>(col)][static_cast<size_t>(col)];
        if (d == 0.0) throw std::runtime_error("extend_to_line: singular reflection system");
        for (int rr = 0; rr < m; ++rr) {
            if (rr == col) continue;
            const double fct = a[static_cast<size_t>(rr)][static_cast<size_t>(col)] / d;
            if (fct == 0.0) continue;
            for (int cc = col; cc <= m; ++cc)
                a[static_cast<size_t>(rr)][static_cast<size_t>(cc)] -= fct * a[static_cast<size_t>(col)][static_cast<size_t>(cc)];
        }
    }
    std::vector<double> w(static_cast<size_t>(m));
    for (int k = 0; k < m; ++k)
        w[static_cast<size_t>(k)] = a[static_cast<size_t>(k)][static_cast<size_t>(m)] / a[static_cast<size_t>(k)][static_cast<size_t>(k)];

    const double at_zero = f.has_value_at_zero() ? f(0.0) : limits[0].value;
    Extension ext;
    ext.nodes = nodes;
    ext.weights = w;
    ext.fn = [f, nodes, w, at_zero](double t) {
        if (t > 0.0) return f(t);
        if (t == 0.0) return at_zero;
        double sum = 0.0;
        for (size_t k = 0; k < nodes.size(); ++k) sum += w[k] * f(-nodes[k] * t);
        return sum;
    };
    return ext;
}

struct SmoothnessReport {
    int order = 0;
    SquareSmoothResult square;
    std::vector<LimitEstimate> seeley;
    bool is_seeley_smooth = false;
    bool extended = false;
    std::function<double(double)> extension;
    double derivative_crosscheck = 0.0;  // | lim f' - h(0)/2 |, g'(x) = x h(x)
};

/// Full diagnostic: square-smooth test, derivative limits, extension when
/// both pass, plus the cross-check that lim f' agrees with h(0)/2 computed
/// from divided differences of g alone.
inline SmoothnessReport analyze_halfline(const HalfLineFn& f, int n = 4, double tol = 1e-5) {
    SmoothnessReport rep;
    rep.order = n;
    rep.square = square_smooth_test(f, n, tol);
    rep.seeley = seeley_limits(f, n);
    rep.is_seeley_smooth = seeley_smooth(rep.seeley);
    if (rep.square.square_smooth && rep.is_seeley_smooth) {
        Extension e = extend_to_line(f, n);
        rep.extension = e.fn;
        rep.extended = true;
    }
    if (rep.square.square_smooth && n >= 1 && !rep.seeley[1].diverged) {
        auto g = precompose_square(f);
        std::vector<double> ladder;
        for (int j = 4; j <= 20; ++j) {
            const double x = std::ldexp(1.0, -j);
            const double d = x / 4.0;
            const double gp = (g(x + d) - g(x - d)) / (2.0 * d);
            ladder.push_back(gp / x);
        }
        const Extrapolation h0 = richardson_limit(ladder);
        rep.derivative_crosscheck = std::abs(rep.seeley[1].value - 0.5 * h0.limit);
    }
    return rep;
}

}  // namespace heatjet
