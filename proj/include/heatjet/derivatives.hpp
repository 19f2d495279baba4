#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "heatjet/multi_index.hpp"
#include "heatjet/truncated_poly.hpp"

namespace heatjet {

inline double binomial(int n, int k) {
    double b = 1.0;
    for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return b;
}

/// k-th central difference of second-order accuracy, nodes x + (k/2 - j) h.
inline double central_difference(const std::function<double(double)>& f, double x, int k, double h) {
    if (k == 0) return f(x);
    double sum = 0.0;
    for (int j = 0; j <= k; ++j) {
        const double node = x + (0.5 * k - j) * h;
        const double c = (j % 2 == 0 ? 1.0 : -1.0) * binomial(k, j);
        sum += c * f(node);
    }
    return sum / std::pow(h, k);
}

/// Step choice for the finite-difference fallback: cube root of machine
/// epsilon scaled by (1 + |x|) at first order, generalized exponent
/// 1/(k + 2) for higher orders.
inline double fd_step(int k, double x) {
    const double eps = std::numeric_limits<double>::epsilon();
    const double expo = 1.0 / (k + 2);
    const double base = std::max(std::pow(eps, 1.0 / 3.0), std::pow(eps, expo));
    return base * (1.0 + std::abs(x));
}

/// A smooth function R^n -> R with a ladder of derivative strategies, tried
/// in order: caller-provided closed form, transport through truncated
/// polynomial arithmetic, central finite differences.
class FunctionOracle {
public:
    using Eval = std::function<double(std::span<const double>)>;
    using Partial = std::function<double(const MultiIndex&, std::span<const double>)>;
    using PolyEval = std::function<TruncatedPoly(const std::vector<TruncatedPoly>&)>;

    FunctionOracle(int arity, Eval eval) : arity_(arity), eval_(std::move(eval)) {
        if (arity < 0 || !eval_) throw std::invalid_argument("FunctionOracle: bad arity or evaluator");
    }

    FunctionOracle& with_partials(Partial p) { partial_ = std::move(p); return *this; }
    FunctionOracle& with_poly_eval(PolyEval p) { poly_ = std::move(p); return *this; }

    int arity() const { return arity_; }

    double operator()(std::span<const double> x) const {
        check_point(x);
        return eval_(x);
    }

    double partial(const MultiIndex& a, std::span<const double> x) const {
        check_point(x);
        if (a.vars() != arity_) throw std::invalid_argument("FunctionOracle::partial arity");
        if (a.order() == 0) return eval_(x);
        if (partial_) return partial_(a, x);
        if (poly_) return jet_partial(a, x);
        return fd_partial(a, x);
    }

    bool has_closed_form() const { return static_cast<bool>(partial_); }
    bool has_poly_eval() const { return static_cast<bool>(poly_); }

private:
    void check_point(std::span<const double> x) const {
        if (static_cast<int>(x.size()) != arity_) throw std::invalid_argument("FunctionOracle: point arity");
    }

    double jet_partial(const MultiIndex& a, std::span<const double> x) const {
        const int r = a.order() + 1;
        std::vector<TruncatedPoly> args;
        args.reserve(static_cast<size_t>(arity_));
        for (int i = 0; i < arity_; ++i) {
            TruncatedPoly p = TruncatedPoly::variable(arity_, r, i);
            p += TruncatedPoly::constant(arity_, r, x[static_cast<size_t>(i)]);
            args.push_back(p);
        }
        TruncatedPoly res = poly_(args);
        return res.coefficient(a) * a.factorial();
    }

    double fd_partial(const MultiIndex& a, std::span<const double> x) const {
        int var = -1;
        for (int i = 0; i < arity_; ++i)
            if (a[i] > 0) { var = i; break; }
        if (var < 0) return eval_(x);
        const int k = a[var];
        std::vector<int> restacc = a.exponents();
        restacc[static_cast<size_t>(var)] = 0;
        const MultiIndex rest(restacc);
        std::vector<double> pt(x.begin(), x.end());
        auto slice = [&](double t) {
            std::vector<double> p = pt;
            p[static_cast<size_t>(var)] = t;
            if (rest.order() == 0) return eval_(p);
            return partial(rest, p);
        };
        const double x0 = x[static_cast<size_t>(var)];
        return central_difference(slice, x0, k, fd_step(k, x0));
    }

    int arity_;
    Eval eval_;
    Partial partial_;
    PolyEval poly_;
};

/// Convenience wrapper for one-variable oracles.
inline FunctionOracle oracle1(std::function<double(double)> f) {
    return FunctionOracle(1, [f = std::move(f)](std::span<const double> x) { return f(x[0]); });
}

inline FunctionOracle oracle1(std::function<double(double)> f, std::function<double(int, double)> derivs) {
    FunctionOracle g = oracle1(std::move(f));
    g.with_partials([d = std::move(derivs)](const MultiIndex& a, std::span<const double> x) {
        return d(a[0], x[0]);
    });
    return g;
}

}  // namespace heatjet
