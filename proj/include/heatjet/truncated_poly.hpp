#pragma once

#include <cmath>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "heatjet/multi_index.hpp"

namespace heatjet {

/// Polynomial in `vars` variables truncated to total degree < trunc_order.
/// Arithmetic silently drops every term of order >= trunc_order, so the type
/// is closed under + and *.
class TruncatedPoly {
public:
    TruncatedPoly(int vars, int trunc_order) : vars_(vars), r_(trunc_order) {
        if (vars < 0 || trunc_order < 1) throw std::invalid_argument("TruncatedPoly: need vars >= 0, order >= 1");
    }

    static TruncatedPoly constant(int vars, int trunc_order, double c) {
        TruncatedPoly p(vars, trunc_order);
        p.set_coefficient(MultiIndex::zero(vars), c);
        return p;
    }

    static TruncatedPoly variable(int vars, int trunc_order, int var) {
        TruncatedPoly p(vars, trunc_order);
        if (trunc_order >= 2) p.set_coefficient(MultiIndex::unit(vars, var), 1.0);
        return p;
    }

    int vars() const { return vars_; }
    int trunc_order() const { return r_; }
    const std::map<MultiIndex, double>& terms() const { return c_; }

    double coefficient(const MultiIndex& a) const {
        auto it = c_.find(a);
        return it == c_.end() ? 0.0 : it->second;
    }

    void set_coefficient(const MultiIndex& a, double v) {
        if (a.vars() != vars_) throw std::invalid_argument("TruncatedPoly: index arity mismatch");
        if (a.order() >= r_) return;
        if (v == 0.0)
            c_.erase(a);
        else
            c_[a] = v;
    }

    double constant_term() const { return coefficient(MultiIndex::zero(vars_)); }

    /// coeff(a) * a!  — the raw partial derivative of the polynomial at 0.
    double derivative_at_zero(const MultiIndex& a) const {
        if (a.order() >= r_) return 0.0;
        return coefficient(a) * a.factorial();
    }

    double eval(std::span<const double> x) const {
        if (static_cast<int>(x.size()) != vars_) throw std::invalid_argument("TruncatedPoly::eval arity");
        double sum = 0.0;
        for (const auto& [a, v] : c_) {
            double m = v;
            for (int i = 0; i < vars_; ++i)
                for (int k = 0; k < a[i]; ++k) m *= x[static_cast<size_t>(i)];
            sum += m;
        }
        return sum;
    }

    bool is_zero() const { return c_.empty(); }

    double max_abs_coefficient() const {
        double m = 0.0;
        for (const auto& [a, v] : c_) m = std::max(m, std::abs(v));
        return m;
    }

    TruncatedPoly nilpotent_part() const {
        TruncatedPoly p(*this);
        p.set_coefficient(MultiIndex::zero(vars_), 0.0);
        return p;
    }

    TruncatedPoly& operator+=(const TruncatedPoly& o) {
        check_compatible(o);
        for (const auto& [a, v] : o.c_) set_coefficient(a, coefficient(a) + v);
        return *this;
    }
    TruncatedPoly& operator-=(const TruncatedPoly& o) {
        check_compatible(o);
        for (const auto& [a, v] : o.c_) set_coefficient(a, coefficient(a) - v);
        return *this;
    }
    TruncatedPoly& operator*=(double s) {
        if (s == 0.0) { c_.clear(); return *this; }
        for (auto& [a, v] : c_) v *= s;
        return *this;
    }

    friend TruncatedPoly operator+(TruncatedPoly a, const TruncatedPoly& b) { return a += b; }
    friend TruncatedPoly operator-(TruncatedPoly a, const TruncatedPoly& b) { return a -= b; }
    friend TruncatedPoly operator*(TruncatedPoly a, double s) { return a *= s; }
    friend TruncatedPoly operator*(double s, TruncatedPoly a) { return a *= s; }
    friend TruncatedPoly operator-(const TruncatedPoly& a) { TruncatedPoly r = a; return r *= -1.0; }

    friend TruncatedPoly operator*(const TruncatedPoly& a, const TruncatedPoly& b) {
        a.check_compatible(b);
        TruncatedPoly p(a.vars_, a.r_);
        for (const auto& [ia, va] : a.c_) {
            for (const auto& [ib, vb] : b.c_) {
                if (ia.order() + ib.order() >= a.r_) continue;
                MultiIndex m = ia.plus(ib);
                p.set_coefficient(m, p.coefficient(m) + va * vb);
            }
        }
        return p;
    }

    bool operator==(const TruncatedPoly& o) const {
        return vars_ == o.vars_ && r_ == o.r_ && c_ == o.c_;
    }

private:
    void check_compatible(const TruncatedPoly& o) const {
        if (o.vars_ != vars_ || o.r_ != r_)
            throw std::invalid_argument("TruncatedPoly: incompatible shapes");
    }

    int vars_;
    int r_;
    std::map<MultiIndex, double> c_;
};

/// Composition g(p) where g is given by its derivatives at the constant term
/// of p: derivs[k] = g^{(k)}(p(0)). The sum terminates because the nilpotent
/// part of p has order >= 1.
inline TruncatedPoly compose_series(std::span<const double> derivs, const TruncatedPoly& p) {
    const int r = p.trunc_order();
    if (static_cast<int>(derivs.size()) < r)
        throw std::invalid_argument("compose_series: need derivatives up to order trunc_order - 1");
    TruncatedPoly q = p.nilpotent_part();
    TruncatedPoly acc = TruncatedPoly::constant(p.vars(), r, derivs[0]);
    TruncatedPoly qk = TruncatedPoly::constant(p.vars(), r, 1.0);
    double kfact = 1.0;
    for (int k = 1; k < r; ++k) {
        qk = qk * q;
        if (qk.is_zero()) break;
        kfact *= k;
        acc += qk * (derivs[static_cast<size_t>(k)] / kfact);
    }
    return acc;
}

inline TruncatedPoly exp(const TruncatedPoly& p) {
    const double c = std::exp(p.constant_term());
    std::vector<double> d(static_cast<size_t>(p.trunc_order()), c);
    return compose_series(d, p);
}

inline TruncatedPoly sin(const TruncatedPoly& p) {
    const double c = p.constant_term();
    const double table[4] = {std::sin(c), std::cos(c), -std::sin(c), -std::cos(c)};
    std::vector<double> d(static_cast<size_t>(p.trunc_order()));
    for (size_t k = 0; k < d.size(); ++k) d[k] = table[k % 4];
    return compose_series(d, p);
}

inline TruncatedPoly cos(const TruncatedPoly& p) {
    const double c = p.constant_term();
    const double table[4] = {std::cos(c), -std::sin(c), -std::cos(c), std::sin(c)};
    std::vector<double> d(static_cast<size_t>(p.trunc_order()));
    for (size_t k = 0; k < d.size(); ++k) d[k] = table[k % 4];
    return compose_series(d, p);
}

inline TruncatedPoly log(const TruncatedPoly& p) {
    const double c = p.constant_term();
    if (c <= 0.0) throw std::domain_error("log(TruncatedPoly): constant term must be positive");
    std::vector<double> d(static_cast<size_t>(p.trunc_order()));
    d[0] = std::log(c);
    double fact = 1.0;
    for (size_t k = 1; k < d.size(); ++k) {
        if (k >= 2) fact *= static_cast<double>(k - 1);
        d[k] = (k % 2 == 1 ? 1.0 : -1.0) * fact / std::pow(c, static_cast<double>(k));
    }
    return compose_series(d, p);
}

}  // namespace heatjet
