#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <stdexcept>
#include <vector>

#include "heatjet/bump.hpp"
#include "heatjet/derivatives.hpp"

namespace heatjet {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    double width() const { return hi - lo; }
    bool contains(double x) const { return x >= lo && x <= hi; }
};

/// Univariate polynomial with closed-form derivatives.
class Polynomial1D {
public:
    Polynomial1D() : c_{0.0} {}
    explicit Polynomial1D(std::vector<double> coeffs_ascending) : c_(std::move(coeffs_ascending)) {
        if (c_.empty()) c_.push_back(0.0);
    }
    static Polynomial1D constant(double v) { return Polynomial1D({v}); }
    static Polynomial1D x() { return Polynomial1D({0.0, 1.0}); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<double>& coeffs() const { return c_; }

    double operator()(double x) const { return derivative(0, x); }

    double derivative(int k, double x) const {
        double sum = 0.0;
        for (size_t i = c_.size(); i-- > 0;) {
            const int p = static_cast<int>(i);
            if (p < k) break;
            double term = c_[i];
            for (int j = 0; j < k; ++j) term *= (p - j);
            sum += term * std::pow(x, p - k);
        }
        return sum;
    }

private:
    std::vector<double> c_;
};

/// Finite formal combination sum_i (polynomial_i * bump_i). Smooth, with
/// exact compact support contained in the union of the bump intervals.
class TestFunction {
public:
    struct Term {
        Polynomial1D poly;
        Bump bump;
    };

    static TestFunction bump(double a, double b, double amplitude = 1.0) {
        TestFunction f;
        f.terms_.push_back({Polynomial1D::constant(1.0), Bump(a, b, amplitude)});
        return f;
    }

    static TestFunction poly_times_bump(Polynomial1D p, Bump b) {
        TestFunction f;
        f.terms_.push_back({std::move(p), std::move(b)});
        return f;
    }

    TestFunction& add_term(Polynomial1D p, Bump b) {
        terms_.push_back({std::move(p), std::move(b)});
        return *this;
    }

    TestFunction operator+(const TestFunction& o) const {
        TestFunction f = *this;
        f.terms_.insert(f.terms_.end(), o.terms_.begin(), o.terms_.end());
        return f;
    }

    TestFunction scaled(double s) const {
        TestFunction f = *this;
        for (auto& t : f.terms_) {
            std::vector<double> c = t.poly.coeffs();
            for (double& v : c) v *= s;
            t.poly = Polynomial1D(std::move(c));
        }
        return f;
    }

    const std::vector<Term>& terms() const { return terms_; }

    /// Smallest interval covering all summand supports.
    Interval support() const {
        if (terms_.empty()) return {0.0, 0.0};
        Interval s{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
        for (const auto& t : terms_) {
            s.lo = std::min(s.lo, t.bump.lo());
            s.hi = std::max(s.hi, t.bump.hi());
        }
        return s;
    }

    double operator()(double x) const { return derivative(0, x); }

    /// Leibniz over the polynomial factor; exact zero outside the support.
    double derivative(int k, double x) const {
        double sum = 0.0;
        for (const auto& t : terms_) {
            if (x <= t.bump.lo() || x >= t.bump.hi()) continue;
            for (int j = 0; j <= std::min(k, t.poly.degree()); ++j)
                sum += binomial(k, j) * t.poly.derivative(j, x) * t.bump.derivative(k - j, x);
        }
        return sum;
    }

private:
    std::vector<Term> terms_;
};

enum class Decay { compact, gaussian, poly_bounded };

/// What a distribution can be paired against: a derivative evaluator plus a
/// decay descriptor that tells the quadrature which scheme is admissible.
class PairingInput {
public:
    using DerivEval = std::function<double(int, double)>;

    PairingInput(DerivEval d, Decay decay, Interval support = {}, int max_order = Bump::kMaxOrder)
        : d_(std::move(d)), decay_(decay), support_(support), max_order_(max_order) {}

    static PairingInput from(const TestFunction& f) {
        return PairingInput([f](int k, double x) { return f.derivative(k, x); }, Decay::compact,
                            f.support());
    }

    /// exp(-x^2); derivatives via the Hermite recurrence
    /// d^k/dx^k e^{-x^2} = (-1)^k H_k(x) e^{-x^2}.
    static PairingInput gaussian() {
        return PairingInput(
            [](int k, double x) {
                double h0 = 1.0, h1 = 2.0 * x;
                double h = (k == 0) ? h0 : h1;
                for (int m = 1; m < k; ++m) {
                    const double h2 = 2.0 * x * h1 - 2.0 * m * h0;
                    h0 = h1;
                    h1 = h2;
                    h = h2;
                }
                const double sign = (k % 2 == 0) ? 1.0 : -1.0;
                return sign * h * std::exp(-x * x);
            },
            Decay::gaussian, {}, 64);
    }

    static PairingInput constant(double c) {
        PairingInput p([c](int k, double) { return k == 0 ? c : 0.0; }, Decay::poly_bounded, {}, 64);
        p.polynomial_ = true;
        return p;
    }

    static PairingInput monomial(int p) {
        PairingInput in(
            [p](int k, double x) {
                if (k > p) return 0.0;
                double f = 1.0;
                for (int j = 0; j < k; ++j) f *= (p - j);
                return f * std::pow(x, p - k);
            },
            Decay::poly_bounded, {}, 64);
        in.polynomial_ = true;
        return in;
    }

    /// Identically 1 on [-flat, flat], exactly 0 outside [-(flat+shoulder), ...],
    /// C-infinity shoulders. Evaluation only (no derivatives).
    static PairingInput plateau(double flat, double shoulder) {
        auto edge = [](double y) { return y > 0.0 ? std::exp(-1.0 / y) : 0.0; };
        auto step = [edge](double y) {	// 0 for y <= 0, 1 for y >= 1
            const double p = edge(y);
            const double q = edge(1.0 - y);
            return p + q == 0.0 ? (y > 0.5 ? 1.0 : 0.0) : p / (p + q);
        };
        const double a = flat, s = shoulder;
        return PairingInput(
            [a, s, step](int k, double x) {
                if (k != 0) throw std::invalid_argument("plateau input: derivatives unavailable");
                const double ax = std::abs(x);
                if (ax <= a) return 1.0;
                if (ax >= a + s) return 0.0;
                return step((a + s - ax) / s);
            },
            Decay::compact, {-(flat + shoulder), flat + shoulder}, 0);
    }

    double operator()(double x) const { return d_(0, x); }
    double derivative(int k, double x) const {
        if (k > max_order_) throw std::invalid_argument("PairingInput: derivative order above maximum");
        return d_(k, x);
    }

    Decay decay() const { return decay_; }
    Interval support() const { return support_; }
    int max_order() const { return max_order_; }
    bool is_polynomial() const { return polynomial_; }

    /// The same function with every derivative query shifted by n.
    PairingInput derivative_shifted(int n) const {
        DerivEval d = d_;
        PairingInput p([d, n](int k, double x) { return d(k + n, x); }, decay_, support_,
                       max_order_ - n);
        p.polynomial_ = polynomial_;
        return p;
    }

private:
    DerivEval d_;
    Decay decay_;
    Interval support_;
    int max_order_;
    bool polynomial_ = false;
};

/// phi(x) = phi(0) + x psi(x) with psi smooth; psi is bounded with
/// psi(0) = phi'(0) and decays like 1/x far from the support of phi.
/// Derivatives follow x psi^{(k)} = phi^{(k)} - k psi^{(k-1)}; near the
/// origin the series psi^{(k)}(x) = sum_{m>=k} phi^{(m+1)}(0) x^{m-k} /
/// ((m+1) (m-k)!) replaces the quotient, whose numerator cancellation would
/// otherwise leave noise well above machine epsilon.
inline PairingInput hadamard_split(const PairingInput& phi) {
    const int max_k = std::max(0, phi.max_order() - 1);
    auto psi_impl = std::make_shared<std::function<double(int, double)>>();
    *psi_impl = [phi, psi_impl](int k, double x) -> double {
        constexpr double series_window = 0.02;
        if (std::abs(x) < series_window) {
            double sum = 0.0;
            for (int m = k; m <= k + 10 && m + 1 <= phi.max_order(); ++m) {
                double c = phi.derivative(m + 1, 0.0) / (m + 1);
                for (int j = 2; j <= m - k; ++j) c /= j;
                sum += c * std::pow(x, m - k);
            }
            return sum;
        }
        if (k == 0) return (phi.derivative(0, x) - phi.derivative(0, 0.0)) / x;
        return (phi.derivative(k, x) - k * (*psi_impl)(k - 1, x)) / x;
    };
    return PairingInput([psi_impl](int k, double x) { return (*psi_impl)(k, x); },
                        Decay::poly_bounded, {}, max_k);
}

}  // namespace heatjet
