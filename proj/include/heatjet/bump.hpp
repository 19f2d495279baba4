#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace heatjet {

/// C-infinity bump on [a, b]: amplitude * exp(-1/(1 - u^2)) with
/// u = (2x - a - b)/(b - a). Exactly zero (the literal constant 0.0) outside
/// the open interval, strictly positive inside.
///
/// Derivatives follow the closed recurrence for the profile p(u) = e^{-1/(1-u^2)}:
///   p^{(k)}(u) = R_k(u) p(u) / (1 - u^2)^{2k},
///   R_{k+1} = R_k' (1-u^2)^2 + (4 k u (1-u^2) - 2u) R_k,   R_0 = 1.
/// The evaluation goes through a single exponential of
/// -1/(1-u^2) - 2k log(1-u^2), which underflows harmlessly near the edges,
/// where every derivative decays faster than any power. Inside the last
/// 1e-12 of (1 - u^2) the result is clamped to exact zero.
class Bump {
public:
    Bump(double a, double b, double amplitude = 1.0) : a_(a), b_(b), amp_(amplitude) {
        if (!(a < b)) throw std::invalid_argument("Bump: need a < b");
    }

    static constexpr int kMaxOrder = 16;

    double lo() const { return a_; }
    double hi() const { return b_; }
    double amplitude() const { return amp_; }

    double operator()(double x) const { return derivative(0, x); }

    double derivative(int k, double x) const {
        if (k < 0 || k > kMaxOrder) throw std::invalid_argument("Bump: derivative order out of range");
        if (x <= a_ || x >= b_) return 0.0;
        const double scale = 2.0 / (b_ - a_);
        const double u = (2.0 * x - a_ - b_) / (b_ - a_);
        const double tt = 1.0 - u * u;
        if (tt < 1e-12) return 0.0;
        const double expo = -1.0 / tt - 2.0 * k * std::log(tt);
        if (expo < -700.0) return 0.0;
        return amp_ * std::pow(scale, k) * eval_poly(rk(k), u) * std::exp(expo);
    }

private:
    static double eval_poly(const std::vector<double>& c, double u) {
        double v = 0.0;
        for (size_t i = c.size(); i-- > 0;) v = v * u + c[i];
        return v;
    }

    // R_k coefficient tables (ascending powers of u), built once.
    static const std::vector<double>& rk(int k) {
        static const std::vector<std::vector<double>> table = [] {
            std::vector<std::vector<double>> t;
            t.push_back({1.0});
            for (int k2 = 0; k2 < kMaxOrder; ++k2) {
                const std::vector<double>& r = t.back();
                // (1 - u^2)^2 = 1 - 2u^2 + u^4
                std::vector<double> next(r.size() + 3, 0.0);
                for (size_t i = 1; i < r.size(); ++i) {
                    const double d = static_cast<double>(i) * r[i];  // R'
                    next[i - 1] += d;
                    next[i + 1] += -2.0 * d;
                    next[i + 3] += d;
                }
                // (4 k u (1 - u^2) - 2u) R = ((4k - 2) u - 4k u^3) R
                const double lin = 4.0 * k2 - 2.0;
                const double cub = -4.0 * k2;
                for (size_t i = 0; i < r.size(); ++i) {
                    next[i + 1] += lin * r[i];
                    if (cub != 0.0) next[i + 3] += cub * r[i];
                }
                while (!next.empty() && next.back() == 0.0) next.pop_back();
                t.push_back(std::move(next));
            }
            return t;
        }();
        return table[static_cast<size_t>(k)];
    }

    double a_;
    double b_;
    double amp_;
};

}  // namespace heatjet
