#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <vector>

namespace heatjet {

struct Extrapolation {
    double limit = std::numeric_limits<double>::quiet_NaN();
    double error = std::numeric_limits<double>::infinity();
    bool diverged = false;
};

/// Sustained monotone growth in magnitude marks a divergent ladder. The
/// absolute 1e8-times-initial threshold catches fast blowups; the run test
/// catches slow geometric growth (the ladder is finite, so a rate like
/// sqrt(2) per step never reaches the absolute threshold).
inline bool geometric_growth(std::span<const double> v) {
    const size_t n = v.size();
    if (n == 0) return false;
    for (double x : v)
        if (!std::isfinite(x)) return true;
    if (std::abs(v[n - 1]) > 1e8 * (std::abs(v[0]) + 1e-300)) return true;
    if (n < 5) return false;
    size_t start = n - 1;
    while (start > 0 && std::abs(v[start]) > std::abs(v[start - 1]) * 1.05) --start;
    const size_t run = n - start;
    if (run >= std::max<size_t>(4, n / 3) &&
        std::abs(v[n - 1]) > 8.0 * (std::abs(v[start]) + 1e-300))
        return true;
    return false;
}

/// Longest prefix worth extrapolating: cut where the successive differences
/// jump an order of magnitude above their running minimum — that is the
/// onset of rounding noise. Monotone growth never triggers the cut (its
/// differences sit near the running minimum as it rises), so genuine
/// divergence stays visible to the growth detector.
inline size_t convergent_prefix(std::span<const double> v) {
    const size_t n = v.size();
    if (n < 4) return n;
    double bestd = std::abs(v[1] - v[0]);
    for (size_t j = 1; j + 1 < n; ++j) {
        const double d = std::abs(v[j + 1] - v[j]);
        if (d > 10.0 * bestd + 1e-300) return std::max<size_t>(j + 1, 4);
        bestd = std::min(bestd, d);
    }
    return n;
}

/// Richardson extrapolation of v[j] sampled at t = t0 * 2^{-j}, assuming an
/// error expansion in integer powers of t. Trailing rounding noise is
/// trimmed before the divergence test.
inline Extrapolation richardson_limit(std::span<const double> v, int levels = 4) {
    Extrapolation out;
    if (v.empty()) return out;
    size_t n = std::min(convergent_prefix(v), v.size());
    if (geometric_growth(v.subspan(0, n))) {
        out.diverged = true;
        out.limit = v[n - 1];
        return out;
    }
    std::vector<std::vector<double>> r(n);
    for (size_t j = 0; j < n; ++j) {
        r[j].resize(static_cast<size_t>(levels) + 1);
        r[j][0] = v[j];
        const int top = static_cast<int>(std::min<size_t>(static_cast<size_t>(levels), j));
        for (int m = 1; m <= top; ++m) {
            const double denom = std::pow(2.0, m) - 1.0;
            r[j][static_cast<size_t>(m)] =
                r[j][static_cast<size_t>(m - 1)] +
                (r[j][static_cast<size_t>(m - 1)] - r[j - 1][static_cast<size_t>(m - 1)]) / denom;
        }
    }
    const size_t last = n - 1;
    const int top = static_cast<int>(std::min<size_t>(static_cast<size_t>(levels), last));
    out.limit = r[last][static_cast<size_t>(top)];
    double err = 0.0;
    if (top >= 1) err = std::abs(out.limit - r[last][static_cast<size_t>(top - 1)]);
    if (last >= 1) {
        const int ptop = static_cast<int>(std::min<size_t>(static_cast<size_t>(top), last - 1));
        err = std::max(err, std::abs(out.limit - r[last - 1][static_cast<size_t>(ptop)]));
    }
    out.error = err;
    return out;
}

}  // namespace heatjet
