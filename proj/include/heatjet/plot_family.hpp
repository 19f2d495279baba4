#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace heatjet {

/// One-parameter family f(u, x) of compactly supported functions, with a
/// parameter sample grid and an optional support-bound witness b(u).
class PlotFamily {
public:
    PlotFamily(std::function<double(double, double)> f, std::vector<double> samples)
        : f_(std::move(f)), samples_(std::move(samples)) {
        if (samples_.empty()) throw std::invalid_argument("PlotFamily: empty sample grid");
    }

    PlotFamily& with_witness(std::function<double(double)> b) {
        witness_ = std::move(b);
        return *this;
    }

    double operator()(double u, double x) const { return f_(u, x); }
    const std::vector<double>& samples() const { return samples_; }
    bool has_witness() const { return static_cast<bool>(witness_); }
    double witness(double u) const { return (*witness_)(u); }

private:
    std::function<double(double, double)> f_;
    std::vector<double> samples_;
    std::optional<std::function<double(double)>> witness_;
};

struct WitnessCoverEntry {
    double t = 0.0;
    double v_lo = 0.0, v_hi = 0.0;  // the neighborhood on which the constant works
    double c = 0.0;                 // support constant b(t) + 1
    int probes = 0;
};

struct ViolationEntry {
    double t = 0.0;  // parameter value t_k
    double x = 0.0;  // point x_k with |x_k| beyond the k-th compact
    double c = 0.0;  // f(t_k, x_k) != 0
};

struct LubsReport {
    enum class Status { bounded_with_witness, bounded_scanned, violation, inconclusive };
    Status status = Status::inconclusive;
    std::vector<WitnessCoverEntry> cover;
    std::vector<ViolationEntry> sequence;
    double t0 = 0.0;  // accumulation parameter of the violating sequence
    std::string note;
};

namespace detail {
/// Largest |x| on the scan grid where |f(u, .)| exceeds tol; +inf when the
/// support reaches the edge of the scanned window.
inline double support_bound_scan(const PlotFamily& f, double u, double tol, double x_max, int points) {
    double bound = 0.0;
    bool touched_edge = false;
    for (int i = 0; i <= points; ++i) {
        const double x = -x_max + 2.0 * x_max * i / points;
        if (std::abs(f(u, x)) > tol) {
            bound = std::max(bound, std::abs(x));
            if (std::abs(x) > x_max * 0.98) touched_edge = true;
        }
    }
    return touched_edge ? std::numeric_limits<double>::infinity() : bound;
}
}  // namespace detail

/// Uniform-support check near every sampled parameter. With a continuous
/// witness b the cover uses the constant c_t = b(t) + 1 on a neighborhood of
/// each sample and verifies vanishing beyond it; without one, a support scan
/// looks for a sample where the bound blows up.
inline LubsReport lubs_check(const PlotFamily& f, double tol = 1e-300, double scan_limit = 64.0) {
    LubsReport rep;
    const auto& samples = f.samples();

    if (f.has_witness()) {
        rep.status = LubsReport::Status::bounded_with_witness;
        for (size_t i = 0; i < samples.size(); ++i) {
            const double t = samples[i];
            const double c = f.witness(t) + 1.0;
            double delta = scan_limit;
            if (i > 0) delta = std::min(delta, 0.5 * std::abs(t - samples[i - 1]));
            if (i + 1 < samples.size()) delta = std::min(delta, 0.5 * std::abs(samples[i + 1] - t));
            if (delta == scan_limit) delta = 0.5;
            WitnessCoverEntry e{t, t - delta, t + delta, c, 0};
            for (int a = -2; a <= 2; ++a) {
                const double y = t + delta * a / 2.0;
                if (f.witness(y) >= c) {
                    rep.status = LubsReport::Status::inconclusive;
                    rep.note = "witness not dominated by c_t on the sampled neighborhood";
                }
                for (double m : {1.001, 1.01, 1.1, 1.5, 2.0, 4.0}) {
                    for (double sign : {-1.0, 1.0}) {
                        ++e.probes;
                        if (f(y, sign * c * m) != 0.0) {
                            rep.status = LubsReport::Status::violation;
                            rep.note = "witnessed bound contradicted by a probe";
                            rep.sequence.push_back({y, sign * c * m, f(y, sign * c * m)});
                        }
                    }
                }
            }
            rep.cover.push_back(e);
        }
        return rep;
    }

    // Scan route. A sample "escapes" when its support bound reaches the scan
    // window; the accumulation parameter is a neighboring sample whose own
    // bound is genuinely small (the support jumps there instead of growing
    // through it).
    std::vector<double> bounds(samples.size());
    std::vector<bool> escapes(samples.size(), false);
    bool any_escape = false;
    for (size_t i = 0; i < samples.size(); ++i) {
        bounds[i] = detail::support_bound_scan(f, samples[i], tol, scan_limit, 4096);
        escapes[i] = !(bounds[i] < 0.9 * scan_limit);
        any_escape = any_escape || escapes[i];
    }
    if (!any_escape) {
        const double worst = *std::max_element(bounds.begin(), bounds.end());
        if (worst > scan_limit / 2) {
            rep.status = LubsReport::Status::inconclusive;
            rep.note = "support bounds approach the scan window; grid too coarse to certify";
        } else {
            rep.status = LubsReport::Status::bounded_scanned;
            for (size_t i = 0; i < samples.size(); ++i)
                rep.cover.push_back({samples[i], samples[i], samples[i], bounds[i] + 1.0, 0});
        }
        return rep;
    }

    // A sample showing no support at all next to an escaping one may simply
    // hide its support beyond the window: rescan those with a wider window
    // before trusting them as accumulation candidates.
    std::vector<bool> rescanned(samples.size(), false);
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < samples.size(); ++i) {
            if (escapes[i] || rescanned[i] || bounds[i] > 0.1 * scan_limit) continue;
            const bool near_escape = (i > 0 && escapes[i - 1]) || (i + 1 < samples.size() && escapes[i + 1]);
            if (!near_escape) continue;
            rescanned[i] = true;
            const double wide = detail::support_bound_scan(f, samples[i], tol, 4.0 * scan_limit, 16384);
            if (!(wide < 0.9 * scan_limit)) {
                escapes[i] = true;
                changed = true;
            }
        }
    }

    size_t t0_idx = samples.size();
    for (size_t i = 0; i < samples.size(); ++i) {
        if (!escapes[i]) continue;
        for (size_t j : {i == 0 ? samples.size() : i - 1, i + 1}) {
            if (j >= samples.size() || escapes[j]) continue;
            if (bounds[j] <= 0.1 * scan_limit) t0_idx = j;
        }
    }
    if (t0_idx == samples.size()) {
        rep.status = LubsReport::Status::inconclusive;
        rep.note = "supports escape but no clean accumulation sample was found";
        return rep;
    }
    rep.status = LubsReport::Status::violation;
    rep.t0 = samples[t0_idx];

    // Violating sequence: escape samples walked toward t0, supports growing,
    // each contributing the strongest point beyond both the k-th compact and
    // the previous |x|.
    std::vector<size_t> order;
    for (size_t i = 0; i < samples.size(); ++i)
        if (escapes[i]) order.push_back(i);
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return std::abs(samples[a] - rep.t0) > std::abs(samples[b] - rep.t0);
    });
    double need = 1.0;
    double last_x = 0.0;
    for (size_t i : order) {
        const double t = samples[i];
        const double lo = std::max(need, last_x + 0.5);
        double found_x = 0.0, found_c = 0.0;
        for (int m = 0; m <= 4096; ++m) {
            const double x = -scan_limit + 2.0 * scan_limit * m / 4096;
            if (std::abs(x) <= lo) continue;
            const double v = f(t, x);
            if (std::abs(v) > std::abs(found_c)) {
                found_x = x;
                found_c = v;
            }
        }
        if (std::abs(found_c) > tol) {
            rep.sequence.push_back({t, found_x, found_c});
            last_x = std::abs(found_x);
            need += 1.0;
        }
    }
    return rep;
}

/// g  |->  sum_{n >= start} c_n^{-2} g(x_n)^2 over an unbounded increasing
/// point sequence; a finite sum on every compactly supported input.
class SeparatingFunctional {
public:
    SeparatingFunctional(std::vector<double> points, std::vector<double> values, int start_index = 0)
        : x_(std::move(points)), c_(std::move(values)), start_(start_index) {
        if (x_.size() != c_.size() || x_.empty())
            throw std::invalid_argument("SeparatingFunctional: points/values length mismatch");
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0.0) throw std::invalid_argument("SeparatingFunctional: zero value");
            if (i > 0 && std::abs(x_[i]) <= std::abs(x_[i - 1]))
                throw std::invalid_argument("SeparatingFunctional: points must increase in magnitude");
        }
    }

    int start_index() const { return start_; }
    double inner_radius() const { return std::abs(x_.front()); }
    size_t size() const { return x_.size(); }
    double point(size_t i) const { return x_[i]; }
    double value(size_t i) const { return c_[i]; }

    double operator()(const std::function<double(double)>& g) const {
        double sum = 0.0;
        for (size_t i = 0; i < x_.size(); ++i) {
            const double ratio = g(x_[i]) / c_[i];  // ratio first: c_i can be denormal-small
            sum += ratio * ratio;
        }
        return sum;
    }

private:
    std::vector<double> x_;
    std::vector<double> c_;
    int start_;
};

struct DiscontinuityReport {
    double t0 = 0.0;
    double value_at_t0 = 0.0;
    struct Row {
        double t, x, c, functional_value;
    };
    std::vector<Row> rows;
    SeparatingFunctional functional;
    bool demonstrates = false;  // value at t0 is 0 while the sequence stays >= 1
};

/// Builds the separating functional from a family that fails the uniform
/// support check and evaluates it along the violating sequence: the value at
/// the accumulation parameter is 0 while each sequence member contributes a
/// unit term, so the parameter-to-function map cannot be continuous.
inline DiscontinuityReport separating_discontinuity_demo(const PlotFamily& f, double tol = 1e-300,
                                                         double scan_limit = 64.0) {
    LubsReport lub = lubs_check(f, tol, scan_limit);
    if (lub.status != LubsReport::Status::violation || lub.sequence.empty())
        throw std::invalid_argument("separating_discontinuity_demo: no violating sequence found");

    const double t0 = lub.t0;
    const double s0 = detail::support_bound_scan(f, t0, tol, scan_limit, 4096);
    std::vector<double> xs, cs;
    for (const auto& e : lub.sequence) {
        if (std::abs(e.x) <= s0) continue;
        xs.push_back(e.x);
        cs.push_back(e.c);
    }
    if (xs.empty()) throw std::invalid_argument("separating_discontinuity_demo: sequence inside base support");

    SeparatingFunctional T(xs, cs, 1);
    DiscontinuityReport rep{t0, T([&](double x) { return f(t0, x); }), {}, T, false};
    rep.demonstrates = rep.value_at_t0 == 0.0;
    for (const auto& e : lub.sequence) {
        if (std::abs(e.x) <= s0) continue;
        const double v = T([&](double x) { return f(e.t, x); });
        rep.rows.push_back({e.t, e.x, e.c, v});
        if (v < 1.0) rep.demonstrates = false;
    }
    return rep;
}

}  // namespace heatjet
