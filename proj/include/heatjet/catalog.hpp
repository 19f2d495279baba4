#pragma once

#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "heatjet/halfline.hpp"
#include "heatjet/plot_family.hpp"
#include "heatjet/testfn.hpp"
#include "heatjet/truncated_poly.hpp"

namespace heatjet {

// ---------------------------------------------------------------------------
// Named pairing inputs: "bump", "bump[a,b]", "gauss", "poly[c0,c1,..]*bump[a,b]"
// ---------------------------------------------------------------------------

namespace detail {
inline std::vector<double> parse_bracket_list(const std::string& s, size_t& pos) {
    if (pos >= s.size() || s[pos] != '[') throw std::invalid_argument("expected '[' in " + s);
    const size_t end = s.find(']', pos);
    if (end == std::string::npos) throw std::invalid_argument("missing ']' in " + s);
    std::vector<double> vals;
    std::string body = s.substr(pos + 1, end - pos - 1);
    size_t p = 0;
    while (p < body.size()) {
        size_t comma = body.find(',', p);
        if (comma == std::string::npos) comma = body.size();
        const std::string tok = body.substr(p, comma - p);
        size_t used = 0;
        vals.push_back(std::stod(tok, &used));
        p = comma + 1;
    }
    pos = end + 1;
    return vals;
}
}  // namespace detail

inline PairingInput make_phi(const std::string& spec) {
    if (spec == "gauss") return PairingInput::gaussian();
    if (spec == "bump") return PairingInput::from(TestFunction::bump(-1.0, 1.0));
    if (spec.rfind("bump[", 0) == 0) {
        size_t pos = 4;
        auto ab = detail::parse_bracket_list(spec, pos);
        if (ab.size() != 2 || pos != spec.size()) throw std::invalid_argument("bump[a,b]: bad spec " + spec);
        return PairingInput::from(TestFunction::bump(ab[0], ab[1]));
    }
    if (spec.rfind("poly", 0) == 0) {
        size_t pos = 4;
        std::vector<double> coeffs{0.0, 1.0};
        if (pos < spec.size() && spec[pos] == '[') coeffs = detail::parse_bracket_list(spec, pos);
        if (pos >= spec.size() || spec[pos] != '*') throw std::invalid_argument("poly*bump: expected '*'");
        ++pos;
        double a = -1.0, b = 1.0;
        if (spec.compare(pos, 4, "bump") != 0) throw std::invalid_argument("poly*bump: expected bump factor");
        pos += 4;
        if (pos < spec.size()) {
            auto ab = detail::parse_bracket_list(spec, pos);
            if (ab.size() != 2) throw std::invalid_argument("poly*bump[a,b]: bad interval");
            a = ab[0];
            b = ab[1];
        }
        return PairingInput::from(TestFunction::poly_times_bump(Polynomial1D(coeffs), Bump(a, b)));
    }
    throw std::invalid_argument("unknown test input: " + spec);
}

// ---------------------------------------------------------------------------
// Named half-line functions with closed-form derivative oracles
// ---------------------------------------------------------------------------

/// cos(sqrt t) = sum (-1)^m t^m / (2m)!  is entire in t; its k-th derivative
/// is evaluated from the shifted series.
inline double cos_sqrt_derivative(int k, double t) {
    double sum = 0.0;
    double inv_fact2m = 1.0;  // 1/(2m)!
    double tp = 1.0;          // t^{m-k} once m >= k
    for (int m = 0; m <= k + 60; ++m) {
        if (m >= 1) inv_fact2m /= (2.0 * m) * (2.0 * m - 1.0);
        if (m >= k) {
            double c = (m % 2 == 0 ? 1.0 : -1.0) * inv_fact2m;
            for (int j = 0; j < k; ++j) c *= (m - j);
            sum += c * tp;
            if (m > k + 4 && std::abs(c * tp) < 1e-300) break;
            tp *= t;
        }
    }
    return sum;
}

inline HalfLineFn make_halfline(const std::string& name) {
    if (name == "sqrt") {
        HalfLineFn f([](double t) { return std::sqrt(t); });
        f.with_value_at_zero(0.0);
        f.with_derivatives([](int k, double t) {
            double c = 1.0;
            for (int j = 0; j < k; ++j) c *= (0.5 - j);
            return c * std::pow(t, 0.5 - k);
        });
        return f;
    }
    if (name == "cossqrt") {
        HalfLineFn f([](double t) { return std::cos(std::sqrt(t)); });
        f.with_value_at_zero(1.0);
        f.with_derivatives(cos_sqrt_derivative);
        return f;
    }
    if (name == "t") {
        HalfLineFn f([](double t) { return t; });
        f.with_value_at_zero(0.0);
        f.with_derivatives([](int k, double) { return k == 0 ? 0.0 : (k == 1 ? 1.0 : 0.0); });
        return f;
    }
    if (name == "t2") {
        HalfLineFn f([](double t) { return t * t; });
        f.with_value_at_zero(0.0);
        f.with_derivatives([](int k, double t) {
            if (k == 1) return 2.0 * t;
            if (k == 2) return 2.0;
            return 0.0;
        });
        return f;
    }
    if (name == "expinv") {
        // e^{-1/t}; derivatives e^{-1/t} p_k(1/t) with p_{k+1}(y) = y^2 (p_k(y) - p_k'(y))
        HalfLineFn f([](double t) { return std::exp(-1.0 / t); });
        f.with_value_at_zero(0.0);
        f.with_derivatives([](int k, double t) {
            std::vector<std::vector<double>> p{{1.0}};
            for (int i = 0; i < k; ++i) {
                const auto& c = p.back();
                std::vector<double> n(c.size() + 2, 0.0);
                for (size_t d = 0; d < c.size(); ++d) {
                    n[d + 2] += c[d];
                    if (d >= 1) n[d + 1] -= static_cast<double>(d) * c[d];
                }
                p.push_back(std::move(n));
            }
            const double y = 1.0 / t;
            double val = 0.0;
            for (size_t d = p.back().size(); d-- > 0;) val = val * y + p.back()[d];
            return val * std::exp(-y);
        });
        return f;
    }
    if (name == "exp") {
        HalfLineFn f([](double t) { return std::exp(t); });
        f.with_value_at_zero(1.0);
        f.with_derivatives([](int, double t) { return std::exp(t); });
        return f;
    }
    throw std::invalid_argument("unknown half-line function: " + name);
}

// ---------------------------------------------------------------------------
// Named plot families for the uniform-support demonstrations
// ---------------------------------------------------------------------------

inline std::vector<double> reciprocal_samples(int kmax = 80) {
    std::vector<double> s{0.0};
    for (int k = kmax; k >= 1; --k) s.push_back(1.0 / k);
    return s;
}

inline PlotFamily make_family(const std::string& name) {
    const Bump b(-1.0, 1.0);
    if (name == "fixed") {
        // support independent of the parameter
        std::vector<double> samples;
        for (int i = 0; i <= 16; ++i) samples.push_back(-2.0 + 0.25 * i);
        PlotFamily f([b](double u, double x) { return b(x) * std::sin(u); }, samples);
        f.with_witness([](double) { return 1.0; });
        return f;
    }
    if (name == "scaledsupport") {
        // support [-(1+u^2), 1+u^2], continuously witnessed
        std::vector<double> samples;
        for (int i = 0; i <= 16; ++i) samples.push_back(-2.0 + 0.25 * i);
        PlotFamily f([](double u, double x) {
            const double c = 1.0 + u * u;
            return Bump(-c, c)(x);
        }, samples);
        f.with_witness([](double u) { return 1.0 + u * u; });
        return f;
    }
    if (name == "moving") {
        // bump sliding to infinity as u -> 0+, vanishing at u = 0
        return PlotFamily([b](double u, double x) { return u == 0.0 ? 0.0 : b(x - 1.0 / u); },
                          reciprocal_samples());
    }
    if (name == "scaled") {
        return PlotFamily([b](double u, double x) { return u == 0.0 ? 0.0 : u * b(x - 1.0 / u); },
                          reciprocal_samples());
    }
    throw std::invalid_argument("unknown plot family: " + name);
}

// ---------------------------------------------------------------------------
// Generator strings for Weil ideals: "s1^2-s2", "2*s1*s2 + s3^2", ...
// ---------------------------------------------------------------------------

inline TruncatedPoly parse_poly(const std::string& s, int vars, int order) {
    TruncatedPoly out(vars, order);
    size_t i = 0;
    auto skip_ws = [&] { while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i; };
    skip_ws();
    bool first = true;
    while (i < s.size()) {
        double sign = 1.0;
        skip_ws();
        if (s[i] == '+' || s[i] == '-') {
            sign = (s[i] == '-') ? -1.0 : 1.0;
            ++i;
        } else if (!first) {
            throw std::invalid_argument("parse_poly: expected '+' or '-' in '" + s + "'");
        }
        first = false;
        double coeff = sign;
        std::vector<int> exps(static_cast<size_t>(vars), 0);
        bool have_factor = false;
        while (true) {
            skip_ws();
            if (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.')) {
                size_t used = 0;
                coeff *= std::stod(s.substr(i), &used);
                i += used;
                have_factor = true;
            } else if (i < s.size() && s[i] == 's') {
                ++i;
                int var = 1;
                if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
                    size_t used = 0;
                    var = std::stoi(s.substr(i), &used);
                    i += used;
                }
                if (var < 1 || var > vars)
                    throw std::invalid_argument("parse_poly: variable s" + std::to_string(var) +
                                                " out of range in '" + s + "'");
                int e = 1;
                skip_ws();
                if (i < s.size() && s[i] == '^') {
                    ++i;
                    size_t used = 0;
                    e = std::stoi(s.substr(i), &used);
                    i += used;
                }
                exps[static_cast<size_t>(var - 1)] += e;
                have_factor = true;
            } else {
                break;
            }
            skip_ws();
            if (i < s.size() && s[i] == '*') {
                ++i;
                continue;
            }
            // juxtaposition like "s1 s2" also continues the term
            if (i < s.size() && s[i] == 's') continue;
            break;
        }
        if (!have_factor) throw std::invalid_argument("parse_poly: empty term in '" + s + "'");
        MultiIndex a(exps);
        out.set_coefficient(a, out.coefficient(a) + coeff);
        skip_ws();
    }
    return out;
}

}  // namespace heatjet
