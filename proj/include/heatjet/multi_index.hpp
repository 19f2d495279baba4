#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace heatjet {

/// Exponent vector of a monomial in a fixed number of variables.
/// Ordering is graded lexicographic: lower total order first, then
/// lexicographic on the exponent tuple.
class MultiIndex {
public:
    MultiIndex() = default;

    explicit MultiIndex(std::vector<int> exponents) : e_(std::move(exponents)) {
        for (int v : e_) {
            if (v < 0) throw std::invalid_argument("MultiIndex: negative exponent");
        }
        order_ = std::accumulate(e_.begin(), e_.end(), 0);
    }

    static MultiIndex zero(int vars) { return MultiIndex(std::vector<int>(static_cast<size_t>(vars), 0)); }

    static MultiIndex unit(int vars, int var) {
        std::vector<int> e(static_cast<size_t>(vars), 0);
        e.at(static_cast<size_t>(var)) = 1;
        return MultiIndex(std::move(e));
    }

    int vars() const { return static_cast<int>(e_.size()); }
    int order() const { return order_; }
    int operator[](int i) const { return e_.at(static_cast<size_t>(i)); }
    const std::vector<int>& exponents() const { return e_; }

    MultiIndex plus(const MultiIndex& o) const {
        if (o.vars() != vars()) throw std::invalid_argument("MultiIndex: mixed variable counts");
        std::vector<int> e(e_);
        for (size_t i = 0; i < e.size(); ++i) e[i] += o.e_[i];
        return MultiIndex(std::move(e));
    }

    /// alpha! = prod_i alpha_i!  (the normalization that turns monomial
    /// coefficients into raw partial derivatives).
    double factorial() const {
        double f = 1.0;
        for (int v : e_)
            for (int j = 2; j <= v; ++j) f *= j;
        return f;
    }

    bool operator==(const MultiIndex& o) const { return e_ == o.e_; }

    bool operator<(const MultiIndex& o) const {
        if (order_ != o.order_) return order_ < o.order_;
        return e_ < o.e_;
    }

    std::string str() const {
        if (order_ == 0) return "1";
        std::ostringstream os;
        bool first = true;
        for (size_t i = 0; i < e_.size(); ++i) {
            if (e_[i] == 0) continue;
            if (!first) os << " ";
            os << "s" << (i + 1);
            if (e_[i] > 1) os << "^" << e_[i];
            first = false;
        }
        return os.str();
    }

private:
    std::vector<int> e_;
    int order_ = 0;
};

namespace detail {
inline void enumerate_rec(int vars, int pos, int budget, std::vector<int>& cur,
                          std::vector<MultiIndex>& out) {
    if (pos == vars) {
        out.push_back(MultiIndex(cur));
        return;
    }
    for (int k = 0; k <= budget; ++k) {
        cur[static_cast<size_t>(pos)] = k;
        enumerate_rec(vars, pos + 1, budget - k, cur, out);
    }
    cur[static_cast<size_t>(pos)] = 0;
}
}  // namespace detail

/// All monomials in `vars` variables of total order < max_order, sorted grlex ascending.
inline std::vector<MultiIndex> monomials_below(int vars, int max_order) {
    if (vars < 0 || max_order < 1) throw std::invalid_argument("monomials_below: need vars >= 0, max_order >= 1");
    std::vector<MultiIndex> out;
    std::vector<int> cur(static_cast<size_t>(vars), 0);
    detail::enumerate_rec(vars, 0, max_order - 1, cur, out);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace heatjet
