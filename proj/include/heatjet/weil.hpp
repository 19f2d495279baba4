#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "heatjet/derivatives.hpp"
#include "heatjet/multi_index.hpp"
#include "heatjet/truncated_poly.hpp"

namespace heatjet {

/// Differential operator supported at a base point:
///   f  |->  sum_i  w_i * d^{alpha_i} f (base).
/// Weights carry any factorial normalization explicitly.
class DiffOperator {
public:
    struct Term {
        MultiIndex alpha;
        double weight;
    };

    DiffOperator(std::vector<double> base, std::vector<Term> terms)
        : base_(std::move(base)), terms_(std::move(terms)) {
        for (const auto& t : terms_)
            if (t.alpha.vars() != static_cast<int>(base_.size()))
                throw std::invalid_argument("DiffOperator: term arity mismatch");
    }

    const std::vector<double>& base() const { return base_; }
    const std::vector<Term>& terms() const { return terms_; }

    int max_order() const {
        int m = 0;
        for (const auto& t : terms_) m = std::max(m, t.alpha.order());
        return m;
    }

    double apply(const FunctionOracle& f) const {
        double sum = 0.0;
        for (const auto& t : terms_) sum += t.weight * f.partial(t.alpha, base_);
        return sum;
    }

    /// Exact application to a truncated polynomial (base point must be 0).
    double apply_poly(const TruncatedPoly& p) const {
        for (double b : base_)
            if (b != 0.0) throw std::invalid_argument("DiffOperator::apply_poly: base point must be 0");
        double sum = 0.0;
        for (const auto& t : terms_) sum += t.weight * p.derivative_at_zero(t.alpha);
        return sum;
    }

private:
    std::vector<double> base_;
    std::vector<Term> terms_;
};

inline double apply_diff_op(const DiffOperator& d, const FunctionOracle& f) { return d.apply(f); }

class WeilElement;

/// Finite-dimensional quotient of the truncated polynomial algebra in `vars`
/// variables of order < trunc_order by the ideal generated by the given
/// polynomials (all powers of total order >= trunc_order are implicit).
///
/// The construction is plain linear algebra: the ideal span is row-reduced
/// against the graded-lex monomial list with pivots on the grlex-least
/// monomial of each row, the quotient basis is the staircase of non-pivot
/// monomials, and the dual operators read Taylor coefficients corrected by
/// the reduced rows. Pivot-on-least keeps reduction order-nondecreasing, so
/// nilpotent powers vanish exactly.
class WeilAlgebra : public std::enable_shared_from_this<WeilAlgebra> {
public:
    static std::shared_ptr<const WeilAlgebra> build(int vars, int trunc_order,
                                                    std::vector<TruncatedPoly> generators) {
        auto alg = std::shared_ptr<WeilAlgebra>(new WeilAlgebra(vars, trunc_order, std::move(generators)));
        alg->construct();
        return alg;
    }

    int vars() const { return l_; }
    int trunc_order() const { return r_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    int full_dim() const { return static_cast<int>(monomials_.size()); }
    int unit_index() const { return unit_index_; }

    const std::vector<TruncatedPoly>& generators() const { return gens_; }
    const std::vector<MultiIndex>& monomials() const { return monomials_; }
    const std::vector<MultiIndex>& basis() const { return basis_; }
    const std::vector<MultiIndex>& pivots() const { return pivots_; }
    const std::vector<TruncatedPoly>& ideal_rows() const { return ideal_rows_; }
    const std::vector<DiffOperator>& dual_ops() const { return dual_ops_; }

    /// Quotient coordinates of the class of p.
    std::vector<double> reduce(const TruncatedPoly& p) const {
        if (p.vars() != l_ || p.trunc_order() != r_)
            throw std::invalid_argument("WeilAlgebra::reduce: shape mismatch");
        std::vector<double> coords(basis_.size(), 0.0);
        for (size_t g = 0; g < basis_.size(); ++g) coords[g] = dual_coord(g, p);
        return coords;
    }

    TruncatedPoly representative(std::span<const double> coords) const {
        if (coords.size() != basis_.size()) throw std::invalid_argument("representative: bad length");
        TruncatedPoly p(l_, r_);
        for (size_t g = 0; g < basis_.size(); ++g)
            if (coords[g] != 0.0) p.set_coefficient(basis_[g], coords[g]);
        return p;
    }

    std::span<const double> table(int i, int j) const {
        const size_t q = basis_.size();
        return std::span<const double>(mult_table_.data() + (static_cast<size_t>(i) * q + j) * q, q);
    }

    WeilElement element(std::vector<double> coords) const;
    WeilElement zero() const;
    WeilElement unit() const;
    WeilElement variable(int i) const;
    WeilElement from_poly(const TruncatedPoly& p) const;

private:
    WeilAlgebra(int vars, int trunc_order, std::vector<TruncatedPoly> generators)
        : l_(vars), r_(trunc_order), gens_(std::move(generators)) {
        if (l_ < 0 || r_ < 1) throw std::invalid_argument("WeilAlgebra: need vars >= 0, order >= 1");
    }

    // Dual coordinate g of p: Taylor coefficient at the basis monomial,
    // corrected by the reduced-row entries so the functional kills the ideal.
    double dual_coord(size_t g, const TruncatedPoly& p) const {
        double v = p.coefficient(basis_[g]);
        for (size_t k = 0; k < pivots_.size(); ++k) {
            const double a = ideal_rows_[k].coefficient(basis_[g]);
            if (a != 0.0) v -= a * p.coefficient(pivots_[k]);
        }
        return v;
    }

    void construct() {
        monomials_ = monomials_below(l_, r_);
        std::map<MultiIndex, int> index;
        for (size_t i = 0; i < monomials_.size(); ++i) index[monomials_[i]] = static_cast<int>(i);
        const size_t n = monomials_.size();

        // Span of generator * monomial, truncated.
        std::vector<std::vector<double>> rows;
        for (const auto& g0 : gens_) {
            if (g0.vars() != l_) throw std::invalid_argument("WeilAlgebra: generator arity mismatch");
            TruncatedPoly g(l_, r_);
            for (const auto& [a, v] : g0.terms()) g.set_coefficient(a, v);
            if (g.constant_term() != 0.0)
                throw std::invalid_argument("WeilAlgebra: generator has nonzero constant term (improper ideal)");
            for (const auto& m : monomials_) {
                TruncatedPoly mono(l_, r_);
                mono.set_coefficient(m, 1.0);
                TruncatedPoly prod = g * mono;
                if (prod.is_zero()) continue;
                std::vector<double> row(n, 0.0);
                for (const auto& [a, v] : prod.terms()) row[static_cast<size_t>(index.at(a))] = v;
                rows.push_back(std::move(row));
            }
        }

        // Row reduction, pivot on the first (grlex-least) nonzero column.
        double scale = 0.0;
        for (const auto& row : rows)
            for (double v : row) scale = std::max(scale, std::abs(v));
        const double tol = scale * 1e-13;
        std::vector<int> pivot_col;
        std::vector<std::vector<double>> reduced;
        for (auto row : rows) {
            for (size_t k = 0; k < reduced.size(); ++k) {
                const double f = row[static_cast<size_t>(pivot_col[k])];
                if (f != 0.0)
                    for (size_t c = 0; c < n; ++c) row[c] -= f * reduced[k][c];
            }
            int pc = -1;
            for (size_t c = 0; c < n; ++c)
                if (std::abs(row[c]) > tol) { pc = static_cast<int>(c); break; }
            if (pc < 0) continue;
            const double inv = 1.0 / row[static_cast<size_t>(pc)];
            for (size_t c = 0; c < n; ++c) row[c] = (std::abs(row[c]) > tol) ? row[c] * inv : 0.0;
            row[static_cast<size_t>(pc)] = 1.0;
            // back-substitute into earlier rows
            for (size_t k = 0; k < reduced.size(); ++k) {
                const double f = reduced[k][static_cast<size_t>(pc)];
                if (f != 0.0)
                    for (size_t c = 0; c < n; ++c) reduced[k][c] -= f * row[c];
            }
            reduced.push_back(std::move(row));
            pivot_col.push_back(pc);
        }

        // Order rows by pivot column.
        std::vector<size_t> order(reduced.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return pivot_col[a] < pivot_col[b]; });

        std::vector<bool> is_pivot(n, false);
        for (size_t i : order) {
            const int pc = pivot_col[i];
            is_pivot[static_cast<size_t>(pc)] = true;
            pivots_.push_back(monomials_[static_cast<size_t>(pc)]);
            TruncatedPoly rowpoly(l_, r_);
            for (size_t c = 0; c < n; ++c)
                if (reduced[i][c] != 0.0) rowpoly.set_coefficient(monomials_[c], reduced[i][c]);
            ideal_rows_.push_back(std::move(rowpoly));
        }
        for (size_t c = 0; c < n; ++c)
            if (!is_pivot[c]) basis_.push_back(monomials_[c]);

        // The constant monomial can never be a pivot (rows have no constant term).
        unit_index_ = -1;
        for (size_t g = 0; g < basis_.size(); ++g)
            if (basis_[g].order() == 0) unit_index_ = static_cast<int>(g);
        if (unit_index_ < 0) throw std::logic_error("WeilAlgebra: class of 1 missing from quotient basis");

        build_dual_ops();
        build_mult_table();
    }

    void build_dual_ops() {
        const std::vector<double> origin(static_cast<size_t>(l_), 0.0);
        for (size_t g = 0; g < basis_.size(); ++g) {
            std::vector<DiffOperator::Term> terms;
            terms.push_back({basis_[g], 1.0 / basis_[g].factorial()});
            for (size_t k = 0; k < pivots_.size(); ++k) {
                const double a = ideal_rows_[k].coefficient(basis_[g]);
                if (a != 0.0) terms.push_back({pivots_[k], -a / pivots_[k].factorial()});
            }
            dual_ops_.emplace_back(origin, std::move(terms));
        }
    }

    void build_mult_table() {
        const size_t q = basis_.size();
        mult_table_.assign(q * q * q, 0.0);
        for (size_t i = 0; i < q; ++i) {
            for (size_t j = 0; j < q; ++j) {
                TruncatedPoly prod(l_, r_);
                const MultiIndex m = basis_[i].plus(basis_[j]);
                if (m.order() < r_) prod.set_coefficient(m, 1.0);
                const std::vector<double> coords = reduce(prod);
                for (size_t g = 0; g < q; ++g) mult_table_[(i * q + j) * q + g] = coords[g];
            }
        }
    }

    int l_;
    int r_;
    std::vector<TruncatedPoly> gens_;
    std::vector<MultiIndex> monomials_;
    std::vector<MultiIndex> basis_;
    std::vector<MultiIndex> pivots_;
    std::vector<TruncatedPoly> ideal_rows_;
    std::vector<DiffOperator> dual_ops_;
    std::vector<double> mult_table_;
    int unit_index_ = -1;
};

inline std::shared_ptr<const WeilAlgebra> build_algebra(int vars, int trunc_order,
                                                        std::vector<TruncatedPoly> generators = {}) {
    return WeilAlgebra::build(vars, trunc_order, std::move(generators));
}

/// ℝ[ε]/(ε^m): one variable, pure truncation.
inline std::shared_ptr<const WeilAlgebra> dual_number_algebra(int m = 2) {
    return WeilAlgebra::build(1, m, {});
}

/// Element of a Weil algebra: coordinate vector over the quotient basis.
class WeilElement {
public:
    WeilElement(std::shared_ptr<const WeilAlgebra> alg, std::vector<double> coords)
        : alg_(std::move(alg)), c_(std::move(coords)) {
        if (!alg_ || static_cast<int>(c_.size()) != alg_->dim())
            throw std::invalid_argument("WeilElement: bad coordinates");
    }

    const std::shared_ptr<const WeilAlgebra>& algebra() const { return alg_; }
    const std::vector<double>& coords() const { return c_; }
    double coord(int i) const { return c_.at(static_cast<size_t>(i)); }

    /// Value of the representative at s = 0.
    double augmentation() const { return c_[static_cast<size_t>(alg_->unit_index())]; }

    WeilElement nilpotent() const {
        WeilElement w = *this;
        w.c_[static_cast<size_t>(alg_->unit_index())] = 0.0;
        return w;
    }

    TruncatedPoly representative() const { return alg_->representative(c_); }

    bool is_zero(double tol = 0.0) const {
        for (double v : c_)
            if (std::abs(v) > tol) return false;
        return true;
    }

    double max_abs() const {
        double m = 0.0;
        for (double v : c_) m = std::max(m, std::abs(v));
        return m;
    }

    WeilElement& operator+=(const WeilElement& o) {
        check(o);
        for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    WeilElement& operator-=(const WeilElement& o) {
        check(o);
        for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
        return *this;
    }
    WeilElement& operator*=(double s) {
        for (double& v : c_) v *= s;
        return *this;
    }

    friend WeilElement operator+(WeilElement a, const WeilElement& b) { return a += b; }
    friend WeilElement operator-(WeilElement a, const WeilElement& b) { return a -= b; }
    friend WeilElement operator*(WeilElement a, double s) { return a *= s; }
    friend WeilElement operator*(double s, WeilElement a) { return a *= s; }
    friend WeilElement operator-(const WeilElement& a) { WeilElement r = a; return r *= -1.0; }

    friend WeilElement operator*(const WeilElement& a, const WeilElement& b) {
        a.check(b);
        const size_t q = a.c_.size();
        std::vector<double> out(q, 0.0);
        for (size_t i = 0; i < q; ++i) {
            if (a.c_[i] == 0.0) continue;
            for (size_t j = 0; j < q; ++j) {
                if (b.c_[j] == 0.0) continue;
                const double f = a.c_[i] * b.c_[j];
                std::span<const double> t = a.alg_->table(static_cast<int>(i), static_cast<int>(j));
                for (size_t g = 0; g < q; ++g) out[g] += f * t[g];
            }
        }
        return WeilElement(a.alg_, std::move(out));
    }

    WeilElement pow(int k) const {
        WeilElement acc = algebra()->unit();
        for (int i = 0; i < k; ++i) acc = acc * (*this);
        return acc;
    }

private:
    void check(const WeilElement& o) const {
        if (alg_.get() != o.alg_.get()) throw std::invalid_argument("WeilElement: mismatched algebras");
    }

    std::shared_ptr<const WeilAlgebra> alg_;
    std::vector<double> c_;
};

inline WeilElement WeilAlgebra::element(std::vector<double> coords) const {
    return WeilElement(shared_from_this(), std::move(coords));
}
inline WeilElement WeilAlgebra::zero() const {
    return element(std::vector<double>(static_cast<size_t>(dim()), 0.0));
}
inline WeilElement WeilAlgebra::unit() const {
    std::vector<double> c(static_cast<size_t>(dim()), 0.0);
    c[static_cast<size_t>(unit_index_)] = 1.0;
    return element(std::move(c));
}
inline WeilElement WeilAlgebra::variable(int i) const {
    TruncatedPoly p = TruncatedPoly::variable(l_, r_, i);
    return element(reduce(p));
}
inline WeilElement WeilAlgebra::from_poly(const TruncatedPoly& p) const { return element(reduce(p)); }

/// Lift of a scalar function through the algebra:
///   sum_{k < r} g^{(k)}(aug w) (w - aug w)^k / k!.
/// The sum terminates because the nilpotent part has vanishing r-th power.
inline WeilElement taylor_lift(const std::function<double(int, double)>& g_derivs, const WeilElement& w) {
    const auto& alg = w.algebra();
    const double a = w.augmentation();
    const WeilElement nil = w.nilpotent();
    WeilElement acc = alg->unit() * g_derivs(0, a);
    WeilElement nk = alg->unit();
    double kfact = 1.0;
    for (int k = 1; k < alg->trunc_order(); ++k) {
        nk = nk * nil;
        if (nk.is_zero()) break;
        kfact *= k;
        acc += nk * (g_derivs(k, a) / kfact);
    }
    return acc;
}

/// f belongs to the ideal (up to tol) iff every quotient dual operator
/// annihilates it.
inline bool weak_membership(const FunctionOracle& f, const WeilAlgebra& w, double tol = 1e-9) {
    if (f.arity() != w.vars()) throw std::invalid_argument("weak_membership: arity mismatch");
    for (const auto& d : w.dual_ops())
        if (std::abs(d.apply(f)) > tol) return false;
    return true;
}

struct ReductionReport {
    double max_violation = 0.0;
    std::vector<std::pair<MultiIndex, double>> residual_derivatives;
    bool within(double tol) const { return max_violation <= tol; }
};

/// Residual of f minus its quotient representative: all partial derivatives
/// at 0 of order < trunc_order of
///   g(s) = f(s) - sum_gamma D^gamma f * h_gamma(s)
/// are reported; for members of the ideal (and for pure truncation ideals,
/// for every smooth f) they vanish.
inline ReductionReport reduction_check(const FunctionOracle& f, const WeilAlgebra& w, double /*tol*/ = 1e-9) {
    if (f.arity() != w.vars()) throw std::invalid_argument("reduction_check: arity mismatch");
    const std::vector<double> origin(static_cast<size_t>(w.vars()), 0.0);

    // Quotient coordinates of f via the dual operators.
    std::vector<double> coords(w.dual_ops().size());
    for (size_t g = 0; g < coords.size(); ++g) coords[g] = w.dual_ops()[g].apply(f);

    ReductionReport rep;
    const auto& basis = w.basis();
    for (const auto& a : w.monomials()) {
        double d = f.partial(a, origin);
        for (size_t g = 0; g < basis.size(); ++g)
            if (basis[g] == a) d -= coords[g] * a.factorial();
        rep.residual_derivatives.emplace_back(a, d);
        rep.max_violation = std::max(rep.max_violation, std::abs(d));
    }
    return rep;
}

/// Chebyshev sample points on [lo, hi] (first kind, includes 0 for odd n).
inline std::vector<double> chebyshev_points(int n = 17, double lo = -2.0, double hi = 2.0) {
    std::vector<double> pts(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double c = std::cos(std::numbers::pi * (2.0 * i + 1.0) / (2.0 * n));
        pts[static_cast<size_t>(i)] = 0.5 * (lo + hi) + 0.5 * (hi - lo) * c;
    }
    return pts;
}

/// Tensor grid over k parameter axes.
inline std::vector<std::vector<double>> chebyshev_grid(int k, int per_axis = 17, double lo = -2.0,
                                                       double hi = 2.0) {
    std::vector<std::vector<double>> grid;
    const std::vector<double> axis = chebyshev_points(per_axis, lo, hi);
    std::vector<size_t> idx(static_cast<size_t>(k), 0);
    if (k == 0) { grid.push_back({}); return grid; }
    while (true) {
        std::vector<double> pt(static_cast<size_t>(k));
        for (int i = 0; i < k; ++i) pt[static_cast<size_t>(i)] = axis[idx[static_cast<size_t>(i)]];
        grid.push_back(std::move(pt));
        int i = 0;
        for (; i < k; ++i) {
            if (++idx[static_cast<size_t>(i)] < axis.size()) break;
            idx[static_cast<size_t>(i)] = 0;
        }
        if (i == k) break;
    }
    return grid;
}

/// Membership in the pulled-back ideal p*(I) inside functions of (s, t),
/// s in R^l, t in R^k: every quotient dual operator, applied in the s
/// variables at s = 0, must vanish at every sampled t. The sample grid is a
/// desk-scale surrogate for "all t".
inline bool semi_weil_membership(const FunctionOracle& f, const WeilAlgebra& w,
                                 std::span<const std::vector<double>> t_samples, double tol = 1e-9) {
    const int l = w.vars();
    const int k = f.arity() - l;
    if (k < 0) throw std::invalid_argument("semi_weil_membership: oracle arity below algebra vars");
    if (t_samples.empty()) throw std::invalid_argument("semi_weil_membership: empty sample set");
    for (const auto& t : t_samples) {
        if (static_cast<int>(t.size()) != k) throw std::invalid_argument("semi_weil_membership: sample arity");
        std::vector<double> pt(static_cast<size_t>(l + k), 0.0);
        for (int i = 0; i < k; ++i) pt[static_cast<size_t>(l + i)] = t[static_cast<size_t>(i)];
        for (const auto& d : w.dual_ops()) {
            double sum = 0.0;
            for (const auto& term : d.terms()) {
                std::vector<int> ext(static_cast<size_t>(l + k), 0);
                for (int i = 0; i < l; ++i) ext[static_cast<size_t>(i)] = term.alpha[i];
                sum += term.weight * f.partial(MultiIndex(ext), pt);
            }
            if (std::abs(sum) > tol) return false;
        }
    }
    return true;
}

/// For members of the pulled-back ideal, subtracting the ideal-row content
///   f(s,t) - sum_p (T_p f)(t) * R_p(s)
/// leaves a function whose s-derivatives of order < trunc_order vanish at
/// s = 0 for every t. Returns the largest violation over the samples.
inline double semi_weil_reduction_residual(const FunctionOracle& f, const WeilAlgebra& w,
                                           std::span<const std::vector<double>> t_samples) {
    const int l = w.vars();
    const int k = f.arity() - l;
    if (k < 0 || t_samples.empty()) throw std::invalid_argument("semi_weil_reduction_residual: bad inputs");
    double worst = 0.0;
    for (const auto& t : t_samples) {
        std::vector<double> pt(static_cast<size_t>(l + k), 0.0);
        for (int i = 0; i < k; ++i) pt[static_cast<size_t>(l + i)] = t[static_cast<size_t>(i)];
        auto s_partial = [&](const MultiIndex& a) {
            std::vector<int> ext(static_cast<size_t>(l + k), 0);
            for (int i = 0; i < l; ++i) ext[static_cast<size_t>(i)] = a[i];
            return f.partial(MultiIndex(ext), pt);
        };
        // Taylor coefficients of f(., t) at the pivot monomials.
        std::vector<double> pivot_coeff(w.pivots().size());
        for (size_t p = 0; p < w.pivots().size(); ++p)
            pivot_coeff[p] = s_partial(w.pivots()[p]) / w.pivots()[p].factorial();
        for (const auto& a : w.monomials()) {
            double d = s_partial(a);
            for (size_t p = 0; p < w.pivots().size(); ++p) {
                const double c = w.ideal_rows()[p].coefficient(a);
                if (c != 0.0) d -= pivot_coeff[p] * c * a.factorial();
            }
            worst = std::max(worst, std::abs(d));
        }
    }
    return worst;
}

}  // namespace heatjet
