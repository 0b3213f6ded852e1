#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "sosk49/cubic_order.hpp"
#include "sosk49/errors.hpp"
#include "sosk49/numeric.hpp"

namespace sosk49 {

/**
 * A positive definite quadratic form with exact rational Gram matrix
 * (integer or half-integer entries in practice). Construction computes the
 * exact rational LDL decomposition and rejects non-positive pivots, so a
 * PosDefForm is positive definite by invariant.
 *
 * Enumeration of {v in Z^n : v^T G v <= C} walks coordinates from the last
 * index inward with per-coordinate interval bounds derived from the LDL
 * pivots by exact integer floor/ceil; no lattice point can be missed and
 * the emission order (lexicographic in (v_{n-1}, ..., v_0)) is part of the
 * contract.
 */
class PosDefForm {
public:
    explicit PosDefForm(std::vector<std::vector<Rat>> gram) : gram_(std::move(gram)) {
        dim_ = gram_.size();
        if (dim_ == 0) throw NotPositiveDefinite("empty form");
        for (auto& row : gram_)
            if (row.size() != dim_) throw NotPositiveDefinite("gram matrix is not square");
        for (size_t i = 0; i < dim_; ++i)
            for (size_t j = i + 1; j < dim_; ++j)
                if (gram_[i][j] != gram_[j][i])
                    throw NotPositiveDefinite("gram matrix is not symmetric");
        compute_ldl();
    }

    size_t dim() const { return dim_; }
    const std::vector<std::vector<Rat>>& gram() const { return gram_; }
    const std::vector<Rat>& pivots() const { return diag_; }

    Rat eval(const std::vector<Int>& v) const {
        Rat acc = 0;
        for (size_t i = 0; i < dim_; ++i) {
            if (v[i] == 0) continue;
            for (size_t j = 0; j < dim_; ++j) {
                if (v[j] == 0) continue;
                acc += gram_[i][j] * Rat(v[i] * v[j]);
            }
        }
        return acc;
    }

    /// Range of the outermost coordinate v_{dim-1} inside the bound-C ellipsoid.
    std::optional<std::pair<Int, Int>> outer_range(const Rat& bound) const {
        if (bound < 0) return std::nullopt;
        // lambda = 1 and no fixed higher coordinates at the outermost level
        Int budget = bound.get_num() * delta_base_;
        Int m = isqrt_floor(fdiv(budget, pnum_base_[dim_ - 1] * bound.get_den()));
        return std::make_pair(-m, m);
    }

    /// Emit returns true to continue, false to stop early (used when only
    /// the first witness in deterministic order is needed).
    template <class Emit>
    void enumerate(const Rat& bound, Emit&& emit) const {
        enumerate_impl(bound, emit, nullptr);
    }

    /// Same as enumerate, with the outermost coordinate clamped to
    /// [outer_lo, outer_hi]; disjoint slices merge to the full point set.
    template <class Emit>
    void enumerate_slice(const Rat& bound, const Int& outer_lo, const Int& outer_hi,
                         Emit&& emit) const {
        std::pair<Int, Int> clamp{outer_lo, outer_hi};
        enumerate_impl(bound, emit, &clamp);
    }

private:
    void compute_ldl() {
        diag_.assign(dim_, Rat(0));
        std::vector<std::vector<Rat>> lower(dim_, std::vector<Rat>(dim_, Rat(0)));
        for (size_t j = 0; j < dim_; ++j) {
            Rat d = gram_[j][j];
            for (size_t k = 0; k < j; ++k) d -= diag_[k] * lower[j][k] * lower[j][k];
            if (d <= 0) throw NotPositiveDefinite("nonpositive LDL pivot");
            diag_[j] = d;
            for (size_t i = j + 1; i < dim_; ++i) {
                Rat x = gram_[i][j];
                for (size_t k = 0; k < j; ++k) x -= diag_[k] * lower[i][k] * lower[j][k];
                lower[i][j] = x / d;
            }
        }
        // Scale each column of L to integers: L[i][j] = lnum_[j][i-j-1] / lambda_[j],
        // and put the level pivots D_j / lambda_j^2 over one common denominator
        // so the enumeration loop runs on plain integers.
        lambda_.assign(dim_, Int(1));
        lnum_.assign(dim_, {});
        std::vector<Rat> level_pivot(dim_);
        delta_base_ = 1;
        for (size_t j = 0; j < dim_; ++j) {
            Int lam = 1;
            for (size_t i = j + 1; i < dim_; ++i)
                mpz_lcm(lam.get_mpz_t(), lam.get_mpz_t(),
                        lower[i][j].get_den().get_mpz_t());
            lambda_[j] = lam;
            lnum_[j].reserve(dim_ - j - 1);
            for (size_t i = j + 1; i < dim_; ++i) {
                Rat scaled = lower[i][j] * Rat(lam);
                lnum_[j].push_back(scaled.get_num());  // exact: lam clears the denominator
            }
            level_pivot[j] = diag_[j] / Rat(lam * lam);
            mpz_lcm(delta_base_.get_mpz_t(), delta_base_.get_mpz_t(),
                    level_pivot[j].get_den().get_mpz_t());
        }
        pnum_base_.assign(dim_, Int(0));
        for (size_t j = 0; j < dim_; ++j) {
            Rat scaled = level_pivot[j] * Rat(delta_base_);
            pnum_base_[j] = scaled.get_num();
        }
    }

    template <class Emit>
    void enumerate_impl(const Rat& bound, Emit& emit,
                        const std::pair<Int, Int>* outer_clamp) const {
        if (bound < 0) return;
        std::vector<Int> v(dim_, Int(0));
        // budget and pivots rescaled to integers: value * delta = integer
        Int den = bound.get_den();
        Int budget = bound.get_num() * delta_base_;
        std::vector<Int> levelp(dim_);
        for (size_t j = 0; j < dim_; ++j) levelp[j] = pnum_base_[j] * den;
        descend(dim_ - 1, budget, levelp, v, emit, outer_clamp);
    }

    template <class Emit>
    bool descend(size_t j, const Int& budget, const std::vector<Int>& levelp,
                 std::vector<Int>& v, Emit& emit,
                 const std::pair<Int, Int>* outer_clamp) const {
        const Int& lam = lambda_[j];
        Int shift = 0;  // Sc = sum_{i>j} Lnum[j][i-j-1] * v_i
        const auto& col = lnum_[j];
        for (size_t t = 0; t < col.size(); ++t) {
            const Int& vi = v[j + 1 + t];
            if (vi != 0) shift += col[t] * vi;
        }
        // largest m with m^2 * P_j <= budget; m = v_j*lambda + Sc
        Int m = isqrt_floor(fdiv(budget, levelp[j]));
        Int lo = cdiv(-m - shift, lam);
        Int hi = fdiv(m - shift, lam);
        if (outer_clamp != nullptr) {
            if (outer_clamp->first > lo) lo = outer_clamp->first;
            if (outer_clamp->second < hi) hi = outer_clamp->second;
        }
        bool keep_going = true;
        for (Int t = lo; keep_going && t <= hi; ++t) {
            v[j] = t;
            if (j == 0) {
                keep_going = emit(static_cast<const std::vector<Int>&>(v));
            } else {
                Int w = t * lam + shift;
                keep_going = descend(j - 1, budget - levelp[j] * w * w, levelp, v, emit, nullptr);
            }
        }
        v[j] = 0;
        return keep_going;
    }

    size_t dim_ = 0;
    std::vector<std::vector<Rat>> gram_;
    std::vector<Rat> diag_;
    // integer-scaled LDL data for the enumeration inner loop:
    // L[i][j] = lnum_[j][i-j-1] / lambda_[j], D_j / lambda_j^2 = pnum_base_[j] / delta_base_
    std::vector<Int> lambda_;
    std::vector<std::vector<Int>> lnum_;
    std::vector<Int> pnum_base_;
    Int delta_base_{1};
};

/// The 3-dimensional form v -> Tr(elem(v)^2), Gram = trace Gram of the order.
inline PosDefForm trace_square_form(const CubicOrder& order) {
    std::vector<std::vector<Rat>> g(3, std::vector<Rat>(3));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) g[size_t(i)][size_t(j)] = Rat(order.trace_gram()[size_t(i)][size_t(j)]);
    return PosDefForm(std::move(g));
}

/**
 * A quadratic form Q(x_1..x_n) = sum a_ii x_i^2 + sum_{i<j} a_ij x_i x_j with
 * coefficients in the order, evaluated on order elements.
 */
class OrderQuadraticForm {
public:
    OrderQuadraticForm(CubicOrder order, size_t nvars)
        : order_(std::move(order)), nvars_(nvars) {
        Element zero(order_, 0);
        coeff_.assign(nvars_, std::vector<Element>(nvars_, zero));
    }

    static OrderQuadraticForm sum_of_squares(const CubicOrder& order, size_t nvars) {
        OrderQuadraticForm f(order, nvars);
        for (size_t i = 0; i < nvars; ++i) f.coeff_[i][i] = Element(order, 1);
        return f;
    }

    static OrderQuadraticForm diagonal(const CubicOrder& order, std::vector<Element> d) {
        OrderQuadraticForm f(order, d.size());
        for (size_t i = 0; i < d.size(); ++i) f.coeff_[i][i] = d[i];
        return f;
    }

    /// x^2 + y^2 + z^2 + w^2 + xw + yw + zw.
    static OrderQuadraticForm kala_yatsyna(const CubicOrder& order) {
        OrderQuadraticForm f = sum_of_squares(order, 4);
        Element one(order, 1);
        f.coeff_[0][3] = one;
        f.coeff_[1][3] = one;
        f.coeff_[2][3] = one;
        return f;
    }

    /// x1^2 + x2^2 + x3^2 + x4^2 + (1 + theta + theta^2) x5^2.
    static OrderQuadraticForm diagonal_five(const CubicOrder& order) {
        OrderQuadraticForm f = sum_of_squares(order, 5);
        f.coeff_[4][4] = Element(order, Int(1), Int(1), Int(1));
        return f;
    }

    const CubicOrder& order() const { return order_; }
    size_t nvars() const { return nvars_; }
    const Element& coefficient(size_t i, size_t j) const { return coeff_[i][j]; }

    Element eval(const std::vector<Element>& xs) const {
        Element acc(order_, 0);
        for (size_t i = 0; i < nvars_; ++i)
            for (size_t j = i; j < nvars_; ++j) {
                if (coeff_[i][j].is_zero()) continue;
                acc = acc + coeff_[i][j] * xs[i] * xs[j];
            }
        return acc;
    }

    /// Slice a stacked coordinate vector into the n order elements.
    std::vector<Element> elements_of(const std::vector<Int>& v) const {
        std::vector<Element> xs;
        xs.reserve(nvars_);
        for (size_t i = 0; i < nvars_; ++i)
            xs.emplace_back(order_, v[3 * i], v[3 * i + 1], v[3 * i + 2]);
        return xs;
    }

private:
    CubicOrder order_;
    size_t nvars_;
    std::vector<std::vector<Element>> coeff_;
};

/**
 * The 3n-dimensional rational Gram of v -> Tr(Q(elements(v))). Cross blocks
 * pick up a factor 1/2, so odd cross-coefficient traces produce half-integer
 * entries; they are stored exactly as rationals.
 */
inline PosDefForm form_of_quadratic(const OrderQuadraticForm& q) {
    const CubicOrder& ord = q.order();
    // basis products theta^s * theta^t as elements
    std::array<std::array<Element, 3>, 3> pb = {{{Element(ord, 0), Element(ord, 0), Element(ord, 0)},
                                                 {Element(ord, 0), Element(ord, 0), Element(ord, 0)},
                                                 {Element(ord, 0), Element(ord, 0), Element(ord, 0)}}};
    std::array<Element, 3> basis = {Element(ord, Int(1), Int(0), Int(0)),
                                    Element(ord, Int(0), Int(1), Int(0)),
                                    Element(ord, Int(0), Int(0), Int(1))};
    for (int s = 0; s < 3; ++s)
        for (int t = 0; t < 3; ++t) pb[size_t(s)][size_t(t)] = basis[size_t(s)] * basis[size_t(t)];

    size_t n = q.nvars();
    size_t dim = 3 * n;
    std::vector<std::vector<Rat>> g(dim, std::vector<Rat>(dim, Rat(0)));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i; j < n; ++j) {
            const Element& a = q.coefficient(i, j);
            if (a.is_zero()) continue;
            for (size_t s = 0; s < 3; ++s)
                for (size_t t = 0; t < 3; ++t) {
                    Rat val(trace(a * pb[s][t]));
                    if (i == j) {
                        g[3 * i + s][3 * j + t] = val;
                    } else {
                        val /= 2;
                        g[3 * i + s][3 * j + t] = val;
                        g[3 * j + t][3 * i + s] = val;
                    }
                }
        }
    }
    return PosDefForm(std::move(g));  // validates positive definiteness
}

}  // namespace sosk49
