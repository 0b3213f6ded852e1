#pragma once

#include <array>
#include <memory>
#include <optional>
#include <utility>

#include "sosk49/errors.hpp"
#include "sosk49/numeric.hpp"

namespace sosk49 {

/**
 * A monogenic totally real cubic order Z[theta], theta a root of the monic
 * polynomial x^3 + p x^2 + q x + r with integer coefficients.
 *
 * Construction rejects polynomials that are reducible over Q or do not have
 * three distinct real roots (discriminant <= 0). Derived constants:
 *   - power sums Tr(theta^0) .. Tr(theta^4) via Newton's identities,
 *   - the trace Gram matrix Tr(theta^i theta^j), positive definite,
 *   - whether the polynomial stays irreducible mod 2 (2 inert).
 *
 * Instances are immutable and freely shareable across threads; equality is
 * by defining coefficients.
 */
class CubicOrder {
public:
    struct Data {
        Int p, q, r;
        std::array<Int, 5> power_sums;       // Tr(theta^k), k = 0..4
        std::array<std::array<Int, 3>, 3> gram;  // Tr(theta^i theta^j)
        bool dyadic_inert = false;
    };

    static CubicOrder make(Int p, Int q, Int r) {
        if (has_rational_root(p, q, r))
            throw Reducible("defining polynomial has a rational root");
        // disc(x^3 + p x^2 + q x + r)
        Int disc = 18 * p * q * r - 4 * p * p * p * r + p * p * q * q -
                   4 * q * q * q - 27 * r * r;
        if (disc <= 0)
            throw NotTotallyReal("defining polynomial is not totally real");

        auto d = std::make_shared<Data>();
        d->p = p;
        d->q = q;
        d->r = r;
        // Newton's identities with e1 = -p, e2 = q, e3 = -r.
        Int e1 = -p, e2 = q, e3 = -r;
        auto& ps = d->power_sums;
        ps[0] = 3;
        ps[1] = e1;
        ps[2] = e1 * ps[1] - 2 * e2;
        ps[3] = e1 * ps[2] - e2 * ps[1] + 3 * e3;
        ps[4] = e1 * ps[3] - e2 * ps[2] + e3 * ps[1];
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) d->gram[i][j] = ps[i + j];
        // Positive definiteness of the trace Gram (leading principal minors).
        Int m1 = d->gram[0][0];
        Int m2 = d->gram[0][0] * d->gram[1][1] - d->gram[0][1] * d->gram[1][0];
        Int m3 = det3(d->gram);
        if (m1 <= 0 || m2 <= 0 || m3 <= 0)
            throw NotTotallyReal("trace form is not positive definite");
        // A cubic is irreducible mod 2 iff it has no root in F_2.
        d->dyadic_inert = is_odd(r) && is_odd(1 + p + q + r);
        return CubicOrder(std::move(d));
    }

    const Int& p() const { return d_->p; }
    const Int& q() const { return d_->q; }
    const Int& r() const { return d_->r; }
    const Int& power_sum(int k) const { return d_->power_sums[size_t(k)]; }
    const std::array<std::array<Int, 3>, 3>& trace_gram() const { return d_->gram; }
    bool dyadic_inert() const { return d_->dyadic_inert; }

    /// The order Z[zeta_7 + zeta_7^-1] of field discriminant 49.
    bool is_k49() const { return d_->p == 1 && d_->q == -2 && d_->r == -1; }

    bool operator==(const CubicOrder& o) const {
        return d_ == o.d_ || (d_->p == o.d_->p && d_->q == o.d_->q && d_->r == o.d_->r);
    }
    bool operator!=(const CubicOrder& o) const { return !(*this == o); }

private:
    explicit CubicOrder(std::shared_ptr<const Data> d) : d_(std::move(d)) {}

    static Int det3(const std::array<std::array<Int, 3>, 3>& m) {
        return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
               m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    }

    static Int eval_poly(const Int& p, const Int& q, const Int& r, const Int& x) {
        return ((x + p) * x + q) * x + r;
    }

    // Integer roots of the monic cubic, located by exact binary search on the
    // monotone pieces cut out by the critical points of f. Every real root
    // lies within the Cauchy bound, and every integer in the search range is
    // covered by one of the (closed, monotone) integer intervals.
    static bool has_rational_root(const Int& p, const Int& q, const Int& r) {
        Int bound = 1 + std::max(std::max(abs(p), abs(q)), abs(r));
        Int dprime = p * p - 3 * q;  // discriminant of f' up to a factor
        auto root_in = [&](const Int& lo, const Int& hi, bool increasing) {
            if (lo > hi) return false;
            // work with g = +-f so g is nondecreasing on [lo, hi]
            auto g = [&](const Int& x) {
                Int v = eval_poly(p, q, r, x);
                return increasing ? v : Int(-v);
            };
            if (g(lo) > 0 || g(hi) < 0) return false;
            Int a = lo, b = hi;
            while (a < b) {  // smallest a with g(a) >= 0
                Int mid = fdiv(a + b, 2);
                if (g(mid) < 0)
                    a = mid + 1;
                else
                    b = mid;
            }
            return eval_poly(p, q, r, a) == 0;
        };
        if (dprime <= 0)  // f monotone nondecreasing: single real root
            return root_in(-bound, bound, true);
        // critical points t = (-p -+ sqrt(dprime)) / 3; f increases up to the
        // first, decreases between them, increases after the second
        Int s = isqrt_floor(dprime);
        auto floor_crit = [&](int sign) {
            // floor((-p + sign*sqrt(dprime)) / 3) via the exact predicate
            // 3t + p <= sign*sqrt(dprime)
            Int est = fdiv(-p + sign * s, 3) + 2;
            auto le_crit = [&](const Int& t) {
                Int u = 3 * t + p;
                if (sign > 0) return u <= 0 || u * u <= dprime;
                return u <= 0 && u * u >= dprime;
            };
            while (!le_crit(est)) est -= 1;
            while (le_crit(est + 1)) est += 1;
            return est;
        };
        bool square = (s * s == dprime);
        auto integral_crit = [&](int sign) {
            return square && (-p + sign * s) % 3 == 0;
        };
        Int t1f = floor_crit(-1), t2f = floor_crit(+1);
        Int t1c = t1f + (integral_crit(-1) ? 0 : 1);
        Int t2c = t2f + (integral_crit(+1) ? 0 : 1);
        return root_in(-bound, t1f, true) || root_in(t1c, t2f, false) ||
               root_in(t2c, bound, true);
    }

    std::shared_ptr<const Data> d_;
};

/**
 * An algebraic integer a + b*theta + c*theta^2 over the power basis of its
 * order. Coordinates are exact integers; the power basis is free, so two
 * elements are equal iff their coordinate triples are.
 */
class Element {
public:
    Element(CubicOrder order, Int a, Int b, Int c)
        : order_(std::move(order)), a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {}
    Element(CubicOrder order, long a) : Element(std::move(order), Int(a), Int(0), Int(0)) {}

    const CubicOrder& order() const { return order_; }
    const Int& a() const { return a_; }
    const Int& b() const { return b_; }
    const Int& c() const { return c_; }
    std::array<Int, 3> coords() const { return {a_, b_, c_}; }

    bool is_zero() const { return a_ == 0 && b_ == 0 && c_ == 0; }

    bool operator==(const Element& o) const {
        check_same_order(o);
        return a_ == o.a_ && b_ == o.b_ && c_ == o.c_;
    }
    bool operator!=(const Element& o) const { return !(*this == o); }

    Element operator+(const Element& o) const {
        check_same_order(o);
        return Element(order_, a_ + o.a_, b_ + o.b_, c_ + o.c_);
    }
    Element operator-(const Element& o) const {
        check_same_order(o);
        return Element(order_, a_ - o.a_, b_ - o.b_, c_ - o.c_);
    }
    Element operator-() const { return Element(order_, -a_, -b_, -c_); }

    /// Multiplication by theta: shift coordinates and reduce theta^3.
    Element times_theta() const {
        // theta^3 = -r - q*theta - p*theta^2
        return Element(order_, -order_.r() * c_, a_ - order_.q() * c_, b_ - order_.p() * c_);
    }

    Element operator*(const Element& o) const {
        check_same_order(o);
        Element t1 = times_theta();
        Element t2 = t1.times_theta();
        return Element(order_, a_ * o.a_ + t1.a_ * o.b_ + t2.a_ * o.c_,
                       b_ * o.a_ + t1.b_ * o.b_ + t2.b_ * o.c_,
                       c_ * o.a_ + t1.c_ * o.b_ + t2.c_ * o.c_);
    }

    Element operator*(const Int& s) const { return Element(order_, a_ * s, b_ * s, c_ * s); }

    void check_same_order(const Element& o) const {
        if (order_ != o.order_) throw MixedOrders("elements belong to different orders");
    }

private:
    CubicOrder order_;
    Int a_, b_, c_;
};

inline Element operator*(const Int& s, const Element& e) { return e * s; }

/// Coefficients of the characteristic polynomial x^3 - s1 x^2 + s2 x - s3 of
/// multiplication by the element; s1 = Tr, s3 = N.
struct CharPoly {
    Int s1, s2, s3;
};

inline Int trace(const Element& e) {
    const CubicOrder& o = e.order();
    return e.a() * o.power_sum(0) + e.b() * o.power_sum(1) + e.c() * o.power_sum(2);
}

inline CharPoly char_poly(const Element& e) {
    // columns of the multiplication matrix: e, e*theta, e*theta^2
    Element c1 = e.times_theta();
    Element c2 = c1.times_theta();
    const Int &m00 = e.a(), &m10 = e.b(), &m20 = e.c();
    const Int &m01 = c1.a(), &m11 = c1.b(), &m21 = c1.c();
    const Int &m02 = c2.a(), &m12 = c2.b(), &m22 = c2.c();
    CharPoly cp;
    cp.s1 = m00 + m11 + m22;
    cp.s2 = (m00 * m11 - m01 * m10) + (m00 * m22 - m02 * m20) + (m11 * m22 - m12 * m21);
    cp.s3 = m00 * (m11 * m22 - m12 * m21) - m01 * (m10 * m22 - m12 * m20) +
            m02 * (m10 * m21 - m11 * m20);
    return cp;
}

inline Int norm(const Element& e) { return char_poly(e).s3; }

// All conjugates are real, so the element is totally positive iff all the
// elementary symmetric functions of its conjugates are positive (for x <= 0,
// x^3 - s1 x^2 + s2 x - s3 < 0 whenever s1, s2, s3 > 0). No floating point.
inline bool is_totally_positive(const Element& e) {
    CharPoly cp = char_poly(e);
    return cp.s1 > 0 && cp.s2 > 0 && cp.s3 > 0;
}

inline bool is_totally_nonnegative(const Element& e) {
    CharPoly cp = char_poly(e);
    return cp.s1 >= 0 && cp.s2 >= 0 && cp.s3 >= 0;
}

/// Exact division: gamma with beta*gamma == alpha, when integral.
inline std::optional<Element> divide_exact(const Element& alpha, const Element& beta) {
    alpha.check_same_order(beta);
    if (beta.is_zero()) throw PreconditionViolated("division by zero element");
    // Solve M_beta * x = coords(alpha) by Cramer's rule; det = N(beta) != 0.
    Element c1 = beta.times_theta();
    Element c2 = c1.times_theta();
    std::array<std::array<Int, 3>, 3> m = {{{beta.a(), c1.a(), c2.a()},
                                            {beta.b(), c1.b(), c2.b()},
                                            {beta.c(), c1.c(), c2.c()}}};
    Int det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
              m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
              m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    std::array<Int, 3> rhs = {alpha.a(), alpha.b(), alpha.c()};
    std::array<Int, 3> sol;
    for (int j = 0; j < 3; ++j) {
        auto mj = m;
        for (int i = 0; i < 3; ++i) mj[i][size_t(j)] = rhs[size_t(i)];
        Int dj = mj[0][0] * (mj[1][1] * mj[2][2] - mj[1][2] * mj[2][1]) -
                 mj[0][1] * (mj[1][0] * mj[2][2] - mj[1][2] * mj[2][0]) +
                 mj[0][2] * (mj[1][0] * mj[2][1] - mj[1][1] * mj[2][0]);
        if (!divides(det, dj)) return std::nullopt;
        sol[size_t(j)] = dj / det;
    }
    return Element(alpha.order(), sol[0], sol[1], sol[2]);
}

inline bool is_unit(const Element& e) {
    Int n = norm(e);
    return n == 1 || n == -1;
}

}  // namespace sosk49
