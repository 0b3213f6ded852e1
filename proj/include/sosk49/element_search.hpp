#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "sosk49/cubic_order.hpp"
#include "sosk49/lattice.hpp"

namespace sosk49 {

inline bool lex_less(const Element& x, const Element& y) {
    int c = cmp(x.a(), y.a());
    if (c != 0) return c < 0;
    c = cmp(x.b(), y.b());
    if (c != 0) return c < 0;
    return cmp(x.c(), y.c()) < 0;
}

/// Of {x, -x}, the representative whose first nonzero coordinate is positive.
inline Element canonical_sign(const Element& x) {
    int s = sgn(x.a());
    if (s == 0) s = sgn(x.b());
    if (s == 0) s = sgn(x.c());
    return s < 0 ? -x : x;
}

inline bool is_canonical_sign(const Element& x) {
    int s = sgn(x.a());
    if (s == 0) s = sgn(x.b());
    if (s == 0) s = sgn(x.c());
    return s >= 0;
}

/// All x with Tr(x^2) <= bound, in the enumeration order of the trace form.
inline std::vector<Element> elements_with_trace_square_at_most(const CubicOrder& order,
                                                               const Int& bound) {
    std::vector<Element> out;
    PosDefForm form = trace_square_form(order);
    form.enumerate(Rat(bound), [&](const std::vector<Int>& v) {
        out.emplace_back(order, v[0], v[1], v[2]);
        return true;
    });
    return out;
}

/// Totally positive elements with Tr <= t, sorted by (trace, lex).
/// For totally positive x, Tr(x^2) = sum sigma_i(x)^2 <= (sum sigma_i(x))^2
/// = Tr(x)^2, so the trace-square ellipsoid of radius t^2 is exhaustive.
inline std::vector<Element> totally_positive_up_to_trace(const CubicOrder& order, const Int& t) {
    std::vector<Element> out;
    if (t < 0) return out;
    PosDefForm form = trace_square_form(order);
    form.enumerate(Rat(t * t), [&](const std::vector<Int>& v) {
        Element x(order, v[0], v[1], v[2]);
        if (trace(x) <= t && is_totally_positive(x)) out.push_back(std::move(x));
        return true;
    });
    std::sort(out.begin(), out.end(), [](const Element& x, const Element& y) {
        Int tx = trace(x), ty = trace(y);
        int c = cmp(tx, ty);
        if (c != 0) return c < 0;
        return lex_less(x, y);
    });
    return out;
}

/// Units (|N| = 1) with Tr(x^2) <= bound.
inline std::vector<Element> units_with_trace_square_at_most(const CubicOrder& order,
                                                            const Int& bound) {
    std::vector<Element> out;
    for (const Element& x : elements_with_trace_square_at_most(order, bound))
        if (is_unit(x)) out.push_back(x);
    return out;
}

/// Square-root witness with canonical sign, or nullopt. Exhaustive: every
/// candidate root x has Tr(x^2) = Tr(alpha).
inline std::optional<Element> is_square(const Element& alpha) {
    if (!is_totally_nonnegative(alpha)) return std::nullopt;
    Int t = trace(alpha);
    std::optional<Element> found;
    PosDefForm form = trace_square_form(alpha.order());
    form.enumerate(Rat(t), [&](const std::vector<Int>& v) {
        Element x(alpha.order(), v[0], v[1], v[2]);
        if (x * x == alpha) {
            found = canonical_sign(x);
            return false;
        }
        return true;
    });
    return found;
}

}  // namespace sosk49
