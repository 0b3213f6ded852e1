#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sosk49/cubic_order.hpp"
#include "sosk49/element_search.hpp"
#include "sosk49/errors.hpp"
#include "sosk49/sos.hpp"

namespace sosk49 {

struct SplittingWitness {
    Element beta, gamma;  // beta + gamma = alpha, both totally positive
};

struct IndecomposabilityResult {
    bool indecomposable;
    std::optional<SplittingWitness> witness;
};

/**
 * Whether a totally positive alpha can be written as a sum of two totally
 * positive elements. Exhaustive: a summand beta satisfies
 * 0 < sigma_i(beta) < sigma_i(alpha) in every embedding, so
 * Tr(beta^2) < Tr(alpha^2) bounds the candidate ellipsoid.
 */
inline IndecomposabilityResult is_indecomposable(const Element& alpha) {
    if (!is_totally_positive(alpha))
        throw NotTotallyPositive("indecomposability is defined for totally positive elements");
    const CubicOrder& ord = alpha.order();
    Int bound = trace(alpha * alpha);
    PosDefForm form = trace_square_form(ord);
    std::optional<SplittingWitness> witness;
    form.enumerate(Rat(bound), [&](const std::vector<Int>& v) {
        Element beta(ord, v[0], v[1], v[2]);
        if (beta.is_zero() || !is_totally_positive(beta)) return true;
        Element gamma = alpha - beta;
        if (!is_totally_positive(gamma)) return true;
        witness = SplittingWitness{std::move(beta), std::move(gamma)};
        return false;
    });
    return IndecomposabilityResult{!witness.has_value(), std::move(witness)};
}

/// The unit u with alpha = u^2 * (1 + theta + theta^2), when one exists.
inline std::optional<Element> unit_square_factor(const Element& alpha) {
    if (!alpha.order().is_k49())
        throw UnsupportedOrder("the special element 1+rho+rho^2 lives in the disc-49 order");
    Element omega(alpha.order(), Int(1), Int(1), Int(1));
    auto gamma = divide_exact(alpha, omega);
    if (!gamma || !is_unit(*gamma)) return std::nullopt;
    return is_square(*gamma);
}

/// The five statements of the characterisation theorem for one element,
/// evaluated independently, plus the witnesses that falsify or certify them.
/// `consistent` must be true for every totally positive element; a false
/// value is a defect, not a data state.
struct ClassificationReport {
    explicit ClassificationReport(Element t) : target(std::move(t)) {}

    Element target;
    bool not_sum_of_squares = false;        // (1a)
    bool not_sum_of_four = false;           // (1b)
    bool norm_is_seven = false;             // (2a)
    bool unit_square_times_special = false; // (2b)
    bool indecomposable_nonsquare = false;  // (2c)
    std::optional<Decomposition> sum_witness;
    std::optional<Decomposition> four_square_witness;
    std::optional<Element> unit_factor;
    std::optional<SplittingWitness> splitting;
    std::optional<Element> square_root;
    bool consistent = false;

    std::string summary() const {
        auto b = [](bool x) { return x ? "T" : "F"; };
        return "target=[" + target.a().get_str() + "," + target.b().get_str() + "," +
               target.c().get_str() + "] 1a=" + b(not_sum_of_squares) +
               " 1b=" + b(not_sum_of_four) + " 2a=" + b(norm_is_seven) +
               " 2b=" + b(unit_square_times_special) + " 2c=" + b(indecomposable_nonsquare);
    }
};

/// Evaluates all five statements independently and checks five-way equality.
/// (1a) searches up to `sum_cap` squares, the cubic g-invariant bound.
inline ClassificationReport verify_characterisation(const Element& alpha, int sum_cap = 6) {
    if (!alpha.order().is_k49())
        throw UnsupportedOrder("the characterisation theorem concerns the disc-49 order");
    if (!is_totally_positive(alpha))
        throw NotTotallyPositive("the characterisation theorem concerns totally positive elements");

    ClassificationReport rep(alpha);
    rep.sum_witness = decompose(alpha, sum_cap, true);
    rep.not_sum_of_squares = !rep.sum_witness.has_value();
    rep.four_square_witness = decompose(alpha, 4, true);
    rep.not_sum_of_four = !rep.four_square_witness.has_value();
    rep.norm_is_seven = (norm(alpha) == 7);
    rep.unit_factor = unit_square_factor(alpha);
    rep.unit_square_times_special = rep.unit_factor.has_value();
    auto ind = is_indecomposable(alpha);
    rep.splitting = ind.witness;
    rep.square_root = is_square(alpha);
    rep.indecomposable_nonsquare = ind.indecomposable && !rep.square_root.has_value();

    rep.consistent = (rep.not_sum_of_squares == rep.not_sum_of_four) &&
                     (rep.not_sum_of_four == rep.norm_is_seven) &&
                     (rep.norm_is_seven == rep.unit_square_times_special) &&
                     (rep.unit_square_times_special == rep.indecomposable_nonsquare);
    if (!rep.consistent)
        throw InconsistentEquivalence("five-way equivalence failed", rep.summary());
    return rep;
}

/// Found vs expected indecomposables inside the box {totally positive,
/// Tr <= t}; for the disc-49 order the expected set is
/// {u^2, u^2 (1+theta+theta^2)} for units u, both sides enumerated
/// independently and compared.
struct IndecomposablesReport {
    std::vector<Element> found;
    std::vector<Element> expected;
    bool expected_computed = false;
    bool matches = false;
};

inline IndecomposablesReport indecomposables_up_to_trace(const CubicOrder& order, const Int& t) {
    IndecomposablesReport rep;
    auto by_trace_lex = [](const Element& x, const Element& y) {
        Int tx = trace(x), ty = trace(y);
        int c = cmp(tx, ty);
        if (c != 0) return c < 0;
        return lex_less(x, y);
    };
    for (const Element& alpha : totally_positive_up_to_trace(order, t))
        if (is_indecomposable(alpha).indecomposable) rep.found.push_back(alpha);
    std::sort(rep.found.begin(), rep.found.end(), by_trace_lex);

    if (!order.is_k49()) return rep;
    rep.expected_computed = true;
    // Any unit with u^2 or u^2*(1+rho+rho^2) inside the box has
    // Tr(u^2) <= 2t (each conjugate of u^2 is at most t / sigma(omega) and
    // sum 1/sigma(omega) = s2/s3 = 14/7), so the Tr(u^2) <= t^2 box from the
    // main enumeration is more than wide enough for t >= 2.
    Element omega(order, Int(1), Int(1), Int(1));
    struct CoordLess {
        bool operator()(const std::array<Int, 3>& x, const std::array<Int, 3>& y) const {
            return lex_less(x, y);
        }
    };
    std::set<std::array<Int, 3>, CoordLess> seen;
    std::vector<Element> expected;
    for (const Element& u : units_with_trace_square_at_most(order, t * t)) {
        Element usq = u * u;
        for (const Element& gen : {Element(order, 1), omega}) {
            Element cand = usq * gen;
            if (!is_totally_positive(cand) || trace(cand) > t) continue;
            if (seen.insert({cand.a(), cand.b(), cand.c()}).second) expected.push_back(cand);
        }
    }
    std::sort(expected.begin(), expected.end(), by_trace_lex);
    rep.expected = std::move(expected);
    rep.matches = rep.found.size() == rep.expected.size();
    if (rep.matches)
        for (size_t i = 0; i < rep.found.size(); ++i)
            if (rep.found[i] != rep.expected[i]) {
                rep.matches = false;
                break;
            }
    return rep;
}

}  // namespace sosk49
