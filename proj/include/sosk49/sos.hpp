#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <unordered_set>
#include <utility>
#include <vector>

#include "sosk49/cubic_order.hpp"
#include "sosk49/dyadic.hpp"
#include "sosk49/element_search.hpp"
#include "sosk49/errors.hpp"
#include "sosk49/lattice.hpp"

namespace sosk49 {

enum class FormName { SumOfSquares, KalaYatsyna, DiagonalFiveVar };

inline const char* form_name_str(FormName f) {
    switch (f) {
        case FormName::SumOfSquares: return "sum-of-squares";
        case FormName::KalaYatsyna: return "kala-yatsyna";
        case FormName::DiagonalFiveVar: return "diagonal-5var";
    }
    return "?";
}

inline OrderQuadraticForm form_by_name(const CubicOrder& order, FormName f, size_t nvars = 0) {
    switch (f) {
        case FormName::SumOfSquares: return OrderQuadraticForm::sum_of_squares(order, nvars);
        case FormName::KalaYatsyna: return OrderQuadraticForm::kala_yatsyna(order);
        case FormName::DiagonalFiveVar: return OrderQuadraticForm::diagonal_five(order);
    }
    throw PreconditionViolated("unknown form");
}

/**
 * A certified representation of `target`: sum coefficients[i] * terms[i]^2
 * for the diagonal forms, or the Kala-Yatsyna form evaluated on `terms`.
 * Construction re-checks the identity with exact order arithmetic and
 * refuses to build an unsound witness.
 */
class Decomposition {
public:
    Decomposition(Element target, std::vector<Element> terms, FormName form)
        : target_(std::move(target)), terms_(std::move(terms)), form_(form) {
        const CubicOrder& ord = target_.order();
        Element one(ord, 1);
        switch (form_) {
            case FormName::SumOfSquares:
                coefficients_.assign(terms_.size(), one);
                break;
            case FormName::KalaYatsyna:
                coefficients_.assign(4, one);
                break;
            case FormName::DiagonalFiveVar:
                coefficients_.assign(4, one);
                coefficients_.push_back(Element(ord, Int(1), Int(1), Int(1)));
                break;
        }
        if (!verifies())
            throw std::logic_error("decomposition does not verify against its target");
    }

    const Element& target() const { return target_; }
    const std::vector<Element>& terms() const { return terms_; }
    const std::vector<Element>& coefficients() const { return coefficients_; }
    FormName form() const { return form_; }

    size_t nonzero_terms() const {
        size_t n = 0;
        for (const auto& t : terms_)
            if (!t.is_zero()) ++n;
        return n;
    }

    bool verifies() const {
        const CubicOrder& ord = target_.order();
        if (form_ == FormName::KalaYatsyna) {
            if (terms_.size() != 4) return false;
            return OrderQuadraticForm::kala_yatsyna(ord).eval(terms_) == target_;
        }
        if (form_ == FormName::DiagonalFiveVar && terms_.size() != 5) return false;
        Element acc(ord, 0);
        for (size_t i = 0; i < terms_.size(); ++i)
            acc = acc + coefficients_[i] * terms_[i] * terms_[i];
        return acc == target_;
    }

private:
    Element target_;
    std::vector<Element> terms_;
    std::vector<Element> coefficients_;
    FormName form_;
};

namespace detail {

struct SquareCandidate {
    Element x;
    Element square;
    Int trace_sq;
};

/// Nonzero canonical-sign candidates with Tr(x^2) <= bound, sorted by
/// non-increasing Tr(x^2) with lexicographic tiebreak. x and -x have the
/// same square, and x^2 = y^2 forces y = +-x, so squares are distinct.
inline std::vector<SquareCandidate> square_candidates(const CubicOrder& order, const Int& bound) {
    std::vector<SquareCandidate> out;
    PosDefForm form = trace_square_form(order);
    form.enumerate(Rat(bound), [&](const std::vector<Int>& v) {
        Element x(order, v[0], v[1], v[2]);
        if (x.is_zero() || !is_canonical_sign(x)) return true;
        Element sq = x * x;
        out.push_back(SquareCandidate{std::move(x), std::move(sq), Int(0)});
        out.back().trace_sq = trace(out.back().square);
        return true;
    });
    std::sort(out.begin(), out.end(), [](const SquareCandidate& l, const SquareCandidate& r) {
        int c = cmp(l.trace_sq, r.trace_sq);
        if (c != 0) return c > 0;
        return lex_less(l.x, r.x);
    });
    return out;
}

inline bool decompose_dfs(const std::vector<SquareCandidate>& cands, const Element& remainder,
                          int slots, size_t start, bool allow_zeros,
                          std::vector<Element>& terms) {
    if (remainder.is_zero()) return allow_zeros || slots == 0;
    if (slots == 0) return false;
    if (!is_totally_nonnegative(remainder)) return false;
    Int tr = trace(remainder);
    for (size_t i = start; i < cands.size(); ++i) {
        const SquareCandidate& c = cands[i];
        if (c.trace_sq > tr) continue;
        // every later term has Tr(x^2) <= c.trace_sq, so slots of them cannot
        // reach Tr(remainder) once slots * c.trace_sq falls short
        if (Int(slots) * c.trace_sq < tr) break;
        terms.push_back(c.x);
        if (decompose_dfs(cands, remainder - c.square, slots - 1, i, allow_zeros, terms))
            return true;
        terms.pop_back();
    }
    return false;
}

}  // namespace detail

/**
 * Exhaustive search for a decomposition of alpha into exactly n squares
 * (nonzero terms; zero padding when allow_zeros). A nullopt result proves
 * there is no such decomposition.
 *
 * Search bound: if alpha - x^2 stays totally nonnegative then every
 * conjugate of x^2 is dominated by the matching conjugate of alpha, hence
 * Tr(x^2) <= Tr(alpha); candidates are complete. Terms come out in canonical
 * order (non-increasing Tr(x^2), lexicographic tiebreak), which also prunes
 * permuted duplicates.
 */
inline std::optional<Decomposition> decompose(const Element& alpha, int n,
                                              bool allow_zeros = false) {
    if (n <= 0) throw PreconditionViolated("decompose needs n >= 1");
    const CubicOrder& ord = alpha.order();
    if (alpha.is_zero()) {
        if (!allow_zeros) return std::nullopt;  // nonzero squares sum to a totally positive value
        return Decomposition(alpha, std::vector<Element>(size_t(n), Element(ord, 0)),
                             FormName::SumOfSquares);
    }
    if (!is_totally_nonnegative(alpha)) return std::nullopt;
    auto cands = detail::square_candidates(ord, trace(alpha));
    std::vector<Element> terms;
    if (!detail::decompose_dfs(cands, alpha, n, 0, allow_zeros, terms)) return std::nullopt;
    while (allow_zeros && terms.size() < size_t(n)) terms.emplace_back(ord, 0);
    return Decomposition(alpha, std::move(terms), FormName::SumOfSquares);
}

struct LengthCertificate {
    enum class Reason { NormSevenExceptional, NotTotallyNonnegative, CapExhausted };
    Reason reason;
    std::optional<int> cap;
};

inline const char* length_certificate_str(LengthCertificate::Reason r) {
    switch (r) {
        case LengthCertificate::Reason::NormSevenExceptional: return "norm-7-exceptional";
        case LengthCertificate::Reason::NotTotallyNonnegative: return "not-totally-nonnegative";
        case LengthCertificate::Reason::CapExhausted: return "cap-exhausted";
    }
    return "?";
}

/// Minimal number of nonzero squares summing to the element, or a certified
/// refusal. The witness verifies; minimality holds because every smaller
/// count was searched exhaustively first.
struct LengthResult {
    std::optional<int> value;
    std::optional<Decomposition> witness;
    std::optional<LengthCertificate> certificate;
    bool is_sum_of_squares() const { return value.has_value(); }
};

inline LengthResult length(const Element& alpha, int generic_cap = 6) {
    LengthResult res;
    if (alpha.is_zero()) {
        res.value = 0;
        res.witness = Decomposition(alpha, {}, FormName::SumOfSquares);
        return res;
    }
    if (!is_totally_nonnegative(alpha)) {
        res.certificate =
            LengthCertificate{LengthCertificate::Reason::NotTotallyNonnegative, std::nullopt};
        return res;
    }
    bool k49 = alpha.order().is_k49();
    if (k49 && norm(alpha) == 7) {
        // the characterisation theorem: totally positive of norm 7 is not a
        // sum of squares (cross-checked independently by the classifier)
        res.certificate =
            LengthCertificate{LengthCertificate::Reason::NormSevenExceptional, std::nullopt};
        return res;
    }
    int cap = k49 ? 4 : generic_cap;
    for (int n = 1; n <= cap; ++n) {
        auto d = decompose(alpha, n, false);
        if (d) {
            res.value = n;
            res.witness = std::move(d);
            return res;
        }
    }
    if (k49)
        throw std::logic_error("totally positive non-exceptional element escaped four squares");
    res.certificate = LengthCertificate{LengthCertificate::Reason::CapExhausted, cap};
    return res;
}

/// The local-global criterion for sums of three squares: totally positive
/// and not a minus-square at the dyadic place. Relies on I_3 having class
/// number one, so it is only offered for the discriminant-49 order.
inline bool is_sum_of_three_local_global(const Element& alpha) {
    if (!alpha.order().is_k49())
        throw UnsupportedOrder("three-square criterion is established for the disc-49 order only");
    if (alpha.is_zero()) throw PreconditionViolated("criterion needs alpha != 0");
    return is_totally_positive(alpha) && !is_minus_square_local(alpha);
}

namespace detail {

// Checked machine-width fast path for the bulk form evaluation in table
// builds. Engaged only when the order coefficients, form coefficients and
// point coordinates all stay below 2^10 in magnitude, which keeps every
// intermediate under 2^55; anything larger falls back to exact arithmetic.
struct Eval64 {
    struct Elt {
        std::int64_t a, b, c;
    };
    std::int64_t t3[3], t4[3];
    std::vector<std::pair<std::pair<size_t, size_t>, Elt>> terms;  // ((i,j), coeff)
    bool usable = false;
    static constexpr std::int64_t kCoordLimit = 1024;

    static bool small(const Int& x) {
        return x.fits_slong_p() && x.get_si() < kCoordLimit && x.get_si() > -kCoordLimit;
    }

    explicit Eval64(const OrderQuadraticForm& q) {
        const CubicOrder& o = q.order();
        if (!small(o.p()) || !small(o.q()) || !small(o.r())) return;
        std::int64_t p = o.p().get_si(), qq = o.q().get_si(), r = o.r().get_si();
        t3[0] = -r;
        t3[1] = -qq;
        t3[2] = -p;
        t4[0] = p * r;
        t4[1] = p * qq - r;
        t4[2] = p * p - qq;
        for (size_t i = 0; i < q.nvars(); ++i)
            for (size_t j = i; j < q.nvars(); ++j) {
                const Element& cf = q.coefficient(i, j);
                if (cf.is_zero()) continue;
                if (!small(cf.a()) || !small(cf.b()) || !small(cf.c())) return;
                terms.push_back({{i, j}, Elt{cf.a().get_si(), cf.b().get_si(), cf.c().get_si()}});
            }
        usable = true;
    }

    Elt mul(const Elt& x, const Elt& y) const {
        std::int64_t d0 = x.a * y.a;
        std::int64_t d1 = x.a * y.b + x.b * y.a;
        std::int64_t d2 = x.a * y.c + x.b * y.b + x.c * y.a;
        std::int64_t d3 = x.b * y.c + x.c * y.b;
        std::int64_t d4 = x.c * y.c;
        return Elt{d0 + d3 * t3[0] + d4 * t4[0], d1 + d3 * t3[1] + d4 * t4[1],
                   d2 + d3 * t3[2] + d4 * t4[2]};
    }

    /// Evaluates the form on int64 coordinate slices; false when any
    /// coordinate is outside the checked range.
    bool eval(const std::vector<Int>& v, Elt& out) const {
        constexpr size_t kMaxVars = 8;
        Elt xs[kMaxVars];
        size_t n = v.size() / 3;
        if (n > kMaxVars) return false;
        for (size_t i = 0; i < v.size(); ++i)
            if (!small(v[i])) return false;
        for (size_t i = 0; i < n; ++i)
            xs[i] = Elt{v[3 * i].get_si(), v[3 * i + 1].get_si(), v[3 * i + 2].get_si()};
        Elt acc{0, 0, 0};
        for (const auto& [idx, cf] : terms) {
            Elt prod = mul(xs[idx.first], xs[idx.second]);
            if (cf.a != 1 || cf.b != 0 || cf.c != 0) prod = mul(cf, prod);
            acc.a += prod.a;
            acc.b += prod.b;
            acc.c += prod.c;
        }
        out = acc;
        return true;
    }
};

}  // namespace detail

/**
 * Representation table: one exhaustive enumeration of the ellipsoid
 * Tr(Q(x)) <= trace bound, bucketed by represented value, keeping the first
 * witness in enumeration order. Any representation of a value with trace at
 * most the bound lies inside the ellipsoid, so lookups within the bound are
 * exhaustive and agree with a per-element search.
 */
class RepresentationTable {
public:
    /// nvars only matters for plain sums of squares; the named forms fix it.
    RepresentationTable(const CubicOrder& order, FormName name, Int trace_bound, size_t nvars = 3)
        : form_(form_by_name(order, name, nvars)), name_(name), bound_(std::move(trace_bound)) {
        PosDefForm lattice_form = form_of_quadratic(form_);
        detail::Eval64 fast(form_);
        // seen-value filter keyed by packed coordinates; first hit per value
        // stores the witness, re-verified with exact arithmetic
        std::unordered_set<std::uint64_t> seen;
        constexpr std::int64_t kOffset = std::int64_t(1) << 20;
        auto store = [&](const std::vector<Int>& v, const Element& value) {
            std::vector<Element> xs = form_.elements_of(v);
            if (form_.eval(xs) != value)
                throw std::logic_error("fast form evaluation disagrees with exact arithmetic");
            reps_.emplace(std::array<Int, 3>{value.a(), value.b(), value.c()}, std::move(xs));
        };
        auto in_pack_range = [&](std::int64_t x) { return x > -kOffset && x < kOffset; };
        lattice_form.enumerate(Rat(bound_), [&](const std::vector<Int>& v) {
            detail::Eval64::Elt val{};
            if (fast.usable && fast.eval(v, val) && in_pack_range(val.a) &&
                in_pack_range(val.b) && in_pack_range(val.c)) {
                std::uint64_t key = (std::uint64_t(val.a + kOffset) << 42) |
                                    (std::uint64_t(val.b + kOffset) << 21) |
                                    std::uint64_t(val.c + kOffset);
                if (seen.insert(key).second)
                    store(v, Element(form_.order(), val.a, val.b, val.c));
            } else {
                std::vector<Element> xs = form_.elements_of(v);
                Element value = form_.eval(xs);
                reps_.emplace(std::array<Int, 3>{value.a(), value.b(), value.c()}, std::move(xs));
            }
            return true;
        });
    }

    const Int& trace_bound() const { return bound_; }
    FormName name() const { return name_; }
    size_t distinct_values() const { return reps_.size(); }

    std::optional<Decomposition> find(const Element& alpha) const {
        if (trace(alpha) > bound_)
            throw PreconditionViolated("representation table does not cover this trace");
        auto it = reps_.find({alpha.a(), alpha.b(), alpha.c()});
        if (it == reps_.end()) return std::nullopt;
        return Decomposition(alpha, it->second, name_);
    }

private:
    struct LexCmp {
        bool operator()(const std::array<Int, 3>& x, const std::array<Int, 3>& y) const {
            return lex_less(x, y);
        }
    };
    OrderQuadraticForm form_;
    FormName name_;
    Int bound_;
    std::map<std::array<Int, 3>, std::vector<Element>, LexCmp> reps_;
};

/// Exhaustive search for a representation of alpha by the named form over
/// the ellipsoid Tr(Q(x)) <= Tr(alpha). nullopt proves non-representation.
inline std::optional<Decomposition> represent_by_form(const Element& alpha, FormName which) {
    if (which == FormName::SumOfSquares)
        throw PreconditionViolated("use decompose for plain sums of squares");
    const CubicOrder& ord = alpha.order();
    Int t = trace(alpha);
    if (t < 0) return std::nullopt;  // the form is totally positive definite
    OrderQuadraticForm q = form_by_name(ord, which);
    PosDefForm lattice_form = form_of_quadratic(q);
    std::optional<Decomposition> out;
    lattice_form.enumerate(Rat(t), [&](const std::vector<Int>& v) {
        std::vector<Element> xs = q.elements_of(v);
        if (q.eval(xs) == alpha) {
            out = Decomposition(alpha, std::move(xs), which);
            return false;  // first witness in deterministic order
        }
        return true;
    });
    return out;
}

/**
 * Constructive four squares for a totally positive alpha that is -(2t)^2 at
 * the dyadic place: alpha/2 is then a sum of three squares (x, y, z), and
 * alpha = (x+y)^2 + (x-y)^2 + z^2 + z^2.
 */
inline Decomposition four_squares_for_even_case(const Element& alpha) {
    if (!alpha.order().is_k49())
        throw UnsupportedOrder("construction relies on the disc-49 three-square criterion");
    if (!is_totally_positive(alpha))
        throw PreconditionViolated("alpha must be totally positive");
    auto val = v2(alpha);
    if (!val || *val < 2 || !is_minus_square_local(alpha))
        throw PreconditionViolated("alpha is not -(2t)^2 at the dyadic place");
    Element half = *divide_exact(alpha, Element(alpha.order(), 2));
    auto three = decompose(half, 3, true);
    if (!three) throw std::logic_error("alpha/2 escaped the three-square criterion");
    const auto& t = three->terms();
    std::vector<Element> four = {t[0] + t[1], t[0] - t[1], t[2], t[2]};
    return Decomposition(alpha, std::move(four), FormName::SumOfSquares);
}

/**
 * Four squares for any totally positive alpha in 2O, through the identity
 * 2(x^2+y^2+z^2+w^2+xw+yw+zw) = (x+y+w)^2 + (x-y)^2 + (z+w)^2 + z^2
 * applied to a Kala-Yatsyna representation of alpha/2.
 */
inline Decomposition double_then_four_squares(const Element& alpha,
                                              const RepresentationTable* ky_table = nullptr) {
    if (!is_totally_positive(alpha))
        throw PreconditionViolated("alpha must be totally positive");
    if (is_odd(alpha.a()) || is_odd(alpha.b()) || is_odd(alpha.c()))
        throw NotEven("alpha is not in 2O");
    Element half = *divide_exact(alpha, Element(alpha.order(), 2));
    std::optional<Decomposition> rep;
    if (ky_table != nullptr && ky_table->name() == FormName::KalaYatsyna)
        rep = ky_table->find(half);
    else
        rep = represent_by_form(half, FormName::KalaYatsyna);
    if (!rep) throw KYRepresentationMissing("alpha/2 is not represented by the four-variable form");
    const auto& t = rep->terms();
    std::vector<Element> four = {t[0] + t[1] + t[3], t[0] - t[1], t[2] + t[3], t[2]};
    return Decomposition(alpha, std::move(four), FormName::SumOfSquares);
}

}  // namespace sosk49
