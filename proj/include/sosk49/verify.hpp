#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sosk49/classify.hpp"
#include "sosk49/dyadic.hpp"
#include "sosk49/sos.hpp"
#include "sosk49/survey.hpp"

namespace sosk49 {

/// Integer polynomials in four commuting variables, just enough to expand
/// and compare both sides of the doubling identity.
class Poly4 {
public:
    static Poly4 var(int i) {
        Poly4 p;
        std::array<int, 4> mono{0, 0, 0, 0};
        mono[size_t(i)] = 1;
        p.coeff_[mono] = 1;
        return p;
    }

    Poly4 operator+(const Poly4& o) const {
        Poly4 out = *this;
        for (const auto& [m, c] : o.coeff_) add_term(out.coeff_, m, c);
        return out;
    }

    Poly4 operator-(const Poly4& o) const {
        Poly4 out = *this;
        for (const auto& [m, c] : o.coeff_) add_term(out.coeff_, m, -c);
        return out;
    }

    Poly4 operator*(const Poly4& o) const {
        Poly4 out;
        for (const auto& [m1, c1] : coeff_)
            for (const auto& [m2, c2] : o.coeff_) {
                std::array<int, 4> m{m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2], m1[3] + m2[3]};
                add_term(out.coeff_, m, c1 * c2);
            }
        return out;
    }

    Poly4 operator*(long s) const {
        Poly4 out;
        for (const auto& [m, c] : coeff_) out.coeff_[m] = c * s;
        return out;
    }

    bool operator==(const Poly4& o) const { return coeff_ == o.coeff_; }

private:
    static void add_term(std::map<std::array<int, 4>, Int>& coeff, const std::array<int, 4>& m,
                         const Int& c) {
        Int& slot = coeff[m];
        slot += c;
        if (slot == 0) coeff.erase(m);
    }
    std::map<std::array<int, 4>, Int> coeff_;
};

/// 2(x^2+y^2+z^2+w^2+xw+yw+zw) = (x+y+w)^2 + (x-y)^2 + (z+w)^2 + z^2
/// as an identity of polynomials.
inline bool doubling_identity_holds() {
    Poly4 x = Poly4::var(0), y = Poly4::var(1), z = Poly4::var(2), w = Poly4::var(3);
    Poly4 lhs = (x * x + y * y + z * z + w * w + x * w + y * w + z * w) * 2;
    Poly4 rhs = (x + y + w) * (x + y + w) + (x - y) * (x - y) + (z + w) * (z + w) + z * z;
    return lhs == rhs;
}

struct CheckResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string details;
};

namespace checks {

inline std::int64_t ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                                 t0)
        .count();
}

/// 1. l(7) = 4 with a verifying witness; no three-square decomposition.
inline CheckResult length_of_seven(const CubicOrder& order) {
    CheckResult res{1, "length-of-seven", false, ""};
    auto t0 = std::chrono::steady_clock::now();
    Element seven(order, 7);
    LengthResult lr = length(seven);
    bool four = lr.value && *lr.value == 4 && lr.witness && lr.witness->verifies() &&
                lr.witness->nonzero_terms() == 4;
    bool no_three = !decompose(seven, 3, true).has_value();
    std::int64_t ms = ms_since(t0);
    res.pass = four && no_three && ms < 1000;
    res.details = "l(7)=" + (lr.value ? std::to_string(*lr.value) : std::string("none")) +
                  ", 3-square search empty=" + (no_three ? "yes" : "no") + ", " +
                  std::to_string(ms) + " ms";
    return res;
}

/// 2. Survey at trace bound 30: max length 4, attained, nothing above.
inline CheckResult survey_main_theorem(const CubicOrder& order, unsigned workers) {
    CheckResult res{2, "survey-main-theorem", false, ""};
    RunConfig cfg;
    cfg.trace_bound = 30;
    cfg.workers = workers;
    SurveyReport rep = run_survey(order, cfg);
    bool attained = rep.length_histogram.count(4) != 0 && rep.length_histogram.at(4) > 0;
    bool none_above = true;
    for (const auto& [len, count] : rep.length_histogram)
        if (len >= 5 && count > 0) none_above = false;
    res.pass = rep.violations.empty() && rep.max_length == 4 && attained && none_above;
    std::string hist;
    for (const auto& [len, count] : rep.length_histogram)
        hist += std::to_string(len) + ":" + std::to_string(count) + " ";
    res.details = std::to_string(rep.total_elements) + " totally positive elements, histogram " +
                  hist + ", " + std::to_string(rep.exceptional.size()) + " exceptional, maxLength " +
                  std::to_string(rep.max_length);
    return res;
}

/// 3. Five-way equivalence holds for every totally positive element of
///    trace at most 30.
inline CheckResult theorem_equivalence(const CubicOrder& order, unsigned workers) {
    CheckResult res{3, "characterisation-equivalence", false, ""};
    auto elements = totally_positive_up_to_trace(order, Int(30));
    try {
        auto reports = parallel_map(elements, workers, [](const Element& alpha) {
            return verify_characterisation(alpha);
        });
        size_t exceptional = 0;
        for (const auto& r : reports)
            if (r.norm_is_seven) ++exceptional;
        res.pass = true;
        res.details = std::to_string(reports.size()) + " elements classified, " +
                      std::to_string(exceptional) + " exceptional, 0 inconsistencies";
    } catch (const InconsistentEquivalence& e) {
        res.pass = false;
        res.details = std::string("inconsistent: ") + e.report_json;
    }
    return res;
}

/// 4. Local-global criterion vs exhaustive three-square search for every
///    nonzero alpha with Tr(alpha^2) <= 400.
inline CheckResult three_square_criterion(const CubicOrder& order) {
    CheckResult res{4, "three-square-local-global", false, ""};
    auto t0 = std::chrono::steady_clock::now();
    Int square_bound = 400;
    std::vector<Element> elems;
    trace_square_form(order).enumerate(Rat(square_bound), [&](const std::vector<Int>& v) {
        Element x(order, v[0], v[1], v[2]);
        if (!x.is_zero()) elems.push_back(std::move(x));
        return true;
    });
    // any represented alpha is totally positive with
    // Tr(alpha)^2 <= 3 Tr(alpha^2), so this table bound is exhaustive
    Int table_bound = isqrt_floor(3 * square_bound);
    RepresentationTable table(order, FormName::SumOfSquares, table_bound);
    std::uint64_t mismatches = 0;
    std::string first_bad;
    for (const Element& alpha : elems) {
        bool lhs = is_sum_of_three_local_global(alpha);
        auto rhs = table.find(alpha);
        if (lhs != rhs.has_value()) {
            ++mismatches;
            if (first_bad.empty()) first_bad = element_to_text(alpha);
        }
    }
    std::int64_t ms = ms_since(t0);
    res.pass = mismatches == 0 && ms < 300000;
    res.details = std::to_string(elems.size()) + " elements, " + std::to_string(mismatches) +
                  " mismatches" + (first_bad.empty() ? "" : " (first: " + first_bad + ")") + ", " +
                  std::to_string(ms) + " ms";
    return res;
}

/// 5. Residue scans behind the dyadic lemmas come back clean.
inline CheckResult dyadic_lemma_shadows(const CubicOrder& order) {
    CheckResult res{5, "dyadic-lemma-shadows", false, ""};
    ScanReport r3 = residue_scan_lemmas(order, 3);
    ScanReport r2 = residue_scan_lemmas(order, 2);
    bool counts_ok = r3.checks.size() == 1 && r3.checks[0].tuples_scanned == 448ull * 448ull &&
                     r2.checks.size() == 2 &&
                     r2.checks[0].tuples_scanned == 56ull * 64ull * 64ull &&
                     r2.checks[1].tuples_scanned == 64ull * 64ull;
    res.pass = r3.clean() && r2.clean() && counts_ok;
    res.details = "mod8 unit pairs " + std::to_string(r3.checks[0].tuples_scanned) + ", mod4 triples " +
                  std::to_string(r2.checks[0].tuples_scanned) + ", mod4 pairs " +
                  std::to_string(r2.checks[1].tuples_scanned) + ", counterexamples " +
                  std::to_string(r3.checks[0].counterexamples.size() +
                                 r2.checks[0].counterexamples.size() +
                                 r2.checks[1].counterexamples.size());
    return res;
}

/// 6. Both universal forms represent every totally positive element of
///    trace at most 30, with verifying witnesses.
inline CheckResult universality(const CubicOrder& order) {
    CheckResult res{6, "universal-forms", false, ""};
    auto t0 = std::chrono::steady_clock::now();
    auto elements = totally_positive_up_to_trace(order, Int(30));
    RepresentationTable ky(order, FormName::KalaYatsyna, Int(30));
    RepresentationTable d5(order, FormName::DiagonalFiveVar, Int(30));
    std::uint64_t missing = 0, norm_seven = 0;
    std::string first_bad;
    for (const Element& alpha : elements) {
        if (norm(alpha) == 7) ++norm_seven;
        auto a = ky.find(alpha);   // Decomposition construction re-verifies
        auto b = d5.find(alpha);
        if (!a || !b) {
            ++missing;
            if (first_bad.empty()) first_bad = element_to_text(alpha);
        }
    }
    std::int64_t ms = ms_since(t0);
    res.pass = missing == 0;
    res.details = std::to_string(elements.size()) + " elements (incl. " +
                  std::to_string(norm_seven) + " of norm 7), " + std::to_string(missing) +
                  " unrepresented" + (first_bad.empty() ? "" : " (first: " + first_bad + ")") +
                  ", " + std::to_string(ms) + " ms";
    return res;
}

/// 7. The doubling identity holds symbolically and drives the constructive
///    four-square path on 100 even totally positive elements.
inline CheckResult doubling(const CubicOrder& order) {
    CheckResult res{7, "doubling-identity", false, ""};
    bool symbolic = doubling_identity_holds();
    auto base = totally_positive_up_to_trace(order, Int(20));
    size_t wanted = 100;
    if (base.size() < wanted) {
        res.details = "sample pool too small: " + std::to_string(base.size());
        return res;
    }
    RepresentationTable ky(order, FormName::KalaYatsyna, Int(20));
    size_t built = 0;
    std::string first_bad;
    for (size_t i = 0; i < wanted; ++i) {
        Element alpha = base[i] * Int(2);
        try {
            Decomposition d = double_then_four_squares(alpha, &ky);
            if (d.verifies()) ++built;
        } catch (const Error& e) {
            if (first_bad.empty()) first_bad = element_to_text(alpha) + ": " + e.what();
        }
    }
    res.pass = symbolic && built == wanted;
    res.details = std::string("symbolic identity ") + (symbolic ? "holds" : "FAILS") + ", " +
                  std::to_string(built) + "/" + std::to_string(wanted) + " doubled elements" +
                  (first_bad.empty() ? "" : " (first failure: " + first_bad + ")");
    return res;
}

/// 8. Indecomposables with trace at most 30 are exactly the unit-square
///    multiples of 1 and 1+rho+rho^2, both sides enumerated independently.
inline CheckResult indecomposables(const CubicOrder& order) {
    CheckResult res{8, "indecomposables", false, ""};
    IndecomposablesReport rep = indecomposables_up_to_trace(order, Int(30));
    res.pass = rep.expected_computed && rep.matches && rep.found.size() >= 2;
    res.details = "found " + std::to_string(rep.found.size()) + ", expected " +
                  std::to_string(rep.expected.size()) +
                  (rep.matches ? ", sets equal" : ", SETS DIFFER");
    return res;
}

/// 9. Survey and classification verdicts are identical for 1, 4 and 8
///    workers.
inline CheckResult determinism(const CubicOrder& order) {
    CheckResult res{9, "worker-determinism", false, ""};
    std::vector<std::string> survey_dumps, classify_digests;
    for (unsigned w : {1u, 4u, 8u}) {
        RunConfig cfg;
        cfg.trace_bound = 30;
        cfg.workers = w;
        survey_dumps.push_back(run_survey(order, cfg).verdict_json().dump());
        auto elements = totally_positive_up_to_trace(order, Int(30));
        auto reports = parallel_map(elements, w, [](const Element& alpha) {
            return verify_characterisation(alpha);
        });
        std::string digest;
        for (const auto& r : reports) digest += r.summary() + ";";
        classify_digests.push_back(digest);
    }
    bool survey_ok =
        survey_dumps[0] == survey_dumps[1] && survey_dumps[1] == survey_dumps[2];
    bool classify_ok = classify_digests[0] == classify_digests[1] &&
                       classify_digests[1] == classify_digests[2];
    res.pass = survey_ok && classify_ok;
    res.details = std::string("survey verdicts ") + (survey_ok ? "identical" : "DIFFER") +
                  ", classification verdicts " + (classify_ok ? "identical" : "DIFFER") +
                  " across workers {1,4,8}";
    return res;
}

}  // namespace checks

inline std::vector<CheckResult> run_acceptance_checks(const CubicOrder& order, unsigned workers) {
    std::vector<CheckResult> out;
    out.push_back(checks::length_of_seven(order));
    out.push_back(checks::survey_main_theorem(order, workers));
    out.push_back(checks::theorem_equivalence(order, workers));
    out.push_back(checks::three_square_criterion(order));
    out.push_back(checks::dyadic_lemma_shadows(order));
    out.push_back(checks::universality(order));
    out.push_back(checks::doubling(order));
    out.push_back(checks::indecomposables(order));
    out.push_back(checks::determinism(order));
    return out;
}

}  // namespace sosk49
