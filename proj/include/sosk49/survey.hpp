#pragma once

#include <chrono>
#include <cstdint>
#include <exception>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "sosk49/classify.hpp"
#include "sosk49/cubic_order.hpp"
#include "sosk49/element_search.hpp"
#include "sosk49/errors.hpp"
#include "sosk49/io.hpp"
#include "sosk49/sos.hpp"

namespace sosk49 {

struct RunConfig {
    Int p{1}, q{-2}, r{-1};
    Int trace_bound{30};
    int max_length_cap = 6;
    bool deterministic = true;
    bool orbit_summary = false;  // also count exceptionals modulo unit squares
    unsigned workers = 1;

    void validate() const {
        if (trace_bound < 3)
            throw PreconditionViolated("trace bound below 3 admits no totally positive elements");
        if (workers < 1) throw PreconditionViolated("workers must be >= 1");
    }

    CubicOrder make_order() const { return CubicOrder::make(p, q, r); }
};

/// Index-preserving parallel map: results land in input order, so the output
/// is identical for every worker count.
template <class T, class F>
auto parallel_map(const std::vector<T>& items, unsigned workers, F&& fn)
    -> std::vector<decltype(fn(items.front()))> {
    using R = decltype(fn(items.front()));
    std::vector<std::optional<R>> slots(items.size());
    if (workers <= 1 || items.size() <= 1) {
        for (size_t i = 0; i < items.size(); ++i) slots[i] = fn(items[i]);
    } else {
        std::exception_ptr first_error;
        std::mutex error_mu;
        std::vector<std::thread> pool;
        unsigned n = std::min<unsigned>(workers, unsigned(items.size()));
        pool.reserve(n);
        for (unsigned w = 0; w < n; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (size_t i = w; i < items.size(); i += n) slots[i] = fn(items[i]);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mu);
                    if (!first_error) first_error = std::current_exception();
                }
            });
        }
        for (auto& t : pool) t.join();
        if (first_error) std::rethrow_exception(first_error);
    }
    std::vector<R> out;
    out.reserve(items.size());
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

// ---- JSON helpers (exact: integers never pass through floating point) ----

inline nlohmann::json json_int(const Int& x) {
    if (x.fits_slong_p()) return nlohmann::json(static_cast<std::int64_t>(x.get_si()));
    return nlohmann::json(x.get_str());
}

inline nlohmann::json json_element(const Element& e) {
    return nlohmann::json::array({json_int(e.a()), json_int(e.b()), json_int(e.c())});
}

inline nlohmann::json json_order(const CubicOrder& o) {
    return {{"p", json_int(o.p())}, {"q", json_int(o.q())}, {"r", json_int(o.r())}};
}

inline nlohmann::json json_terms(const std::vector<Element>& terms) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& t : terms) arr.push_back(json_element(t));
    return arr;
}

inline nlohmann::json json_decomposition(const Decomposition& d) {
    return {{"target", json_element(d.target())},
            {"form", form_name_str(d.form())},
            {"terms", json_terms(d.terms())},
            {"coefficients", json_terms(d.coefficients())}};
}

inline nlohmann::json json_length_result(const Element& target, const LengthResult& res) {
    nlohmann::json j;
    j["target"] = json_element(target);
    j["length"] = res.value ? nlohmann::json(*res.value) : nlohmann::json(nullptr);
    j["witness"] = res.witness ? json_terms(res.witness->terms()) : nlohmann::json(nullptr);
    if (res.certificate) {
        nlohmann::json cert;
        cert["reason"] = length_certificate_str(res.certificate->reason);
        if (res.certificate->cap) cert["cap"] = *res.certificate->cap;
        j["certificate"] = cert;
    } else {
        j["certificate"] = nullptr;
    }
    return j;
}

inline nlohmann::json json_classification(const ClassificationReport& rep) {
    nlohmann::json j;
    j["target"] = json_element(rep.target);
    j["statements"] = {{"1a", rep.not_sum_of_squares},
                       {"1b", rep.not_sum_of_four},
                       {"2a", rep.norm_is_seven},
                       {"2b", rep.unit_square_times_special},
                       {"2c", rep.indecomposable_nonsquare}};
    nlohmann::json w;
    w["sumOfSquares"] =
        rep.sum_witness ? json_terms(rep.sum_witness->terms()) : nlohmann::json(nullptr);
    w["fourSquares"] = rep.four_square_witness ? json_terms(rep.four_square_witness->terms())
                                               : nlohmann::json(nullptr);
    w["unitFactor"] = rep.unit_factor ? json_element(*rep.unit_factor) : nlohmann::json(nullptr);
    w["splitting"] = rep.splitting
                         ? nlohmann::json{{"beta", json_element(rep.splitting->beta)},
                                          {"gamma", json_element(rep.splitting->gamma)}}
                         : nlohmann::json(nullptr);
    w["squareRoot"] = rep.square_root ? json_element(*rep.square_root) : nlohmann::json(nullptr);
    j["witnesses"] = w;
    j["consistent"] = rep.consistent;
    j["norm"] = json_int(norm(rep.target));
    return j;
}

// ---- survey ----

struct SurveyReport {
    nlohmann::json order;
    Int trace_bound{0};
    std::uint64_t total_elements = 0;
    std::map<int, std::uint64_t> length_histogram;
    struct Entry {
        nlohmann::json element;
        nlohmann::json norm_value;
        nlohmann::json trace_value;
    };
    std::vector<Entry> exceptional;
    std::vector<Entry> unresolved;  // generic orders: length cap exhausted
    std::optional<std::uint64_t> exceptional_orbits;  // modulo unit squares
    int max_length = 0;
    bool theorem_assertions = false;  // true for the disc-49 order
    std::vector<std::string> violations;
    std::int64_t elapsed_ms = 0;

    nlohmann::json verdict_json() const {
        nlohmann::json j;
        j["schemaVersion"] = 1;
        j["order"] = order;
        j["traceBound"] = json_int(trace_bound);
        j["totalElements"] = total_elements;
        nlohmann::json hist = nlohmann::json::object();
        for (const auto& [len, count] : length_histogram) hist[std::to_string(len)] = count;
        j["lengthHistogram"] = hist;
        j["maxLength"] = max_length;
        auto entries = [](const std::vector<Entry>& v) {
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& e : v)
                arr.push_back({{"element", e.element}, {"norm", e.norm_value}, {"trace", e.trace_value}});
            return arr;
        };
        j["exceptionalElements"] = entries(exceptional);
        j["unresolvedElements"] = entries(unresolved);
        if (exceptional_orbits) j["exceptionalOrbits"] = *exceptional_orbits;
        j["theoremAssertions"] = theorem_assertions;
        j["violations"] = violations;
        return j;
    }

    nlohmann::json full_json() const {
        nlohmann::json j;
        j["verdict"] = verdict_json();
        j["elapsedMs"] = elapsed_ms;
        return j;
    }
};

inline SurveyReport run_survey(const CubicOrder& order, const RunConfig& config) {
    config.validate();
    auto t0 = std::chrono::steady_clock::now();
    SurveyReport rep;
    rep.order = json_order(order);
    rep.trace_bound = config.trace_bound;
    rep.theorem_assertions = order.is_k49();

    std::vector<Element> elements = totally_positive_up_to_trace(order, config.trace_bound);
    rep.total_elements = elements.size();
    std::vector<LengthResult> results = parallel_map(
        elements, config.workers,
        [&](const Element& alpha) { return length(alpha, config.max_length_cap); });

    std::vector<Element> exceptional_raw;
    for (size_t i = 0; i < elements.size(); ++i) {
        const Element& alpha = elements[i];
        const LengthResult& res = results[i];
        if (res.value) {
            ++rep.length_histogram[*res.value];
            rep.max_length = std::max(rep.max_length, *res.value);
            continue;
        }
        SurveyReport::Entry entry{json_element(alpha), json_int(norm(alpha)),
                                  json_int(trace(alpha))};
        switch (res.certificate->reason) {
            case LengthCertificate::Reason::NormSevenExceptional:
                rep.exceptional.push_back(std::move(entry));
                exceptional_raw.push_back(alpha);
                if (norm(alpha) != 7)
                    rep.violations.push_back("exceptional element without norm 7: " +
                                             element_to_text(alpha));
                break;
            case LengthCertificate::Reason::CapExhausted:
                rep.unresolved.push_back(std::move(entry));
                break;
            case LengthCertificate::Reason::NotTotallyNonnegative:
                rep.violations.push_back("totally positive element classified as not TN: " +
                                         element_to_text(alpha));
                break;
        }
    }
    if (config.orbit_summary) {
        // exceptionals modulo unit squares; the quotient of two orbit mates
        // is the square of a unit
        std::vector<Element> orbit_reps;
        for (const Element& e : exceptional_raw) {
            bool known = false;
            for (const Element& r : orbit_reps) {
                auto q = divide_exact(e, r);
                if (q && is_unit(*q) && is_square(*q)) {
                    known = true;
                    break;
                }
            }
            if (!known) orbit_reps.push_back(e);
        }
        rep.exceptional_orbits = orbit_reps.size();
    }
    if (rep.theorem_assertions) {
        if (rep.max_length > 4)
            rep.violations.push_back("element of length > 4 found (max " +
                                     std::to_string(rep.max_length) + ")");
        if (!rep.unresolved.empty())
            rep.violations.push_back("length cap exhausted inside the disc-49 order");
        std::uint64_t hist_sum = 0;
        for (const auto& [len, count] : rep.length_histogram) hist_sum += count;
        if (hist_sum + rep.exceptional.size() != rep.total_elements)
            rep.violations.push_back("histogram counts do not add up");
    }
    rep.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    return rep;
}

}  // namespace sosk49
