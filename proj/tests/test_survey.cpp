#include <doctest.h>

#include "sosk49/survey.hpp"
#include "sosk49/verify.hpp"

using namespace sosk49;
using nlohmann::json;

namespace {

CubicOrder k49() { return CubicOrder::make(1, -2, -1); }

SurveyReport survey(const CubicOrder& o, long bound, unsigned workers = 1) {
    RunConfig cfg;
    cfg.trace_bound = bound;
    cfg.workers = workers;
    return run_survey(o, cfg);
}

}  // namespace

TEST_CASE("survey at trace bound 3 sees only the element 1") {
    SurveyReport rep = survey(k49(), 3);
    CHECK(rep.total_elements == 1);
    CHECK(rep.length_histogram.at(1) == 1);
    CHECK(rep.exceptional.empty());
    CHECK(rep.max_length == 1);
    CHECK(rep.violations.empty());
}

TEST_CASE("no exceptional elements below trace 7") {
    SurveyReport rep = survey(k49(), 6);
    CHECK(rep.exceptional.empty());
    CHECK(rep.violations.empty());
}

TEST_CASE("survey at trace bound 7 finds the first exceptional element") {
    CubicOrder o = k49();
    SurveyReport rep = survey(o, 7);
    REQUIRE(!rep.exceptional.empty());
    bool has_omega = false;
    json omega = json_element(Element(o, Int(1), Int(1), Int(1)));
    for (const auto& e : rep.exceptional)
        if (e.element == omega) has_omega = true;
    CHECK(has_omega);
    for (const auto& e : rep.exceptional) CHECK(e.norm_value == json(7));
    CHECK(rep.violations.empty());
}

TEST_CASE("survey at trace bound 21 reaches length four") {
    SurveyReport rep = survey(k49(), 21);
    CHECK(rep.max_length == 4);
    CHECK(rep.length_histogram.at(4) >= 1);
    CHECK(rep.violations.empty());
}

TEST_CASE("survey at trace bound 30, frozen totals") {
    SurveyReport rep = survey(k49(), 30);
    CHECK(rep.total_elements == 673);
    CHECK(rep.length_histogram.at(1) == 48);
    CHECK(rep.length_histogram.at(2) == 304);
    CHECK(rep.length_histogram.at(3) == 281);
    CHECK(rep.length_histogram.at(4) == 28);
    CHECK(rep.exceptional.size() == 12);
    CHECK(rep.max_length == 4);
    CHECK(rep.violations.empty());
    // histogram counts sum to total minus exceptional
    std::uint64_t sum = 0;
    for (const auto& [len, count] : rep.length_histogram) sum += count;
    CHECK(sum + rep.exceptional.size() == rep.total_elements);
}

TEST_CASE("exceptionals form a single orbit modulo unit squares") {
    RunConfig cfg;
    cfg.trace_bound = 30;
    cfg.orbit_summary = true;
    SurveyReport rep = run_survey(k49(), cfg);
    REQUIRE(rep.exceptional_orbits.has_value());
    CHECK(*rep.exceptional_orbits == 1);
    CHECK(rep.exceptional.size() == 12);
}

TEST_CASE("survey verdicts are byte-identical across worker counts and reruns") {
    CubicOrder o = k49();
    std::string base = survey(o, 10, 1).verdict_json().dump();
    CHECK(survey(o, 10, 8).verdict_json().dump() == base);
    CHECK(survey(o, 10, 3).verdict_json().dump() == base);
    CHECK(survey(o, 10, 1).verdict_json().dump() == base);
}

TEST_CASE("survey on a generic order downgrades assertions to observations") {
    CubicOrder other = CubicOrder::make(0, -3, -1);
    RunConfig cfg;
    cfg.p = 0;
    cfg.q = -3;
    cfg.r = -1;
    cfg.trace_bound = 12;
    SurveyReport rep = run_survey(other, cfg);
    CHECK(!rep.theorem_assertions);
    CHECK(rep.total_elements > 0);
    CHECK(rep.violations.empty());  // nothing is asserted for generic orders
}

TEST_CASE("run config validation") {
    RunConfig cfg;
    cfg.trace_bound = 2;
    CHECK_THROWS_AS(cfg.validate(), PreconditionViolated);
    RunConfig cfg2;
    cfg2.workers = 0;
    CHECK_THROWS_AS(cfg2.validate(), PreconditionViolated);
}

TEST_CASE("emitted witnesses re-verify after a JSON round trip") {
    CubicOrder o = k49();
    Element seven(o, 7);
    json j = json_length_result(seven, length(seven));
    REQUIRE(j["length"] == 4);
    Element sum(o, 0);
    for (const auto& term : j["witness"]) {
        Element t(o, Int(term[0].get<long>()), Int(term[1].get<long>()),
                  Int(term[2].get<long>()));
        sum = sum + t * t;
    }
    CHECK(sum == seven);
}

TEST_CASE("classification JSON carries all five statements") {
    CubicOrder o = k49();
    json j = json_classification(verify_characterisation(Element(o, Int(1), Int(1), Int(1))));
    CHECK(j["statements"]["1a"] == true);
    CHECK(j["statements"]["1b"] == true);
    CHECK(j["statements"]["2a"] == true);
    CHECK(j["statements"]["2b"] == true);
    CHECK(j["statements"]["2c"] == true);
    CHECK(j["consistent"] == true);
    CHECK(j["witnesses"]["unitFactor"] == json_element(Element(o, 1)));
    CHECK(j["norm"] == 7);
}

TEST_CASE("parallel map preserves input order and propagates errors") {
    std::vector<int> items;
    for (int i = 0; i < 100; ++i) items.push_back(i);
    auto out = parallel_map(items, 8, [](int x) { return x * x; });
    for (int i = 0; i < 100; ++i) CHECK(out[size_t(i)] == i * i);
    CHECK_THROWS_AS(parallel_map(items, 4,
                                 [](int x) -> int {
                                     if (x == 57) throw PreconditionViolated("boom");
                                     return x;
                                 }),
                    PreconditionViolated);
}

TEST_CASE("doubling identity expands symbolically") { CHECK(doubling_identity_holds()); }
