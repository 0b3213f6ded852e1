// sosk49 - sums of integral squares in totally real cubic orders, centered
// on the ring Z[zeta_7 + zeta_7^-1] of field discriminant 49.
//
// Subcommands: survey, verify, length, decompose, classify, local, arith.
// Exit codes: 0 ok, 1 theorem violation or defect, 2 input error,
// 3 unsupported order/feature.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "sosk49/classify.hpp"
#include "sosk49/cubic_order.hpp"
#include "sosk49/dyadic.hpp"
#include "sosk49/errors.hpp"
#include "sosk49/io.hpp"
#include "sosk49/sos.hpp"
#include "sosk49/survey.hpp"
#include "sosk49/verify.hpp"

using nlohmann::json;
using namespace sosk49;

namespace {

struct Options {
    std::string order_arg = "1,-2,-1";
    std::string trace_bound = "30";
    int max_length = 6;
    unsigned workers = 0;  // 0: take SOSK49_WORKERS, else 1
    bool json_out = false;
    bool deterministic = true;
    bool orbits = false;

    unsigned resolved_workers() const {
        if (workers >= 1) return workers;
        if (const char* env = std::getenv("SOSK49_WORKERS")) {
            long v = std::strtol(env, nullptr, 10);
            if (v >= 1) return unsigned(v);
        }
        return 1;
    }

    CubicOrder make_order() const {
        if (!order_arg.empty() && order_arg.front() == '{') {
            json j = json::parse(order_arg);
            return CubicOrder::make(Int(j.at("p").dump()), Int(j.at("q").dump()),
                                    Int(j.at("r").dump()));
        }
        auto [p, q, r] = std::array<Int, 3>(parse_order_triple(order_arg));
        return CubicOrder::make(p, q, r);
    }

    RunConfig run_config(const CubicOrder& order) const {
        RunConfig cfg;
        cfg.p = order.p();
        cfg.q = order.q();
        cfg.r = order.r();
        cfg.trace_bound = Int(trace_bound);
        cfg.max_length_cap = max_length;
        cfg.deterministic = deterministic;
        cfg.orbit_summary = orbits;
        cfg.workers = resolved_workers();
        cfg.validate();
        return cfg;
    }
};

void emit(const json& j) { std::cout << j.dump() << "\n"; }

int cmd_length(const Options& opt, const std::string& elem_text) {
    CubicOrder order = opt.make_order();
    Element alpha = parse_element(order, elem_text);
    LengthResult res = length(alpha, opt.max_length);
    json j = json_length_result(alpha, res);
    j["schemaVersion"] = 1;
    j["order"] = json_order(order);
    emit(j);
    return 0;
}

int cmd_decompose(const Options& opt, const std::string& elem_text, int n, bool allow_zeros) {
    CubicOrder order = opt.make_order();
    Element alpha = parse_element(order, elem_text);
    auto d = decompose(alpha, n, allow_zeros);
    json j;
    j["schemaVersion"] = 1;
    j["order"] = json_order(order);
    j["target"] = json_element(alpha);
    j["n"] = n;
    j["allowZeros"] = allow_zeros;
    j["found"] = d.has_value();
    j["witness"] = d ? json_terms(d->terms()) : json(nullptr);
    emit(j);
    return 0;
}

int cmd_classify(const Options& opt, const std::string& elem_text) {
    CubicOrder order = opt.make_order();
    Element alpha = parse_element(order, elem_text);
    try {
        ClassificationReport rep = verify_characterisation(alpha, opt.max_length);
        json j = json_classification(rep);
        j["schemaVersion"] = 1;
        j["order"] = json_order(order);
        emit(j);
        return 0;
    } catch (const InconsistentEquivalence& e) {
        std::cerr << "equivalence violation: " << e.report_json << "\n";
        return 1;
    }
}

int cmd_local(const Options& opt, const std::string& elem_text) {
    CubicOrder order = opt.make_order();
    Element alpha = parse_element(order, elem_text);
    auto val = v2(alpha);
    json j;
    j["schemaVersion"] = 1;
    j["order"] = json_order(order);
    j["element"] = json_element(alpha);
    j["v2"] = val ? json(*val) : json(nullptr);
    j["isSquare"] = is_square_local(alpha);
    j["isMinusSquare"] = is_minus_square_local(alpha);
    j["representsI3"] = alpha.is_zero() ? json(nullptr) : json(represents_I3_local(alpha));
    emit(j);
    return 0;
}

int cmd_arith(const Options& opt, const std::string& op, const std::string& lhs_text,
              const std::string& rhs_text) {
    CubicOrder order = opt.make_order();
    Element lhs = parse_element(order, lhs_text);
    Element rhs = parse_element(order, rhs_text);
    json j;
    j["schemaVersion"] = 1;
    j["order"] = json_order(order);
    j["op"] = op;
    std::optional<Element> result;
    if (op == "add") result = lhs + rhs;
    else if (op == "sub") result = lhs - rhs;
    else if (op == "mul") result = lhs * rhs;
    else if (op == "neg") result = -lhs;
    else if (op == "div") result = divide_exact(lhs, rhs);
    else throw ParseError("unknown operation '" + op + "'", 0);
    j["exact"] = result.has_value();
    if (result) {
        CharPoly cp = char_poly(*result);
        j["result"] = json_element(*result);
        j["text"] = element_to_text(*result);
        j["trace"] = json_int(cp.s1);
        j["norm"] = json_int(cp.s3);
        j["charPoly"] = {{"s1", json_int(cp.s1)}, {"s2", json_int(cp.s2)}, {"s3", json_int(cp.s3)}};
        j["totallyPositive"] = is_totally_positive(*result);
    } else {
        j["result"] = nullptr;
    }
    emit(j);
    return 0;
}

int cmd_survey(const Options& opt) {
    CubicOrder order = opt.make_order();
    RunConfig cfg = opt.run_config(order);
    SurveyReport rep = run_survey(order, cfg);
    if (opt.json_out) {
        emit(rep.full_json());
    } else {
        std::cout << "survey of totally positive elements, trace <= " << cfg.trace_bound.get_str()
                  << " (" << rep.total_elements << " elements)\n";
        for (const auto& [len, count] : rep.length_histogram)
            std::cout << "  length " << len << ": " << count << "\n";
        std::cout << "  exceptional (not sums of squares): " << rep.exceptional.size() << "\n";
        if (rep.exceptional_orbits)
            std::cout << "  exceptional orbits modulo unit squares: " << *rep.exceptional_orbits
                      << "\n";
        if (!rep.unresolved.empty())
            std::cout << "  unresolved at cap " << cfg.max_length_cap << ": "
                      << rep.unresolved.size() << "\n";
        std::cout << "  max length: " << rep.max_length << "\n";
        for (const auto& v : rep.violations) std::cout << "  VIOLATION: " << v << "\n";
        std::cout << "  elapsed: " << rep.elapsed_ms << " ms\n";
    }
    return rep.violations.empty() ? 0 : 1;
}

int cmd_verify(const Options& opt) {
    CubicOrder order = opt.make_order();
    unsigned workers = opt.resolved_workers();
    auto results = run_acceptance_checks(order, workers);
    bool all_pass = true;
    json arr = json::array();
    for (const auto& r : results) {
        all_pass = all_pass && r.pass;
        if (opt.json_out) {
            arr.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"details", r.details}});
        } else {
            std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.id << " " << r.name << " — "
                      << r.details << "\n";
        }
    }
    if (opt.json_out) emit(json{{"schemaVersion", 1}, {"checks", arr}, {"allPass", all_pass}});
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sums of integral squares in totally real cubic orders"};
    app.require_subcommand(1);
    app.fallthrough();

    Options opt;
    app.add_option("--order", opt.order_arg, "order as p,q,r or {\"p\":..,\"q\":..,\"r\":..}");
    app.add_option("--trace-bound", opt.trace_bound, "trace bound for surveys");
    app.add_option("--max-length", opt.max_length, "length search cap for generic orders");
    app.add_option("--workers", opt.workers, "worker threads (or SOSK49_WORKERS)");
    app.add_flag("--json,!--text", opt.json_out, "emit JSON reports");
    app.add_flag("--deterministic,!--no-deterministic", opt.deterministic,
                 "deterministic witness selection");

    std::string elem_text, elem_rhs, arith_op;
    int n_squares = 4;
    bool allow_zeros = false;

    auto* survey = app.add_subcommand("survey", "length survey over totally positive elements");
    survey->add_flag("--orbits", opt.orbits, "also count exceptionals modulo unit squares");
    auto* verify = app.add_subcommand("verify", "run the full verification suite");
    auto* length_cmd = app.add_subcommand("length", "minimal number of squares for an element");
    length_cmd->add_option("element", elem_text, "element text or [a,b,c]")->required();
    auto* decompose_cmd = app.add_subcommand("decompose", "search an n-square decomposition");
    decompose_cmd->add_option("element", elem_text)->required();
    decompose_cmd->add_option("n", n_squares, "number of squares")->required();
    decompose_cmd->add_flag("--allow-zeros", allow_zeros, "permit zero terms");
    auto* classify_cmd = app.add_subcommand("classify", "evaluate the five-way characterisation");
    classify_cmd->add_option("element", elem_text)->required();
    auto* local_cmd = app.add_subcommand("local", "dyadic valuation and square tests");
    local_cmd->add_option("element", elem_text)->required();
    auto* arith_cmd = app.add_subcommand("arith", "exact order arithmetic");
    arith_cmd->add_option("op", arith_op, "add|sub|neg|mul|div")->required();
    arith_cmd->add_option("lhs", elem_text)->required();
    arith_cmd->add_option("rhs", elem_rhs, "second operand (unused for neg)")->default_val("0");

    CLI11_PARSE(app, argc, argv);

    try {
        if (survey->parsed()) return cmd_survey(opt);
        if (verify->parsed()) return cmd_verify(opt);
        if (length_cmd->parsed()) return cmd_length(opt, elem_text);
        if (decompose_cmd->parsed()) return cmd_decompose(opt, elem_text, n_squares, allow_zeros);
        if (classify_cmd->parsed()) return cmd_classify(opt, elem_text);
        if (local_cmd->parsed()) return cmd_local(opt, elem_text);
        if (arith_cmd->parsed()) return cmd_arith(opt, arith_op, elem_text, elem_rhs);
    } catch (const UnsupportedOrder& e) {
        std::cerr << "unsupported order: " << e.what() << "\n";
        return 3;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::logic_error& e) {
        std::cerr << "defect: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
