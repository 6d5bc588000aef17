#pragma once

// Command layer: every CLI verb is a pure function from a JSON job to a JSON
// report plus a process exit code (0 success, 1 domain failure, 2 malformed
// input).  Reports carry a versioned schema tag and serialize with sorted
// keys, so identical jobs produce byte-identical output.  NDJSON batch
// streaming maps each line to one report and never aborts mid-stream.

#include <algorithm>
#include <istream>
#include <ostream>
#include <string>

#include "heisgamma/json_io.hpp"
#include "heisgamma/verify.hpp"

namespace heisgamma {

struct CliOptions {
    bool approx_mode = false;
    double tol = 1e-9;
    std::uint64_t seed = 0;
    int samples = 100;
    std::string suite = "all";
};

struct CommandOutcome {
    Json report;
    int exit_code = 0;
};

namespace detail {

constexpr const char* kSchemaTag = "heisgamma-report-v1";

inline int exit_code_for(errc code) { return code == errc::malformed_input ? 2 : 1; }

inline Json error_report(const std::string& command, errc code, const std::string& message) {
    return Json{{"schema", kSchemaTag},
                {"command", command},
                {"status", "error"},
                {"error", Json{{"code", to_string(code)}, {"message", message}}}};
}

inline Json ok_report(const std::string& command, Json result) {
    return Json{{"schema", kSchemaTag},
                {"command", command},
                {"status", "ok"},
                {"result", std::move(result)}};
}

inline std::vector<Automorphism> parse_generators(const Json& input, const CliOptions& opt,
                                                  const char* key) {
    if (!input.is_object() || !input.contains(key))
        fail(errc::malformed_input,
             std::string("expected an object with a \"") + key + "\" array");
    const Json& arr = input.at(key);
    if (!arr.is_array() || arr.empty())
        fail(errc::malformed_input, std::string("\"") + key + "\" must be a non-empty array");
    std::vector<Automorphism> out;
    for (const Json& e : arr) out.push_back(automorphism_from_json(e, opt.approx_mode, opt.tol));
    return out;
}

// check-metric / reduce-metric / curvature grade against an explicit subgroup
// when one is supplied; otherwise against the canonical four-group at the
// origin of its chart.
inline Grading grading_for(const Json& input, const CliOptions& opt) {
    if (input.is_object() && input.contains("generators"))
        return grading_from_subgroup(
            build_subgroup(parse_generators(input, opt, "generators"), 48, opt.tol), opt.tol);
    return grading_from_subgroup(build_gamma7(Scalar(0), Scalar(0), Scalar(0), opt.tol),
                                 opt.tol);
}

inline Json cmd_classify(const Json& input, const CliOptions& opt) {
    const Automorphism t = automorphism_from_json(input, opt.approx_mode, opt.tol);
    return family_tag_to_json(classify_involution(t, opt.tol));
}

inline Json cmd_build_subgroup(const Json& input, const CliOptions& opt) {
    int bound = 48;
    if (input.is_object() && input.contains("bound")) {
        if (!input.at("bound").is_number_integer())
            fail(errc::malformed_input, "\"bound\" must be an integer");
        bound = input.at("bound").get<int>();
    }
    return subgroup_to_json(
        build_subgroup(parse_generators(input, opt, "generators"), bound, opt.tol));
}

inline Json cmd_grade(const Json& input, const CliOptions& opt) {
    const char* key =
        (input.is_object() && input.contains("elements") && !input.contains("generators"))
            ? "elements"
            : "generators";
    const AutSubgroup g = build_subgroup(parse_generators(input, opt, key), 48, opt.tol);
    return grading_to_json(grading_from_subgroup(g, opt.tol));
}

inline Json cmd_conjugate(const Json& input, const CliOptions& opt) {
    if (!input.is_object() || !input.contains("source"))
        fail(errc::malformed_input,
             "expected an object with a \"source\" chart (keys a3, a5, a6)");
    const Json& src = input.at("source");
    const Scalar a3 = param(src, "a3", opt.approx_mode);
    const Scalar a5 = param(src, "a5", opt.approx_mode);
    const Scalar a6 = param(src, "a6", opt.approx_mode);
    if (input.contains("target")) {
        const Json& dst = input.at("target");
        const Automorphism s = conjugator_gamma7_to_gamma8(
            a3, a5, a6, param(dst, "a1", opt.approx_mode), param(dst, "a2", opt.approx_mode),
            param(dst, "a6p", opt.approx_mode), param(dst, "a6pp", opt.approx_mode), opt.tol);
        return Json{{"transform", matrix_to_json(s.matrix())}};
    }
    return Json{{"transform", matrix_to_json(normalize_gamma7(a3, a5, a6, opt.tol).matrix())}};
}

inline Json cmd_check_metric(const Json& input, const CliOptions& opt) {
    const BilinearForm g = bilinear_form_from_json(input, opt.approx_mode, opt.tol);
    Json out = adaptation_report_to_json(check_adaptation(g, grading_for(input, opt), opt.tol));
    if (g.signature.zero == 0)
        out["flat"] = is_flat(g, opt.tol);
    else
        out["flat"] = nullptr;
    return out;
}

inline Json cmd_reduce_metric(const Json& input, const CliOptions& opt) {
    const BilinearForm g = bilinear_form_from_json(input, opt.approx_mode, opt.tol);
    return reduction_to_json(canonical_reduce(g, grading_for(input, opt), opt.tol));
}

inline Json cmd_curvature(const Json& input, const CliOptions& opt) {
    const BilinearForm g = bilinear_form_from_json(input, opt.approx_mode, opt.tol);
    Json comps = curvature_to_json(curvature(g, opt.tol), opt.tol);
    const bool flat = comps.empty();
    return Json{{"components", std::move(comps)}, {"flat", flat}};
}

inline CommandOutcome cmd_verify(const CliOptions& opt) {
    const VerifyConfig cfg{opt.seed, opt.samples, opt.tol};
    const std::vector<CheckResult> results = run_suite(opt.suite, cfg);
    Json checks = Json::array();
    int passed = 0;
    for (const CheckResult& r : results) {
        checks.push_back(Json{{"name", r.name}, {"passed", r.passed}});
        passed += r.passed ? 1 : 0;
    }
    const bool all = passed == static_cast<int>(results.size());
    Json report = ok_report("verify-paper", Json{{"suite", opt.suite},
                                                 {"total", results.size()},
                                                 {"passed", passed},
                                                 {"all_passed", all}});
    report["checks"] = std::move(checks);
    return CommandOutcome{std::move(report), all ? 0 : 1};
}

}  // namespace detail

inline CommandOutcome run_command(const std::string& command, const Json& input,
                                  const CliOptions& opt) {
    try {
        if (command == "verify-paper") return detail::cmd_verify(opt);
        Json result;
        if (command == "classify-aut")
            result = detail::cmd_classify(input, opt);
        else if (command == "build-subgroup")
            result = detail::cmd_build_subgroup(input, opt);
        else if (command == "grade")
            result = detail::cmd_grade(input, opt);
        else if (command == "conjugate")
            result = detail::cmd_conjugate(input, opt);
        else if (command == "check-metric")
            result = detail::cmd_check_metric(input, opt);
        else if (command == "reduce-metric")
            result = detail::cmd_reduce_metric(input, opt);
        else if (command == "curvature")
            result = detail::cmd_curvature(input, opt);
        else
            fail(errc::malformed_input, "unknown command \"" + command + "\"");
        return CommandOutcome{detail::ok_report(command, std::move(result)), 0};
    } catch (const error& e) {
        return CommandOutcome{detail::error_report(command, e.code(), e.what()),
                              detail::exit_code_for(e.code())};
    } catch (const std::exception& e) {
        return CommandOutcome{detail::error_report(command, errc::internal_error, e.what()), 1};
    }
}

// One job per line: {"command": "...", "input": {...}}.  Emits one report per
// line in input order; a bad line yields an error report, not an abort.  The
// return value is the worst exit code seen.
inline int run_batch(std::istream& in, std::ostream& out, const CliOptions& opt) {
    int worst = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const Json job = Json::parse(line, nullptr, false);
        CommandOutcome outcome;
        if (job.is_discarded() || !job.is_object() || !job.contains("command") ||
            !job.at("command").is_string()) {
            outcome = CommandOutcome{
                detail::error_report("batch", errc::malformed_input,
                                     "each line must be {\"command\": ..., \"input\": ...}"),
                2};
        } else {
            const Json input = job.contains("input") ? job.at("input") : Json::object();
            outcome = run_command(job.at("command").get<std::string>(), input, opt);
        }
        out << outcome.report.dump() << "\n";
        worst = std::max(worst, outcome.exit_code);
    }
    return worst;
}

}  // namespace heisgamma
