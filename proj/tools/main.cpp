// heisgamma — exact classification toolkit for graded symmetries of the
// three-dimensional Heisenberg algebra.
//
// Every subcommand reads one JSON job (from --input or stdin), writes one
// JSON report (to --output or stdout), and exits 0 on success, 1 on a domain
// failure, 2 on malformed input.  `batch` streams NDJSON jobs; `verify-paper`
// runs the built-in verification suites.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <heisgamma/cli.hpp>

namespace {

using heisgamma::CliOptions;
using heisgamma::CommandOutcome;
using heisgamma::Json;

bool is_stdin_path(const std::string& path) {
    return path.empty() || path == "-" || path == "--";
}

std::string slurp_input(const std::string& path) {
    std::ostringstream buffer;
    if (is_stdin_path(path)) {
        buffer << std::cin.rdbuf();
    } else {
        std::ifstream file(path);
        if (!file) heisgamma::fail(heisgamma::errc::malformed_input,
                                   "cannot open input file \"" + path + "\"");
        buffer << file.rdbuf();
    }
    return buffer.str();
}

int deliver(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-" || path == "stdout") {
        std::cout << text;
        return 0;
    }
    std::ofstream file(path);
    if (!file) {
        std::cerr << "cannot open output file \"" << path << "\"\n";
        return 2;
    }
    file << text;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact classification toolkit for graded symmetries of the 3-D "
                 "Heisenberg algebra"};
    app.require_subcommand(1);
    app.fallthrough();

    CliOptions opt;
    std::string mode = "exact";
    if (const char* env = std::getenv("HEISGAMMA_MODE")) mode = env;
    std::string input_path;
    std::string output_path;

    app.add_option("--mode", mode, "arithmetic mode: exact or approx")
        ->check(CLI::IsMember({"exact", "approx"}));
    app.add_option("--tolerance", opt.tol, "comparison tolerance in approx mode")
        ->capture_default_str();
    app.add_option("--seed", opt.seed, "seed for randomized verification sampling")
        ->capture_default_str();
    app.add_option("--samples", opt.samples, "sample count for randomized checks")
        ->capture_default_str();
    app.add_option("--input", input_path, "input file path, or -- for stdin (default)");
    app.add_option("--output", output_path, "output file path, or stdout (default)");

    app.add_subcommand("classify-aut",
                       "identify which involution family a given automorphism belongs to");
    app.add_subcommand("build-subgroup",
                       "close a generator list into a finite subgroup and name its type");
    app.add_subcommand("grade", "compute the induced grading of a finite abelian subgroup");
    app.add_subcommand("conjugate",
                       "produce the change of basis normalizing a four-group chart, or "
                       "carrying it onto a second chart");
    app.add_subcommand("check-metric",
                       "classify a metric against a grading: Riemannian adapted, one of "
                       "the two Lorentzian cases, or not adapted");
    app.add_subcommand("reduce-metric",
                       "reduce an adapted metric to its canonical representative");
    app.add_subcommand("curvature",
                       "compute the curvature table of a metric and certify flatness");
    CLI::App* verify =
        app.add_subcommand("verify-paper", "run the built-in verification suites");
    verify->add_option("--suite", opt.suite, "which suite to run")
        ->check(CLI::IsMember(heisgamma::suite_names()))
        ->capture_default_str();
    app.add_subcommand("batch", "run NDJSON jobs: one {\"command\", \"input\"} per line");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    opt.approx_mode = mode == "approx";

    const std::string command = app.get_subcommands().front()->get_name();
    std::ostringstream out;
    int code = 0;
    if (command == "batch") {
        try {
            std::istringstream jobs(slurp_input(input_path));
            code = heisgamma::run_batch(jobs, out, opt);
        } catch (const heisgamma::error& e) {
            out << heisgamma::detail::error_report(command, e.code(), e.what()).dump() << "\n";
            code = 2;
        }
    } else {
        CommandOutcome outcome;
        if (command == "verify-paper") {
            outcome = heisgamma::run_command(command, Json::object(), opt);
        } else {
            Json input;
            try {
                input = Json::parse(slurp_input(input_path));
                outcome = heisgamma::run_command(command, input, opt);
            } catch (const heisgamma::error& e) {
                outcome = CommandOutcome{
                    heisgamma::detail::error_report(command, e.code(), e.what()), 2};
            } catch (const Json::parse_error& e) {
                outcome = CommandOutcome{
                    heisgamma::detail::error_report(
                        command, heisgamma::errc::malformed_input, e.what()),
                    2};
            }
        }
        out << outcome.report.dump() << "\n";
        code = outcome.exit_code;
    }
    const int io_code = deliver(out.str(), output_path);
    return io_code != 0 ? io_code : code;
}
