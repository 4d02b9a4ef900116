#include "fieldscope/cli/run.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <vector>

using fieldscope::cli::Command;
using fieldscope::cli::Format;

int main(int argc, char** argv) {
    CLI::App app{"Numerical ranges of small matrices: closed forms, inverse solves and sampling checks"};
    app.set_version_flag("--version", "fieldscope 0.1.0");

    std::string command;
    std::string format = "json";
    std::vector<double> point;
    double q = 0.0;
    fieldscope::cli::RunConfig config;

    app.add_option("command", command,
                   "nr2 | nr3-ellipse | nr3-sample | member | invert | reduce-diag | cnr2 | cnr-rank1 | qrange | verify")
        ->required()
        ->check(CLI::IsMember({"nr2", "nr3-ellipse", "nr3-sample", "member", "invert", "reduce-diag", "cnr2",
                               "cnr-rank1", "qrange", "verify"}));
    app.add_option("-i,--input", config.input_path, "Input JSON file ('-' for stdin)")->required();
    app.add_option("-o,--output", config.output_path, "Output file (default: stdout)");
    app.add_option("-f,--format", format, "Output format")->check(CLI::IsMember({"json", "csv", "svg"}));
    app.add_option("-n,--samples", config.samples, "Sample count for randomized commands")
        ->check(CLI::PositiveNumber);
    app.add_option("-s,--seed", config.seed, "Seed for randomized commands");
    app.add_option("-t,--tol", config.tol, "Tolerance")->check(CLI::PositiveNumber);
    auto* point_opt = app.add_option("-p,--point", point, "Complex point RE IM")->expected(2);
    auto* q_opt = app.add_option("-q,--q", q, "q for the q-numerical range")->check(CLI::Range(0.0, 1.0));

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return fieldscope::cli::kExitInvalid;
    }

    config.command = *fieldscope::cli::parse_command(command);
    config.format = *fieldscope::cli::parse_format(format);
    if (*point_opt) {
        config.point = fieldscope::Complex(point[0], point[1]);
    }
    if (*q_opt) {
        config.q = q;
    }
    return fieldscope::cli::run(config, std::cout, std::cerr);
}
