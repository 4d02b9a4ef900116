#pragma once

#include "fieldscope/linalg.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

namespace fieldscope::cli {

enum class Command { nr2, nr3_ellipse, nr3_sample, member, invert, reduce_diag, cnr2, cnr_rank1, qrange, verify };
enum class Format { json, csv, svg };

std::optional<Command> parse_command(std::string_view name);
std::string_view command_name(Command c);
std::optional<Format> parse_format(std::string_view name);

struct RunConfig {
    Command command = Command::nr2;
    std::string input_path;   // "-" reads standard input
    std::string output_path;  // empty writes to the output stream
    Format format = Format::json;
    std::size_t samples = 10000;
    std::uint64_t seed = 1;
    double tol = kDefaultTol;
    std::optional<Complex> point;
    std::optional<double> q;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitOutsideRange = 3;

/// Throws PreconditionError naming the first violated field constraint.
void validate(const RunConfig& config);

/// Runs one command. Diagnostics go to `err`; the artifact goes to
/// config.output_path, or to `out` when no path is given.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

} // namespace fieldscope::cli
