#pragma once

#include "horonerve/tools/export.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace horonerve::tools {

/// Exit codes of `run`.
inline constexpr int kExitPass = 0;
inline constexpr int kExitVerdictFailure = 1;
inline constexpr int kExitUsage = 2;

/// Everything that determines a report. Flags given on the command line
/// override the instance file.
struct RunConfig {
    std::string subcommand;
    std::string instance;
    int rg = 3;
    int lmax = 3;
    std::optional<int> mmax;
    std::string schedule = "paper";
    int dimcap = 3;
    std::uint64_t seed = 0;
    std::string format = "json";
    int stage = 0;
    std::string family = "u";
    std::uint64_t samples = 0;

    Json to_json() const;
};

/// Parses `args` (without the program name), runs the subcommand and writes
/// its artifact to --out or to `out`. Diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace horonerve::tools
