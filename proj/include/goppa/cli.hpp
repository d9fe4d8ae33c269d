#ifndef GOPPA_CLI_HPP
#define GOPPA_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <string>

namespace goppa {

// Exit contract shared by every subcommand: 0 clean pass, 1 an adjudicated
// discrepancy between a stated closed form and the authoritative route,
// 2 usage, 3 refused for capacity, 4 internal cross-check failure.
enum ExitCode : int {
    kExitPass = 0,
    kExitDiscrepancy = 1,
    kExitUsage = 2,
    kExitCapacity = 3,
    kExitInternal = 4,
};

struct RunConfig {
    std::string subcommand;
    std::uint64_t n = 5;
    std::uint64_t r = 3;
    std::string format = "json";
    bool heavy = false;
    int workers = 1;
    std::uint64_t seed = 1;
    bool strict = false;
    bool force_hypotheses = false;
    std::string group = "pgammal";
    std::string goppa_poly;
    bool extended = false;
    bool weights = false;
};

// Dispatches a parsed configuration; identical configurations produce
// byte-identical output and the worker count never changes any count.
int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Parses argv and dispatches. Returns the exit code, never throws.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace goppa

#endif
