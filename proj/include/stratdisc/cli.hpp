#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace stratdisc
{
enum ExitCode : int
{
    kExitOk = 0,
    kExitVerificationFailed = 1,
    kExitInvalidConfig = 2,
    kExitIoFailure = 3,
};

//! Fully resolved command line, echoed into every JSON output.
struct RunConfig
{
    std::string subcommand;
    std::string family;
    int d = 2;
    int m = 2;
    std::string theta;  //!< as given; see parse_parameter
    std::string b;
    int n = 0;
    std::size_t reps = 200000;
    std::uint64_t seed = 1;
    std::uint64_t replication = 0;
    int grid = 200;
    std::vector<std::string> values;
    std::string input;
    std::string out;
    std::string format;
    std::string suite = "default";
    unsigned workers = 0;
};

//! A real number, or one of the exact names "pi/2", "arctan(1/2)"/"atan(1/2)".
double parse_parameter(std::string const& text);

//! Run one subcommand; `args` excludes the program name.
int run_cli(std::vector<std::string> const& args, std::ostream& out, std::ostream& err);

}  // namespace stratdisc
