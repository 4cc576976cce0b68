#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace stratdisc
{
struct CheckResult
{
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0;
};

struct SuiteOptions
{
    //! "default" runs every criterion at full size; "quick" shrinks the
    //! Monte Carlo replication counts and quadrature grids.
    std::string suite = "default";
    std::uint64_t seed = 1;
    unsigned workers = 0;
};

using CheckReporter = std::function<void(CheckResult const&)>;

//! Names accepted by SuiteOptions::suite.
std::vector<std::string> suite_names();

/*!
 * Run the oracle-agreement and invariant checks, reporting each as it
 * finishes. Throws DomainError for an unknown suite name.
 */
std::vector<CheckResult> run_suite(SuiteOptions const& options, CheckReporter const& report = {});

//! "[PASS] 4 <name>: <detail> (1.23 s)"
std::string format_check(CheckResult const& r);

}  // namespace stratdisc
