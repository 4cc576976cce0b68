#include <iostream>

#include "stratdisc/verify.hpp"

int main()
{
    stratdisc::SuiteOptions options;
    options.suite = "default";
    auto results = stratdisc::run_suite(options, [](stratdisc::CheckResult const& r) {
        std::cout << stratdisc::format_check(r) << std::endl;
    });
    std::size_t passed = 0;
    for (auto const& r : results)
        passed += r.passed ? 1 : 0;
    std::cout << passed << " of " << results.size() << " acceptance checks passed" << std::endl;
    return passed == results.size() ? 0 : 1;
}
