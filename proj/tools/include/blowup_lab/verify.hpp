#pragma once

// Named property suites exposed by `blowup_lab verify`.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace blowup::lab {

struct CheckResult {
    std::string name;
    double value = 0.0;
    std::string expectation;
    bool pass = false;
};

std::vector<std::string_view> suite_names();

/// Throws Error(UnknownSuite).
std::vector<CheckResult> run_suite(std::string_view suite);

void print_checks(std::ostream& out, std::string_view suite, const std::vector<CheckResult>& checks);

} // namespace blowup::lab
