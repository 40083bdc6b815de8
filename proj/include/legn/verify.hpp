#pragma once

#include <string>
#include <vector>

namespace legn {

struct CheckLine {
    std::string name;
    bool ok = false;
    std::string detail;
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckLine> checks;
    double seconds = 0;
    bool passed() const;
};

/// series, branch, conormal, contact, cleaning, versal, classify
std::vector<std::string> suite_names();

/// Runs one suite ("all" is expanded by the caller). trunc sizes the reduction checks.
SuiteReport run_suite(const std::string& name, int trunc);

} // namespace legn
