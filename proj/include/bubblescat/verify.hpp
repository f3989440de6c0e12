#pragma once

#include <functional>
#include <string>
#include <vector>

namespace bubblescat {

// One invariant check: the worst measured value over its sample set against a threshold.
struct CheckResult {
    std::string name;
    std::string description;
    double measured = 0.0;
    double threshold = 0.0;
    bool pass = false;
    double seconds = 0.0;
};

struct PropertySuite {
    std::string name;
    std::string description;
    double threshold;
    std::function<double()> worst;  // returns the worst measured value
};

// Invariants of the special functions, medium, solvers and diagnostics, evaluated
// at PDMS parameters (plus a moderate-frequency medium where cancellation hides errors).
std::vector<PropertySuite> property_suites();

CheckResult run_suite(const PropertySuite& s);
// Runs the suites whose names contain `filter` (all when empty).
std::vector<CheckResult> run_property_suites(const std::string& filter = {});

}  // namespace bubblescat
