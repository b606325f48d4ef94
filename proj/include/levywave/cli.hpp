#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "levywave/config.hpp"

namespace levywave {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Fast invariant suite behind `levy-wave validate`.
std::vector<CheckResult> validation_suite(const ExperimentConfig& cfg);

// Exit codes: 0 success, 1 failed check or runtime error, 2 configuration error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace levywave
