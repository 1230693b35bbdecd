#pragma once

// Dataset invariant suite backing the `verify` subcommand.

#include <string>
#include <vector>

#include "pvgrid/model.hpp"

namespace pvgrid {

struct PropertyResult {
    std::string name;
    bool passed = false;
    bool skipped = false;
    std::string detail;
};

// sample_violations: messages collected while reading the dataset leniently.
std::vector<PropertyResult> run_verification(const Dataset& dataset,
                                             const std::vector<std::string>& sample_violations);

bool all_passed(const std::vector<PropertyResult>& results);

}  // namespace pvgrid
