#pragma once

#include <string>
#include <vector>

namespace swlab {

struct PropertyResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Fast invariant suite (grid, LP, Besov, kernel, index algebra, solver) with fixed seeds.
std::vector<PropertyResult> run_properties(unsigned seed = 20240601u);

}  // namespace swlab
