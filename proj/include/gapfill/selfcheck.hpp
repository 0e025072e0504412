#pragma once

#include <string>
#include <vector>

namespace gapfill {

struct CheckOutcome {
    std::string name;
    bool passed;
    std::string detail;
};

/// Built-in identity suite: alpha sum, transform round trips, the
/// phi * phi_1 product identity, fast/direct weight agreement and the
/// hand-traced N = 2 recovery for every solver.
std::vector<CheckOutcome> run_selfcheck();

} // namespace gapfill
