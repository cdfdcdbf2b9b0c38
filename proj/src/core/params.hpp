#pragma once

#include "core/error.hpp"

namespace kdm {

// Problem parameters: every server has degree >= k*b_s, every request
// has degree <= d, and b is the uniform server capacity where one applies.
struct Params {
    int k = 0;
    int d = 0;
    int b = 0;

    // The optimality results hold for k >= d; outside that regime the
    // machinery still runs but carries no tightness claim.
    bool tight_regime() const { return k >= d; }

    void validate() const {
        if (k < 1) fail(ErrorCode::invalid_argument, "k must be >= 1");
        if (d < 2) fail(ErrorCode::invalid_argument, "d must be >= 2 (d=1 is served optimally by any greedy strategy)");
        if (b < 1) fail(ErrorCode::invalid_argument, "b must be >= 1");
    }

    friend bool operator==(const Params& a, const Params& b) = default;
};

}  // namespace kdm
