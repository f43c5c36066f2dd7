#pragma once

// Central-limit estimate of the middle layer and the finite-D sandwich for
// the antichain exponent.

#include <optional>
#include <string>
#include <vector>

#include "gridposet/common.hpp"
#include "gridposet/decimal.hpp"
#include "gridposet/grid_poset.hpp"

namespace gridposet {

/// sqrt(6 / (pi (n^2 - 1) D)) * n^D. Throws std::invalid_argument for n < 2 or D < 1.
Decimal clt_middle_layer(int n, int D);

struct AsymptoticReport {
    int n = 0;
    int D = 0;
    BigCount exact;
    Decimal clt_estimate;
    Decimal relative_error;  // |estimate - exact| / exact
    std::optional<Decimal> exponent_ratio;
};

/// Exact middle layer from the level-size DP against the estimate.
AsymptoticReport compare_middle_layer(int n, int D);

/// log2(count) / (sqrt(6/(D pi)) n^(D-1)).
Decimal exponent_ratio(int n, int D, const Decimal& log2_count);

struct ExponentSandwich {
    int n = 0;
    int d = 0;
    Decimal scale;                    // sqrt(6/((d+1) pi)) n^d
    BigCount lower;                   // N_{n,d+1}: log2 of the trivial 2^N lower bound
    std::optional<Decimal> exact_log2;
    std::optional<Decimal> certified_upper;
    bool ok = true;                   // lower <= exact <= certified, where present
};

/// Box {0..n-1}^(d+1). The exact count is attempted when the box has at
/// most limits.enumerate points, the certified bound when `certify` is set.
ExponentSandwich theorem_main_exponent(int n, int d, bool certify = true, const Limits& limits = {});

std::string asymptotics_csv_header();
std::string to_csv_row(const AsymptoticReport& r);

}  // namespace gridposet
