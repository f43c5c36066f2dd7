#pragma once

// Comparable-pair counting with a rank gap, and the supersaturation
// inequality: a set of size a(1 + 3n/D) N_{n,D} + b with b > 0 has at least
// b D^a / (a! n^a) pairs x < y with rank(y) - rank(x) >= a.

#include <cstdint>
#include <string>
#include <vector>

#include "gridposet/common.hpp"
#include "gridposet/grid_poset.hpp"
#include "gridposet/seeding.hpp"

namespace gridposet {

/// Ordered pairs x < y in X with rank(y) - rank(x) >= a. Duplicate points are
/// counted once. Candidates are bucketed by rank so only buckets at least a
/// apart are compared.
BigCount count_comparable_pairs_with_gap(const std::vector<Point>& X, int a);

struct SupersaturationReport {
    GridBox box{1, 1};
    std::uint64_t set_size = 0;
    int a = 1;
    Rational raw_slack = 0;  // |X| - a(1 + 3n/D) N_{n,D}
    Rational slack = 0;      // raw_slack clamped at 0
    BigCount observed_pairs = 0;
    Rational bound = 0;      // slack * D^a / (a! n^a)

    bool premise_active() const { return slack > 0; }
    bool satisfied() const { return !premise_active() || Rational(observed_pairs) >= bound; }
};

/// Threshold a(1 + 3n/D) N_{n,D} beyond which the inequality has content.
Rational supersaturation_threshold(const GridBox& box, int a);

SupersaturationReport check_supersaturation(const GridBox& box, const std::vector<Point>& X, int a);

/// "n,D,a,size,b,bound,observed,pass" with exact rationals as p/q.
std::string csv_header();
std::string to_csv_row(const SupersaturationReport& r);

/// Random subset of the box with exactly `size` points (partial Fisher-Yates
/// over point indices).
std::vector<Point> random_subset(const GridBox& box, std::uint64_t size, Rng& rng,
                                 std::uint64_t cap = Limits{}.materialize);

struct SupersaturationAudit {
    std::uint64_t sets_checked = 0;
    std::uint64_t active_checks = 0;  // reports with b > 0
    std::uint64_t violations = 0;
    std::vector<SupersaturationReport> reports;  // one per checked (X, a)
};

/// Every subset of the box (2^{n^D} of them, so tiny boxes only) against each
/// gap in `gaps`.
SupersaturationAudit exhaustive_supersaturation_audit(const GridBox& box, const std::vector<int>& gaps,
                                                      bool keep_reports = false);

/// `sets` random subsets above threshold. For each set a gap is drawn
/// uniformly among those in `gaps` whose threshold is below n^D, then a size
/// uniformly in (threshold, n^D]. Set s uses derive_seed(seed, s).
SupersaturationAudit random_supersaturation_audit(const GridBox& box, const std::vector<int>& gaps,
                                                  std::uint64_t sets, std::uint64_t seed);

}  // namespace gridposet
