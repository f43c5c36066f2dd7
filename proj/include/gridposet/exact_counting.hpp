#pragma once

// Exhaustive ground truth at desk scale: antichains, down-sets and
// high-dimensional partitions of small boxes, the bijections between them,
// and the closed forms known for d = 1 and d = 2.
//
// Set-valued routines work on boxes of at most 64 points, representing a
// subset as a bit mask over point indices (GridBox::index_of).

#include <cstdint>
#include <functional>
#include <vector>

#include "gridposet/common.hpp"
#include "gridposet/grid_poset.hpp"

namespace gridposet {

using PointMask = std::uint64_t;

struct Antichain {
    std::vector<Point> elements;  // sorted, pairwise incomparable
};

struct DownSet {
    std::vector<Point> elements;  // sorted, closed downward
};

/// A d-dimensional array of side n, stored in lexicographic index order,
/// whose entries lie in {0,...,n} and weakly decrease along every axis.
struct HDPartition {
    int d = 0;
    int n = 0;
    std::vector<int> entries;

    bool is_valid() const;
    friend bool operator==(const HDPartition&, const HDPartition&) = default;
};

bool is_antichain(const std::vector<Point>& points);
bool is_downset(const GridBox& box, const std::vector<Point>& points);

/// Per-point masks of every other point comparable to it. Requires at most
/// 64 points.
std::vector<PointMask> comparability_masks(const GridBox& box);

BigCount count_antichains(const GridBox& box, const Limits& limits = {});
BigCount count_downsets(const GridBox& box, const Limits& limits = {});

/// Calls `visit` once per antichain (including the empty one), as a mask.
void for_each_antichain(const GridBox& box, const std::function<void(PointMask)>& visit,
                        const Limits& limits = {});

/// All down-sets as masks, in an unspecified but deterministic order.
std::vector<PointMask> enumerate_downset_masks(const GridBox& box, const Limits& limits = {});

std::vector<Point> mask_to_points(const GridBox& box, PointMask mask);
PointMask points_to_mask(const GridBox& box, const std::vector<Point>& points);

DownSet antichain_to_downset(const GridBox& box, const Antichain& antichain);
Antichain downset_to_antichain(const DownSet& downset);

/// Reads a down-set of the side-n box in d+1 dimensions as a d-dimensional
/// partition: entry = 1 + largest last coordinate in the fiber, 0 if empty.
HDPartition downset_to_partition(const GridBox& box, const DownSet& downset);
DownSet partition_to_downset(const HDPartition& partition);

/// MacMahon's product over 1 <= i,j,k <= n of (i+j+k-1)/(i+j+k-2).
BigCount macmahon_p2(int n);

/// C(2n, n).
BigCount binomial_p1(int n);

/// P_d(n), the number of down-sets of {0..n-1}^{d+1}.
BigCount partition_count(int d, int n, const Limits& limits = {});

BigCount max_antichain_size(const GridBox& box, const Limits& limits = {});

/// N_3(d+1, n) = P_d(n) + 1.
BigCount erdos_szekeres_n3(int d, int n, const Limits& limits = {});

}  // namespace gridposet
