#pragma once

// Graph containers for antichains of the box (independent sets of its
// comparability graph), built with the Kleitman-Winston max-degree
// procedure, and the resulting certified upper bound on log2 of the
// antichain count.
//
// For an antichain I the procedure runs rounds r = 1..k on a candidate set S
// (initially the whole box). While |S| > m_r it takes the vertex v of maximum
// degree in the comparability graph induced on S (ties to the smallest point
// index). If v is in I it joins the fingerprint T and v together with its
// neighbours leaves S; otherwise only v leaves S. The container is T ∪ S.
// Every decision depends only on T, so exploring both outcomes of each
// decision yields the whole family without reference to any antichain.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "gridposet/common.hpp"
#include "gridposet/decimal.hpp"
#include "gridposet/grid_poset.hpp"

namespace gridposet {

using PointBits = boost::dynamic_bitset<>;

/// Fixed-point scale for the irrational sqrt(D) terms.
inline constexpr long kSqrtScale = 1'000'000;

/// floor(sqrt(D) * Q) / Q, a lower bound on sqrt(D).
Rational sqrt_lower(int D);
/// ceil(Q / sqrt(D)) / Q, an upper bound on 1/sqrt(D).
Rational inverse_sqrt_upper(int D);

struct ContainerParams {
    std::vector<Rational> degree_thresholds;  // d_1, ..., d_k
    std::vector<Rational> size_thresholds;    // m_0, ..., m_k

    std::size_t rounds() const noexcept { return degree_thresholds.size(); }

    /// Throws std::invalid_argument unless there is one more size than degree
    /// threshold, every d_r > 0, and m_0 equals the box size.
    void validate(const GridBox& box) const;

    /// d_1 > ... > d_k and m_0 > ... > m_k, as the size analysis assumes. Desk-scale
    /// boxes often violate the size ordering (m_1 > m_0), which makes the
    /// affected rounds no-ops.
    bool ordering_as_stated() const;

    /// d_1 = D/(2n), d_2 = sqrt(D)/(2n), m_0 = n^D, m_1 = N(2 + 6n/D),
    /// m_2 = N(1 + 3n/D + 1/sqrt(D)); sqrt(D) rounded down in d_2 and
    /// 1/sqrt(D) rounded up in m_2.
    static ContainerParams standard(const GridBox& box);

    /// k = 0: the single container is the whole box.
    static ContainerParams trivial(const GridBox& box);
};

class ComparabilityGraph {
public:
    explicit ComparabilityGraph(const GridBox& box, std::uint64_t cap = 4096);

    const GridBox& box() const noexcept { return box_; }
    std::size_t size() const noexcept { return adjacency_.size(); }
    const PointBits& neighbours(std::size_t v) const { return adjacency_[v]; }

    /// Comparable pairs inside S.
    std::uint64_t edges_within(const PointBits& S) const;

private:
    GridBox box_;
    std::vector<PointBits> adjacency_;
};

enum class PremiseStatus { vacuous, exhaustive, audited };

std::string to_string(PremiseStatus s);

struct PremiseAudit {
    PremiseStatus status = PremiseStatus::vacuous;
    bool ok = true;
    std::uint64_t sets_checked = 0;
    std::string witness;  // (round, set) that failed
};

/// "Every S with |S| > m_j has at least d_j |S| comparable pairs" for each
/// round j, exhaustively when the box has at most `exhaustive_up_to`
/// points, otherwise on `samples` random sets per round.
PremiseAudit audit_container_premises(const GridBox& box, const ContainerParams& params, std::uint64_t seed = 0,
                                      std::uint64_t samples = 200, std::uint64_t exhaustive_up_to = 16);

struct ContainerTrace {
    PointBits container;
    std::vector<std::vector<std::size_t>> fingerprint;  // T_r per round, point indices
};

/// Runs the procedure for one antichain.
ContainerTrace container_for(const ComparabilityGraph& graph, const ContainerParams& params,
                             const PointBits& antichain);

struct ContainerFamily {
    GridBox box{1, 1};
    ContainerParams params;
    std::vector<PointBits> containers;  // distinct, sorted
    std::vector<std::size_t> max_fingerprint;  // largest |T_r| seen per round
    PremiseAudit premise;

    bool covers(const PointBits& antichain) const;
    std::size_t largest_container() const;
};

/// Throws InvariantViolation if the premise audit finds a counterexample and
/// CapExceeded if the family grows beyond limits.objects.
ContainerFamily build_containers(const GridBox& box, const ContainerParams& params, const Limits& limits = {});

struct BinomialSumBound {
    BigCount exact;     // sum_{s <= t} C(m, s)
    Decimal estimate;   // (e m / t)^t
    bool holds = true;  // exact <= estimate
};

/// Requires 1 <= t <= m.
BinomialSumBound binomial_sum_bound(const BigCount& m, const BigCount& t);

struct LemmaBounds {
    std::vector<BigCount> fingerprint_limits;  // floor(m'_{r-1} / (2 d_r + 1))
    std::vector<BigCount> pool_sizes;          // m'_{r-1} = min(floor(m_{r-1}), |P|)
    BigCount family_size_bound;                // prod_r sum_{s <= limit} C(pool, s), when exact
    Decimal log2_family_size_bound;
    bool family_bound_exact = true;            // false: log2 from (e m/t)^t
    Rational stated_container_size_bound;      // m_k + sum_r (m_r - 1)/(2 d_r + 1)
    Rational derived_container_size_bound;     // min(|P|, m_k + sum_r fingerprint_limits[r])
};

/// Family-size and container-size bounds. Exact binomial sums are used while the
/// pool has at most `exact_pool_limit` elements.
LemmaBounds lemma_bounds(const GridBox& box, const ContainerParams& params,
                         std::uint64_t exact_pool_limit = 20'000);

struct BoundReport {
    GridBox box{1, 1};
    BigCount middle_layer;
    LemmaBounds lemma;
    PremiseAudit premise;
    bool ordering_as_stated = false;
    Decimal log2_container_count_bound;
    Rational max_container_size_bound;
    Decimal certified_log2_upper;
    std::optional<BigCount> exact_count;
    std::optional<Decimal> exact_log2;

    /// 2^certified >= exact count (when known) and >= 2^N, checked in exact
    /// integer arithmetic when the family bound is exact.
    bool consistent() const;
};

/// Standard parameters. The premise audit runs (32 random sets per round past
/// the exhaustive range) while the box fits limits.materialize.
BoundReport certified_upper_bound(const GridBox& box, const Limits& limits = {});

/// Points of a bit set, for dumps.
std::vector<Point> bits_to_points(const GridBox& box, const PointBits& bits);

}  // namespace gridposet
