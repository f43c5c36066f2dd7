#pragma once

// Random chain decompositions of the box: one fractional matching per pair
// of consecutive levels, each decomposed exactly and sampled independently,
// then unioned into chains.
//
// Levels i with 2i <= (n-1)D use f(v,u) = w_vu / deg(v). Levels above the
// middle are handled through the reflection x -> (n-1) - x, which maps G_i
// onto G_{(n-1)D-1-i} with edge weights preserved and turns deg(v) into
// deg(u); there f(v,u) = w_vu / deg(u). In both cases the "reference" index
// r = min(i, (n-1)D-1-i) decides the regime: full when 2r <= (n-1)(D-1),
// otherwise scaled by theta = floor(|V_r'| (D-3)/(D-1)) / |V_r'|, where V_r'
// is the level on the reference side.

#include <cstdint>
#include <string>
#include <vector>

#include "gridposet/common.hpp"
#include "gridposet/grid_poset.hpp"
#include "gridposet/level_graphs.hpp"
#include "gridposet/matching_decomposition.hpp"

namespace gridposet {

enum class Regime {
    full,      // the matching saturates the reference side
    scaled,    // mass theta * |reference side|, theta >= 1 - 3/D
    fallback,  // D <= 3 near the middle: one maximum matching, outside the theorem
};

std::string to_string(Regime r);

struct LevelPlan {
    int level = 0;            // lower level i of G_i
    int reference_level = 0;  // i, or (n-1)D-1-i when mirrored
    bool mirrored = false;
    Regime regime = Regime::full;
    Rational theta = 1;
    BigCount reference_size;  // |V_i|, or |V_{i+1}| when mirrored
    BigCount target_size;     // m

    bool in_theorem_scope() const noexcept { return regime != Regime::fallback; }
};

struct LevelFraction {
    LevelPlan plan;
    BipartiteGraph graph;          // lower = left, upper = right, edges in LevelGraph order
    FractionalMatching fraction;   // what gets decomposed
    std::vector<Rational> unscaled;  // w / deg before theta (absent for fallback)
};

/// Throws InfeasibleFractionalMatching if the constructed f leaves the
/// matching polytope.
LevelFraction build_level_fraction(const LevelGraph& g);

struct MarginalBoundCheck {
    bool ok = true;
    bool in_scope = true;  // false when the bound is undefined (D <= 3, delta < n-1)
    Rational worst_sum = 0;
    Rational bound = 1;
    std::string witness;
};

/// Far-side sums of the unscaled f: <= 1 when delta >= n-1 and
/// <= (D-1)/(D-3) otherwise, with delta taken at the reference level.
MarginalBoundCheck check_marginal_sum_bound(const LevelGraph& g, const LevelFraction& lf);

struct ChainDecomposition {
    GridBox box{1, 1};
    std::uint64_t seed = 0;
    // Point indices, bottom-up; chains sorted by minimal element.
    std::vector<std::vector<std::uint64_t>> chains;
    std::vector<std::size_t> matching_sizes;  // |M_i| per level
    bool in_theorem_scope = true;

    std::size_t chain_count() const noexcept { return chains.size(); }
};

/// (1 + 3n/D) * N_{n,D}.
Rational chain_count_bound(const GridBox& box);

bool check_chain_count_bound(const ChainDecomposition& cd);

struct LevelState {
    LevelPlan plan;
    LevelGraph graph;
    LevelFraction fraction;
    MatchingDistribution distribution;
    AtomSampler sampler;
    std::vector<std::uint64_t> lower_ids;
    std::vector<std::uint64_t> upper_ids;
};

/// Per-box precomputation: every level's fraction and distribution is built
/// once, then each sample costs one atom draw per level.
class ChainSampler {
public:
    explicit ChainSampler(const GridBox& box, const Limits& limits = {});

    const GridBox& box() const noexcept { return box_; }
    const std::vector<LevelState>& levels() const noexcept { return levels_; }
    bool in_theorem_scope() const noexcept { return in_scope_; }
    std::uint64_t point_count() const noexcept { return points_; }

    ChainDecomposition sample(std::uint64_t seed) const;

    /// up[x] = index matched to x one level higher, or -1.
    std::vector<std::int64_t> sample_successors(std::uint64_t seed,
                                                std::vector<std::size_t>* matching_sizes = nullptr) const;

private:
    GridBox box_;
    std::uint64_t points_;
    std::vector<LevelState> levels_;
    bool in_scope_ = true;
};

struct ChainAudit {
    bool partitions = true;        // disjoint, covering every point
    bool consecutive = true;       // cover pairs, rank step 1
    bool count_bound = true;       // N <= (1 + 3n/D) N_{n,D}
    bool saturation = true;        // full levels cover the reference side
    bool scaled_size = true;       // scaled levels have |M| >= (1 - 3/D)|ref|
    bool window = true;            // closest-to-middle element inside the window
    std::string witness;

    bool ok() const noexcept
    {
        return partitions && consecutive && count_bound && saturation && scaled_size && window;
    }
};

/// Per-sample invariants. The window check asserts that every chain's element
/// nearest V_k has rank in [k - (n-1)/2, k + (n+1)/2]; it is skipped outside
/// theorem scope.
ChainAudit audit_chain_decomposition(const ChainSampler& sampler, const ChainDecomposition& cd);

struct PairProbabilityEstimate {
    std::uint64_t trials = 0;
    std::uint64_t hits = 0;
    Rational frequency = 0;
    int gap = 0;                // a = rank(y) - rank(x)
    Rational bound = 0;         // a! (n/D)^a
    double standard_error = 0;  // sqrt(p(1-p)/trials) at p = min(1, bound)
};

/// Fraction of `trials` decompositions (trial t seeded derive_seed(seed, t))
/// in which x and y share a chain.
PairProbabilityEstimate estimate_pair_probability(const ChainSampler& sampler, const Point& x, const Point& y,
                                                  std::uint64_t trials, std::uint64_t seed);

/// Header lines "# box", "# seed", "# chains N", "# bound p/q", then one
/// chain per line as space-separated points "0,0,1".
std::string export_chains(const ChainDecomposition& cd);

}  // namespace gridposet
