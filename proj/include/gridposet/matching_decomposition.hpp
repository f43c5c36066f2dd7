#pragma once

// Exact decomposition of a fractional matching of integral total mass m into
// a probability distribution over matchings of size exactly m whose edge
// marginals reproduce the fractional values.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gridposet/common.hpp"
#include "gridposet/seeding.hpp"

namespace gridposet {

/// Bipartite multigraph; edges are (left, right) pairs and parallel edges are
/// distinct.
struct BipartiteGraph {
    std::size_t left_count = 0;
    std::size_t right_count = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
};

struct FractionalMatching {
    std::vector<Rational> values;  // one per edge, in [0, 1]
    BigCount mass;                 // required total, an integer m
};

struct PolytopeCheck {
    bool ok = true;
    std::string witness;  // first violated constraint, empty when ok

    explicit operator bool() const noexcept { return ok; }
};

class InfeasibleFractionalMatching : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct MatchingAtom {
    std::vector<std::size_t> edges;  // sorted edge indices
    Rational probability;
};

struct MatchingDistribution {
    std::size_t matching_size = 0;
    std::vector<MatchingAtom> atoms;  // sorted by edge list
};

/// Checks 0 <= f <= 1, per-vertex sums <= 1 on both sides and total == m.
PolytopeCheck validate_fractional_matching(const BipartiteGraph& g, const FractionalMatching& f);

/// Throws InfeasibleFractionalMatching if validation fails. Produces at most
/// |E| atoms (|E| + 1 counting the empty-graph case).
MatchingDistribution decompose(const BipartiteGraph& g, const FractionalMatching& f);

/// Sum of atom probabilities containing each edge.
std::vector<Rational> marginals(const BipartiteGraph& g, const MatchingDistribution& dist);

/// Exact audit of a decomposition against its input: probabilities positive
/// and summing to 1, every atom a matching of size m, at most |E| + 1 atoms,
/// marginals equal to f.
PolytopeCheck verify_decomposition(const BipartiteGraph& g, const FractionalMatching& f,
                                   const MatchingDistribution& dist);

/// Draws atoms with their exact probabilities: a uniform integer below the
/// common denominator selects an atom by cumulative numerators.
class AtomSampler {
public:
    explicit AtomSampler(const MatchingDistribution& dist);

    std::size_t draw(Rng& rng) const;

private:
    mpz_class denominator_;
    std::vector<mpz_class> cumulative_;
};

/// One atom's edge list, drawn with Rng seeded by `seed`.
const std::vector<std::size_t>& sample(const MatchingDistribution& dist, std::uint64_t seed);

/// Deterministic maximum-cardinality matching (sorted edge indices).
std::vector<std::size_t> maximum_matching(const BipartiteGraph& g);

/// Text record: "matching_size m", "atoms k", then one line per atom,
/// "p/q e1 e2 ...".
std::string export_distribution(const MatchingDistribution& dist);

}  // namespace gridposet
