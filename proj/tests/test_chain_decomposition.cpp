#include <doctest.h>

#include "gridposet/chain_decomposition.hpp"

using namespace gridposet;

TEST_CASE("level plans")
{
    // {0,1}^4: levels 0,1 full, level 2 scaled (2i > (n-1)(D-1)), level 3 mirrored.
    const ChainSampler s(GridBox(2, 4));
    REQUIRE(s.levels().size() == 4);
    const auto& p = s.levels();
    CHECK(p[0].plan.regime == Regime::full);
    CHECK(p[1].plan.regime == Regime::full);
    CHECK(p[2].plan.regime == Regime::scaled);
    CHECK(p[2].plan.theta == Rational(1, 3));
    CHECK(p[2].plan.target_size == 2);
    CHECK(p[3].plan.mirrored);
    CHECK(p[3].plan.reference_level == 0);
    CHECK(p[3].plan.regime == Regime::full);
    CHECK(s.in_theorem_scope());
    CHECK(to_string(Regime::scaled) == "scaled");
}

TEST_CASE("level fractions")
{
    const LevelFraction a = build_level_fraction(build_level_graph(GridBox(2, 3), 0));
    CHECK(a.fraction.values == std::vector<Rational>(3, Rational(1, 3)));
    CHECK(a.fraction.mass == 1);
    const LevelFraction b = build_level_fraction(build_level_graph(GridBox(3, 2), 0));
    CHECK(b.fraction.values == std::vector<Rational>(2, Rational(1, 2)));
    CHECK(b.fraction.mass == 1);
}

TEST_CASE("full levels have unit row sums, scaled theta is in range")
{
    for (int n = 2; n <= 3; ++n)
        for (int D = 4; D <= 6; ++D) {
            const GridBox box(n, D);
            for (int i = 0; i < box.max_rank(); ++i) {
                const LevelGraph g = build_level_graph(box, i);
                const LevelFraction lf = build_level_fraction(g);
                if (lf.plan.regime == Regime::scaled) {
                    CHECK(lf.plan.theta <= Rational(D - 3, D - 1));
                    CHECK(lf.plan.theta >= Rational(D - 3, D));
                    CHECK(lf.plan.theta * Rational(lf.plan.reference_size) == Rational(lf.plan.target_size));
                    continue;
                }
                const std::size_t side = lf.plan.mirrored ? g.upper().size() : g.lower().size();
                std::vector<Rational> sums(side, 0);
                for (std::size_t e = 0; e < g.edges().size(); ++e)
                    sums[lf.plan.mirrored ? g.edges()[e].upper : g.edges()[e].lower] += lf.fraction.values[e];
                for (const auto& s : sums)
                    CHECK(s == 1);
            }
        }
}

TEST_CASE("marginal sum bounds")
{
    for (int n = 1; n <= 4; ++n)
        for (int D = 1; D <= 6; ++D) {
            const GridBox box(n, D);
            for (int i = 0; i < box.max_rank(); ++i) {
                const LevelGraph g = build_level_graph(box, i);
                const auto check = check_marginal_sum_bound(g, build_level_fraction(g));
                CAPTURE(n);
                CAPTURE(D);
                CAPTURE(i);
                CHECK(check.ok);
                if (!check.in_scope)
                    CHECK(D <= 3);
            }
        }
    // n = 3, D = 4 middle level: bound (D-1)/(D-3) = 3.
    const LevelGraph mid = build_level_graph(GridBox(3, 4), 3);
    const auto check = check_marginal_sum_bound(mid, build_level_fraction(mid));
    CHECK(check.bound == 3);
    CHECK(check.ok);
}

TEST_CASE("forced decompositions")
{
    const ChainSampler one(GridBox(1, 3));
    CHECK(one.sample(5).chain_count() == 1);
    const ChainSampler line(GridBox(2, 1));
    const auto cd = line.sample(9);
    REQUIRE(cd.chain_count() == 1);
    CHECK(cd.chains[0] == std::vector<std::uint64_t>{0, 1});
    CHECK(check_chain_count_bound(cd));
    CHECK(chain_count_bound(GridBox(2, 1)) == 7);
}

TEST_CASE("chain count bound values")
{
    CHECK(chain_count_bound(GridBox(2, 4)) == 15);
    CHECK(chain_count_bound(GridBox(3, 6)) == Rational(5, 2) * 141);
}

TEST_CASE("per-sample invariants")
{
    for (auto [n, D] : {std::pair{2, 4}, {2, 5}, {3, 4}, {2, 3}, {3, 3}, {4, 2}}) {
        const ChainSampler s(GridBox(n, D));
        for (std::uint64_t t = 0; t < 50; ++t) {
            const auto cd = s.sample(derive_seed(77, t));
            const auto audit = audit_chain_decomposition(s, cd);
            CAPTURE(n);
            CAPTURE(D);
            CAPTURE(audit.witness);
            CHECK(audit.partitions);
            CHECK(audit.consecutive);
            CHECK(audit.count_bound);
            CHECK(audit.saturation);
            CHECK(audit.scaled_size);
            CHECK(audit.window);
        }
    }
}

TEST_CASE("sampling is reproducible")
{
    const ChainSampler s(GridBox(3, 4));
    CHECK(s.sample(123).chains == s.sample(123).chains);
    CHECK(export_chains(s.sample(123)) == export_chains(ChainSampler(GridBox(3, 4)).sample(123)));
    bool differs = false;
    for (std::uint64_t seed = 0; seed < 20 && !differs; ++seed)
        differs = s.sample(seed).chains != s.sample(seed + 1000).chains;
    CHECK(differs);
}

TEST_CASE("out of scope boxes are flagged")
{
    CHECK_FALSE(ChainSampler(GridBox(2, 2)).in_theorem_scope());
    CHECK(ChainSampler(GridBox(2, 3)).in_theorem_scope());
    CHECK_FALSE(ChainSampler(GridBox(3, 3)).sample(1).in_theorem_scope);
    CHECK(ChainSampler(GridBox(2, 4)).in_theorem_scope());
}

TEST_CASE("pair probabilities")
{
    const ChainSampler line(GridBox(2, 1));
    const auto forced = estimate_pair_probability(line, Point{0}, Point{1}, 20, 3);
    CHECK(forced.frequency == 1);
    CHECK(forced.bound == 2);

    const ChainSampler s(GridBox(2, 4));
    const auto none = estimate_pair_probability(s, Point{1, 0, 0, 0}, Point{0, 1, 0, 0}, 100, 3);
    CHECK(none.hits == 0);

    const auto est = estimate_pair_probability(s, Point{0, 0, 0, 0}, Point{1, 1, 0, 0}, 10000, 11);
    CHECK(est.gap == 2);
    CHECK(est.bound == Rational(1, 2));
    CHECK(est.frequency.get_d() <= est.bound.get_d() + 4 * est.standard_error);
}

TEST_CASE("chain export format")
{
    const auto cd = ChainSampler(GridBox(2, 1)).sample(4);
    CHECK(export_chains(cd) == "# box n=2 D=1\n# seed 4\n# chains 1\n# bound 7\n0 1\n");
}
