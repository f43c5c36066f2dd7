#include <doctest.h>

#include "gridposet/containers.hpp"
#include "gridposet/exact_counting.hpp"

using namespace gridposet;

namespace {

ContainerParams one_round(const GridBox& box, const Rational& d, long m)
{
    ContainerParams p;
    p.degree_thresholds = {d};
    p.size_thresholds = {Rational(box.total_points()), Rational(m)};
    return p;
}

// Every antichain is inside a container, and the family respects the
// family-size and container-size bounds.
void check_family(const GridBox& box, const ContainerParams& params)
{
    const ContainerFamily fam = build_containers(box, params);
    CHECK(fam.premise.ok);
    const ComparabilityGraph graph(box);
    BigCount antichains = 0;
    for_each_antichain(box, [&](PointMask m) {
        ++antichains;
        const PointBits bits(graph.size(), m);
        REQUIRE(fam.covers(bits));
        const ContainerTrace trace = container_for(graph, params, bits);
        CHECK(bits.is_subset_of(trace.container));
        CHECK(std::binary_search(fam.containers.begin(), fam.containers.end(), trace.container));
        for (std::size_t r = 0; r < trace.fingerprint.size(); ++r) {
            for (auto v : trace.fingerprint[r])
                CHECK(bits.test(v));
            CHECK(trace.fingerprint[r].size() <= fam.max_fingerprint[r]);
        }
    });
    CHECK(antichains == count_antichains(box));

    const LemmaBounds b = lemma_bounds(box, params);
    REQUIRE(b.family_bound_exact);
    CHECK(BigCount(static_cast<unsigned long>(fam.containers.size())) <= b.family_size_bound);
    for (std::size_t r = 0; r < fam.max_fingerprint.size(); ++r)
        CHECK(BigCount(static_cast<unsigned long>(fam.max_fingerprint[r])) <= b.fingerprint_limits[r]);
    CHECK(Rational(static_cast<unsigned long>(fam.largest_container())) <= b.derived_container_size_bound);
}

}  // namespace

TEST_CASE("rounded square roots")
{
    CHECK(sqrt_lower(4) == 2);
    CHECK(sqrt_lower(2) == Rational(1414213, 1000000));
    CHECK(inverse_sqrt_upper(4) == Rational(1, 2));
    CHECK(inverse_sqrt_upper(2) == Rational(707107, 1000000));
    for (int D = 1; D <= 50; ++D) {
        CHECK(sqrt_lower(D) * sqrt_lower(D) <= D);
        CHECK(inverse_sqrt_upper(D) * inverse_sqrt_upper(D) * D >= 1);
    }
}

TEST_CASE("standard parameters")
{
    const GridBox box(2, 4);
    const ContainerParams p = ContainerParams::standard(box);
    REQUIRE(p.rounds() == 2);
    CHECK(p.degree_thresholds[0] == 1);
    CHECK(p.degree_thresholds[1] == Rational(1, 2));
    CHECK(p.size_thresholds[0] == 16);
    CHECK(p.size_thresholds[1] == 30);
    CHECK(p.size_thresholds[2] == 18);
    CHECK_FALSE(p.ordering_as_stated());
    CHECK_NOTHROW(p.validate(box));
    CHECK_THROWS_AS(p.validate(GridBox(2, 3)), std::invalid_argument);

    ContainerParams bad = p;
    bad.degree_thresholds[0] = 0;
    CHECK_THROWS_AS(bad.validate(box), std::invalid_argument);
    bad = p;
    bad.size_thresholds.pop_back();
    CHECK_THROWS_AS(bad.validate(box), std::invalid_argument);
}

TEST_CASE("trivial parameters give the whole box")
{
    const GridBox box(2, 3);
    const ContainerFamily fam = build_containers(box, ContainerParams::trivial(box));
    REQUIRE(fam.containers.size() == 1);
    CHECK(fam.containers[0].count() == 8);
    CHECK(fam.premise.status == PremiseStatus::vacuous);
}

TEST_CASE("comparability graph")
{
    const ComparabilityGraph g(GridBox(2, 2));
    CHECK(g.size() == 4);
    PointBits all(4);
    all.set();
    CHECK(g.edges_within(all) == 5);
    CHECK(g.neighbours(0).count() == 3);
    CHECK_THROWS_AS(ComparabilityGraph(GridBox(3, 9)), CapExceeded);
}

TEST_CASE("standard parameters cover every antichain")
{
    check_family(GridBox(2, 3), ContainerParams::standard(GridBox(2, 3)));
    check_family(GridBox(2, 4), ContainerParams::standard(GridBox(2, 4)));
}

TEST_CASE("non-degenerate rounds")
{
    const GridBox b24(2, 4);
    const ContainerParams p = one_round(b24, Rational(1, 2), 7);
    const PremiseAudit audit = audit_container_premises(b24, p);
    CHECK(audit.status == PremiseStatus::exhaustive);
    CHECK(audit.ok);
    CHECK(audit.sets_checked > 0);
    check_family(b24, p);

    check_family(GridBox(2, 3), one_round(GridBox(2, 3), Rational(1, 2), 3));
    check_family(GridBox(3, 2), one_round(GridBox(3, 2), Rational(1, 2), 3));

    ContainerParams two;
    two.degree_thresholds = {1, Rational(1, 2)};
    two.size_thresholds = {16, 11, 7};
    if (audit_container_premises(b24, two).ok)
        check_family(b24, two);
}

TEST_CASE("premise failures are reported")
{
    const GridBox box(2, 4);
    // Six points of the middle layer have no comparable pairs at all.
    const ContainerParams p = one_round(box, Rational(1, 2), 5);
    const PremiseAudit audit = audit_container_premises(box, p);
    CHECK_FALSE(audit.ok);
    CHECK_FALSE(audit.witness.empty());
    CHECK_THROWS_AS(build_containers(box, p), InvariantViolation);
}

TEST_CASE("randomized premise audit beyond exhaustive range")
{
    const GridBox box(3, 3);
    const PremiseAudit audit = audit_container_premises(box, one_round(box, Rational(1, 2), 20), 3, 50);
    CHECK(audit.status == PremiseStatus::audited);
    CHECK(audit.sets_checked == 50);
    CHECK(audit.ok);
}

TEST_CASE("families are deterministic")
{
    const GridBox box(2, 4);
    const ContainerParams p = one_round(box, Rational(1, 2), 7);
    CHECK(build_containers(box, p).containers == build_containers(box, p).containers);
}

TEST_CASE("binomial sums")
{
    const auto a = binomial_sum_bound(4, 1);
    CHECK(a.exact == 5);
    CHECK(abs(a.estimate - Decimal("10.873127313836")) < Decimal("1e-9"));
    CHECK(a.holds);
    const auto b = binomial_sum_bound(10, 2);
    CHECK(b.exact == 56);
    CHECK(abs(b.estimate - Decimal("184.7264024732663")) < Decimal("1e-9"));
    for (int m = 1; m <= 30; ++m) {
        const auto full = binomial_sum_bound(m, m);
        CHECK(full.exact == power(2, static_cast<unsigned long>(m)));
        CHECK(full.holds);
        for (int t = 1; t <= m; ++t)
            CHECK(binomial_sum_bound(m, t).holds);
    }
    CHECK_THROWS_AS(binomial_sum_bound(4, 0), std::out_of_range);
    CHECK_THROWS_AS(binomial_sum_bound(4, 5), std::out_of_range);
}

TEST_CASE("lemma bounds")
{
    const GridBox box(2, 4);
    const LemmaBounds b = lemma_bounds(box, one_round(box, Rational(1, 2), 7));
    CHECK(b.pool_sizes == std::vector<BigCount>{16});
    CHECK(b.fingerprint_limits == std::vector<BigCount>{8});
    CHECK(b.family_size_bound == 39203);  // sum_{s<=8} C(16, s)
    CHECK(b.stated_container_size_bound == 10);
    CHECK(b.derived_container_size_bound == 15);
}

TEST_CASE("certified upper bounds")
{
    for (auto [n, D] : {std::pair{2, 3}, {2, 4}, {2, 5}, {3, 3}}) {
        const GridBox box(n, D);
        const BoundReport r = certified_upper_bound(box);
        CHECK(r.consistent());
        REQUIRE(r.exact_log2);
        CHECK(r.certified_log2_upper >= *r.exact_log2);
        CHECK(r.certified_log2_upper >= to_decimal(r.middle_layer));
    }
    const BoundReport r = certified_upper_bound(GridBox(2, 4));
    CHECK(*r.exact_count == 168);
    CHECK(certified_upper_bound(GridBox(2, 5)).certified_log2_upper >= log2_of(BigCount(7581)));

    // Past the enumeration limit only the N_{n,D} side is available.
    const BoundReport big = certified_upper_bound(GridBox(3, 6));
    CHECK_FALSE(big.exact_count);
    CHECK(big.consistent());
}
