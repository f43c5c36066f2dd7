#include <doctest.h>

#include "gridposet/supersaturation.hpp"

using namespace gridposet;

TEST_CASE("pair counts")
{
    std::vector<Point> chain;
    for (int t = 0; t <= 5; ++t)
        chain.push_back(Point{t});
    CHECK(count_comparable_pairs_with_gap(chain, 1) == 15);
    CHECK(count_comparable_pairs_with_gap(chain, 2) == 10);
    CHECK(count_comparable_pairs_with_gap(enumerate_level(GridBox(2, 4), 2), 1) == 0);
    CHECK(count_comparable_pairs_with_gap(enumerate_box(GridBox(2, 2)), 1) == 5);
    CHECK(count_comparable_pairs_with_gap(enumerate_box(GridBox(2, 4)), 1) == 65);
    std::vector<Point> dup{{0, 0}, {0, 0}, {1, 1}};
    CHECK(count_comparable_pairs_with_gap(dup, 1) == 1);
    CHECK(count_comparable_pairs_with_gap({}, 1) == 0);
}

TEST_CASE("whole {0,1}^4 with a = 1")
{
    const GridBox box(2, 4);
    CHECK(supersaturation_threshold(box, 1) == 15);
    const auto r = check_supersaturation(box, enumerate_box(box), 1);
    CHECK(r.slack == 1);
    CHECK(r.bound == 2);
    CHECK(r.observed_pairs == 65);
    CHECK(r.premise_active());
    CHECK(r.satisfied());
    CHECK(to_csv_row(r) == "2,4,1,16,1,2,65,true");
    CHECK(csv_header() == "n,D,a,size,b,bound,observed,pass");
}

TEST_CASE("middle layer is vacuous")
{
    const GridBox box(2, 4);
    const auto r = check_supersaturation(box, enumerate_level(box, 2), 1);
    CHECK_FALSE(r.premise_active());
    CHECK(r.satisfied());
    CHECK(r.slack == 0);
    CHECK(r.raw_slack < 0);
    CHECK_THROWS(check_supersaturation(box, {}, 0));
}

TEST_CASE("monotone in the set, antitone in the gap")
{
    const GridBox box(3, 3);
    Rng rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        auto X = random_subset(box, 1 + uniform_below(std::uint64_t{26}, rng), rng);
        BigCount prev = count_comparable_pairs_with_gap(X, 1);
        for (int a = 2; a <= 6; ++a) {
            const BigCount cur = count_comparable_pairs_with_gap(X, a);
            CHECK(cur <= prev);
            prev = cur;
        }
        const BigCount before = count_comparable_pairs_with_gap(X, 1);
        X.push_back(box.point_at(uniform_below(std::uint64_t{27}, rng)));
        CHECK(count_comparable_pairs_with_gap(X, 1) >= before);
    }
}

TEST_CASE("gap counts against brute force")
{
    const GridBox box(3, 3);
    Rng rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        const auto X = random_subset(box, 1 + uniform_below(std::uint64_t{27}, rng), rng);
        for (int a = 1; a <= 4; ++a) {
            long brute = 0;
            for (const auto& x : X)
                for (const auto& y : X)
                    brute += strictly_below(x, y) && rank(y) - rank(x) >= a;
            CHECK(count_comparable_pairs_with_gap(X, a) == brute);
        }
    }
}

TEST_CASE("random subsets")
{
    const GridBox box(3, 3);
    Rng rng(1);
    const auto X = random_subset(box, 10, rng);
    CHECK(X.size() == 10);
    CHECK(std::is_sorted(X.begin(), X.end()));
    CHECK(std::adjacent_find(X.begin(), X.end()) == X.end());
    CHECK(random_subset(box, 27, rng).size() == 27);
    CHECK_THROWS(random_subset(box, 28, rng));
}

TEST_CASE("audits")
{
    const auto small = exhaustive_supersaturation_audit(GridBox(2, 3), {1, 2, 3}, true);
    CHECK(small.sets_checked == 256);
    CHECK(small.reports.size() == 256 * 3);
    CHECK(small.violations == 0);

    const auto rnd = random_supersaturation_audit(GridBox(3, 4), {1, 2}, 40, 9);
    CHECK(rnd.sets_checked == 40);
    CHECK(rnd.active_checks == 40);
    CHECK(rnd.violations == 0);
    const auto again = random_supersaturation_audit(GridBox(3, 4), {1, 2}, 40, 9);
    REQUIRE(again.reports.size() == rnd.reports.size());
    for (std::size_t k = 0; k < rnd.reports.size(); ++k)
        CHECK(to_csv_row(again.reports[k]) == to_csv_row(rnd.reports[k]));

    CHECK_THROWS_AS(exhaustive_supersaturation_audit(GridBox(3, 3), {1}), CapExceeded);
}
