#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pareto_judge/indicators.hpp"

using namespace pareto_judge;
using oracle::point;
using oracle::to_set;

TEST_CASE("indicator names")
{
    CHECK(indicator_name(Indicator::HV) == "HV");
    CHECK(parse_indicator("ndr") == Indicator::NDR);
    CHECK(parse_indicator("Sdr") == Indicator::SDR);
    CHECK_FALSE(parse_indicator("igd").has_value());
}

TEST_CASE("generational distance")
{
    const auto front = to_set({{0.1, 0.2}, {0.3, 0.4}});
    CHECK(generational_distance(front, front) == 0.0);
    CHECK(generational_distance(to_set({{0, 0}, {3, 4}}), to_set({{0, 0}})) == 2.5);
    CHECK(generational_distance(front, to_set({{0.5, 0.5}})) == euclidean_distance(front, point({0.5, 0.5})));
    CHECK_THROWS_AS(generational_distance(front, to_set({{1, 2, 3}})), DimensionMismatch);
}

TEST_CASE("euclidean distance")
{
    const auto ref = point({0.5, 0.5});
    CHECK(euclidean_distance(SolutionSetd::single("f", ref), ref) == 0.0);
    const auto front = to_set({{0.5, 0.5}, {0.7, 0.7}});
    CHECK(euclidean_distance(front, ref) == doctest::Approx(0.2 * std::sqrt(2.0) / 2.0).epsilon(1e-12));
    CHECK(euclidean_distance(front, ref) == doctest::Approx(0.14142).epsilon(1e-5));

    const auto shifted = to_set({{1.5, -2.5}, {1.7, -2.3}});
    CHECK(euclidean_distance(shifted, point({1.5, -2.5})) == doctest::Approx(euclidean_distance(front, ref)).epsilon(1e-12));
}

TEST_CASE("generational distance is zero exactly when front points coincide with references")
{
    const auto refs = to_set({{0.1, 0.9}, {0.5, 0.5}, {0.9, 0.1}});
    CHECK(generational_distance(to_set({{0.5, 0.5}, {0.1, 0.9}}), refs) == 0.0);
    CHECK(generational_distance(to_set({{0.5, 0.5}, {0.1, 0.9000001}}), refs) > 0.0);
}

TEST_CASE("hypervolume examples")
{
    CHECK(hypervolume(to_set({{1, 1}}), point({0, 0})) == 1.0);
    CHECK(hypervolume(to_set({{0.5, 1.0}, {1.0, 0.5}}), point({0, 0})) == 0.75);
    CHECK(oracle::grid_hypervolume({{0.5, 1.0}, {1.0, 0.5}}, 0, 0, 2000) == doctest::Approx(0.75).epsilon(2e-3));
    CHECK(hypervolume(to_set({{0.2, 0.3}, {0.1, 0.9}}), point({0.5, 0.5})) == 0.0);
    // a point above ref in one coordinate only spans nothing
    CHECK(hypervolume(to_set({{0.9, 0.4}, {0.6, 0.6}}), point({0.5, 0.5})) == doctest::Approx(0.01).epsilon(1e-12));
    CHECK(hypervolume(to_set({{0.7}, {0.9}}), point({0.5})) == doctest::Approx(0.4).epsilon(1e-12));
    CHECK_THROWS_AS(hypervolume(to_set({{1, 1}}), point({0, 0, 0})), DimensionMismatch);
}

TEST_CASE("hypervolume sweep matches grid integration")
{
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::size_t> size(1, 20);
    for (int trial = 0; trial < 30; ++trial) {
        const auto pts = oracle::random_points(rng, size(rng), 2);
        const auto ref = oracle::random_points(rng, 1, 2).front();
        const double exact = hypervolume(to_set(pts), point({ref[0], ref[1]}));
        CHECK(std::abs(exact - oracle::grid_hypervolume(pts, ref[0], ref[1], 2000)) <= 2e-3);
    }
}

TEST_CASE("monte carlo hypervolume")
{
    const auto unit = hypervolume_mc(to_set({{1, 1}}), point({0, 0}), 1'000'000, 0);
    CHECK(std::abs(unit.value - 1.0) <= 3e-3);

    const auto front = to_set({{0.2, 0.9}, {0.5, 0.6}, {0.8, 0.3}});
    const auto a = hypervolume_mc(front, point({0.1, 0.1}), 100'000, 17);
    const auto b = hypervolume_mc(front, point({0.1, 0.1}), 100'000, 17);
    CHECK(a.value == b.value);
    CHECK(a.standard_error == b.standard_error);

    // degenerate bounding box
    CHECK(hypervolume_mc(to_set({{0.5, 0.5}}), point({0.5, 0.1}), 100, 0).value == 0.0);
    CHECK_THROWS_AS(hypervolume_mc(front, point({0, 0}), 0, 0), std::invalid_argument);

    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        const auto pts = oracle::random_points(rng, 1 + static_cast<std::size_t>(trial), 2);
        const auto set = to_set(pts);
        const auto ref = point({0.05, 0.05});
        const auto est = hypervolume_mc(set, ref, 200'000, static_cast<std::uint64_t>(trial));
        CHECK(std::abs(est.value - hypervolume(set, ref)) <= 3.0 * est.standard_error + 1e-12);
    }
}

TEST_CASE("hypervolume in three objectives uses the estimator")
{
    const auto cube = to_set({{1, 1, 1}});
    CHECK(hypervolume(cube, point({0, 0, 0})) == doctest::Approx(1.0).epsilon(1e-12));
    // two unit-half boxes overlapping in a quarter: 0.5 + 0.5 - 0.25
    const auto two = to_set({{1.0, 1.0, 0.5}, {1.0, 0.5, 1.0}});
    CHECK(hypervolume(two, point({0, 0, 0}), {400'000, 3}) == doctest::Approx(0.75).epsilon(5e-3));
}

TEST_CASE("hypervolume is monotone under non-dominated additions")
{
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 500; ++trial) {
        auto pts = oracle::random_points(rng, 1 + static_cast<std::size_t>(trial % 10), 2);
        const auto ref = point({0.1, 0.1});
        const double before = hypervolume(to_set(pts), ref);
        const auto extra = oracle::random_points(rng, 1, 2).front();
        bool dominated = false;
        for (const auto& p : pts) {
            dominated = dominated || oracle::all_greater(p, extra);
        }
        if (dominated) {
            continue;
        }
        pts.push_back(extra);
        REQUIRE(hypervolume(to_set(pts), ref) >= before - 1e-12);
    }
}

TEST_CASE("sdr and ndr examples")
{
    const auto front = to_set({{0.2, 0.2}, {0.6, 0.6}, {0.9, 0.9}});
    const auto ref = point({0.5, 0.5});
    CHECK(sdr(front, ref) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(ndr(front, ref) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));

    CHECK(sdr(front, point({0.1, 0.1})) == 1.0);
    CHECK(sdr(front, point({0.9, 0.9})) == 0.0);

    // ref equal to a front point leaves that point non-dominated
    CHECK(ndr(to_set({{0.6, 0.6}}), point({0.6, 0.6})) == 1.0);
    CHECK(ndr(front, point({0.2 - 1e-3, 0.2 - 1e-3})) == 1.0);
    CHECK_THROWS_AS(sdr(front, point({0.5})), DimensionMismatch);
    CHECK_THROWS_AS(ndr(front, point({0.5, 0.5, 0.5})), DimensionMismatch);
}

TEST_CASE("sdr and ndr invariants")
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 5000; ++trial) {
        const auto pts = oracle::random_lattice_points(rng, 1 + static_cast<std::size_t>(trial % 15), 2, 5);
        const auto r = oracle::random_lattice_points(rng, 1, 2, 5).front();
        const auto front = to_set(pts);
        const auto ref = point({r[0], r[1]});
        const double s = sdr(front, ref);
        const double n = ndr(front, ref);
        REQUIRE(s >= 0.0);
        REQUIRE(n <= 1.0);
        REQUIRE(s <= n);
        REQUIRE(s + (1.0 - n) <= 1.0 + 1e-15);
    }
}

TEST_CASE("indicators are invariant to front order")
{
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 100; ++trial) {
        auto pts = oracle::random_points(rng, 2 + static_cast<std::size_t>(trial % 12), 2);
        const auto refs = to_set(oracle::random_points(rng, 3, 2));
        const auto ref = SolutionSetd::single("r", refs.point(0));
        std::vector<double> before;
        for (const auto ind : {Indicator::ED, Indicator::HV, Indicator::SDR, Indicator::NDR}) {
            before.push_back(evaluate(ind, to_set(pts), ref).value);
        }
        before.push_back(evaluate(Indicator::GD, to_set(pts), refs).value);

        std::shuffle(pts.begin(), pts.end(), rng);
        std::vector<double> after;
        for (const auto ind : {Indicator::ED, Indicator::HV, Indicator::SDR, Indicator::NDR}) {
            after.push_back(evaluate(ind, to_set(pts), ref).value);
        }
        after.push_back(evaluate(Indicator::GD, to_set(pts), refs).value);
        for (std::size_t i = 0; i < before.size(); ++i) {
            CHECK(after[i] == doctest::Approx(before[i]).epsilon(1e-12));
        }
    }
}

TEST_CASE("gd matches the plain-loop definition")
{
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        const auto front = oracle::random_points(rng, 1 + static_cast<std::size_t>(trial % 9), 3);
        const auto refs = oracle::random_points(rng, 1 + static_cast<std::size_t>(trial % 4), 3);
        CHECK(generational_distance(to_set(front), to_set(refs))
              == doctest::Approx(oracle::generational_distance(front, refs)).epsilon(1e-12));
    }
}

TEST_CASE("evaluate reports sizes and rejects multi-point references")
{
    const auto front = to_set({{0.2, 0.2}, {0.6, 0.6}});
    const auto r = evaluate(Indicator::SDR, front, to_set({{0.5, 0.5}}));
    CHECK(r.front_size == 2);
    CHECK(r.reference_size == 1);
    CHECK(r.value == 0.5);
    CHECK_THROWS_AS(evaluate(Indicator::HV, front, to_set({{0.5, 0.5}, {0.1, 0.1}})), std::invalid_argument);
}
