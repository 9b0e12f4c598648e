#include <doctest.h>

#include <cmath>

#include "coarsekit/errors.hpp"
#include "coarsekit/random.hpp"
#include "coarsekit/sublinear.hpp"

using namespace coarse;

TEST_SUITE("sublinear") {

TEST_CASE("evaluation") {
    PiecewiseLinearFunction s({{1, 2}, {3, 6}}, 0.5);
    CHECK(s(0) == 2.0);
    CHECK(s(2) == 4.0);
    CHECK(s(3) == 6.0);
    CHECK(s(5) == 7.0);
    CHECK(s.slopes() == std::vector<double>{2.0, 0.5});
    CHECK(s.sup_ratio_from(1.0) == doctest::Approx(2.0));
    CHECK_THROWS_AS(PiecewiseLinearFunction({{2, 1}, {1, 1}}, 0.0), PreconditionError);
}

TEST_CASE("finite criterion") {
    auto c = is_asymptotically_sublinear(PiecewiseLinearFunction({{0, 3}}, 0.0));
    CHECK(c.verdict);
    CHECK_FALSE(c.witness_slope);

    auto lin = is_asymptotically_sublinear(PiecewiseLinearFunction({{0, 0}}, 1.0));
    CHECK_FALSE(lin.verdict);
    REQUIRE(lin.witness_slope);
    CHECK(*lin.witness_slope == 0.5);

    auto root = is_asymptotically_sublinear(PiecewiseLinearFunction({{1, 1}, {4, 2}, {16, 4}, {64, 8}}, 0.0));
    CHECK(root.verdict);
    for (std::size_t i = 1; i < root.slope_sequence.size(); ++i)
        CHECK(root.slope_sequence[i] <= root.slope_sequence[i - 1]);
}

TEST_CASE("fit through samples") {
    auto flat = fit_sublinear_through({{1, 5}, {2, 2.5}, {5, 1}});
    CHECK(flat.selected == std::vector<std::size_t>{0, 1, 2});
    CHECK(flat.function(100) == 5.0);

    auto three = fit_sublinear_through({{1, 1}, {10, 0.5}, {100, 0.25}});
    CHECK(three.selected == std::vector<std::size_t>{0, 1, 2});
    CHECK(three.selection == "greedy-chord-slopes");

    auto sub = fit_sublinear_through({{1, 1}, {2, 1}, {3, 10.0 / 3.0}});
    CHECK(sub.selected == std::vector<std::size_t>{0, 1});

    CHECK_THROWS_AS(fit_sublinear_through({{1, 1}}), PreconditionError);
    CHECK_THROWS_AS(fit_sublinear_through({{1, 1}, {1, 2}}), PreconditionError);
    CHECK_THROWS_AS(fit_sublinear_through({{1, 1}, {2, 0}}), PreconditionError);
}

TEST_CASE("fits are sublinear and exact on selected samples") {
    Rng rng(21);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::pair<double, double>> samples;
        double t = rng.uniform(0.5, 2.0);
        const std::size_t n = 2 + rng.index(12);
        for (std::size_t i = 0; i < n; ++i) {
            samples.emplace_back(t, rng.uniform(0.01, 2.0) / std::sqrt(1.0 + i));
            t += rng.uniform(0.1, 10.0);
        }
        auto fit = fit_sublinear_through(samples);
        CHECK(is_asymptotically_sublinear(fit.function).verdict);
        for (std::size_t k : fit.selected) {
            CHECK(fit.function(samples[k].first) == samples[k].second * samples[k].first);
        }
        if (fit.selection == "greedy-chord-slopes") {
            auto sl = fit.function.slopes();
            for (std::size_t i = 1; i + 1 < sl.size(); ++i) CHECK(sl[i] < sl[i - 1]);
        }
    }
}

}
