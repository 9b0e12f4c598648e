#include <doctest.h>

#include "coarsekit/cover_shrink.hpp"
#include "coarsekit/errors.hpp"
#include "coarsekit/generate.hpp"
#include "support.hpp"

using namespace coarse;
using namespace testing;

namespace {

std::vector<std::size_t> range(std::size_t lo, std::size_t hi) {
    std::vector<std::size_t> out;
    for (std::size_t i = lo; i <= hi; ++i) out.push_back(i);
    return out;
}

ColoredCover colored(const PointedMetricSpace& X, std::vector<std::vector<std::size_t>> sets,
                     std::vector<int> colors, double r, double C) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < sets.size(); ++i) names.push_back("U" + std::to_string(i));
    return make_colored_cover(X, make_cover(X, names, std::move(sets)), std::move(colors), r, C);
}

}  // namespace

TEST_SUITE("cover_shrink") {

TEST_CASE("colored cover validation") {
    auto X = gen::integer_path(11);
    auto cc = colored(X, {range(0, 3), range(8, 11), range(3, 8)}, {1, 1, 2}, 4.0, 3.0);
    auto rep = validate_colored_cover(X, cc);
    CHECK(rep.ok);
    CHECK(rep.min_same_color_gap == 5.0);
    CHECK(rep.max_diameter == 5.0);

    auto bad = colored(X, {range(0, 6), range(5, 11), range(0, 0)}, {1, 1, 2}, 4.0, 3.0);
    auto brep = validate_colored_cover(X, bad);
    CHECK_FALSE(brep.ok);
    CHECK(brep.disjointness_violations == 1);
    CHECK_FALSE(brep.violations.empty());

    auto mesh = validate_colored_cover(X, colored(X, {range(0, 11), range(0, 0)}, {1, 2}, 1.0, 2.0));
    CHECK(mesh.mesh_violations == 1);

    CHECK_THROWS_AS(colored(X, {range(0, 11)}, {0}, 1.0, 1.0), PreconditionError);
}

TEST_CASE("lebesgue number and multiplicity") {
    auto X = gen::integer_path(2);
    std::vector<std::vector<std::size_t>> two{{0, 1}, {1, 2}};
    CHECK(lebesgue_number(X, two) == 1.0);
    std::vector<std::vector<std::size_t>> whole{{0, 1, 2}};
    CHECK(std::isinf(lebesgue_number(X, whole)));
    std::vector<std::vector<std::size_t>> gap{{0}, {2}};
    CHECK_THROWS_AS(lebesgue_number(X, gap), PreconditionError);
    CHECK(multiplicity(3, gap) == 1);
    CHECK(multiplicity(3, two) == 2);

    Rng rng(61);
    for (int t = 0; t < 30; ++t) {
        auto Y = random_cloud(rng, 30, 2, 8.0);
        std::vector<std::vector<std::size_t>> sets;
        for (int k = 0; k < 6; ++k) sets.push_back(random_subset(rng, Y.size(), 0.4));
        sets.push_back(all_indices(Y.size()));
        sets.back().erase(sets.back().begin() + static_cast<long>(rng.index(Y.size())));
        std::vector<char> seen(Y.size(), 0);
        for (const auto& s : sets)
            for (auto x : s) seen[x] = 1;
        if (std::find(seen.begin(), seen.end(), 0) != seen.end()) continue;
        const auto m = matrix_of(Y);
        CHECK(lebesgue_number(Y, sets) == oracle::lebesgue(m, sets));
        CHECK(multiplicity(Y.size(), sets) == oracle::multiplicity(Y.size(), sets));
    }
}

TEST_CASE("cover already within the multiplicity target") {
    auto X = gen::integer_path(11);
    auto cc = colored(X, {range(0, 6), range(5, 11), range(11, 11)}, {1, 2, 3}, 1.0, 12.0);
    auto rep = shrink(X, cc);
    CHECK(rep.m == 1);
    CHECK(rep.A_r == all_indices(X.size()));
    CHECK(rep.shrunk_sets == cc.cover.sets);
    CHECK(rep.subset_ok);
    CHECK(rep.multiplicity_ok);
    CHECK(rep.lebesgue_ok);
}

TEST_CASE("nerve of a colored cover") {
    auto X = gen::integer_path(11);
    auto cc = colored(X, {range(0, 7), range(4, 11), range(0, 0)}, {1, 2, 3}, 2.0, 4.0);
    auto nerve = nerve_map(X, cc);
    // Across the overlap the first coordinate falls linearly.
    for (std::size_t x = 4; x + 1 <= 7; ++x) {
        const double a = nerve.nerve.simplex_coords[x][0] - nerve.nerve.simplex_coords[x + 1][0];
        const double b = nerve.nerve.simplex_coords[x + 1][0] - nerve.nerve.simplex_coords[x + 2][0];
        if (x + 2 <= 8) CHECK(a == doctest::Approx(b));
    }
    CHECK(nerve.lambda == doctest::Approx(2.0 * nerve.lip_phi));
    for (double d : nerve.preimage_diameters) CHECK(d <= nerve.preimage_bound);
}

TEST_CASE("shrinking the interval cover") {
    auto inst = gen::colored_interval_cover(100, 8.0);
    CHECK(validate_colored_cover(inst.space, inst.cover).ok);
    auto rep = shrink(inst.space, inst.cover);
    CHECK(rep.m == 1);
    CHECK(rep.original_multiplicity == 3);
    CHECK(rep.multiplicity <= 2);
    CHECK(rep.multiplicity == oracle::multiplicity(inst.space.size(), rep.shrunk_sets));
    CHECK(rep.subset_ok);
    CHECK(rep.multiplicity_ok);
    CHECK(rep.lebesgue_ok);
    CHECK(rep.preimage_ok);
    CHECK(rep.closed_ball_failures == 0);
    CHECK(rep.lebesgue == oracle::lebesgue(matrix_of(inst.space), rep.shrunk_sets));
    CHECK(rep.lebesgue >= rep.proved_lebesgue_bound);
    for (std::size_t i = 0; i < rep.shrunk_sets.size(); ++i) {
        for (auto x : rep.shrunk_sets[i]) CHECK(oracle::member(inst.cover.cover.sets[i], x));
        for (auto x : inst.cover.cover.sets[i])
            if (oracle::member(rep.A_r, x)) CHECK(oracle::member(rep.shrunk_sets[i], x));
    }
    auto proj = shrink(inst.space, inst.cover, SphereStrategy::Project);
    CHECK(proj.multiplicity <= 2);
    CHECK(proj.lebesgue_ok);
}

}
