#include <gtest/gtest.h>

#include <numbers>

#include "selgrade/config.hpp"
#include "selgrade/hemisphere.hpp"
#include "support.hpp"

using namespace selgrade;

namespace {

PoincarePoint random_hemisphere_point(std::mt19937_64& rng, int d) {
    const Vector x = fixtures::random_unit(rng, d + 1);
    return PoincarePoint{x.head(d), std::abs(x[d])};
}

}  // namespace

class HemisphereCovering : public ::testing::TestWithParam<std::tuple<int, int, int>> {};

TEST_P(HemisphereCovering, EveryPointIsWithinItsCellRadius) {
    const auto [d, n, m] = GetParam();
    const auto grid = build_hemisphere_grid(d, n, m);
    std::mt19937_64 rng(static_cast<unsigned>(d * 1000 + n * 10 + m));
    for (int i = 0; i < 20000; ++i) {
        const auto p = random_hemisphere_point(rng, d);
        const CellId c = grid.lookup(p);
        ASSERT_LT(c, grid.size());
        EXPECT_LE(chordal_distance(grid.center(c), p), grid.radius(c) + 1e-12);
        EXPECT_LE(grid.radius(c), grid.max_radius());
    }
    // Points on the equator itself.
    for (int i = 0; i < 2000; ++i) {
        const auto e = equator_embed(normalize(fixtures::random_unit(rng, d)));
        const CellId c = grid.lookup(e);
        EXPECT_TRUE(grid.is_equator(c));
        EXPECT_LE(chordal_distance(grid.center(c), e), grid.radius(c) + 1e-12);
    }
}

INSTANTIATE_TEST_SUITE_P(Sizes, HemisphereCovering,
                         ::testing::Values(std::tuple{2, 8, 2}, std::tuple{2, 120, 16}, std::tuple{3, 4, 4},
                                           std::tuple{4, 2, 3}));

TEST(HemisphereGrid, Layout) {
    const auto grid = build_hemisphere_grid(2, 12, 4);
    EXPECT_EQ(grid.size(), 1u + 4u * 12u);
    EXPECT_EQ(grid.level(HemisphereGrid::pole()), 0);
    EXPECT_EQ(grid.center(HemisphereGrid::pole()).r, 1.0);
    for (int k = 1; k <= 4; ++k) {
        for (CellId j = 0; j < 12; ++j) {
            const CellId id = grid.cell(k, j);
            EXPECT_EQ(id, 1 + static_cast<CellId>(k - 1) * 12 + j);
            EXPECT_EQ(grid.level(id), k);
            EXPECT_EQ(grid.sphere_cell(id), j);
            const auto c = grid.center(id);
            EXPECT_NEAR(std::atan2(c.s.norm(), c.r), grid.colatitude(k), 1e-14);
        }
    }
    for (CellId j = 0; j < 12; ++j) {
        const CellId e = grid.equator_cell(j);
        EXPECT_TRUE(grid.is_equator(e));
        EXPECT_EQ(grid.center(e).r, 0.0);
        EXPECT_EQ(grid.radius(e), grid.sphere().radius(j));
        EXPECT_EQ(grid.center(e).s, grid.sphere().center_vector(j));
    }
    EXPECT_NEAR(grid.colatitude(4), std::numbers::pi / 2, 1e-15);
    EXPECT_THROW((void)grid.sphere_cell(HemisphereGrid::pole()), Error);
    EXPECT_THROW((void)grid.cell(5, 0), Error);
    EXPECT_THROW((void)build_hemisphere_grid(2, 12, 1), Error);
    EXPECT_THROW((void)grid.lookup(PoincarePoint{Eigen::Vector2d(1, 0), -0.5}), Error);
}

class EquatorConjugacy : public ::testing::TestWithParam<std::string> {};

TEST_P(EquatorConjugacy, EquatorSubgraphIsTheSphereGraph) {
    const auto config = demo_config(GetParam());
    const auto system = make_system(config);
    const int d = config.system.dimension;
    const auto hgrid = build_hemisphere_grid(d, d == 2 ? 96 : 6, 6);
    const GraphParams params{1.0, 0.04};
    const auto sphere = build_graph(system, hgrid.sphere(), params);
    const auto hemi = build_hemisphere_graph(system, hgrid, params);

    std::vector<TransitionGraph::EdgeRecord> mapped;
    for (const auto& e : hemi.edges()) {
        if (hgrid.is_equator(e.from) && hgrid.is_equator(e.to)) {
            mapped.push_back({hgrid.sphere_cell(e.from), hgrid.sphere_cell(e.to), e.control, e.exact});
        }
    }
    EXPECT_EQ(mapped, sphere.edges());
}

INSTANTIATE_TEST_SUITE_P(Demos, EquatorConjugacy, ::testing::Values("diag10", "ex47", "rotation", "diag3"));

TEST(HemisphereGraph, InteriorCellsKeepOneEdgePerTarget) {
    const auto system = make_system(demo_config("ex47"));
    const auto hgrid = build_hemisphere_grid(2, 48, 4);
    const auto hemi = build_hemisphere_graph(system, hgrid, {1.0, 0.05});
    for (CellId c = 0; c < hgrid.size(); ++c) {
        if (hgrid.is_equator(c)) {
            continue;
        }
        const auto t = hemi.targets(c);
        EXPECT_TRUE(std::adjacent_find(t.begin(), t.end()) == t.end());
    }
}

TEST(HemisphereGraph, PoleIsFixedByEveryControl) {
    const auto system = make_system(demo_config("ex47"));
    const auto hgrid = build_hemisphere_grid(2, 48, 4);
    const auto hemi = build_hemisphere_graph(system, hgrid, {1.0, 0.05});
    EXPECT_TRUE(hemi.has_edge(HemisphereGrid::pole(), HemisphereGrid::pole()));
}
