#include <gtest/gtest.h>

#include <numbers>

#include "selgrade/sphere_grid.hpp"
#include "support.hpp"

using namespace selgrade;

class GridCovering : public ::testing::TestWithParam<std::pair<int, int>> {};

TEST_P(GridCovering, EveryPointIsWithinItsCellRadius) {
    const auto [d, n] = GetParam();
    const auto grid = build_grid(d, n);
    std::mt19937_64 rng(static_cast<unsigned>(100 * d + n));
    for (int i = 0; i < 20000; ++i) {
        const Vector x = fixtures::random_unit(rng, d);
        const CellId c = grid.lookup(x);
        ASSERT_LT(c, grid.size());
        EXPECT_LE((grid.center_vector(c) - x).norm(), grid.radius(c) + 1e-12);
        EXPECT_LE(grid.radius(c), grid.max_radius());
        EXPECT_EQ(grid.lookup(3.5 * x), c);
    }
}

TEST_P(GridCovering, CentersLookUpToThemselvesAndAntipodesPair) {
    const auto [d, n] = GetParam();
    const auto grid = build_grid(d, n);
    for (CellId c = 0; c < grid.size(); ++c) {
        EXPECT_NEAR(grid.center_vector(c).norm(), 1.0, 1e-14);
        EXPECT_EQ(grid.lookup(grid.center_vector(c)), c);
        EXPECT_EQ(grid.antipode(grid.antipode(c)), c);
        EXPECT_LE((grid.center_vector(grid.antipode(c)) + grid.center_vector(c)).norm(), 1e-12);
    }
}

INSTANTIATE_TEST_SUITE_P(Sizes, GridCovering,
                         ::testing::Values(std::pair{2, 4}, std::pair{2, 720}, std::pair{3, 2}, std::pair{3, 9},
                                           std::pair{4, 4}));

TEST(SphereGrid, CircleCellsAreInAngleOrder) {
    const auto grid = build_grid(2, 720);
    ASSERT_EQ(grid.size(), 720u);
    for (CellId k = 0; k < 720; ++k) {
        const double angle = 2 * std::numbers::pi * k / 720.0;
        EXPECT_NEAR(grid.center_vector(k)[0], std::cos(angle), 1e-14);
        EXPECT_NEAR(grid.center_vector(k)[1], std::sin(angle), 1e-14);
        EXPECT_NEAR(grid.radius(k), std::numbers::pi / 720, 1e-15);
    }
    EXPECT_NEAR(grid.mesh(), 2 * std::numbers::pi / 720, 1e-15);
}

TEST(SphereGrid, CubeSphereSizeAndOrdering) {
    const auto grid = build_grid(3, 5);
    ASSERT_EQ(grid.size(), 6u * 25u);
    for (CellId c = 1; c < grid.size(); ++c) {
        const auto a = grid.center_coords(c - 1);
        const auto b = grid.center_coords(c);
        EXPECT_TRUE(std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end()));
    }
    EXPECT_EQ(build_grid(4, 3).size(), 8u * 27u);
}

TEST(SphereGrid, Preconditions) {
    EXPECT_THROW((void)build_grid(1, 8), Error);
    EXPECT_THROW((void)build_grid(2, 7), Error);
    EXPECT_THROW((void)build_grid(2, 2), Error);
    EXPECT_THROW((void)build_grid(3, 1), Error);
    try {
        (void)build_grid(5, 4);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::UnsupportedDimension);
    }
    EXPECT_NO_THROW((void)build_grid(5, 2, 5));
    const auto grid = build_grid(2, 8);
    EXPECT_THROW((void)grid.lookup(Vector::Zero(2)), Error);
    EXPECT_THROW((void)grid.lookup(Vector::Ones(3)), Error);
}
