#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "selgrade/geometry.hpp"
#include "support.hpp"

using namespace selgrade;

namespace {

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no exception";
    return ErrorKind::Io;
}

}  // namespace

TEST(Normalize, ProducesUnitVectors) {
    std::mt19937_64 rng(1);
    for (int d = 2; d <= 5; ++d) {
        for (int i = 0; i < 100; ++i) {
            const Vector v = fixtures::random_matrix(rng, d, 1).col(0) * std::pow(10.0, i % 20 - 10);
            EXPECT_NEAR(normalize(v).coords().norm(), 1.0, 1e-15);
        }
    }
}

TEST(Normalize, RejectsZeroAndNonFinite) {
    EXPECT_EQ(kind_of([] { (void)normalize(Vector::Zero(3)); }), ErrorKind::ZeroVector);
    Vector v(2);
    v << std::numeric_limits<double>::quiet_NaN(), 1.0;
    EXPECT_EQ(kind_of([&] { (void)normalize(v); }), ErrorKind::InvalidArgument);
}

TEST(SpherePoint, FromUnitChecksNorm) {
    EXPECT_NO_THROW((void)SpherePoint::from_unit(Eigen::Vector2d(0.6, 0.8)));
    EXPECT_EQ(kind_of([] { (void)SpherePoint::from_unit(Eigen::Vector2d(0.6, 0.81)); }), ErrorKind::InvalidArgument);
}

TEST(Projectivize, IdentifiesAntipodes) {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 200; ++i) {
        const SpherePoint s = normalize(fixtures::random_unit(rng, 3));
        EXPECT_EQ(projectivize(s), projectivize(antipode(s)));
        const ProjectivePoint pp = projectivize(s);
        const auto& rep = pp.rep().coords();
        int first = 0;
        while (std::abs(rep[first]) <= kCanonicalSignThreshold) {
            ++first;
        }
        EXPECT_GT(rep[first], 0.0);
    }
}

TEST(Projectivize, SkipsTinyLeadingCoordinates) {
    const SpherePoint s = normalize(Eigen::Vector3d(1e-14, -1.0, 0.0));
    EXPECT_GT(projectivize(s).rep()[1], 0.0);
}

TEST(Poincare, ProjectAndUnprojectAreInverse) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 500; ++i) {
        const Vector v = fixtures::random_unit(rng, 3) * std::exp((i % 40) - 20.0);
        const auto p = poincare_project(v);
        EXPECT_NEAR(p.as_vector().norm(), 1.0, 1e-15);
        EXPECT_GT(p.r, 0.0);
        EXPECT_LE((poincare_unproject(p) - v).norm(), 1e-12 * (1.0 + v.norm()));
    }
}

TEST(Poincare, OriginMapsToPoleAndEquatorHasNoPreimage) {
    const auto p = poincare_project(Vector::Zero(2));
    EXPECT_EQ(p.r, 1.0);
    EXPECT_EQ(p.s.norm(), 0.0);
    const auto e = equator_embed(normalize(Eigen::Vector2d(1, 1)));
    EXPECT_TRUE(e.on_equator());
    EXPECT_EQ(kind_of([&] { (void)poincare_unproject(e); }), ErrorKind::EquatorPoint);
}

TEST(Poincare, HugeVectorsApproachTheEquator) {
    const Vector v = Eigen::Vector2d(3.0, 4.0) * 1e200;
    const auto p = poincare_project(v);
    EXPECT_LT(p.r, 1e-199);
    EXPECT_NEAR(p.s[0], 0.6, 1e-15);
    EXPECT_NEAR(p.s[1], 0.8, 1e-15);
}

TEST(ChordalDistance, MatchesEmbedding) {
    const PoincarePoint a{Eigen::Vector2d(0.0, 0.0), 1.0};
    const PoincarePoint b = equator_embed(normalize(Eigen::Vector2d(1.0, 0.0)));
    EXPECT_NEAR(chordal_distance(a, b), std::sqrt(2.0), 1e-15);
    EXPECT_EQ(chordal_distance(Eigen::Vector2d(1, 0), Eigen::Vector2d(-1, 0)), 2.0);
}
