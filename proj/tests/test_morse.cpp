#include <gtest/gtest.h>

#include "selgrade/chain.hpp"
#include "selgrade/components.hpp"
#include "selgrade/config.hpp"
#include "selgrade/morse.hpp"
#include "support.hpp"

using namespace selgrade;

namespace {

struct Setup {
    FlowSystem system;
    SphereGrid grid;
    TransitionGraph graph;
    ComponentStructure structure;
};

Setup setup(const std::string& demo, int n, double eps) {
    const auto config = demo_config(demo);
    auto system = make_system(config);
    auto grid = build_grid(config.system.dimension, n);
    auto graph = build_graph(system, grid, {1.0, eps});
    auto structure = pair_with_projective(recurrent_components(strongly_connected_components(graph)), grid);
    return {std::move(system), std::move(grid), std::move(graph), std::move(structure)};
}

}  // namespace

TEST(Components, Diag10HasFourAntipodalPoints) {
    const auto s = setup("diag10", 360, 0.02);
    ASSERT_EQ(s.structure.sphere_count(), 4u);
    ASSERT_EQ(s.structure.projective_count(), 2u);
    EXPECT_TRUE(s.structure.counts_consistent(2));
    for (const auto& cls : s.structure.classes) {
        ASSERT_EQ(cls.members.size(), 2u);
        EXPECT_LE(cls.asymmetry, s.grid.max_radius());
    }
    EXPECT_GE(component_containing(s.structure.components, s.grid, Eigen::Vector2d(0, 1)), 0);
    EXPECT_GE(component_containing(s.structure.components, s.grid, Eigen::Vector2d(-1, 0)), 0);
    EXPECT_EQ(component_containing(s.structure.components, s.grid, Eigen::Vector2d(1, 1)), -1);
}

TEST(Components, WholeCircleIsOneSymmetricClass) {
    const auto s = setup("nilpotent", 180, 0.02);
    ASSERT_EQ(s.structure.sphere_count(), 1u);
    ASSERT_EQ(s.structure.projective_count(), 1u);
    EXPECT_EQ(s.structure.components[0].cells.size(), 180u);
    EXPECT_EQ(s.structure.classes[0].members.size(), 1u);
}

TEST(Components, CountsConsistency) {
    ComponentStructure cs;
    EXPECT_FALSE(cs.counts_consistent(2));
    cs.components.resize(3);
    cs.classes.resize(2);
    EXPECT_TRUE(cs.counts_consistent(2));
    cs.components.resize(5);
    EXPECT_FALSE(cs.counts_consistent(2));
}

TEST(Components, PairingRejectsAsymmetricSets) {
    const auto grid = build_grid(2, 36);
    std::vector<Component> comps(2);
    comps[0].cells = {0, 1, 2, 3, 4, 5};
    comps[1].cells = {18};
    EXPECT_THROW((void)pair_with_projective(comps, grid), Error);
    comps[1].cells = {18, 19, 20, 21, 22, 23};
    EXPECT_NO_THROW((void)pair_with_projective(comps, grid));
}

TEST(Spectrum, Diag10Intervals) {
    const auto s = setup("diag10", 360, 0.02);
    for (const auto& comp : s.structure.components) {
        const auto iv = cycle_mean_extremes(s.graph, comp);
        const Vector c = s.grid.center_vector(comp.cells.front());
        const double expected = std::abs(c[0]) > 0.5 ? 1.0 : 0.0;
        EXPECT_NEAR(iv.lo, expected, 0.02);
        EXPECT_NEAR(iv.hi, expected, 0.02);
        EXPECT_LE(iv.lo, iv.hi);
    }
}

TEST(Spectrum, KarpAndHowardAgreeOnComponents) {
    const auto s = setup("ex47", 180, 0.04);
    ASSERT_EQ(s.structure.sphere_count(), 4u);
    for (const auto& comp : s.structure.components) {
        const auto k = cycle_mean_extremes(s.graph, comp, MeanCycleMethod::Karp);
        const auto h = cycle_mean_extremes(s.graph, comp, MeanCycleMethod::Howard);
        EXPECT_NEAR(k.lo, h.lo, 1e-9);
        EXPECT_NEAR(k.hi, h.hi, 1e-9);
    }
}

TEST(Spectrum, CertificatesReplayAsChainsWithTheirRate) {
    const auto s = setup("ex47", 180, 0.04);
    for (const auto& comp : s.structure.components) {
        const auto iv = cycle_mean_extremes(s.graph, comp);
        for (const auto* cert : {&iv.min_cycle, &iv.max_cycle}) {
            ASSERT_EQ(cert->cells.front(), cert->cells.back());
            EXPECT_EQ(cert->cells.front(), *std::min_element(cert->cells.begin(), cert->cells.end()));
            const auto chain = certificate_chain(*cert, s.system, s.grid, 0.04);
            EXPECT_TRUE(chain.is_periodic(0.0));
            EXPECT_NO_THROW((void)replay_chain(s.system, chain));
            EXPECT_NEAR(chain_exponent(s.system, chain), cert->rate(), 1e-12);
            EXPECT_NEAR(std::log(cert->beta()), cert->log_beta, 1e-12);
        }
        EXPECT_NEAR(iv.min_cycle.rate(), iv.lo, 1e-12);
        EXPECT_NEAR(iv.max_cycle.rate(), iv.hi, 1e-12);
    }
}

TEST(Spectrum, ExtremalCertificatesNeedBothSigns) {
    const auto s = setup("ex47", 180, 0.04);
    const auto iv = cycle_mean_extremes(s.graph, s.structure.components[0]);
    const auto certs = extremal_cycle_certificates(iv, 0.2);
    ASSERT_TRUE(certs.has_value());
    EXPECT_GT(certs->plus.rate(), 0.2);
    EXPECT_LT(certs->minus.rate(), -0.2);
    EXPECT_FALSE(extremal_cycle_certificates(iv, 3.0).has_value());
    EXPECT_THROW((void)extremal_cycle_certificates(iv, 0.0), Error);
}

TEST(Spectrum, AcyclicCellSetThrowsNoCycle) {
    const auto g = TransitionGraph::from_edges(2, 1, {0.0, 0.0}, {{0, 1, 0, true}}, {});
    const std::vector<CellId> cells{0, 1};
    try {
        (void)cycle_mean_extremes(g, cells);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NoCycle);
    }
}

class SpectrumEquality : public ::testing::TestWithParam<std::string> {};

TEST_P(SpectrumEquality, SphereAndProjectiveAgree) {
    const auto config = demo_config(GetParam());
    const int n = config.system.dimension == 2 ? 240 : 8;
    const auto s = setup(GetParam(), n, config.system.dimension == 2 ? 0.03 : 0.05);
    std::vector<MorseInterval> ivs;
    for (const auto& comp : s.structure.components) {
        ivs.push_back(cycle_mean_extremes(s.graph, comp));
    }
    const auto matches = spectrum_sphere_equals_projective(s.structure, ivs, projective_quotient(s.graph, s.grid), s.grid);
    ASSERT_EQ(matches.size(), s.structure.projective_count());
    for (const auto& m : matches) {
        EXPECT_TRUE(m.equal) << GetParam() << " class " << m.class_id << " delta " << m.max_delta;
        EXPECT_NEAR(m.tolerance, 2 * s.grid.mesh(), 1e-15);
    }
}

INSTANTIATE_TEST_SUITE_P(Demos, SpectrumEquality, ::testing::ValuesIn(demo_names()),
                         [](const auto& info) {
                             std::string name = info.param;
                             std::replace(name.begin(), name.end(), '-', '_');
                             return name;
                         });

TEST(ProjectiveQuotient, ClassesPairAntipodes) {
    const auto s = setup("ex47", 60, 0.05);
    const auto q = projective_quotient(s.graph, s.grid);
    EXPECT_EQ(q.graph.node_count(), 30u);
    for (CellId c = 0; c < 60; ++c) {
        EXPECT_EQ(q.class_of_cell[c], q.class_of_cell[s.grid.antipode(c)]);
    }
}
