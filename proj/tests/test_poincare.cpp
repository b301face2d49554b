#include <gtest/gtest.h>

#include "selgrade/components.hpp"
#include "selgrade/config.hpp"
#include "selgrade/poincare.hpp"
#include "support.hpp"

using namespace selgrade;

namespace {

struct Setup {
    SphereGrid grid;
    HemisphereGrid hgrid;
    TransitionGraph hgraph;
    SccResult hscc;
    std::vector<Component> components;
};

Setup setup(const std::string& demo, int n, int m, double eps) {
    const auto config = demo_config(demo);
    const auto system = make_system(config);
    auto grid = build_grid(2, n);
    auto comps = pair_with_projective(
                     recurrent_components(strongly_connected_components(build_graph(system, grid, {1.0, eps}))), grid)
                     .components;
    auto hgrid = build_hemisphere_grid(2, n, m);
    auto hgraph = build_hemisphere_graph(system, hgrid, {1.0, eps});
    auto hscc = strongly_connected_components(hgraph);
    return {std::move(grid), std::move(hgrid), std::move(hgraph), std::move(hscc), std::move(comps)};
}

}  // namespace

TEST(ConeCells, SinglePointConeIsAMeridian) {
    const auto hgrid = build_hemisphere_grid(2, 36, 5);
    Component comp;
    comp.id = 7;
    comp.cells = {9};
    const auto cone = cone_cells(comp, hgrid);
    EXPECT_EQ(cone.component, 7u);
    std::vector<CellId> expected{HemisphereGrid::pole()};
    for (int k = 1; k <= 5; ++k) {
        expected.push_back(hgrid.cell(k, 9));
    }
    EXPECT_EQ(cone.cells, expected);
}

TEST(ConeCells, WholeCircleConeIsTheHemisphere) {
    const auto hgrid = build_hemisphere_grid(2, 24, 4);
    Component comp;
    for (CellId c = 0; c < 24; ++c) {
        comp.cells.push_back(c);
    }
    EXPECT_EQ(cone_cells(comp, hgrid).cells.size(), hgrid.size());
}

TEST(Transitivity, HandmadeGraphs) {
    // 0 <-> 1 <-> 2 and 3 reachable from 2 only.
    std::vector<TransitionGraph::EdgeRecord> edges{{0, 1, 0, true}, {1, 0, 0, true}, {1, 2, 0, true},
                                                   {2, 1, 0, true}, {2, 3, 0, true}};
    const auto g = TransitionGraph::from_edges(4, 1, std::vector<double>(4, 0.0), edges, {});
    const auto ok = check_chain_transitive(g, ConeCellSet{0, {0, 1, 2}});
    EXPECT_TRUE(ok.chain_transitive);
    EXPECT_FALSE(ok.counterexample.has_value());
    ASSERT_EQ(ok.witness.size(), 3u);
    for (const auto& loop : ok.witness) {
        EXPECT_EQ(loop.cells.front(), 0u);
        EXPECT_EQ(loop.cells.back(), 0u);
        EXPECT_GE(loop.controls.size(), 1u);
    }
    const auto bad = check_chain_transitive(g, ConeCellSet{1, {0, 3}});
    EXPECT_FALSE(bad.chain_transitive);
    ASSERT_TRUE(bad.counterexample.has_value());
    EXPECT_EQ(bad.counterexample->to, 3u);
    EXPECT_TRUE(bad.counterexample->forward);
    EXPECT_FALSE(bad.counterexample->backward);
    // A lone cell without a self-loop is not transitive.
    EXPECT_FALSE(check_chain_transitive(g, ConeCellSet{2, {3}}).chain_transitive);
}

TEST(Transitivity, Diag10Cones) {
    const auto s = setup("diag10", 180, 32, 0.03);
    ASSERT_EQ(s.components.size(), 4u);
    for (const auto& comp : s.components) {
        const Vector c = s.grid.center_vector(comp.cells.front());
        const bool zero_eigen = std::abs(c[1]) > 0.5;
        const auto report = check_chain_transitive(s.hgraph, s.hscc, cone_cells(comp, s.hgrid));
        EXPECT_EQ(report.chain_transitive, zero_eigen) << "component at " << c.transpose();
    }
}

TEST(Transitivity, NilpotentWholeHemisphere) {
    const auto s = setup("nilpotent", 120, 16, 0.03);
    ASSERT_EQ(s.components.size(), 1u);
    const auto cone = cone_cells(s.components[0], s.hgrid);
    EXPECT_EQ(cone.cells.size(), s.hgrid.size());
    EXPECT_TRUE(check_chain_transitive(s.hgraph, s.hscc, cone).chain_transitive);
}

TEST(Theorem2Check, StrictStraddle) {
    MorseInterval iv;
    iv.lo = -0.5;
    iv.hi = 2.0;
    EXPECT_TRUE(theorem2_check(iv, 0.2));
    EXPECT_FALSE(theorem2_check(iv, 0.5));
    iv.lo = 0.0;
    EXPECT_FALSE(theorem2_check(iv, 0.1));
    EXPECT_THROW((void)theorem2_check(iv, 0.0), Error);
}

TEST(Theorem1Audit, FlagsWitnessWithoutTransitivity) {
    TransitivityReport report;
    report.chain_transitive = false;
    HalflineWitness w;
    w.tolerance = 1.0;
    w.endpoint_error = 0.5;
    const auto bad = theorem1_equivalence_audit(3, w, report);
    EXPECT_TRUE(bad.witness_found);
    EXPECT_FALSE(bad.consistent);
    report.chain_transitive = true;
    EXPECT_TRUE(theorem1_equivalence_audit(3, w, report).consistent);
    EXPECT_TRUE(theorem1_equivalence_audit(3, std::nullopt, report).consistent);
    w.endpoint_error = 2.0;
    EXPECT_FALSE(theorem1_equivalence_audit(3, w, report).witness_found);
}
