#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "selgrade/chain_ops.hpp"
#include "selgrade/components.hpp"
#include "selgrade/config.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace selgrade;

namespace {

struct Ex47 {
    FlowSystem system;
    SphereGrid grid;
    TransitionGraph graph;
    std::vector<Component> components;
};

const Ex47& ex47() {
    static const Ex47 setup = [] {
        const auto config = demo_config("ex47");
        auto system = make_system(config);
        auto grid = build_grid(2, 360);
        auto graph = build_graph(system, grid, {1.0, 0.03});
        auto comps = pair_with_projective(recurrent_components(strongly_connected_components(graph)), grid).components;
        return Ex47{std::move(system), std::move(grid), std::move(graph), std::move(comps)};
    }();
    return setup;
}

}  // namespace

TEST(Lift, EndpointNormLaw) {
    std::mt19937_64 rng(51);
    std::uniform_real_distribution<double> log_alpha(-6.0, 6.0);
    for (int i = 0; i < 1000; ++i) {
        const auto sys = fixtures::random_bilinear(rng, 2 + i % 3, 1 + i % 2);
        const auto chain = fixtures::random_chain(rng, sys, 1 + i % 40, 0.05);
        const double alpha = std::exp(log_alpha(rng));
        const auto lc = lift_chain(sys, chain, alpha);
        const double lambda = chain_exponent(sys, chain);
        const double expected = alpha * std::exp(lambda * chain.total_time());
        EXPECT_NEAR(lc.points.back().norm() / expected, 1.0, 1e-9) << "chain " << i;
    }
}

TEST(Lift, ScaleEquivarianceAndLemma1) {
    std::mt19937_64 rng(52);
    for (int i = 0; i < 100; ++i) {
        const auto sys = fixtures::random_bilinear(rng, 3, 1);
        const auto chain = fixtures::random_chain(rng, sys, 20, 0.05);
        const auto one = lift_chain(sys, chain, 1.0);
        const auto big = lift_chain(sys, chain, 1000.0);
        for (std::size_t k = 0; k < one.points.size(); ++k) {
            EXPECT_LE((big.points[k] - 1000.0 * one.points[k]).norm(), 1e-12 * big.points[k].norm());
            EXPECT_EQ(one.scale[k], big.scale[k]);
            EXPECT_NEAR(std::log(one.scale[k]), one.log_scale[k], 1e-12 * (1 + std::abs(one.log_scale[k])));
        }
        const auto report = verify_lemma1(sys, big);
        EXPECT_LE(report.max_norm_deviation, 1e-12);
        EXPECT_LE(report.max_image_deviation, 1e-9);
    }
}

TEST(Lift, OverflowAndBadScale) {
    const auto sys = FlowSystem::autonomous(Eigen::Matrix2d::Identity() * 100.0);
    Chain c;
    for (int i = 0; i < 8; ++i) {
        c.steps.push_back({normalize(Eigen::Vector2d(1, 0)), 1.0, Control(), 0.01});
    }
    c.end = normalize(Eigen::Vector2d(1, 0));
    EXPECT_THROW((void)lift_chain(sys, c, 1.0), Error);
    EXPECT_THROW((void)lift_chain(sys, c, 0.0), Error);
}

TEST(Projection, HemisphereJumpsContract) {
    std::mt19937_64 rng(53);
    for (int i = 0; i < 200; ++i) {
        const auto sys = fixtures::random_bilinear(rng, 2 + i % 3, 1);
        const auto chain = fixtures::random_chain(rng, sys, 1 + i % 25, 0.05);
        for (double alpha : {1e-3, 1e-2, 1e-1, 1.0, 1e1, 1e2, 1e3}) {
            const auto pc = project_lift_to_poincare(sys, lift_chain(sys, chain, alpha), 0.05);
            ASSERT_EQ(pc.hemisphere_jumps.size(), chain.size());
            EXPECT_TRUE(pc.contracts) << "chain " << i << " alpha " << alpha;
            EXPECT_TRUE(pc.within_eps);
            EXPECT_TRUE(pc.replayable);
            for (std::size_t k = 0; k < pc.hemisphere_jumps.size(); ++k) {
                EXPECT_LE(pc.hemisphere_jumps[k], pc.sphere_jumps[k] + 1e-12);
            }
        }
    }
}

TEST(Kronecker, MatchesBruteForce) {
    std::mt19937_64 rng(54);
    int checked = 0;
    int found = 0;
    while (checked < 50) {
        const auto q = oracles::random_kronecker_query(rng, 200);
        if (oracles::kronecker_borderline(q)) {
            continue;
        }
        const auto expected = oracles::kronecker_brute_force(q);
        const auto actual = kronecker_search(q);
        ASSERT_EQ(actual.has_value(), expected.has_value()) << q.a << ' ' << q.b << ' ' << q.c << ' ' << q.delta;
        if (actual) {
            EXPECT_EQ(actual->k, expected->k);
            EXPECT_EQ(actual->l, expected->l);
            EXPECT_NEAR(actual->value, expected->value, 1e-9 * expected->value);
            ++found;
        }
        ++checked;
    }
    EXPECT_GT(found, 10);
}

TEST(Kronecker, KnownAnswersAndValidation) {
    const auto p = kronecker_search({2.0, 3.0, 2.0 / 3.0, 1e-9, 10});
    ASSERT_TRUE(p.has_value());
    EXPECT_EQ(p->k, 1);
    EXPECT_EQ(p->l, 1);
    EXPECT_FALSE(kronecker_search({4.0, 2.0, 3.0, 0.01, 50}).has_value());
    EXPECT_THROW((void)kronecker_search({1.0, 2.0, 1.0, 0.1, 10}), Error);
    EXPECT_THROW((void)kronecker_search({2.0, 2.0, 0.0, 0.1, 10}), Error);
    EXPECT_THROW((void)kronecker_search({2.0, 2.0, 1.0, 0.0, 10}), Error);
}

TEST(NearRational, DetectsSmallDenominators) {
    EXPECT_TRUE(near_rational(0.75));
    EXPECT_TRUE(near_rational(-22.0 / 7.0));
    EXPECT_TRUE(near_rational(3.0));
    EXPECT_FALSE(near_rational(std::sqrt(2.0)));
    EXPECT_FALSE(near_rational(std::log(3.0) / std::log(2.0)));
    EXPECT_TRUE(near_rational(1.0 / 9973.0));
    EXPECT_FALSE(near_rational(std::numbers::pi));
}

TEST(HalflineWitness, ReachesThreeTimesTheBasePoint) {
    const auto& s = ex47();
    ASSERT_EQ(s.components.size(), 4u);
    for (const auto& comp : s.components) {
        const SpherePoint v = s.grid.center(comp.cells[comp.cells.size() / 2]);
        const auto w = halfline_witness(s.system, s.graph, s.grid, comp, v, 1.0, 3.0, {0.2});
        EXPECT_TRUE(w.success()) << "endpoint error " << w.endpoint_error;
        EXPECT_GE(w.k, 1);
        EXPECT_GE(w.l, 1);
        EXPECT_GT(w.beta_plus, 1.0);
        EXPECT_LT(w.beta_minus, 1.0);
        EXPECT_NO_THROW((void)replay_chain(s.system, w.sphere_chain));
        EXPECT_EQ(w.sphere_chain.steps.front().point, w.base_point);
        EXPECT_EQ(w.sphere_chain.end, w.base_point);
        const auto target = poincare_project(3.0 * w.base_point.coords());
        EXPECT_NEAR(chordal_distance(w.hemisphere_chain.points.back(), target), w.endpoint_error, 1e-15);
        EXPECT_LE(w.endpoint_error, 2 * 0.03);
    }
}

TEST(HalflineWitness, PerturbationKeepsTheChainValid) {
    const auto& s = ex47();
    const auto& comp = s.components[0];
    WitnessOptions opts;
    opts.delta0 = 0.2;
    opts.force_perturbation = true;
    const auto w = halfline_witness(s.system, s.graph, s.grid, comp, s.grid.center(comp.cells[0]), 1.0, 3.0, opts);
    EXPECT_TRUE(w.perturbed);
    EXPECT_TRUE(w.success());
    EXPECT_NO_THROW((void)replay_chain(s.system, w.sphere_chain));
}

TEST(HalflineWitness, ErrorCases) {
    const auto& s = ex47();
    const auto& comp = s.components[0];
    const CellId outside = s.grid.lookup(Eigen::Vector2d(1, 0));
    ASSERT_FALSE(std::binary_search(comp.cells.begin(), comp.cells.end(), outside));
    EXPECT_THROW((void)halfline_witness(s.system, s.graph, s.grid, comp, s.grid.center(outside), 1, 3), Error);
    EXPECT_THROW((void)halfline_witness(s.system, s.graph, s.grid, comp, s.grid.center(comp.cells[0]), 0, 3), Error);
    try {
        (void)halfline_witness(s.system, s.graph, s.grid, comp, s.grid.center(comp.cells[0]), 1, 3, {5.0});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::CertificatesAbsent);
    }
    try {
        WitnessOptions tight;
        tight.delta0 = 0.2;
        tight.kronecker_bound = 1;
        (void)halfline_witness(s.system, s.graph, s.grid, comp, s.grid.center(comp.cells[0]), 1, 3, tight);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotFound);
    }
}

TEST(CellPathChain, DeclaresTheGraphTolerance) {
    const auto& s = ex47();
    const auto iv = cycle_mean_extremes(s.graph, s.components[1]);
    const auto chain =
        cell_path_chain(iv.max_cycle.cells, iv.max_cycle.controls, s.system, s.grid, 0.03, 1.0);
    for (const auto& step : chain.steps) {
        EXPECT_NEAR(step.eps, 0.03 + 2 * s.grid.max_radius(), 1e-15);
    }
    EXPECT_THROW((void)cell_path_chain({0, 1}, {0, 0}, s.system, s.grid, 0.03, 1.0), Error);
}
