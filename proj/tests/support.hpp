#pragma once

#include <optional>
#include <random>
#include <vector>

#include "selgrade/chain.hpp"
#include "selgrade/flow.hpp"
#include "selgrade/graph.hpp"

namespace selgrade::fixtures {

inline Eigen::MatrixXd random_matrix(std::mt19937_64& rng, int d, double scale = 1.0) {
    std::normal_distribution<double> g(0.0, scale);
    Eigen::MatrixXd a(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            a(i, j) = g(rng);
        }
    }
    return a;
}

inline Vector random_unit(std::mt19937_64& rng, int d) {
    std::normal_distribution<double> g(0.0, 1.0);
    Vector v(d);
    do {
        for (int i = 0; i < d; ++i) {
            v[i] = g(rng);
        }
    } while (v.norm() < 1e-6);
    return v.normalized();
}

inline FlowSystem random_bilinear(std::mt19937_64& rng, int d, int controls) {
    std::vector<Eigen::MatrixXd> mats;
    for (int i = 0; i <= controls; ++i) {
        mats.push_back(random_matrix(rng, d, i == 0 ? 0.6 : 0.3));
    }
    ControlBox box{Eigen::VectorXd::Constant(controls, -1.0), Eigen::VectorXd::Constant(controls, 1.0)};
    return FlowSystem::bilinear(mats, box, box_vertices_and_center(box));
}

/// Random (eps, T)-chain: flow, then jump by a random amount below eps.
inline Chain random_chain(std::mt19937_64& rng, const FlowSystem& system, std::size_t steps, double eps,
                          std::optional<SpherePoint> start = std::nullopt) {
    std::uniform_real_distribution<double> time(0.2, 2.0);
    std::uniform_int_distribution<std::size_t> pick(0, system.control_samples().size() - 1);
    std::uniform_real_distribution<double> frac(0.0, 0.9);
    const int d = system.dimension();
    Chain c;
    SpherePoint p = start ? *start : normalize(random_unit(rng, d));
    for (std::size_t i = 0; i < steps; ++i) {
        ChainStep s{p, time(rng), system.control_samples()[pick(rng)], eps};
        const auto img = sphere_flow(system, p, s.time, s.control).image;
        Vector next = img.coords() + frac(rng) * eps * 0.5 * random_unit(rng, d);
        p = normalize(next);
        c.steps.push_back(std::move(s));
    }
    c.end = p;
    return c;
}

/// Random multigraph with weights attached per (node, control).
inline TransitionGraph random_graph(std::mt19937_64& rng, std::size_t nodes, std::size_t controls, double density) {
    std::uniform_real_distribution<double> w(-2.0, 2.0);
    std::bernoulli_distribution edge(density);
    std::vector<double> weights(nodes * controls);
    for (auto& x : weights) {
        x = w(rng);
    }
    std::vector<TransitionGraph::EdgeRecord> edges;
    for (std::size_t a = 0; a < nodes; ++a) {
        for (std::size_t b = 0; b < nodes; ++b) {
            for (std::size_t u = 0; u < controls; ++u) {
                if (edge(rng)) {
                    edges.push_back({static_cast<CellId>(a), static_cast<CellId>(b), static_cast<std::uint32_t>(u),
                                     true});
                }
            }
        }
    }
    return TransitionGraph::from_edges(nodes, controls, std::move(weights), std::move(edges), GraphParams{});
}

}  // namespace selgrade::fixtures
