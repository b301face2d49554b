#pragma once

// Brute-force reference implementations shared by the unit tests and the acceptance suite.

#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "selgrade/chain_ops.hpp"
#include "selgrade/mean_cycle.hpp"

namespace selgrade::oracles {

struct CycleExtremes {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    std::size_t cycles = 0;
};

/// Every simple cycle (rooted at its smallest node) of a small multigraph.
inline CycleExtremes enumerate_simple_cycles(const WeightedDigraph& g) {
    CycleExtremes out;
    std::vector<std::vector<std::uint32_t>> adj(g.node_count);
    for (std::uint32_t e = 0; e < g.edges.size(); ++e) {
        adj[g.edges[e].from].push_back(e);
    }
    std::vector<bool> on_path(g.node_count, false);
    auto dfs = [&](auto&& self, std::uint32_t root, std::uint32_t v, double sum, int len) -> void {
        for (auto e : adj[v]) {
            const auto& edge = g.edges[e];
            if (edge.to == root) {
                const double mean = (sum + edge.weight) / (len + 1);
                out.lo = std::min(out.lo, mean);
                out.hi = std::max(out.hi, mean);
                ++out.cycles;
            } else if (edge.to > root && !on_path[edge.to]) {
                on_path[edge.to] = true;
                self(self, root, edge.to, sum + edge.weight, len + 1);
                on_path[edge.to] = false;
            }
        }
    };
    for (std::uint32_t r = 0; r < g.node_count; ++r) {
        on_path[r] = true;
        dfs(dfs, r, r, 0.0, 0);
        on_path[r] = false;
    }
    return out;
}

/// Random multigraph with up to two parallel edges per ordered pair.
inline WeightedDigraph random_digraph(std::mt19937_64& rng, std::size_t nodes, double density) {
    std::uniform_real_distribution<double> w(-3.0, 3.0);
    std::bernoulli_distribution edge(density);
    WeightedDigraph g{nodes, {}};
    for (std::uint32_t a = 0; a < nodes; ++a) {
        for (std::uint32_t b = 0; b < nodes; ++b) {
            for (int copy = 0; copy < 2; ++copy) {
                if (edge(rng)) {
                    g.edges.push_back({a, b, w(rng)});
                }
            }
        }
    }
    return g;
}

/// Minimal (k + l, then k) pair by direct evaluation with pow.
inline std::optional<KroneckerPair> kronecker_brute_force(const KroneckerQuery& q) {
    for (long total = 2; total <= 2 * q.bound; ++total) {
        for (long k = std::max(1L, total - q.bound); k <= std::min(q.bound, total - 1); ++k) {
            const long l = total - k;
            const double value = std::pow(q.a, static_cast<double>(k)) / std::pow(q.b, static_cast<double>(l));
            if (std::abs(value - q.c) < q.delta) {
                return KroneckerPair{k, l, value};
            }
        }
    }
    return std::nullopt;
}

/// Some pair sits so close to |value - c| = delta that pow and log-space evaluation may
/// legitimately disagree.
inline bool kronecker_borderline(const KroneckerQuery& q) {
    for (long k = 1; k <= q.bound; ++k) {
        for (long l = 1; l <= q.bound; ++l) {
            const double value = std::pow(q.a, static_cast<double>(k)) / std::pow(q.b, static_cast<double>(l));
            if (std::abs(std::abs(value - q.c) - q.delta) < 1e-9 * (1 + q.c)) {
                return true;
            }
        }
    }
    return false;
}

inline KroneckerQuery random_kronecker_query(std::mt19937_64& rng, long max_bound) {
    std::uniform_real_distribution<double> base(1.05, 8.0);
    std::uniform_real_distribution<double> target(0.1, 10.0);
    std::uniform_real_distribution<double> log_delta(std::log(1e-4), std::log(0.2));
    std::uniform_int_distribution<long> bound(1, max_bound);
    return {base(rng), base(rng), target(rng), std::exp(log_delta(rng)), bound(rng)};
}

}  // namespace selgrade::oracles
