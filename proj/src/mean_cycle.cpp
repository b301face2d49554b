#include "selgrade/mean_cycle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "selgrade/error.hpp"

namespace selgrade {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

// Best-mean simple cycle contained in a walk given as a sequence of edge indices.
std::optional<MeanCycle> best_cycle_in_walk(const WeightedDigraph& g, const std::vector<std::uint32_t>& walk) {
    std::optional<MeanCycle> best;
    std::vector<std::uint32_t> stack_edges;
    std::vector<std::uint32_t> position(g.node_count, kNone);
    std::vector<std::uint32_t> stack_nodes;
    if (walk.empty()) {
        return best;
    }
    stack_nodes.push_back(g.edges[walk.front()].from);
    position[stack_nodes.back()] = 0;
    for (std::uint32_t e : walk) {
        const std::uint32_t to = g.edges[e].to;
        stack_edges.push_back(e);
        if (position[to] != kNone) {
            const std::uint32_t start = position[to];
            MeanCycle c;
            c.edges.assign(stack_edges.begin() + start, stack_edges.end());
            c.mean = cycle_mean(g, c.edges);
            if (!best || c.mean > best->mean) {
                best = std::move(c);
            }
            for (std::size_t i = start + 1; i < stack_nodes.size(); ++i) {
                position[stack_nodes[i]] = kNone;
            }
            stack_nodes.resize(start + 1);
            stack_edges.resize(start);
        } else {
            position[to] = static_cast<std::uint32_t>(stack_nodes.size());
            stack_nodes.push_back(to);
        }
    }
    return best;
}

// Karp with a virtual source joined to every node: D[k][v] is the heaviest walk of exactly
// k edges ending at v.
std::optional<MeanCycle> karp_max(const WeightedDigraph& g) {
    const std::size_t n = g.node_count;
    if (n == 0 || g.edges.empty()) {
        return std::nullopt;
    }
    std::vector<double> d((n + 1) * n, kNegInf);
    std::vector<std::uint32_t> via((n + 1) * n, kNone);
    std::fill(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(n), 0.0);
    for (std::size_t k = 1; k <= n; ++k) {
        const double* prev = d.data() + (k - 1) * n;
        double* cur = d.data() + k * n;
        std::uint32_t* pv = via.data() + k * n;
        for (std::uint32_t e = 0; e < g.edges.size(); ++e) {
            const auto& edge = g.edges[e];
            if (prev[edge.from] == kNegInf) {
                continue;
            }
            const double cand = prev[edge.from] + edge.weight;
            if (cand > cur[edge.to]) {
                cur[edge.to] = cand;
                pv[edge.to] = e;
            }
        }
    }
    double best = kNegInf;
    std::uint32_t best_node = kNone;
    const double* last = d.data() + n * n;
    for (std::uint32_t v = 0; v < n; ++v) {
        if (last[v] == kNegInf) {
            continue;
        }
        double worst = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < n; ++k) {
            const double dk = d[k * n + v];
            if (dk == kNegInf) {
                continue;
            }
            worst = std::min(worst, (last[v] - dk) / static_cast<double>(n - k));
        }
        if (worst > best) {
            best = worst;
            best_node = v;
        }
    }
    if (best_node == kNone) {
        return std::nullopt;
    }
    std::vector<std::uint32_t> walk;
    walk.reserve(n);
    std::uint32_t v = best_node;
    for (std::size_t k = n; k >= 1; --k) {
        const std::uint32_t e = via[k * n + v];
        walk.push_back(e);
        v = g.edges[e].from;
    }
    std::reverse(walk.begin(), walk.end());
    auto cycle = best_cycle_in_walk(g, walk);
    const double scale = 1e-9 * (1.0 + std::abs(best));
    if (!cycle || std::abs(cycle->mean - best) > scale) {
        return std::nullopt;  // caller falls back to policy iteration
    }
    return cycle;
}

// Howard policy iteration for the maximum cycle mean.
std::optional<MeanCycle> howard_max(const WeightedDigraph& g) {
    const std::size_t n = g.node_count;
    // Restrict to nodes that can reach a cycle: repeatedly drop nodes without live successors.
    std::vector<std::vector<std::uint32_t>> out(n);
    std::vector<std::vector<std::uint32_t>> in(n);
    for (std::uint32_t e = 0; e < g.edges.size(); ++e) {
        out[g.edges[e].from].push_back(e);
        in[g.edges[e].to].push_back(e);
    }
    std::vector<std::size_t> live_out(n);
    std::vector<std::uint8_t> alive(n, 1);
    std::vector<std::uint32_t> queue;
    for (std::uint32_t v = 0; v < n; ++v) {
        live_out[v] = out[v].size();
        if (live_out[v] == 0) {
            alive[v] = 0;
            queue.push_back(v);
        }
    }
    while (!queue.empty()) {
        const std::uint32_t v = queue.back();
        queue.pop_back();
        for (std::uint32_t e : in[v]) {
            const std::uint32_t u = g.edges[e].from;
            if (alive[u] && --live_out[u] == 0) {
                alive[u] = 0;
                queue.push_back(u);
            }
        }
    }
    std::vector<std::uint32_t> policy(n, kNone);
    for (std::uint32_t v = 0; v < n; ++v) {
        if (!alive[v]) {
            continue;
        }
        for (std::uint32_t e : out[v]) {
            if (alive[g.edges[e].to] && (policy[v] == kNone || g.edges[e].weight > g.edges[policy[v]].weight)) {
                policy[v] = e;
            }
        }
    }
    if (std::none_of(alive.begin(), alive.end(), [](std::uint8_t a) { return a != 0; })) {
        return std::nullopt;
    }

    double max_abs = 0.0;
    for (const auto& e : g.edges) {
        max_abs = std::max(max_abs, std::abs(e.weight));
    }
    const double tol = 1e-12 * (1.0 + max_abs);
    std::vector<double> eta(n);
    std::vector<double> x(n);
    std::vector<std::uint32_t> handle(n);  // a node on the policy cycle reached from v
    std::vector<std::uint32_t> mark(n);
    std::vector<std::uint32_t> path;

    for (int iteration = 0; iteration < 100000; ++iteration) {
        // Value determination.
        std::fill(mark.begin(), mark.end(), kNone);
        for (std::uint32_t s = 0; s < n; ++s) {
            if (!alive[s] || mark[s] != kNone) {
                continue;
            }
            path.clear();
            std::uint32_t v = s;
            while (mark[v] == kNone) {
                mark[v] = s;
                path.push_back(v);
                v = g.edges[policy[v]].to;
            }
            std::size_t resolved = path.size();
            if (mark[v] == s) {
                // New cycle: v is its handle.
                double sum = 0.0;
                std::size_t len = 0;
                std::uint32_t w = v;
                do {
                    sum += g.edges[policy[w]].weight;
                    ++len;
                    w = g.edges[policy[w]].to;
                } while (w != v);
                const double mean = sum / static_cast<double>(len);
                eta[v] = mean;
                x[v] = 0.0;
                handle[v] = v;
                resolved = static_cast<std::size_t>(std::find(path.begin(), path.end(), v) - path.begin());
                // Cycle nodes other than the handle, walking backwards along the cycle.
                std::vector<std::uint32_t> cyc(path.begin() + static_cast<std::ptrdiff_t>(resolved) + 1, path.end());
                for (auto it = cyc.rbegin(); it != cyc.rend(); ++it) {
                    const auto& e = g.edges[policy[*it]];
                    eta[*it] = mean;
                    x[*it] = e.weight - mean + x[e.to];
                    handle[*it] = v;
                }
            }
            for (std::size_t i = resolved; i-- > 0;) {
                const std::uint32_t u = path[i];
                const auto& e = g.edges[policy[u]];
                eta[u] = eta[e.to];
                x[u] = e.weight - eta[u] + x[e.to];
                handle[u] = handle[e.to];
            }
        }
        // Policy improvement, first on the cycle mean, then on the bias.
        bool changed = false;
        for (std::uint32_t e = 0; e < g.edges.size(); ++e) {
            const auto& edge = g.edges[e];
            if (!alive[edge.from] || !alive[edge.to]) {
                continue;
            }
            if (eta[edge.to] > eta[edge.from] + tol) {
                const auto& cur = g.edges[policy[edge.from]];
                if (eta[edge.to] > eta[cur.to] + tol) {
                    policy[edge.from] = e;
                    changed = true;
                }
            }
        }
        if (!changed) {
            std::vector<double> gain(n, 0.0);
            for (std::uint32_t e = 0; e < g.edges.size(); ++e) {
                const auto& edge = g.edges[e];
                if (!alive[edge.from] || !alive[edge.to] || std::abs(eta[edge.to] - eta[edge.from]) > tol) {
                    continue;
                }
                const double improvement = edge.weight - eta[edge.from] + x[edge.to] - x[edge.from];
                if (improvement > gain[edge.from] + tol * (1.0 + std::abs(x[edge.from]))) {
                    gain[edge.from] = improvement;
                    policy[edge.from] = e;
                    changed = true;
                }
            }
        }
        if (!changed) {
            break;
        }
    }

    std::uint32_t best = kNone;
    for (std::uint32_t v = 0; v < n; ++v) {
        if (alive[v] && (best == kNone || eta[v] > eta[best])) {
            best = v;
        }
    }
    MeanCycle c;
    const std::uint32_t h = handle[best];
    std::uint32_t w = h;
    do {
        c.edges.push_back(policy[w]);
        w = g.edges[policy[w]].to;
    } while (w != h);
    c.mean = cycle_mean(g, c.edges);
    return c;
}

WeightedDigraph negated(const WeightedDigraph& g) {
    WeightedDigraph out = g;
    for (auto& e : out.edges) {
        e.weight = -e.weight;
    }
    return out;
}

std::optional<MeanCycle> solve_max(const WeightedDigraph& g, MeanCycleMethod method) {
    for (const auto& e : g.edges) {
        if (e.from >= g.node_count || e.to >= g.node_count) {
            throw Error(ErrorKind::InvalidArgument, "edge endpoint out of range");
        }
        if (!std::isfinite(e.weight)) {
            throw Error(ErrorKind::InvalidArgument, "edge weight is not finite");
        }
    }
    if (method == MeanCycleMethod::Automatic) {
        method = (g.node_count <= kKarpNodeLimit && g.edges.size() <= kKarpEdgeLimit) ? MeanCycleMethod::Karp
                                                                                       : MeanCycleMethod::Howard;
    }
    if (method == MeanCycleMethod::Karp) {
        if (auto c = karp_max(g)) {
            return c;
        }
    }
    return howard_max(g);
}

}  // namespace

double cycle_mean(const WeightedDigraph& g, const std::vector<std::uint32_t>& cycle) {
    if (cycle.empty()) {
        throw Error(ErrorKind::InvalidArgument, "empty cycle");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        const auto& e = g.edges.at(cycle[i]);
        const auto& next = g.edges.at(cycle[(i + 1) % cycle.size()]);
        if (e.to != next.from) {
            throw Error(ErrorKind::InvalidArgument, "edge sequence is not a closed cycle");
        }
        sum += e.weight;
    }
    return sum / static_cast<double>(cycle.size());
}

std::optional<MeanCycle> max_mean_cycle(const WeightedDigraph& g, MeanCycleMethod method) {
    return solve_max(g, method);
}

std::optional<MeanCycle> min_mean_cycle(const WeightedDigraph& g, MeanCycleMethod method) {
    auto c = solve_max(negated(g), method);
    if (c) {
        c->mean = cycle_mean(g, c->edges);
    }
    return c;
}

}  // namespace selgrade
