#include "selgrade/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "parallel.hpp"
#include "selgrade/spatial_index.hpp"

namespace selgrade {

namespace {

// Tarjan's algorithm on a CSR adjacency with an explicit call stack.
std::vector<std::uint32_t> tarjan(std::size_t n, const std::vector<std::size_t>& offsets,
                                  const std::vector<CellId>& targets, std::uint32_t& count) {
    constexpr std::uint32_t kUnvisited = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> index(n, kUnvisited);
    std::vector<std::uint32_t> low(n, 0);
    std::vector<std::uint8_t> on_stack(n, 0);
    std::vector<std::uint32_t> comp(n, kUnvisited);
    std::vector<CellId> stack;
    struct Frame {
        CellId node;
        std::size_t next;
    };
    std::vector<Frame> calls;
    std::uint32_t counter = 0;
    count = 0;

    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != kUnvisited) {
            continue;
        }
        calls.push_back({static_cast<CellId>(root), offsets[root]});
        index[root] = low[root] = counter++;
        stack.push_back(static_cast<CellId>(root));
        on_stack[root] = 1;
        while (!calls.empty()) {
            Frame& f = calls.back();
            const CellId v = f.node;
            if (f.next < offsets[v + 1]) {
                const CellId w = targets[f.next++];
                if (index[w] == kUnvisited) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    calls.push_back({w, offsets[w]});
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            if (low[v] == index[v]) {
                CellId w = 0;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    comp[w] = count;
                } while (w != v);
                ++count;
            }
            calls.pop_back();
            if (!calls.empty()) {
                const CellId parent = calls.back().node;
                low[parent] = std::min(low[parent], low[v]);
            }
        }
    }
    return comp;
}

}  // namespace

void validate(const GraphParams& params) {
    if (!(params.step_time > 0.0) || !std::isfinite(params.step_time)) {
        throw Error(ErrorKind::InvalidArgument, "step time T must be positive");
    }
    if (!(params.epsilon > 0.0) || !(params.epsilon < 1.0)) {
        throw Error(ErrorKind::InvalidArgument, "epsilon must lie in (0, 1)");
    }
}

TransitionGraph TransitionGraph::from_edges(std::size_t node_count, std::size_t control_count,
                                            std::vector<double> weights, std::vector<EdgeRecord> edges,
                                            GraphParams params) {
    if (weights.size() != node_count * control_count) {
        throw Error(ErrorKind::InvalidArgument, "weight table size mismatch");
    }
    for (double w : weights) {
        if (!std::isfinite(w)) {
            throw Error(ErrorKind::InvalidArgument, "edge weights must be finite");
        }
    }
    std::sort(edges.begin(), edges.end(), [](const EdgeRecord& a, const EdgeRecord& b) {
        if (a.from != b.from) return a.from < b.from;
        if (a.to != b.to) return a.to < b.to;
        if (a.control != b.control) return a.control < b.control;
        return a.exact > b.exact;
    });
    edges.erase(std::unique(edges.begin(), edges.end(),
                            [](const EdgeRecord& a, const EdgeRecord& b) {
                                return a.from == b.from && a.to == b.to && a.control == b.control;
                            }),
                edges.end());
    TransitionGraph g;
    g.control_count_ = control_count;
    g.params_ = params;
    g.weights_ = std::move(weights);
    g.offsets_.assign(node_count + 1, 0);
    g.targets_.reserve(edges.size());
    g.controls_.reserve(edges.size());
    g.exact_.reserve(edges.size());
    for (const auto& e : edges) {
        if (e.from >= node_count || e.to >= node_count || e.control >= control_count) {
            throw Error(ErrorKind::InvalidArgument, "edge refers to a missing node or control");
        }
        ++g.offsets_[e.from + 1];
        g.targets_.push_back(e.to);
        g.controls_.push_back(e.control);
        g.exact_.push_back(e.exact ? 1 : 0);
    }
    for (std::size_t i = 0; i < node_count; ++i) {
        g.offsets_[i + 1] += g.offsets_[i];
    }
    return g;
}

bool TransitionGraph::has_edge(CellId from, CellId to) const {
    const auto t = targets(from);
    return std::binary_search(t.begin(), t.end(), to);
}

std::vector<TransitionGraph::EdgeRecord> TransitionGraph::edges() const {
    std::vector<EdgeRecord> out;
    out.reserve(edge_count());
    for (std::size_t v = 0; v < node_count(); ++v) {
        for (std::size_t e = offsets_[v]; e < offsets_[v + 1]; ++e) {
            out.push_back({static_cast<CellId>(v), targets_[e], controls_[e], exact_[e] != 0});
        }
    }
    return out;
}

TransitionGraph build_graph(const FlowSystem& system, const SphereGrid& grid, const GraphParams& params) {
    validate(params);
    if (system.dimension() != grid.dimension()) {
        throw Error(ErrorKind::InvalidArgument, "grid and system dimensions differ");
    }
    const StepMaps maps(system, params.step_time);
    const std::size_t cells = grid.size();
    const std::size_t controls = maps.size();
    const double reach = params.epsilon + 2.0 * grid.max_radius();
    const SpatialIndex index(grid.flat_centers(), grid.dimension(), reach);

    std::vector<double> weights(cells * controls);
    std::vector<std::vector<TransitionGraph::EdgeRecord>> slots(detail::worker_slots(cells));
    detail::parallel_chunks(cells, [&](std::size_t begin, std::size_t end, std::size_t slot) {
        auto& out = slots[slot];
        for (std::size_t c = begin; c < end; ++c) {
            const Vector center = grid.center_vector(static_cast<CellId>(c));
            for (std::size_t u = 0; u < controls; ++u) {
                const auto img = sphere_image(maps[u], center);
                weights[c * controls + u] = img.log_growth;
                const Vector& y = img.image.coords();
                const double base = params.epsilon + grid.radius(static_cast<CellId>(c));
                index.for_each_candidate({y.data(), static_cast<std::size_t>(y.size())}, base + grid.max_radius(),
                                         [&](std::uint32_t j) {
                                             const double dist =
                                                 ordered_distance(y.data(), grid.center_coords(j).data(), grid.dimension());
                                             if (dist < base + grid.radius(j)) {
                                                 out.push_back({static_cast<CellId>(c), j, static_cast<std::uint32_t>(u),
                                                                dist < params.epsilon + grid.radius(j)});
                                             }
                                         });
            }
        }
    });
    std::vector<TransitionGraph::EdgeRecord> edges;
    for (auto& s : slots) {
        edges.insert(edges.end(), s.begin(), s.end());
    }
    return TransitionGraph::from_edges(cells, controls, std::move(weights), std::move(edges), params);
}

SccResult strongly_connected_components(const TransitionGraph& g) {
    const std::size_t n = g.node_count();
    std::vector<std::size_t> offsets(n + 1, 0);
    std::vector<CellId> targets;
    targets.reserve(g.edge_count());
    for (std::size_t v = 0; v < n; ++v) {
        const auto t = g.targets(static_cast<CellId>(v));
        targets.insert(targets.end(), t.begin(), t.end());
        offsets[v + 1] = targets.size();
    }
    std::uint32_t count = 0;
    const auto raw = tarjan(n, offsets, targets, count);

    // Renumber by smallest member cell.
    constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> relabel(count, kUnset);
    std::uint32_t next = 0;
    for (std::size_t v = 0; v < n; ++v) {
        if (relabel[raw[v]] == kUnset) {
            relabel[raw[v]] = next++;
        }
    }
    SccResult result;
    result.component_of.resize(n);
    result.components.resize(count);
    for (std::uint32_t c = 0; c < count; ++c) {
        result.components[c].id = c;
    }
    for (std::size_t v = 0; v < n; ++v) {
        const auto c = relabel[raw[v]];
        result.component_of[v] = c;
        result.components[c].cells.push_back(static_cast<CellId>(v));
    }

    // Internal edges, and the exact-edge subgraph restricted to each component.
    std::vector<std::size_t> exact_offsets(n + 1, 0);
    std::vector<CellId> exact_targets;
    for (std::size_t v = 0; v < n; ++v) {
        const auto t = g.targets(static_cast<CellId>(v));
        const auto ex = g.edge_exact(static_cast<CellId>(v));
        const auto cv = result.component_of[v];
        for (std::size_t e = 0; e < t.size(); ++e) {
            if (result.component_of[t[e]] != cv) {
                continue;
            }
            ++result.components[cv].internal_edges;
            if (ex[e] && (exact_targets.empty() || exact_offsets[v] == exact_targets.size() ||
                          exact_targets.back() != t[e])) {
                exact_targets.push_back(t[e]);
            }
        }
        exact_offsets[v + 1] = exact_targets.size();
    }
    for (auto& comp : result.components) {
        comp.is_recurrent = comp.internal_edges > 0;
    }
    std::uint32_t exact_count = 0;
    const auto exact_comp = tarjan(n, exact_offsets, exact_targets, exact_count);
    std::vector<std::size_t> exact_size(exact_count, 0);
    for (std::size_t v = 0; v < n; ++v) {
        ++exact_size[exact_comp[v]];
    }
    for (std::size_t v = 0; v < n; ++v) {
        for (std::size_t e = exact_offsets[v]; e < exact_offsets[v + 1]; ++e) {
            const CellId w = exact_targets[e];
            // An exact cycle exists iff some exact edge stays inside an exact SCC
            // (self-loop, or an SCC with two or more nodes).
            if (exact_comp[w] == exact_comp[v] && (w == v || exact_size[exact_comp[v]] > 1)) {
                result.components[result.component_of[v]].carries_chain = true;
            }
        }
    }
    return result;
}

std::vector<Component> recurrent_components(const SccResult& scc) {
    std::vector<Component> out;
    for (const auto& c : scc.components) {
        if (c.carries_chain) {
            out.push_back(c);
        }
    }
    return out;
}

std::vector<CellId> chain_reachable(const TransitionGraph& g, std::span<const CellId> from) {
    const std::size_t n = g.node_count();
    std::vector<std::uint8_t> seen(n, 0);
    std::deque<CellId> queue;
    for (CellId s : from) {
        if (s >= n) {
            throw Error(ErrorKind::InvalidArgument, "cell id out of range");
        }
        for (CellId w : g.targets(s)) {
            if (!seen[w]) {
                seen[w] = 1;
                queue.push_back(w);
            }
        }
    }
    while (!queue.empty()) {
        const CellId v = queue.front();
        queue.pop_front();
        for (CellId w : g.targets(v)) {
            if (!seen[w]) {
                seen[w] = 1;
                queue.push_back(w);
            }
        }
    }
    std::vector<CellId> out;
    for (std::size_t v = 0; v < n; ++v) {
        if (seen[v]) {
            out.push_back(static_cast<CellId>(v));
        }
    }
    return out;
}

std::optional<GraphPath> shortest_path(const TransitionGraph& g, CellId from, CellId to,
                                       const std::vector<std::uint8_t>& allowed, int min_edges) {
    const std::size_t n = g.node_count();
    if (from >= n || to >= n) {
        throw Error(ErrorKind::InvalidArgument, "cell id out of range");
    }
    if (from == to && min_edges <= 0) {
        return GraphPath{{from}, {}};
    }
    constexpr CellId kNone = std::numeric_limits<CellId>::max();
    std::vector<CellId> parent(n, kNone);
    std::vector<std::uint32_t> via(n, 0);
    std::vector<std::uint8_t> seen(n, 0);
    std::deque<CellId> queue;
    auto expand = [&](CellId v) -> bool {
        const auto t = g.targets(v);
        const auto c = g.edge_controls(v);
        for (std::size_t e = 0; e < t.size(); ++e) {
            const CellId w = t[e];
            if (seen[w] || (!allowed.empty() && !allowed[w])) {
                continue;
            }
            seen[w] = 1;
            parent[w] = v;
            via[w] = c[e];
            if (w == to) {
                return true;
            }
            queue.push_back(w);
        }
        return false;
    };
    bool found = expand(from);
    while (!found && !queue.empty()) {
        const CellId v = queue.front();
        queue.pop_front();
        found = expand(v);
    }
    if (!found) {
        return std::nullopt;
    }
    GraphPath path;
    CellId cur = to;
    path.cells.push_back(cur);
    do {
        path.controls.push_back(via[cur]);
        cur = parent[cur];
        path.cells.push_back(cur);
    } while (cur != from || path.cells.size() == 1);
    std::reverse(path.cells.begin(), path.cells.end());
    std::reverse(path.controls.begin(), path.controls.end());
    return path;
}

}  // namespace selgrade
