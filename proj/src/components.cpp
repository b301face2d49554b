#include "selgrade/components.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

namespace selgrade {

namespace {

std::uint32_t find_root(std::vector<std::uint32_t>& parent, std::uint32_t x) {
    while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    return x;
}

double directed_hausdorff(const SphereGrid& grid, const std::vector<CellId>& from, const std::vector<CellId>& to) {
    double worst = 0.0;
    for (CellId a : from) {
        const Vector p = -grid.center_vector(a);
        double best = std::numeric_limits<double>::infinity();
        for (CellId b : to) {
            best = std::min(best, (p - grid.center_vector(b)).norm());
            if (best == 0.0) {
                break;
            }
        }
        worst = std::max(worst, best);
    }
    return worst;
}

// Hausdorff distance between -A and B (chordal, on cell centers).
double antipodal_asymmetry(const SphereGrid& grid, const std::vector<CellId>& a, const std::vector<CellId>& b) {
    std::vector<CellId> mirrored;
    mirrored.reserve(a.size());
    for (CellId c : a) {
        mirrored.push_back(grid.antipode(c));
    }
    std::sort(mirrored.begin(), mirrored.end());
    if (mirrored == b) {
        return 0.0;
    }
    // Distances are measured from -A to B and from -B to A (equivalently B to -A).
    return std::max(directed_hausdorff(grid, a, b), directed_hausdorff(grid, b, a));
}

}  // namespace

bool ComponentStructure::counts_consistent(int dimension) const {
    const std::size_t l1 = sphere_count();
    const std::size_t l = projective_count();
    return l1 >= 1 && l1 <= 2 * l && l <= static_cast<std::size_t>(dimension);
}

ComponentStructure pair_with_projective(const std::vector<Component>& components, const SphereGrid& grid) {
    ComponentStructure out;
    out.components = components;
    const std::size_t k = components.size();
    std::vector<std::uint32_t> parent(k);
    std::iota(parent.begin(), parent.end(), 0U);

    constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> owner(grid.size(), kNone);
    for (std::uint32_t i = 0; i < k; ++i) {
        for (CellId c : components[i].cells) {
            const CellId q = std::min(c, grid.antipode(c));
            if (owner[q] == kNone) {
                owner[q] = i;
            } else {
                parent[find_root(parent, i)] = find_root(parent, owner[q]);
            }
        }
    }

    std::vector<std::uint32_t> class_of_root(k, kNone);
    for (std::uint32_t i = 0; i < k; ++i) {
        const auto r = find_root(parent, i);
        if (class_of_root[r] == kNone) {
            class_of_root[r] = static_cast<std::uint32_t>(out.classes.size());
            out.classes.push_back({static_cast<std::uint32_t>(out.classes.size()), {}, 0.0});
        }
        out.classes[class_of_root[r]].members.push_back(i);
    }

    const double tolerance = grid.max_radius() * (1.0 + 1e-9);
    for (auto& cls : out.classes) {
        if (cls.members.size() > 2) {
            throw Error(ErrorKind::PairingViolation,
                        "projective class " + std::to_string(cls.id) + " has " + std::to_string(cls.members.size()) +
                            " sphere components; refine the grid");
        }
        const auto& a = components[cls.members.front()].cells;
        const auto& b = components[cls.members.back()].cells;
        cls.asymmetry = antipodal_asymmetry(grid, a, b);
        if (cls.asymmetry > tolerance) {
            throw Error(ErrorKind::PairingViolation, "projective class " + std::to_string(cls.id) +
                                                         " is not antipodally symmetric (Hausdorff distance " +
                                                         std::to_string(cls.asymmetry) + ")");
        }
    }
    return out;
}

ProjectiveQuotient projective_quotient(const TransitionGraph& g, const SphereGrid& grid) {
    ProjectiveQuotient q;
    const std::size_t n = grid.size();
    constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();
    q.class_of_cell.assign(n, kNone);
    for (CellId c = 0; c < n; ++c) {
        const CellId rep = std::min(c, grid.antipode(c));
        if (q.class_of_cell[rep] == kNone) {
            q.class_of_cell[rep] = static_cast<std::uint32_t>(q.representative.size());
            q.representative.push_back(rep);
        }
        q.class_of_cell[c] = q.class_of_cell[rep];
    }
    const std::size_t controls = g.control_count();
    std::vector<double> weights(q.representative.size() * controls);
    for (std::size_t i = 0; i < q.representative.size(); ++i) {
        for (std::size_t u = 0; u < controls; ++u) {
            weights[i * controls + u] = g.weight(q.representative[i], u);
        }
    }
    std::vector<TransitionGraph::EdgeRecord> edges;
    for (CellId rep : q.representative) {
        const auto t = g.targets(rep);
        const auto ctl = g.edge_controls(rep);
        const auto ex = g.edge_exact(rep);
        for (std::size_t e = 0; e < t.size(); ++e) {
            edges.push_back({q.class_of_cell[rep], q.class_of_cell[t[e]], ctl[e], ex[e] != 0});
        }
    }
    q.graph = TransitionGraph::from_edges(q.representative.size(), controls, std::move(weights), std::move(edges),
                                          g.params());
    return q;
}

int component_containing(const std::vector<Component>& components, const SphereGrid& grid, const Vector& x) {
    const CellId cell = grid.lookup(x);
    for (std::size_t i = 0; i < components.size(); ++i) {
        if (std::binary_search(components[i].cells.begin(), components[i].cells.end(), cell)) {
            return static_cast<int>(i);
        }
    }
    return -1;
}

}  // namespace selgrade
