#include "selgrade/hemisphere.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "parallel.hpp"
#include "selgrade/spatial_index.hpp"

namespace selgrade {

PoincarePoint HemisphereGrid::center(CellId id) const {
    const auto c = center_coords(id);
    const auto d = static_cast<Eigen::Index>(dimension());
    PoincarePoint p;
    p.s = Eigen::Map<const Vector>(c.data(), d);
    p.r = c[static_cast<std::size_t>(d)];
    return p;
}

int HemisphereGrid::level(CellId id) const {
    if (id == pole()) {
        return 0;
    }
    return 1 + static_cast<int>((id - 1) / sphere_.size());
}

CellId HemisphereGrid::sphere_cell(CellId id) const {
    if (id == pole() || id >= size()) {
        throw Error(ErrorKind::InvalidArgument, "cell carries no sphere cell");
    }
    return static_cast<CellId>((id - 1) % sphere_.size());
}

CellId HemisphereGrid::cell(int level, CellId sphere_cell) const {
    if (level == 0) {
        return pole();
    }
    if (level < 0 || level > levels_ || sphere_cell >= sphere_.size()) {
        throw Error(ErrorKind::InvalidArgument, "hemisphere cell index out of range");
    }
    return static_cast<CellId>(1 + static_cast<std::size_t>(level - 1) * sphere_.size() + sphere_cell);
}

double HemisphereGrid::colatitude(int level) const { return level * std::numbers::pi / (2.0 * levels_); }

CellId HemisphereGrid::lookup(const PoincarePoint& p) const {
    if (p.s.size() != dimension()) {
        throw Error(ErrorKind::InvalidArgument, "hemisphere point has wrong dimension");
    }
    if (p.r < -kEquatorThreshold) {
        throw Error(ErrorKind::InvalidArgument, "point lies below the equator");
    }
    if (p.on_equator()) {
        return equator_cell(sphere_.lookup(p.s));
    }
    const double phi = std::atan2(p.s.norm(), p.r);
    const int k = std::clamp(static_cast<int>(std::lround(phi / colatitude(1))), 0, levels_ - 1);
    return k == 0 ? pole() : cell(k, sphere_.lookup(p.s));
}

HemisphereGrid build_hemisphere_grid(int d, int n, int m, int max_dimension) {
    if (m < 2) {
        throw Error(ErrorKind::InvalidArgument, "hemisphere grids need at least 2 radial levels");
    }
    HemisphereGrid grid;
    grid.sphere_ = build_grid(d, n, max_dimension);
    grid.levels_ = m;
    const SphereGrid& s = grid.sphere_;
    const std::size_t S = s.size();
    const std::size_t D = static_cast<std::size_t>(d + 1);
    const double step = grid.colatitude(1);
    grid.centers_.assign((1 + static_cast<std::size_t>(m) * S) * D, 0.0);
    grid.radii_.assign(1 + static_cast<std::size_t>(m) * S, 0.0);

    grid.centers_[D - 1] = 1.0;
    grid.radii_[0] = step / 2.0;
    for (int k = 1; k <= m; ++k) {
        const double phi = grid.colatitude(k);
        const double sin_phi = k == m ? 1.0 : std::sin(phi);
        const double cos_phi = k == m ? 0.0 : std::cos(phi);
        for (CellId j = 0; j < S; ++j) {
            const CellId id = grid.cell(k, j);
            const auto c = s.center_coords(j);
            for (std::size_t a = 0; a + 1 < D; ++a) {
                grid.centers_[id * D + a] = sin_phi * c[a];
            }
            grid.centers_[id * D + D - 1] = cos_phi;
            if (k == m) {
                grid.radii_[id] = s.radius(j);
            } else if (k == m - 1) {
                // The last ring reaches down to the equator.
                grid.radii_[id] = step + s.radius(j);
            } else {
                grid.radii_[id] = step / 2.0 + std::sin(phi + step / 2.0) * s.radius(j);
            }
        }
    }
    grid.max_radius_ = *std::max_element(grid.radii_.begin(), grid.radii_.end());
    return grid;
}

TransitionGraph build_hemisphere_graph(const FlowSystem& system, const HemisphereGrid& grid, const GraphParams& params) {
    validate(params);
    if (system.dimension() != grid.dimension()) {
        throw Error(ErrorKind::InvalidArgument, "grid and system dimensions differ");
    }
    const StepMaps maps(system, params.step_time);
    const std::size_t cells = grid.size();
    const std::size_t controls = maps.size();
    const int D = grid.dimension() + 1;
    const SpatialIndex index(grid.flat_centers(), D, params.epsilon + 2.0 * grid.max_radius());

    std::vector<double> weights(cells * controls);
    std::vector<std::vector<TransitionGraph::EdgeRecord>> slots(detail::worker_slots(cells));
    detail::parallel_chunks(cells, [&](std::size_t begin, std::size_t end, std::size_t slot) {
        auto& out = slots[slot];
        std::vector<TransitionGraph::EdgeRecord> local;
        for (std::size_t c = begin; c < end; ++c) {
            const auto id = static_cast<CellId>(c);
            const PoincarePoint p = grid.center(id);
            const bool equator = grid.is_equator(id);
            local.clear();
            for (std::size_t u = 0; u < controls; ++u) {
                PoincarePoint img;
                if (equator) {
                    const auto si = sphere_image(maps[u], p.s);
                    weights[c * controls + u] = si.log_growth;
                    img = equator_embed(si.image);
                } else {
                    const Vector x = poincare_unproject(p);
                    const Vector y = apply_checked(maps[u], x);
                    // Diagnostic weight: log-growth of the direction.
                    weights[c * controls + u] = x.norm() > 0.0 ? std::log(y.norm() / x.norm()) : 0.0;
                    img = poincare_project(y);
                }
                const Vector q = img.as_vector();
                const double base = params.epsilon + grid.radius(id);
                index.for_each_candidate({q.data(), static_cast<std::size_t>(q.size())}, base + grid.max_radius(),
                                         [&](std::uint32_t j) {
                                             const double dist = ordered_distance(q.data(), grid.center_coords(j).data(), D);
                                             if (dist < base + grid.radius(j)) {
                                                 local.push_back({id, j, static_cast<std::uint32_t>(u),
                                                                  dist < params.epsilon + grid.radius(j)});
                                             }
                                         });
            }
            std::sort(local.begin(), local.end(), [](const auto& a, const auto& b) {
                if (a.to != b.to) return a.to < b.to;
                if (a.control != b.control) return a.control < b.control;
                return a.exact > b.exact;
            });
            for (std::size_t e = 0; e < local.size(); ++e) {
                if (!equator && e > 0 && local[e].to == local[e - 1].to) {
                    out.back().exact = out.back().exact || local[e].exact;
                    continue;
                }
                out.push_back(local[e]);
            }
        }
    });
    std::vector<TransitionGraph::EdgeRecord> edges;
    std::size_t total = 0;
    for (const auto& s : slots) {
        total += s.size();
    }
    edges.reserve(total);
    for (auto& s : slots) {
        edges.insert(edges.end(), s.begin(), s.end());
        std::vector<TransitionGraph::EdgeRecord>().swap(s);
    }
    return TransitionGraph::from_edges(cells, controls, std::move(weights), std::move(edges), params);
}

}  // namespace selgrade
