#pragma once

#include <span>
#include <vector>

#include "selgrade/graph.hpp"
#include "selgrade/sphere_grid.hpp"

namespace selgrade {

/// Cells on the closed upper hemisphere {(s, r) : |(s, r)| = 1, r >= 0} of S^d.
///
/// Level 0 is the pole cell. Levels k = 1 .. m-1 sit at colatitude k*pi/(2m) and carry a
/// scaled copy of the sphere grid. Level m is the equator ring r = 0, with the same centers
/// and radii as the sphere grid, so that equator dynamics reproduce the sphere graph.
class HemisphereGrid {
public:
    [[nodiscard]] int dimension() const { return sphere_.dimension(); }  ///< d; points live in R^(d+1)
    [[nodiscard]] int levels() const { return levels_; }                 ///< m
    [[nodiscard]] const SphereGrid& sphere() const { return sphere_; }
    [[nodiscard]] std::size_t size() const { return radii_.size(); }

    [[nodiscard]] std::span<const double> center_coords(CellId id) const {
        const auto D = static_cast<std::size_t>(dimension() + 1);
        return {centers_.data() + static_cast<std::size_t>(id) * D, D};
    }
    [[nodiscard]] PoincarePoint center(CellId id) const;
    [[nodiscard]] double radius(CellId id) const { return radii_[id]; }
    [[nodiscard]] double max_radius() const { return max_radius_; }
    [[nodiscard]] const std::vector<double>& flat_centers() const { return centers_; }

    [[nodiscard]] static constexpr CellId pole() { return 0; }
    [[nodiscard]] int level(CellId id) const;
    [[nodiscard]] bool is_equator(CellId id) const { return level(id) == levels_; }
    /// Sphere cell carried by a ring or equator cell (the pole has none).
    [[nodiscard]] CellId sphere_cell(CellId id) const;
    [[nodiscard]] CellId cell(int level, CellId sphere_cell) const;
    [[nodiscard]] CellId equator_cell(CellId sphere_cell) const { return cell(levels_, sphere_cell); }
    [[nodiscard]] double colatitude(int level) const;

    [[nodiscard]] CellId lookup(const PoincarePoint& p) const;

private:
    friend HemisphereGrid build_hemisphere_grid(int d, int n, int m, int max_dimension);

    SphereGrid sphere_;
    int levels_ = 0;
    std::vector<double> centers_;
    std::vector<double> radii_;
    double max_radius_ = 0.0;
};

/// Throws InvalidArgument for m < 2 and the errors of build_grid.
HemisphereGrid build_hemisphere_grid(int d, int n, int m, int max_dimension = kDefaultMaxDimension);

/// Transition graph of pi_P Phi on hemisphere cell centers with the same fattened edge rule as
/// the sphere graph. Equator cells evolve by the sphere flow and keep one edge per control;
/// other cells keep one edge per target (lowest control).
TransitionGraph build_hemisphere_graph(const FlowSystem& system, const HemisphereGrid& grid, const GraphParams& params);

}  // namespace selgrade
