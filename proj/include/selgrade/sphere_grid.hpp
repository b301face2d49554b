#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "selgrade/geometry.hpp"

namespace selgrade {

using CellId = std::uint32_t;

inline constexpr int kDefaultMaxDimension = 4;

/// Covering of S^{d-1} by cells (center, radius). Every unit vector lies within
/// `radius(lookup(x))` (arc length, hence also chordal distance) of the center of its cell.
///
/// d = 2: n equal arcs, cell k centered at angle 2*pi*k/n with radius pi/n.
/// d >= 3: gnomonic cube-surface grid with n^(d-1) cells per face, ids sorted
/// lexicographically by center coordinates.
class SphereGrid {
public:
    [[nodiscard]] int dimension() const { return dim_; }
    [[nodiscard]] int resolution() const { return n_; }
    [[nodiscard]] std::size_t size() const { return radii_.size(); }

    [[nodiscard]] std::span<const double> center_coords(CellId id) const {
        return {centers_.data() + static_cast<std::size_t>(id) * static_cast<std::size_t>(dim_),
                static_cast<std::size_t>(dim_)};
    }
    [[nodiscard]] Vector center_vector(CellId id) const;
    [[nodiscard]] SpherePoint center(CellId id) const { return SpherePoint::from_unit(center_vector(id)); }
    [[nodiscard]] double radius(CellId id) const { return radii_[id]; }
    [[nodiscard]] double max_radius() const { return max_radius_; }
    [[nodiscard]] const std::vector<double>& flat_centers() const { return centers_; }

    /// Cell whose region contains the direction of x (x need not be normalized, must be nonzero).
    [[nodiscard]] CellId lookup(const Vector& x) const;
    /// Cell containing the antipodal direction of the center of `id`.
    [[nodiscard]] CellId antipode(CellId id) const { return antipodes_[id]; }

    /// Mesh parameter: arc width 2*pi/n for d = 2, face width 2/n otherwise.
    [[nodiscard]] double mesh() const;

private:
    friend SphereGrid build_grid(int d, int n, int max_dimension);

    int dim_ = 0;
    int n_ = 0;
    std::vector<double> centers_;
    std::vector<double> radii_;
    std::vector<CellId> antipodes_;
    std::vector<CellId> key_to_id_;  // cube grids: (face, multi-index) key -> sorted id
    double max_radius_ = 0.0;
};

/// Throws UnsupportedDimension for d > max_dimension, InvalidArgument for d < 2,
/// odd n with d = 2, or n below the minimum (4 for d = 2, 2 otherwise).
SphereGrid build_grid(int d, int n, int max_dimension = kDefaultMaxDimension);

}  // namespace selgrade
