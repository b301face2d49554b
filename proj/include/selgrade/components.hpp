#pragma once

#include <cstdint>
#include <vector>

#include "selgrade/graph.hpp"
#include "selgrade/sphere_grid.hpp"

namespace selgrade {

/// Recurrent sphere components sharing one projective image. Holds one component that is
/// antipodally symmetric, or two components that are antipodal images of each other.
struct ProjectiveClass {
    std::uint32_t id = 0;
    std::vector<std::uint32_t> members;  ///< indices into ComponentStructure::components
    /// Hausdorff distance between the antipodal image of the first member and the last one.
    double asymmetry = 0.0;
};

struct ComponentStructure {
    std::vector<Component> components;  ///< recurrent sphere components, l1 of them
    std::vector<ProjectiveClass> classes;

    [[nodiscard]] std::size_t sphere_count() const { return components.size(); }
    [[nodiscard]] std::size_t projective_count() const { return classes.size(); }
    /// 1 <= l1 <= 2 l <= 2 d.
    [[nodiscard]] bool counts_consistent(int dimension) const;
};

/// Groups components whose antipodal quotients intersect. Throws PairingViolation when a
/// class has three or more members or antipodal symmetry fails beyond one cell radius.
ComponentStructure pair_with_projective(const std::vector<Component>& components, const SphereGrid& grid);

/// Sphere graph modulo the antipodal map. Node q stands for the cell pair
/// {representative[q], antipode}; weights are those of the representative.
struct ProjectiveQuotient {
    std::vector<std::uint32_t> class_of_cell;
    std::vector<CellId> representative;
    TransitionGraph graph;
};

ProjectiveQuotient projective_quotient(const TransitionGraph& g, const SphereGrid& grid);

/// Index of the component in `components` containing the grid cell of x, or -1.
[[nodiscard]] int component_containing(const std::vector<Component>& components, const SphereGrid& grid,
                                       const Vector& x);

}  // namespace selgrade
