#pragma once

#include <Eigen/Dense>

#include "selgrade/error.hpp"

namespace selgrade {

/// A point of the fiber R^d.
using Vector = Eigen::VectorXd;

inline constexpr double kZeroNormThreshold = 1e-300;
inline constexpr double kUnitTolerance = 1e-12;
inline constexpr double kCanonicalSignThreshold = 1e-12;
inline constexpr double kEquatorThreshold = 1e-12;

/// Unit vector of R^d. Only constructible through normalize() or from_unit().
class SpherePoint {
public:
    SpherePoint() = default;

    /// Wraps an already normalized vector; throws InvalidArgument if |v| is off by more than 1e-12.
    static SpherePoint from_unit(Vector v);

    [[nodiscard]] const Vector& coords() const { return coords_; }
    [[nodiscard]] Eigen::Index dim() const { return coords_.size(); }
    [[nodiscard]] double operator[](Eigen::Index i) const { return coords_[i]; }

    friend bool operator==(const SpherePoint& a, const SpherePoint& b) { return a.coords_ == b.coords_; }

private:
    explicit SpherePoint(Vector v) : coords_(std::move(v)) {}
    friend SpherePoint normalize(const Vector& v);
    friend SpherePoint antipode(const SpherePoint& s);
    Vector coords_;
};

/// Line through the origin, stored as the sphere point whose first coordinate
/// above 1e-12 in magnitude is positive.
class ProjectivePoint {
public:
    [[nodiscard]] const SpherePoint& rep() const { return rep_; }
    friend bool operator==(const ProjectivePoint& a, const ProjectivePoint& b) { return a.rep_ == b.rep_; }

private:
    explicit ProjectivePoint(SpherePoint s) : rep_(std::move(s)) {}
    friend ProjectivePoint projectivize(const SpherePoint& s);
    SpherePoint rep_;
};

/// Point (s, r) of the closed upper hemisphere of S^d; r = 0 is the equator.
struct PoincarePoint {
    Vector s;
    double r = 1.0;

    [[nodiscard]] Vector as_vector() const;
    [[nodiscard]] bool on_equator() const { return r <= kEquatorThreshold; }
};

SpherePoint normalize(const Vector& v);
SpherePoint antipode(const SpherePoint& s);
ProjectivePoint projectivize(const SpherePoint& s);

/// Central projection v -> (v, 1) / |(v, 1)|.
PoincarePoint poincare_project(const Vector& v);
/// Inverse of poincare_project on the open hemisphere; throws EquatorPoint for r <= 1e-12.
Vector poincare_unproject(const PoincarePoint& p);
PoincarePoint equator_embed(const SpherePoint& s);

double chordal_distance(const Vector& a, const Vector& b);
double chordal_distance(const PoincarePoint& a, const PoincarePoint& b);

}  // namespace selgrade
