#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "selgrade/geometry.hpp"

namespace selgrade {

/// Control values u in R^m; empty for autonomous systems.
using Control = Eigen::VectorXd;

/// Index into FlowSystem::control_samples().
struct ControlLabel {
    std::size_t index = 0;
    friend bool operator==(ControlLabel, ControlLabel) = default;
};

struct ControlBox {
    Eigen::VectorXd lower;
    Eigen::VectorXd upper;

    [[nodiscard]] bool contains(const Control& u, double tol = 1e-12) const;
};

/// Vertices of the box plus its center (the default control sampling).
std::vector<Control> box_vertices_and_center(const ControlBox& box);

/// Generator of a linear flow on R^d: x' = (A0 + sum_i u_i A_i) x with u in a box.
/// Immutable after construction.
class FlowSystem {
public:
    enum class Kind { Autonomous, Bilinear };

    static FlowSystem autonomous(Eigen::MatrixXd a);
    /// matrices = {A0, A1, ..., Am}; samples must lie in the box and be nonempty.
    static FlowSystem bilinear(std::vector<Eigen::MatrixXd> matrices, ControlBox box,
                               std::vector<Control> samples);

    [[nodiscard]] Kind kind() const { return kind_; }
    [[nodiscard]] int dimension() const { return static_cast<int>(matrices_.front().rows()); }
    [[nodiscard]] int control_dimension() const { return static_cast<int>(matrices_.size()) - 1; }
    [[nodiscard]] const std::vector<Eigen::MatrixXd>& matrices() const { return matrices_; }
    [[nodiscard]] const ControlBox& box() const { return box_; }
    [[nodiscard]] const std::vector<Control>& control_samples() const { return samples_; }
    [[nodiscard]] const Control& control(ControlLabel label) const;

    /// A0 + sum_i u_i A_i.
    [[nodiscard]] Eigen::MatrixXd generator(const Control& u) const;

private:
    FlowSystem() = default;
    Kind kind_ = Kind::Autonomous;
    std::vector<Eigen::MatrixXd> matrices_;
    ControlBox box_;
    std::vector<Control> samples_;
};

struct SphereImage {
    SpherePoint image;
    double log_growth = 0.0;
};

/// Evaluation record of one constant-control step on the sphere.
struct FlowStep {
    SpherePoint point;
    double time = 0.0;
    ControlLabel control;
    SpherePoint image;
    double log_growth = 0.0;
};

inline constexpr double kOverflowThreshold = 1e300;

/// exp(M t) for the generator M; accurate to ~1e-13 relative via Pade scaling-and-squaring.
Eigen::MatrixXd transition_matrix(const FlowSystem& system, double t, const Control& u);

Vector flow(const FlowSystem& system, const Vector& v, double t, const Control& u);
Vector flow(const FlowSystem& system, const Vector& v, double t, ControlLabel u);

SphereImage sphere_flow(const FlowSystem& system, const SpherePoint& s, double t, const Control& u);
SphereImage sphere_flow(const FlowSystem& system, const SpherePoint& s, double t, ControlLabel u);
FlowStep sphere_step(const FlowSystem& system, const SpherePoint& s, double t, ControlLabel u);

PoincarePoint poincare_flow(const FlowSystem& system, const PoincarePoint& p, double t, const Control& u);
PoincarePoint poincare_flow(const FlowSystem& system, const PoincarePoint& p, double t, ControlLabel u);

/// Applies a precomputed transition matrix; shared by the flow functions and the graph builders.
Vector apply_checked(const Eigen::MatrixXd& phi, const Vector& v);
SphereImage sphere_image(const Eigen::MatrixXd& phi, const Vector& unit);
PoincarePoint poincare_image(const Eigen::MatrixXd& phi, const PoincarePoint& p);

/// Transition matrices exp(M(u) T) for every control sample at one step time.
class StepMaps {
public:
    StepMaps(const FlowSystem& system, double t);

    [[nodiscard]] std::size_t size() const { return maps_.size(); }
    [[nodiscard]] const Eigen::MatrixXd& operator[](std::size_t control) const { return maps_[control]; }
    [[nodiscard]] double time() const { return time_; }

private:
    double time_;
    std::vector<Eigen::MatrixXd> maps_;
};

/// Memoizes exp(M(u) t) for the distinct (t, u) pairs met while replaying chains, which
/// typically reuse a handful of controls over thousands of steps.
class TransitionCache {
public:
    explicit TransitionCache(const FlowSystem& system) : system_(&system) {}

    [[nodiscard]] const Eigen::MatrixXd& get(double t, const Control& u);

private:
    struct Entry {
        double time;
        Control control;
        Eigen::MatrixXd phi;
    };
    const FlowSystem* system_;
    std::vector<Entry> entries_;
};

}  // namespace selgrade
