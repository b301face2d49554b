#include "selgrade/flow.hpp"

#include <cmath>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

namespace selgrade {

namespace {

void check_matrix(const Eigen::MatrixXd& m, Eigen::Index d, std::size_t index) {
    if (m.rows() != d || m.cols() != d) {
        throw Error(ErrorKind::InvalidArgument, "matrix A" + std::to_string(index) + " is not " +
                                                    std::to_string(d) + "x" + std::to_string(d));
    }
    if (!m.allFinite()) {
        throw Error(ErrorKind::InvalidArgument, "matrix A" + std::to_string(index) + " has non-finite entries");
    }
}

}  // namespace

bool ControlBox::contains(const Control& u, double tol) const {
    if (u.size() != lower.size()) {
        return false;
    }
    for (Eigen::Index i = 0; i < u.size(); ++i) {
        if (u[i] < lower[i] - tol || u[i] > upper[i] + tol) {
            return false;
        }
    }
    return true;
}

std::vector<Control> box_vertices_and_center(const ControlBox& box) {
    const auto m = box.lower.size();
    std::vector<Control> out;
    if (m == 0) {
        out.emplace_back(0);
        return out;
    }
    const std::size_t count = std::size_t{1} << m;
    for (std::size_t mask = 0; mask < count; ++mask) {
        Control u(m);
        for (Eigen::Index i = 0; i < m; ++i) {
            u[i] = (mask >> i) & 1U ? box.upper[i] : box.lower[i];
        }
        out.push_back(std::move(u));
    }
    out.emplace_back((box.lower + box.upper) / 2.0);
    return out;
}

FlowSystem FlowSystem::autonomous(Eigen::MatrixXd a) {
    if (a.rows() < 1) {
        throw Error(ErrorKind::InvalidArgument, "dimension must be at least 1");
    }
    check_matrix(a, a.rows(), 0);
    FlowSystem sys;
    sys.kind_ = Kind::Autonomous;
    sys.matrices_.push_back(std::move(a));
    sys.box_ = ControlBox{Eigen::VectorXd(0), Eigen::VectorXd(0)};
    sys.samples_.emplace_back(0);
    return sys;
}

FlowSystem FlowSystem::bilinear(std::vector<Eigen::MatrixXd> matrices, ControlBox box,
                                std::vector<Control> samples) {
    if (matrices.empty() || matrices.front().rows() < 1) {
        throw Error(ErrorKind::InvalidArgument, "a bilinear system needs at least the drift matrix A0");
    }
    const auto d = matrices.front().rows();
    for (std::size_t i = 0; i < matrices.size(); ++i) {
        check_matrix(matrices[i], d, i);
    }
    const auto m = static_cast<Eigen::Index>(matrices.size()) - 1;
    if (box.lower.size() != m || box.upper.size() != m) {
        throw Error(ErrorKind::InvalidArgument, "control box dimension does not match the number of control matrices");
    }
    for (Eigen::Index i = 0; i < m; ++i) {
        if (!(box.lower[i] <= box.upper[i])) {
            throw Error(ErrorKind::InvalidArgument, "control box has lower > upper in coordinate " + std::to_string(i));
        }
    }
    if (samples.empty()) {
        throw Error(ErrorKind::InvalidArgument, "control samples must be nonempty");
    }
    for (const auto& u : samples) {
        if (!box.contains(u)) {
            throw Error(ErrorKind::InvalidArgument, "control sample outside the control box");
        }
    }
    FlowSystem sys;
    sys.kind_ = Kind::Bilinear;
    sys.matrices_ = std::move(matrices);
    sys.box_ = std::move(box);
    sys.samples_ = std::move(samples);
    return sys;
}

const Control& FlowSystem::control(ControlLabel label) const {
    if (label.index >= samples_.size()) {
        throw Error(ErrorKind::InvalidArgument, "control label " + std::to_string(label.index) + " out of range");
    }
    return samples_[label.index];
}

Eigen::MatrixXd FlowSystem::generator(const Control& u) const {
    if (u.size() != control_dimension()) {
        throw Error(ErrorKind::InvalidArgument, "control has " + std::to_string(u.size()) + " entries, expected " +
                                                    std::to_string(control_dimension()));
    }
    Eigen::MatrixXd m = matrices_.front();
    for (Eigen::Index i = 0; i < u.size(); ++i) {
        m += u[i] * matrices_[static_cast<std::size_t>(i) + 1];
    }
    return m;
}

Eigen::MatrixXd transition_matrix(const FlowSystem& system, double t, const Control& u) {
    if (!std::isfinite(t)) {
        throw Error(ErrorKind::InvalidArgument, "flow time must be finite");
    }
    Eigen::MatrixXd scaled = system.generator(u) * t;
    Eigen::MatrixXd phi = scaled.exp();
    if (!phi.allFinite()) {
        throw Error(ErrorKind::Overflow, "matrix exponential overflowed");
    }
    return phi;
}

Vector apply_checked(const Eigen::MatrixXd& phi, const Vector& v) {
    Vector out = phi * v;
    if (!out.allFinite() || out.cwiseAbs().maxCoeff() > kOverflowThreshold) {
        throw Error(ErrorKind::Overflow, "flow component exceeds 1e300");
    }
    return out;
}

SphereImage sphere_image(const Eigen::MatrixXd& phi, const Vector& unit) {
    const Vector out = apply_checked(phi, unit);
    double norm = out.norm();
    if (!std::isfinite(norm) || norm < 1e-150) {
        norm = out.stableNorm();  // squares over- or underflow
    }
    if (norm < kZeroNormThreshold) {
        throw Error(ErrorKind::Degenerate, "flow image collapsed to zero");
    }
    return SphereImage{SpherePoint::from_unit(out / norm), std::log(norm)};
}

PoincarePoint poincare_image(const Eigen::MatrixXd& phi, const PoincarePoint& p) {
    if (p.on_equator()) {
        return equator_embed(sphere_image(phi, p.s).image);
    }
    return poincare_project(apply_checked(phi, poincare_unproject(p)));
}

Vector flow(const FlowSystem& system, const Vector& v, double t, const Control& u) {
    if (v.size() != system.dimension()) {
        throw Error(ErrorKind::InvalidArgument, "vector dimension does not match the system");
    }
    return apply_checked(transition_matrix(system, t, u), v);
}

Vector flow(const FlowSystem& system, const Vector& v, double t, ControlLabel u) {
    return flow(system, v, t, system.control(u));
}

SphereImage sphere_flow(const FlowSystem& system, const SpherePoint& s, double t, const Control& u) {
    if (s.dim() != system.dimension()) {
        throw Error(ErrorKind::InvalidArgument, "point dimension does not match the system");
    }
    return sphere_image(transition_matrix(system, t, u), s.coords());
}

SphereImage sphere_flow(const FlowSystem& system, const SpherePoint& s, double t, ControlLabel u) {
    return sphere_flow(system, s, t, system.control(u));
}

FlowStep sphere_step(const FlowSystem& system, const SpherePoint& s, double t, ControlLabel u) {
    auto img = sphere_flow(system, s, t, u);
    return FlowStep{s, t, u, std::move(img.image), img.log_growth};
}

PoincarePoint poincare_flow(const FlowSystem& system, const PoincarePoint& p, double t, const Control& u) {
    if (p.s.size() != system.dimension()) {
        throw Error(ErrorKind::InvalidArgument, "point dimension does not match the system");
    }
    return poincare_image(transition_matrix(system, t, u), p);
}

PoincarePoint poincare_flow(const FlowSystem& system, const PoincarePoint& p, double t, ControlLabel u) {
    return poincare_flow(system, p, t, system.control(u));
}

StepMaps::StepMaps(const FlowSystem& system, double t) : time_(t) {
    maps_.reserve(system.control_samples().size());
    for (const auto& u : system.control_samples()) {
        maps_.push_back(transition_matrix(system, t, u));
    }
}

const Eigen::MatrixXd& TransitionCache::get(double t, const Control& u) {
    for (const auto& e : entries_) {
        if (e.time == t && e.control.size() == u.size() && e.control == u) {
            return e.phi;
        }
    }
    if (entries_.size() >= 64) {
        entries_.erase(entries_.begin());
    }
    entries_.push_back({t, u, transition_matrix(*system_, t, u)});
    return entries_.back().phi;
}

}  // namespace selgrade
