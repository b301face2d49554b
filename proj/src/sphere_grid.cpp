#include "selgrade/sphere_grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace selgrade {

namespace {

std::size_t ipow(std::size_t base, int e) {
    std::size_t out = 1;
    for (int i = 0; i < e; ++i) {
        out *= base;
    }
    return out;
}

double snap(double x) { return std::abs(x) < 1e-15 ? 0.0 : x; }

// Face coordinate of slot i: (2i + 1 - n) / n, written so that slot n-1-i is the exact negative.
double face_coord(int i, int n) { return static_cast<double>(2 * i + 1 - n) / n; }

double angle_between(const Vector& a, const Vector& b) {
    // atan2 form is accurate for small angles.
    const double cross = (a - b).norm();
    const double sum = (a + b).norm();
    return 2.0 * std::atan2(cross, sum);
}

}  // namespace

Vector SphereGrid::center_vector(CellId id) const {
    const auto c = center_coords(id);
    return Eigen::Map<const Vector>(c.data(), dim_);
}

double SphereGrid::mesh() const { return dim_ == 2 ? 2.0 * std::numbers::pi / n_ : 2.0 / n_; }

CellId SphereGrid::lookup(const Vector& x) const {
    if (x.size() != dim_) {
        throw Error(ErrorKind::InvalidArgument, "lookup point has wrong dimension");
    }
    if (dim_ == 2) {
        if (x[0] == 0.0 && x[1] == 0.0) {
            throw Error(ErrorKind::ZeroVector, "cannot look up the zero vector");
        }
        double angle = std::atan2(x[1], x[0]);
        if (angle < 0.0) {
            angle += 2.0 * std::numbers::pi;
        }
        const auto k = static_cast<long>(std::lround(angle / mesh()));
        return static_cast<CellId>(((k % n_) + n_) % n_);
    }
    Eigen::Index axis = 0;
    x.cwiseAbs().maxCoeff(&axis);
    const double lead = x[axis];
    if (lead == 0.0) {
        throw Error(ErrorKind::ZeroVector, "cannot look up the zero vector");
    }
    const std::size_t face = static_cast<std::size_t>(axis) * 2 + (lead > 0.0 ? 1 : 0);
    std::size_t key = face;
    for (int a = 0; a < dim_; ++a) {
        if (a == axis) {
            continue;
        }
        const double y = x[a] / std::abs(lead);
        const int idx = std::clamp(static_cast<int>(std::floor((y + 1.0) / 2.0 * n_)), 0, n_ - 1);
        key = key * static_cast<std::size_t>(n_) + static_cast<std::size_t>(idx);
    }
    return key_to_id_[key];
}

SphereGrid build_grid(int d, int n, int max_dimension) {
    if (d > max_dimension) {
        throw Error(ErrorKind::UnsupportedDimension,
                    "dimension " + std::to_string(d) + " exceeds the configured maximum " + std::to_string(max_dimension));
    }
    if (d < 2) {
        throw Error(ErrorKind::InvalidArgument, "sphere grids need d >= 2");
    }
    SphereGrid grid;
    grid.dim_ = d;
    grid.n_ = n;

    if (d == 2) {
        if (n < 4 || n % 2 != 0) {
            throw Error(ErrorKind::InvalidArgument, "circle grids need an even resolution n >= 4");
        }
        grid.centers_.resize(static_cast<std::size_t>(2 * n));
        const int half = n / 2;
        for (int k = 0; k < half; ++k) {
            const double angle = 2.0 * std::numbers::pi * k / n;
            const double c = snap(std::cos(angle));
            const double s = snap(std::sin(angle));
            grid.centers_[static_cast<std::size_t>(2 * k)] = c;
            grid.centers_[static_cast<std::size_t>(2 * k + 1)] = s;
            grid.centers_[static_cast<std::size_t>(2 * (k + half))] = -c;
            grid.centers_[static_cast<std::size_t>(2 * (k + half) + 1)] = -s;
        }
        grid.radii_.assign(static_cast<std::size_t>(n), std::numbers::pi / n);
        grid.antipodes_.resize(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) {
            grid.antipodes_[static_cast<std::size_t>(k)] = static_cast<CellId>((k + half) % n);
        }
        grid.max_radius_ = std::numbers::pi / n;
        return grid;
    }

    if (n < 2) {
        throw Error(ErrorKind::InvalidArgument, "cube-sphere grids need n >= 2");
    }
    const std::size_t per_face = ipow(static_cast<std::size_t>(n), d - 1);
    const std::size_t faces = static_cast<std::size_t>(2 * d);
    const std::size_t count = faces * per_face;

    struct Raw {
        Vector center;
        double radius;
        std::size_t key;
    };
    std::vector<Raw> raw;
    raw.reserve(count);
    std::vector<int> idx(static_cast<std::size_t>(d - 1));
    for (std::size_t face = 0; face < faces; ++face) {
        const int axis = static_cast<int>(face / 2);
        const double sign = (face % 2 == 1) ? 1.0 : -1.0;
        for (std::size_t lin = 0; lin < per_face; ++lin) {
            std::size_t rem = lin;
            for (int j = d - 2; j >= 0; --j) {
                idx[static_cast<std::size_t>(j)] = static_cast<int>(rem % static_cast<std::size_t>(n));
                rem /= static_cast<std::size_t>(n);
            }
            Vector point(d);
            int slot = 0;
            for (int a = 0; a < d; ++a) {
                point[a] = (a == axis) ? sign : face_coord(idx[static_cast<std::size_t>(slot++)], n);
            }
            const Vector center = point / point.norm();
            // Farthest corner after normalization bounds the cell (gnomonic cells are convex).
            double radius = 0.0;
            for (std::size_t corner = 0; corner < (std::size_t{1} << (d - 1)); ++corner) {
                Vector q(d);
                int s = 0;
                for (int a = 0; a < d; ++a) {
                    if (a == axis) {
                        q[a] = sign;
                        continue;
                    }
                    const int i = idx[static_cast<std::size_t>(s)] + static_cast<int>((corner >> s) & 1U);
                    q[a] = static_cast<double>(2 * i - n) / n;
                    ++s;
                }
                radius = std::max(radius, angle_between(center, q / q.norm()));
            }
            raw.push_back(Raw{center, radius, face * per_face + lin});
        }
    }
    std::vector<std::size_t> order(count);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto& ca = raw[a].center;
        const auto& cb = raw[b].center;
        return std::lexicographical_compare(ca.data(), ca.data() + d, cb.data(), cb.data() + d);
    });
    grid.centers_.resize(count * static_cast<std::size_t>(d));
    grid.radii_.resize(count);
    grid.key_to_id_.resize(count);
    for (std::size_t id = 0; id < count; ++id) {
        const auto& r = raw[order[id]];
        std::copy(r.center.data(), r.center.data() + d, grid.centers_.begin() + static_cast<std::ptrdiff_t>(id * static_cast<std::size_t>(d)));
        grid.radii_[id] = r.radius;
        grid.key_to_id_[r.key] = static_cast<CellId>(id);
        grid.max_radius_ = std::max(grid.max_radius_, r.radius);
    }
    grid.antipodes_.resize(count);
    for (std::size_t id = 0; id < count; ++id) {
        grid.antipodes_[id] = grid.lookup(-grid.center_vector(static_cast<CellId>(id)));
    }
    return grid;
}

}  // namespace selgrade
