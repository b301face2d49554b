#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

namespace selgrade {

/// Euclidean distance summed in coordinate order, so that padding with zero coordinates
/// (equator embedding) reproduces the same value bit for bit.
inline double ordered_distance(const double* a, const double* b, int dim) {
    double sum = 0.0;
    for (int i = 0; i < dim; ++i) {
        const double t = a[i] - b[i];
        sum += t * t;
    }
    return std::sqrt(sum);
}

/// Uniform bucket grid over [-1,1]^D for radius queries on sphere and hemisphere cell centers.
class SpatialIndex {
public:
    SpatialIndex(std::span<const double> coords, int dim, double bucket_size);

    /// Calls visit(id) for every point whose bucket intersects the box [p - radius, p + radius].
    /// Candidates are not distance-filtered.
    template <typename Visit>
    void for_each_candidate(std::span<const double> p, double radius, Visit&& visit) const {
        int lo[kMaxDim];
        int hi[kMaxDim];
        for (int a = 0; a < dim_; ++a) {
            lo[a] = bucket_of(p[a] - radius);
            hi[a] = bucket_of(p[a] + radius);
        }
        int cur[kMaxDim];
        for (int a = 0; a < dim_; ++a) {
            cur[a] = lo[a];
        }
        while (true) {
            std::size_t key = 0;
            for (int a = 0; a < dim_; ++a) {
                key = key * static_cast<std::size_t>(per_axis_) + static_cast<std::size_t>(cur[a]);
            }
            for (auto i = start_[key]; i < start_[key + 1]; ++i) {
                visit(items_[i]);
            }
            int a = dim_ - 1;
            while (a >= 0 && cur[a] == hi[a]) {
                cur[a] = lo[a];
                --a;
            }
            if (a < 0) {
                break;
            }
            ++cur[a];
        }
    }

    static constexpr int kMaxDim = 8;

private:
    [[nodiscard]] int bucket_of(double x) const {
        const int b = static_cast<int>(std::floor((x + 1.0) / bucket_));
        return b < 0 ? 0 : (b >= per_axis_ ? per_axis_ - 1 : b);
    }

    int dim_;
    int per_axis_;
    double bucket_;
    std::vector<std::uint32_t> start_;
    std::vector<std::uint32_t> items_;
};

}  // namespace selgrade
