#include "selgrade/spatial_index.hpp"

#include <algorithm>

#include "selgrade/error.hpp"

namespace selgrade {

SpatialIndex::SpatialIndex(std::span<const double> coords, int dim, double bucket_size) : dim_(dim) {
    if (dim < 1 || dim > kMaxDim) {
        throw Error(ErrorKind::UnsupportedDimension, "spatial index supports 1..8 dimensions");
    }
    constexpr double kMaxBuckets = 4e6;
    const int cap = std::max(1, static_cast<int>(std::floor(std::pow(kMaxBuckets, 1.0 / dim))));
    per_axis_ = std::clamp(static_cast<int>(std::ceil(2.0 / std::max(bucket_size, 1e-9))), 1, cap);
    bucket_ = 2.0 / per_axis_;

    std::size_t total = 1;
    for (int a = 0; a < dim; ++a) {
        total *= static_cast<std::size_t>(per_axis_);
    }
    const std::size_t count = coords.size() / static_cast<std::size_t>(dim);
    std::vector<std::size_t> keys(count);
    start_.assign(total + 1, 0);
    for (std::size_t i = 0; i < count; ++i) {
        std::size_t key = 0;
        for (int a = 0; a < dim; ++a) {
            key = key * static_cast<std::size_t>(per_axis_) +
                  static_cast<std::size_t>(bucket_of(coords[i * static_cast<std::size_t>(dim) + static_cast<std::size_t>(a)]));
        }
        keys[i] = key;
        ++start_[key + 1];
    }
    for (std::size_t k = 0; k < total; ++k) {
        start_[k + 1] += start_[k];
    }
    items_.resize(count);
    std::vector<std::uint32_t> fill(start_.begin(), start_.end() - 1);
    for (std::size_t i = 0; i < count; ++i) {
        items_[fill[keys[i]]++] = static_cast<std::uint32_t>(i);
    }
}

}  // namespace selgrade
