#include "trajkit/base_distance.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace trajkit {

double euclidean_distance(std::span<const double> a, std::span<const double> b) noexcept {
    double sum = 0.0;
    for (std::size_t d = 0; d < a.size(); ++d) {
        const double diff = a[d] - b[d];
        sum += diff * diff;
    }
    return std::sqrt(sum);
}

double haversine_distance(std::span<const double> a, std::span<const double> b) noexcept {
    constexpr double to_rad = std::numbers::pi / 180.0;
    const double lat1 = a[1] * to_rad;
    const double lat2 = b[1] * to_rad;
    const double dlat = lat2 - lat1;
    const double dlon = (b[0] - a[0]) * to_rad;
    const double s_lat = std::sin(dlat / 2.0);
    const double s_lon = std::sin(dlon / 2.0);
    const double h = s_lat * s_lat + std::cos(lat1) * std::cos(lat2) * s_lon * s_lon;
    return 2.0 * kEarthRadiusMeters * std::asin(std::sqrt(std::min(1.0, h)));
}

double base_distance(std::span<const double> a, std::span<const double> b, DistanceMode mode) noexcept {
    return mode == DistanceMode::haversine ? haversine_distance(a, b) : euclidean_distance(a, b);
}

}  // namespace trajkit
