#pragma once

#include <span>

namespace trajkit {

/// How two coordinate tuples are compared. `haversine` reads the first two
/// coordinates as (longitude, latitude) in degrees and returns meters.
enum class DistanceMode { euclidean, haversine };

inline constexpr double kEarthRadiusMeters = 6371008.8;

double euclidean_distance(std::span<const double> a, std::span<const double> b) noexcept;

/// Great-circle distance on a sphere of radius kEarthRadiusMeters.
double haversine_distance(std::span<const double> a, std::span<const double> b) noexcept;

double base_distance(std::span<const double> a, std::span<const double> b, DistanceMode mode) noexcept;

}  // namespace trajkit
