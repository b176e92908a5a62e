#pragma once

#include "trajkit/base_distance.hpp"
#include "trajkit/interval.hpp"
#include "trajkit/region.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace trajkit {

/// A position with a timestamp (seconds, real-valued).
struct STPoint {
    std::vector<double> coords;
    double t = 0.0;

    friend bool operator==(const STPoint&, const STPoint&) = default;
};

/// Non-owning row-major view over `size()` points of equal dimension.
/// The similarity kernels operate on this so they also accept empty and
/// unvalidated sequences.
class PointSeries {
public:
    PointSeries() = default;
    PointSeries(std::span<const double> coords, std::size_t dimension) noexcept
        : coords_(coords), dimension_(dimension) {}

    std::size_t size() const noexcept { return dimension_ == 0 ? 0 : coords_.size() / dimension_; }
    bool empty() const noexcept { return size() == 0; }
    std::size_t dimension() const noexcept { return dimension_; }
    const double* data() const noexcept { return coords_.data(); }

    std::span<const double> operator[](std::size_t i) const noexcept {
        return coords_.subspan(i * dimension_, dimension_);
    }

private:
    std::span<const double> coords_;
    std::size_t dimension_ = 0;
};

/// A validated, immutable trajectory: at least one point, a shared spatial
/// dimension, finite values, and strictly increasing non-negative times.
class Trajectory {
public:
    /// Checks every invariant point by point and throws the first violation:
    /// Error(empty_trajectory), or Error(dimension_mismatch | non_finite_value |
    /// negative_time | non_increasing_time) carrying the offending index.
    static Trajectory validate(std::string id, std::span<const STPoint> points);

    const std::string& id() const noexcept { return id_; }
    std::size_t size() const noexcept { return times_.size(); }
    std::size_t dimension() const noexcept { return dimension_; }

    std::span<const double> coords(std::size_t i) const noexcept {
        return std::span<const double>(coords_).subspan(i * dimension_, dimension_);
    }
    double time(std::size_t i) const noexcept { return times_[i]; }
    std::span<const double> times() const noexcept { return times_; }

    STPoint point(std::size_t i) const;
    std::vector<STPoint> points() const;

    PointSeries series() const noexcept { return PointSeries(coords_, dimension_); }
    operator PointSeries() const noexcept { return series(); }  // NOLINT(google-explicit-constructor)

    friend bool operator==(const Trajectory&, const Trajectory&) = default;

private:
    Trajectory(std::string id, std::size_t dimension, std::vector<double> coords, std::vector<double> times);

    std::string id_;
    std::size_t dimension_ = 0;
    std::vector<double> coords_;
    std::vector<double> times_;
};

/// [t_0, t_m]; zero length for a single point.
TimeInterval time_span(const Trajectory& trajectory) noexcept;

/// Sum of base distances between consecutive points.
double path_length(const Trajectory& trajectory, DistanceMode mode = DistanceMode::euclidean) noexcept;

/// Smallest axis-aligned rectangle holding every point. Planar only:
/// throws Error(dimension_unsupported) when the dimension is not 2.
Region bounding_region(const Trajectory& trajectory);

/// Re-samples to `k` points at uniformly spaced timestamps over the time span,
/// interpolating coordinates linearly. Both endpoints are reproduced exactly.
/// Throws Error(too_few_points) for single-point input and
/// Error(invalid_parameter) for k < 2.
Trajectory resample(const Trajectory& trajectory, std::size_t k);

}  // namespace trajkit
