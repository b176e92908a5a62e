#pragma once

#include "trajkit/model.hpp"
#include "trajkit/region.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace trajkit {

enum class TopologicalRelation {
    disjoint,
    meets,
    overlaps,
    equals,
    covers,
    covered_by,
    contains,
    inside,
};

inline constexpr std::array<TopologicalRelation, 8> kTopologicalRelations = {
    TopologicalRelation::disjoint, TopologicalRelation::meets,      TopologicalRelation::overlaps,
    TopologicalRelation::equals,   TopologicalRelation::covers,     TopologicalRelation::covered_by,
    TopologicalRelation::contains, TopologicalRelation::inside,
};

std::string_view to_string(TopologicalRelation relation) noexcept;

/// The relation R' with R(A, B) <=> R'(B, A).
TopologicalRelation converse(TopologicalRelation relation) noexcept;

enum class DirectionRelation {
    north,
    north_east,
    east,
    south_east,
    south,
    south_west,
    west,
    north_west,
    same_position,
};

std::string_view to_string(DirectionRelation relation) noexcept;

/// Opposite compass sector; same_position maps to itself.
DirectionRelation opposite(DirectionRelation relation) noexcept;

/// Tolerance under which two centroids count as the same position.
inline constexpr double kSamePositionTolerance = 1e-9;

/// Rectangle topology with exact comparisons. Both regions must have positive
/// area; otherwise throws Error(degenerate_region).
///
///  - disjoint: closures do not intersect
///  - meets: closures intersect, interiors do not
///  - equals: identical corners
///  - contains / inside: one lies in the other's interior
///  - covers / covered_by: containment that shares some boundary
///  - overlaps: interiors intersect, neither contains the other
TopologicalRelation topological_relation(const Region& a, const Region& b);

double centroid_distance(const Region& a, const Region& b) noexcept;

/// Distance between the closed rectangles; 0 when they intersect.
double min_distance(const Region& a, const Region& b) noexcept;

/// Compass sector of A's centroid as seen from B's centroid. Sectors are 45
/// degrees wide and centred on the eight compass directions; a direction lying
/// exactly on a sector boundary belongs to the intercardinal sector.
DirectionRelation direction_relation(const Region& a, const Region& b) noexcept;

struct MeasurementComparison {
    /// Id of the trajectory with the longer path; empty on a tie.
    std::optional<std::string> longer;
    /// Id of the trajectory with the longer duration; empty on a tie.
    std::optional<std::string> longer_duration;
    /// path_length(first) / path_length(second); +inf when only the second is
    /// zero-length, 1 when both are.
    double length_ratio = 1.0;
};

MeasurementComparison measurement_compare(const Trajectory& first, const Trajectory& second,
                                          DistanceMode mode = DistanceMode::euclidean);

}  // namespace trajkit
