#include "trajkit/spatial.hpp"

#include "trajkit/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace trajkit {

std::string_view to_string(TopologicalRelation relation) noexcept {
    switch (relation) {
        case TopologicalRelation::disjoint: return "disjoint";
        case TopologicalRelation::meets: return "meets";
        case TopologicalRelation::overlaps: return "overlaps";
        case TopologicalRelation::equals: return "equals";
        case TopologicalRelation::covers: return "covers";
        case TopologicalRelation::covered_by: return "covered_by";
        case TopologicalRelation::contains: return "contains";
        case TopologicalRelation::inside: return "inside";
    }
    return "unknown";
}

TopologicalRelation converse(TopologicalRelation relation) noexcept {
    switch (relation) {
        case TopologicalRelation::covers: return TopologicalRelation::covered_by;
        case TopologicalRelation::covered_by: return TopologicalRelation::covers;
        case TopologicalRelation::contains: return TopologicalRelation::inside;
        case TopologicalRelation::inside: return TopologicalRelation::contains;
        default: return relation;
    }
}

std::string_view to_string(DirectionRelation relation) noexcept {
    switch (relation) {
        case DirectionRelation::north: return "north";
        case DirectionRelation::north_east: return "north_east";
        case DirectionRelation::east: return "east";
        case DirectionRelation::south_east: return "south_east";
        case DirectionRelation::south: return "south";
        case DirectionRelation::south_west: return "south_west";
        case DirectionRelation::west: return "west";
        case DirectionRelation::north_west: return "north_west";
        case DirectionRelation::same_position: return "same_position";
    }
    return "unknown";
}

DirectionRelation opposite(DirectionRelation relation) noexcept {
    switch (relation) {
        case DirectionRelation::north: return DirectionRelation::south;
        case DirectionRelation::north_east: return DirectionRelation::south_west;
        case DirectionRelation::east: return DirectionRelation::west;
        case DirectionRelation::south_east: return DirectionRelation::north_west;
        case DirectionRelation::south: return DirectionRelation::north;
        case DirectionRelation::south_west: return DirectionRelation::north_east;
        case DirectionRelation::west: return DirectionRelation::east;
        case DirectionRelation::north_west: return DirectionRelation::south_east;
        case DirectionRelation::same_position: return DirectionRelation::same_position;
    }
    return relation;
}

namespace {

// Closed containment of `inner` in `outer`.
bool encloses(const Region& outer, const Region& inner) noexcept {
    return outer.x_min() <= inner.x_min() && inner.x_max() <= outer.x_max() && outer.y_min() <= inner.y_min() &&
           inner.y_max() <= outer.y_max();
}

// Containment with no shared boundary.
bool strictly_encloses(const Region& outer, const Region& inner) noexcept {
    return outer.x_min() < inner.x_min() && inner.x_max() < outer.x_max() && outer.y_min() < inner.y_min() &&
           inner.y_max() < outer.y_max();
}

}  // namespace

TopologicalRelation topological_relation(const Region& a, const Region& b) {
    if (a.degenerate() || b.degenerate()) {
        throw Error(Errc::degenerate_region, "topological relations need regions with positive area");
    }
    if (a == b) {
        return TopologicalRelation::equals;
    }
    const bool closures_meet = a.x_min() <= b.x_max() && b.x_min() <= a.x_max() && a.y_min() <= b.y_max() &&
                               b.y_min() <= a.y_max();
    if (!closures_meet) {
        return TopologicalRelation::disjoint;
    }
    const bool interiors_meet =
        a.x_min() < b.x_max() && b.x_min() < a.x_max() && a.y_min() < b.y_max() && b.y_min() < a.y_max();
    if (!interiors_meet) {
        return TopologicalRelation::meets;
    }
    if (encloses(a, b)) {
        return strictly_encloses(a, b) ? TopologicalRelation::contains : TopologicalRelation::covers;
    }
    if (encloses(b, a)) {
        return strictly_encloses(b, a) ? TopologicalRelation::inside : TopologicalRelation::covered_by;
    }
    return TopologicalRelation::overlaps;
}

double centroid_distance(const Region& a, const Region& b) noexcept {
    const Point2 ca = a.centroid();
    const Point2 cb = b.centroid();
    return std::hypot(ca.x - cb.x, ca.y - cb.y);
}

double min_distance(const Region& a, const Region& b) noexcept {
    const double dx = std::max({0.0, b.x_min() - a.x_max(), a.x_min() - b.x_max()});
    const double dy = std::max({0.0, b.y_min() - a.y_max(), a.y_min() - b.y_max()});
    return std::hypot(dx, dy);
}

DirectionRelation direction_relation(const Region& a, const Region& b) noexcept {
    const Point2 ca = a.centroid();
    const Point2 cb = b.centroid();
    const double dx = ca.x - cb.x;
    const double dy = ca.y - cb.y;
    if (std::hypot(dx, dy) <= kSamePositionTolerance) {
        return DirectionRelation::same_position;
    }
    // tan(22.5 deg): the cardinal sectors span +-22.5 deg around each axis.
    const double tan_half_sector = std::sqrt(2.0) - 1.0;
    const double ax = std::abs(dx);
    const double ay = std::abs(dy);
    if (ay < tan_half_sector * ax) {
        return dx > 0.0 ? DirectionRelation::east : DirectionRelation::west;
    }
    if (ax < tan_half_sector * ay) {
        return dy > 0.0 ? DirectionRelation::north : DirectionRelation::south;
    }
    if (dy > 0.0) {
        return dx > 0.0 ? DirectionRelation::north_east : DirectionRelation::north_west;
    }
    return dx > 0.0 ? DirectionRelation::south_east : DirectionRelation::south_west;
}

namespace {

bool nearly_equal(double a, double b) noexcept {
    return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

MeasurementComparison measurement_compare(const Trajectory& first, const Trajectory& second, DistanceMode mode) {
    const double len1 = path_length(first, mode);
    const double len2 = path_length(second, mode);
    const double dur1 = time_span(first).duration();
    const double dur2 = time_span(second).duration();

    MeasurementComparison out;
    if (!nearly_equal(len1, len2)) {
        out.longer = len1 > len2 ? first.id() : second.id();
    }
    if (!nearly_equal(dur1, dur2)) {
        out.longer_duration = dur1 > dur2 ? first.id() : second.id();
    }
    if (len2 == 0.0) {
        out.length_ratio = len1 == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
    } else {
        out.length_ratio = len1 / len2;
    }
    return out;
}

}  // namespace trajkit
