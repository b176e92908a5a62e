#pragma once

#include "trajkit/interval.hpp"

#include <array>
#include <optional>
#include <string_view>

namespace trajkit {

/// The thirteen Allen relations: seven base relations plus the six inverses
/// (equal is its own inverse).
enum class AllenRelation {
    before,
    meets,
    overlaps,
    starts,
    during,
    finishes,
    equal,
    after,
    met_by,
    overlapped_by,
    started_by,
    contains,
    finished_by,
};

inline constexpr std::array<AllenRelation, 13> kAllenRelations = {
    AllenRelation::before,        AllenRelation::meets,      AllenRelation::overlaps, AllenRelation::starts,
    AllenRelation::during,        AllenRelation::finishes,   AllenRelation::equal,    AllenRelation::after,
    AllenRelation::met_by,        AllenRelation::overlapped_by, AllenRelation::started_by,
    AllenRelation::contains,      AllenRelation::finished_by,
};

/// Lowercase snake-case name, e.g. "overlapped_by".
std::string_view to_string(AllenRelation relation) noexcept;
std::optional<AllenRelation> parse_allen_relation(std::string_view name) noexcept;

/// The relation R' such that R(X, Y) <=> R'(Y, X).
AllenRelation inverse(AllenRelation relation) noexcept;

/// Classifies an ordered pair of intervals by endpoint comparison. Shared
/// start or end points take precedence, so a zero-length interval sitting on
/// another's start point `starts` it rather than `meets` it.
AllenRelation allen_relation(const TimeInterval& x, const TimeInterval& y) noexcept;

/// Jaccard ratio on the time axis: |X n Y| / (|X| + |Y| - |X n Y|).
/// Throws Error(both_degenerate) when both intervals have zero length.
double temporal_overlap_ratio(const TimeInterval& x, const TimeInterval& y);

}  // namespace trajkit
