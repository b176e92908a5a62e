#pragma once

#include "trajkit/base_distance.hpp"
#include "trajkit/enriched.hpp"
#include "trajkit/model.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace trajkit {

/// Point-based distance measures between two trajectories.
enum class SpatialMetric { euclidean_lockstep, frechet, dtw, lcss, edr };

std::string_view to_string(SpatialMetric metric) noexcept;
std::optional<SpatialMetric> parse_spatial_metric(std::string_view name) noexcept;

/// A matched index pair (index into the first series, index into the second).
struct MatchPair {
    std::size_t first = 0;
    std::size_t second = 0;

    friend auto operator<=>(const MatchPair&, const MatchPair&) = default;
};

/// Matched pairs, strictly increasing in both components.
using MatchSet = std::vector<MatchPair>;

// All kernels below throw Error(dimension_mismatch) when both series are
// non-empty and their dimensions differ. Frechet, DTW and LCSS additionally
// require both series to be non-empty (Error(invalid_parameter)).

/// Mean base distance over index-aligned pairs. Throws Error(length_mismatch)
/// unless the two series have the same number of points.
double lockstep_euclidean(PointSeries a, PointSeries b, DistanceMode mode = DistanceMode::euclidean);

/// Discrete Frechet distance: the smallest, over monotone couplings covering
/// every point of both series, of the largest paired distance.
double discrete_frechet(PointSeries a, PointSeries b, DistanceMode mode = DistanceMode::euclidean);

/// Dynamic time warping with summed pair costs. `window` bounds |i - j|
/// (Sakoe-Chiba band); it is widened to the length difference when narrower so
/// a warping path always exists.
double dtw(PointSeries a, PointSeries b, DistanceMode mode = DistanceMode::euclidean,
           std::optional<std::size_t> window = std::nullopt);

struct LcssResult {
    std::size_t length = 0;
    /// length / min(point counts)
    double similarity = 0.0;
    /// The lexicographically smallest maximum-length match sequence.
    MatchSet matches;
};

/// Longest common subsequence where points i and j match when their distance
/// is at most `epsilon` and |i - j| <= `delta` (unbounded when empty).
LcssResult lcss(PointSeries a, PointSeries b, double epsilon, std::optional<std::size_t> delta = std::nullopt,
                DistanceMode mode = DistanceMode::euclidean);

/// Edit distance on real sequences: unit insert/delete cost, substitution free
/// within `epsilon`, otherwise unit cost. Either series may be empty.
std::size_t edit_distance_edr(PointSeries a, PointSeries b, double epsilon,
                              DistanceMode mode = DistanceMode::euclidean);

/// Rewards long contiguous runs of matches: sum of squared run lengths over
/// the squared match count, where a run advances both indices by exactly one.
/// 1 for a single run, 1/L for L isolated matches. Throws
/// Error(empty_match_set) on empty input and Error(invalid_parameter) when the
/// pairs are not strictly increasing.
double continuity_score(std::span<const MatchPair> matches);

/// exp(-d / sigma). Throws Error(invalid_parameter) for d < 0 or sigma <= 0.
double distance_to_similarity(double distance, double sigma);

/// Mean per-index, per-key agreement of the two context series: numeric keys
/// score 1 - |a - b| / range (clamped), categorical keys 1 on equality. A key
/// present on only one side at an index scores 0.
///
/// Throws Error(no_context) if either side lacks context,
/// Error(length_mismatch) for unequal point counts, Error(no_shared_schema)
/// when no key is observed on both sides and Error(unknown_key) for numeric
/// keys missing from `schema`.
double contextual_similarity(const EnrichedTrajectory& a, const EnrichedTrajectory& b, const ContextSchema& schema);

/// Coverage-weighted Jaccard over episode labels. 1 when neither side has
/// episodes.
double semantic_similarity(const EnrichedTrajectory& a, const EnrichedTrajectory& b);

}  // namespace trajkit
