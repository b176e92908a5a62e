#pragma once

#include "trajkit/enriched.hpp"
#include "trajkit/similarity.hpp"

#include <cstddef>
#include <optional>

namespace trajkit {

struct DimensionWeights {
    double spatial = 0.25;
    double temporal = 0.25;
    double context = 0.25;
    double semantic = 0.25;

    double sum() const noexcept { return spatial + temporal + context + semantic; }

    friend bool operator==(const DimensionWeights&, const DimensionWeights&) = default;
};

inline constexpr double kWeightSumTolerance = 1e-9;

/// Parameters of the multi-dimensional similarity.
struct SimilarityConfig {
    DimensionWeights weights;
    /// Spatial measure feeding the spatial dimension.
    SpatialMetric spatial_metric = SpatialMetric::dtw;
    DistanceMode distance_mode = DistanceMode::euclidean;
    /// LCSS / EDR match threshold in distance units.
    double epsilon = 1.0;
    /// LCSS index window; empty means unbounded.
    std::optional<std::size_t> delta;
    /// Distance-to-similarity scale; empty means "auto" (median pairwise
    /// spatial distance, resolved by the distance-matrix builder).
    std::optional<double> sigma;
    /// Share of the spatial dimension given to the continuity score.
    double lambda = 0.5;
    /// Optional Sakoe-Chiba band for DTW.
    std::optional<std::size_t> dtw_window;
    /// Declared context keys; numeric keys carry the range used for scoring.
    ContextSchema context_schema;

    /// Throws Error(invalid_config) when weights are negative or do not sum to
    /// 1 within kWeightSumTolerance, or when a threshold is out of range.
    void validate() const;
};

/// The configured spatial measure expressed as a distance: LCSS becomes
/// 1 - similarity and EDR its edit count.
double spatial_distance(PointSeries a, PointSeries b, const SimilarityConfig& config);

struct CompositeSimilarity {
    double total = 0.0;
    /// Spatial similarity after blending in continuity.
    double spatial = 0.0;
    double temporal = 0.0;
    double context = 0.0;
    double semantic = 0.0;
    /// Continuity of the LCSS matches; 0 when nothing matched.
    double continuity = 0.0;
    /// exp(-d / sigma) before the continuity blend.
    double spatial_raw = 0.0;
};

/// Weighted sum of the four per-dimension similarities. Missing context scores
/// 0 on that dimension, as does a pair of zero-length time spans.
/// Throws Error(invalid_config) for an invalid config or unresolved sigma.
CompositeSimilarity composite_similarity(const EnrichedTrajectory& a, const EnrichedTrajectory& b,
                                         const SimilarityConfig& config);

/// Same, reusing an already computed spatial distance for the pair.
CompositeSimilarity composite_similarity(const EnrichedTrajectory& a, const EnrichedTrajectory& b,
                                         const SimilarityConfig& config, double spatial_distance);

}  // namespace trajkit
