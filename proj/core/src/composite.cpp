#include "trajkit/composite.hpp"

#include "trajkit/error.hpp"
#include "trajkit/temporal.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace trajkit {

void SimilarityConfig::validate() const {
    const double w[] = {weights.spatial, weights.temporal, weights.context, weights.semantic};
    for (double v : w) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw Error(Errc::invalid_config, "dimension weights must be finite and non-negative");
        }
    }
    if (std::abs(weights.sum() - 1.0) > kWeightSumTolerance) {
        throw Error(Errc::invalid_config, "dimension weights sum to " + std::to_string(weights.sum()) + ", not 1");
    }
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
        throw Error(Errc::invalid_config, "epsilon must be positive");
    }
    if (sigma && (!(*sigma > 0.0) || !std::isfinite(*sigma))) {
        throw Error(Errc::invalid_config, "sigma must be positive");
    }
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw Error(Errc::invalid_config, "lambda must lie in [0, 1]");
    }
    for (const auto& [key, spec] : context_schema) {
        if (spec.kind == ContextKind::numeric && !(spec.min <= spec.max)) {
            throw Error(Errc::invalid_config, "context key '" + key + "' has an empty range");
        }
    }
}

double spatial_distance(PointSeries a, PointSeries b, const SimilarityConfig& config) {
    switch (config.spatial_metric) {
        case SpatialMetric::euclidean_lockstep: return lockstep_euclidean(a, b, config.distance_mode);
        case SpatialMetric::frechet: return discrete_frechet(a, b, config.distance_mode);
        case SpatialMetric::dtw: return dtw(a, b, config.distance_mode, config.dtw_window);
        case SpatialMetric::lcss: return 1.0 - lcss(a, b, config.epsilon, config.delta, config.distance_mode).similarity;
        case SpatialMetric::edr:
            return static_cast<double>(edit_distance_edr(a, b, config.epsilon, config.distance_mode));
    }
    throw Error(Errc::invalid_config, "unknown spatial metric");
}

CompositeSimilarity composite_similarity(const EnrichedTrajectory& a, const EnrichedTrajectory& b,
                                         const SimilarityConfig& config) {
    config.validate();
    return composite_similarity(a, b, config, spatial_distance(a.trajectory(), b.trajectory(), config));
}

CompositeSimilarity composite_similarity(const EnrichedTrajectory& a, const EnrichedTrajectory& b,
                                         const SimilarityConfig& config, double spatial_dist) {
    config.validate();
    if (!config.sigma) {
        throw Error(Errc::invalid_config, "sigma is 'auto' and has not been resolved for this dataset");
    }
    CompositeSimilarity out;
    out.spatial_raw = distance_to_similarity(spatial_dist, *config.sigma);

    const LcssResult matched = lcss(a.trajectory(), b.trajectory(), config.epsilon, config.delta, config.distance_mode);
    out.continuity = matched.matches.empty() ? 0.0 : continuity_score(matched.matches);
    out.spatial = (1.0 - config.lambda) * out.spatial_raw + config.lambda * out.continuity;

    try {
        out.temporal = temporal_overlap_ratio(time_span(a.trajectory()), time_span(b.trajectory()));
    } catch (const Error& e) {
        if (e.code() != Errc::both_degenerate) throw;
        out.temporal = 0.0;
    }

    try {
        out.context = contextual_similarity(a, b, config.context_schema);
    } catch (const Error& e) {
        if (e.code() != Errc::no_context && e.code() != Errc::no_shared_schema) throw;
        out.context = 0.0;
    }

    out.semantic = semantic_similarity(a, b);

    const DimensionWeights& w = config.weights;
    out.total = w.spatial * out.spatial + w.temporal * out.temporal + w.context * out.context +
                w.semantic * out.semantic;
    out.total = std::clamp(out.total, 0.0, 1.0);
    return out;
}

}  // namespace trajkit
