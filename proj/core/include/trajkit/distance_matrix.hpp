#pragma once

#include "trajkit/composite.hpp"
#include "trajkit/enriched.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace trajkit {

/// Symmetric matrix of pairwise distances with a zero diagonal.
class DistanceMatrix {
public:
    /// Takes row-major `values` (size n*n). Throws Error(invalid_matrix) unless
    /// the matrix is square, symmetric, zero on the diagonal, finite and
    /// non-negative, and the ids match its size.
    DistanceMatrix(std::vector<std::string> ids, std::vector<double> values);

    std::size_t size() const noexcept { return ids_.size(); }
    const std::vector<std::string>& ids() const noexcept { return ids_; }
    std::span<const double> values() const noexcept { return values_; }
    std::span<const double> row(std::size_t i) const noexcept {
        return std::span<const double>(values_).subspan(i * size(), size());
    }

    double operator()(std::size_t i, std::size_t j) const noexcept { return values_[i * size() + j]; }

    friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

private:
    std::vector<std::string> ids_;
    std::vector<double> values_;
};

/// What a distance matrix is built from: one of the spatial measures, or
/// 1 - composite similarity.
enum class MatrixMetric { euclidean_lockstep, frechet, dtw, lcss, edr, composite };

std::string_view to_string(MatrixMetric metric) noexcept;
std::optional<MatrixMetric> parse_matrix_metric(std::string_view name) noexcept;

struct ValueSummary {
    double mean = 0.0;
    double min = 0.0;
    double max = 0.0;
};

/// Per-dimension statistics over all pairs of a composite run.
struct DimensionSummary {
    ValueSummary total;
    ValueSummary spatial;
    ValueSummary temporal;
    ValueSummary context;
    ValueSummary semantic;
    ValueSummary continuity;
};

struct DistanceComputation {
    DistanceMatrix matrix;
    /// Scale actually used (composite only).
    std::optional<double> sigma;
    std::optional<DimensionSummary> dimensions;
};

/// Median of the strictly-upper-triangle entries; 1 when that median is not
/// positive.
double median_sigma(std::span<const double> upper_triangle);

/// Fills the upper triangle with `jobs` worker threads (0 means one per
/// hardware thread). Every entry is computed by the same sequential code path,
/// so the result does not depend on `jobs`.
///
/// For the composite metric an "auto" sigma is resolved as the median spatial
/// distance over all pairs. A failing pair throws Error(pair_failure) naming
/// both ids; when several pairs fail, the first in row-major order is reported.
DistanceComputation compute_distance_matrix(std::span<const EnrichedTrajectory> dataset,
                                            const SimilarityConfig& config, MatrixMetric metric,
                                            std::size_t jobs = 1);

inline DistanceMatrix distance_matrix(std::span<const EnrichedTrajectory> dataset, const SimilarityConfig& config,
                                      MatrixMetric metric, std::size_t jobs = 1) {
    return compute_distance_matrix(dataset, config, metric, jobs).matrix;
}

}  // namespace trajkit
