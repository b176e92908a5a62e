#include "trajkit/distance_matrix.hpp"

#include "trajkit/error.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <thread>

namespace trajkit {

DistanceMatrix::DistanceMatrix(std::vector<std::string> ids, std::vector<double> values)
    : ids_(std::move(ids)), values_(std::move(values)) {
    const std::size_t n = ids_.size();
    if (values_.size() != n * n) {
        throw Error(Errc::invalid_matrix, "expected " + std::to_string(n * n) + " values for " + std::to_string(n) +
                                              " ids, got " + std::to_string(values_.size()));
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (values_[i * n + i] != 0.0) {
            throw Error(Errc::invalid_matrix, "diagonal entry of '" + ids_[i] + "' is not zero", i);
        }
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = values_[i * n + j];
            if (!std::isfinite(v) || v < 0.0) {
                throw Error(Errc::invalid_matrix,
                            "distance between '" + ids_[i] + "' and '" + ids_[j] + "' is negative or not finite");
            }
            if (v != values_[j * n + i]) {
                throw Error(Errc::invalid_matrix, "matrix is not symmetric at ('" + ids_[i] + "', '" + ids_[j] + "')");
            }
        }
    }
}

std::string_view to_string(MatrixMetric metric) noexcept {
    switch (metric) {
        case MatrixMetric::euclidean_lockstep: return "euclidean_lockstep";
        case MatrixMetric::frechet: return "frechet";
        case MatrixMetric::dtw: return "dtw";
        case MatrixMetric::lcss: return "lcss";
        case MatrixMetric::edr: return "edr";
        case MatrixMetric::composite: return "composite";
    }
    return "unknown";
}

std::optional<MatrixMetric> parse_matrix_metric(std::string_view name) noexcept {
    for (MatrixMetric m : {MatrixMetric::euclidean_lockstep, MatrixMetric::frechet, MatrixMetric::dtw,
                           MatrixMetric::lcss, MatrixMetric::edr, MatrixMetric::composite}) {
        if (to_string(m) == name) {
            return m;
        }
    }
    return std::nullopt;
}

double median_sigma(std::span<const double> upper_triangle) {
    if (upper_triangle.empty()) {
        return 1.0;
    }
    std::vector<double> sorted(upper_triangle.begin(), upper_triangle.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t mid = sorted.size() / 2;
    const double median = sorted.size() % 2 == 1 ? sorted[mid] : (sorted[mid - 1] + sorted[mid]) / 2.0;
    return median > 0.0 && std::isfinite(median) ? median : 1.0;
}

namespace {

// Runs fn(i, j, slot) for every i < j, spreading rows over workers. Rows are
// handed out dynamically because later rows are shorter.
template <typename Fn>
void for_each_pair(std::size_t n, std::size_t jobs, const std::vector<std::string>& ids, Fn&& fn) {
    std::atomic<std::size_t> next_row{0};
    std::mutex failure_mutex;
    std::size_t failed_slot = std::numeric_limits<std::size_t>::max();
    std::string failure;

    auto worker = [&] {
        for (std::size_t i = next_row.fetch_add(1); i < n; i = next_row.fetch_add(1)) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const std::size_t slot = i * n + j;
                try {
                    fn(i, j, slot);
                } catch (const std::exception& e) {
                    std::lock_guard lock(failure_mutex);
                    if (slot < failed_slot) {
                        failed_slot = slot;
                        failure = "pair ('" + ids[i] + "', '" + ids[j] + "'): " + e.what();
                    }
                }
            }
        }
    };

    const std::size_t workers = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(n, 1));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back(worker);
        }
    }
    if (failed_slot != std::numeric_limits<std::size_t>::max()) {
        throw Error(Errc::pair_failure, failure);
    }
}

class SummaryAccumulator {
public:
    void add(double v) {
        sum_ += v;
        min_ = std::min(min_, v);
        max_ = std::max(max_, v);
        ++count_;
    }
    ValueSummary result() const {
        if (count_ == 0) return {};
        return {sum_ / static_cast<double>(count_), min_, max_};
    }

private:
    double sum_ = 0.0;
    double min_ = std::numeric_limits<double>::infinity();
    double max_ = -std::numeric_limits<double>::infinity();
    std::size_t count_ = 0;
};

SpatialMetric spatial_part(MatrixMetric metric, const SimilarityConfig& config) {
    switch (metric) {
        case MatrixMetric::euclidean_lockstep: return SpatialMetric::euclidean_lockstep;
        case MatrixMetric::frechet: return SpatialMetric::frechet;
        case MatrixMetric::dtw: return SpatialMetric::dtw;
        case MatrixMetric::lcss: return SpatialMetric::lcss;
        case MatrixMetric::edr: return SpatialMetric::edr;
        case MatrixMetric::composite: return config.spatial_metric;
    }
    return config.spatial_metric;
}

}  // namespace

DistanceComputation compute_distance_matrix(std::span<const EnrichedTrajectory> dataset,
                                            const SimilarityConfig& config, MatrixMetric metric, std::size_t jobs) {
    const std::size_t n = dataset.size();
    if (n < 2) {
        throw Error(Errc::invalid_parameter, "a distance matrix needs at least two trajectories");
    }
    config.validate();
    if (jobs == 0) {
        jobs = std::max(1u, std::thread::hardware_concurrency());
    }

    std::vector<std::string> ids;
    ids.reserve(n);
    for (const auto& e : dataset) {
        ids.push_back(e.id());
    }

    SimilarityConfig spatial_config = config;
    spatial_config.spatial_metric = spatial_part(metric, config);

    std::vector<double> values(n * n, 0.0);
    for_each_pair(n, jobs, ids, [&](std::size_t i, std::size_t j, std::size_t slot) {
        values[slot] = spatial_distance(dataset[i].trajectory(), dataset[j].trajectory(), spatial_config);
    });

    if (metric != MatrixMetric::composite) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                values[j * n + i] = values[i * n + j];
            }
        }
        return {DistanceMatrix(std::move(ids), std::move(values)), std::nullopt, std::nullopt};
    }

    SimilarityConfig composite_config = config;
    if (!composite_config.sigma) {
        std::vector<double> upper;
        upper.reserve(n * (n - 1) / 2);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                upper.push_back(values[i * n + j]);
            }
        }
        composite_config.sigma = median_sigma(upper);
    }

    std::vector<CompositeSimilarity> records(n * n);
    for_each_pair(n, jobs, ids, [&](std::size_t i, std::size_t j, std::size_t slot) {
        records[slot] = composite_similarity(dataset[i], dataset[j], composite_config, values[slot]);
    });

    SummaryAccumulator total, spatial, temporal, context, semantic, continuity;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const CompositeSimilarity& r = records[i * n + j];
            const double d = std::clamp(1.0 - r.total, 0.0, 1.0);
            values[i * n + j] = d;
            values[j * n + i] = d;
            total.add(r.total);
            spatial.add(r.spatial);
            temporal.add(r.temporal);
            context.add(r.context);
            semantic.add(r.semantic);
            continuity.add(r.continuity);
        }
    }
    DimensionSummary summary{total.result(),    spatial.result(),  temporal.result(),
                             context.result(),  semantic.result(), continuity.result()};
    return {DistanceMatrix(std::move(ids), std::move(values)), composite_config.sigma, summary};
}

}  // namespace trajkit
