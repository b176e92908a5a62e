#pragma once

#include "trajkit/distance_matrix.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace trajkit {

/// Label of an element that belongs to no cluster (density-based only).
inline constexpr int kNoise = -1;

/// A flat clustering. Cluster ids are contiguous 0..k-1.
struct ClusterResult {
    std::vector<int> labels;
    std::size_t k = 0;
    std::string algorithm;
    /// Parameter echo, in the order the algorithm received them.
    std::vector<std::pair<std::string, std::string>> parameters;

    std::size_t noise_count() const noexcept;
};

/// DBSCAN over precomputed distances. Neighbourhoods are closed balls
/// (distance <= eps) that include the point itself; a core point has at least
/// `min_pts` neighbours. Clusters are numbered in order of their lowest-index
/// core point and a border point joins the cluster of its lowest-index core
/// neighbour.
ClusterResult dbscan(const DistanceMatrix& matrix, double eps, std::size_t min_pts);

/// For tests and reports: which elements are core points.
std::vector<bool> dbscan_core_points(const DistanceMatrix& matrix, double eps, std::size_t min_pts);

enum class Linkage { single, complete, average };

std::string_view to_string(Linkage linkage) noexcept;
std::optional<Linkage> parse_linkage(std::string_view name) noexcept;

struct Merge {
    /// Node ids: 0..n-1 are the elements, n + s is the node created by merge s.
    /// The smaller id is stored in `left`.
    std::size_t left = 0;
    std::size_t right = 0;
    double height = 0.0;
    /// Elements under the new node.
    std::size_t count = 0;

    friend bool operator==(const Merge&, const Merge&) = default;
};

class Dendrogram {
public:
    /// Throws Error(invalid_parameter) unless there are exactly leaves - 1
    /// merges referencing existing, not yet merged nodes.
    Dendrogram(std::size_t leaves, std::vector<Merge> merges);

    std::size_t leaves() const noexcept { return leaves_; }
    const std::vector<Merge>& merges() const noexcept { return merges_; }

    friend bool operator==(const Dendrogram&, const Dendrogram&) = default;

private:
    std::size_t leaves_ = 0;
    std::vector<Merge> merges_;
};

/// Agglomerative clustering: repeatedly merges the two active clusters with
/// the smallest linkage distance. Ties go to the smallest (row, column) pair of
/// active slots, where a merged cluster keeps the lower slot.
Dendrogram agglomerative(const DistanceMatrix& matrix, Linkage linkage);

/// Flat clustering with exactly k clusters (undo the last k - 1 merges).
ClusterResult cut_dendrogram(const Dendrogram& dendrogram, std::size_t k);

/// Flat clustering keeping only merges at or below `height`.
ClusterResult cut_dendrogram_at_height(const Dendrogram& dendrogram, double height);

struct KMedoidsResult {
    ClusterResult clusters;
    /// Element indices of the medoids; medoids[c] represents cluster c.
    std::vector<std::size_t> medoids;
    double total_cost = 0.0;
    /// Total cost after BUILD and after every accepted swap.
    std::vector<double> cost_trace;
};

/// PAM: greedy BUILD followed by best-improvement SWAP until no single
/// medoid/non-medoid exchange lowers the total distance. Ties resolve to the
/// lowest index throughout, so the result is a function of the matrix alone;
/// `seed` is recorded in the parameter echo.
KMedoidsResult k_medoids(const DistanceMatrix& matrix, std::size_t k, std::uint64_t seed = 0);

/// Mean silhouette over non-noise elements; members of singleton clusters
/// score 0. Throws Error(too_few_clusters) with fewer than two clusters.
double silhouette(const DistanceMatrix& matrix, const ClusterResult& result);

}  // namespace trajkit
