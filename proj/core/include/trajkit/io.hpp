#pragma once

#include "trajkit/clustering.hpp"
#include "trajkit/composite.hpp"
#include "trajkit/distance_matrix.hpp"
#include "trajkit/enriched.hpp"
#include "trajkit/model.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace trajkit::io {

// CSV files are plain comma-separated fields without quoting; surrounding
// blanks are trimmed, '.' is the only decimal separator and numbers are parsed
// without regard to the process locale. Parse errors carry the 1-based line.

/// Rows of one trajectory id, in file order, before validation.
struct RawTrajectory {
    std::string id;
    std::vector<STPoint> points;
    /// Line of the first row for this id.
    std::size_t first_line = 0;
};

/// Parses `traj_id,t,x,y[,z]`, grouping rows by id in order of first
/// appearance. Throws Error(parse_error) only; no trajectory validation.
std::vector<RawTrajectory> parse_points_csv(std::istream& in);

/// parse_points_csv plus validation of every group. A failing group throws
/// Error(validation_error) naming the id and the violated invariant.
std::vector<Trajectory> read_points_csv(std::istream& in);
std::vector<Trajectory> read_points_csv(const std::filesystem::path& path);

/// Writes coordinates and times with shortest round-trip formatting.
void write_points_csv(std::span<const Trajectory> trajectories, std::ostream& out);
void write_points_csv(std::span<const Trajectory> trajectories, const std::filesystem::path& path);

/// Point counts by trajectory id; used to check index columns.
using PointCounts = std::map<std::string, std::size_t>;

PointCounts point_counts(std::span<const Trajectory> trajectories);

/// Per-trajectory context series, one (possibly empty) sample per point.
using ContextSeries = std::map<std::string, std::vector<ContextSample>>;

/// Parses `traj_id,point_index,key,value`. Values are typed by `schema`.
/// Throws Error(parse_error), Error(unknown_key), Error(index_out_of_range),
/// Error(invalid_value) for out-of-range or duplicate values and
/// Error(validation_error) for unknown trajectory ids.
ContextSeries read_context_csv(std::istream& in, const ContextSchema& schema, const PointCounts& counts);
ContextSeries read_context_csv(const std::filesystem::path& path, const ContextSchema& schema,
                               const PointCounts& counts);

void write_context_csv(const ContextSeries& context, std::ostream& out);

using EpisodeLists = std::map<std::string, std::vector<SemanticEpisode>>;

/// Parses `traj_id,start_index,end_index,label`; episodes come back sorted.
/// An empty file is valid. Throws Error(parse_error),
/// Error(index_out_of_range), Error(overlapping_episodes) and
/// Error(validation_error) for unknown ids.
EpisodeLists read_semantics_csv(std::istream& in, const PointCounts& counts);
EpisodeLists read_semantics_csv(const std::filesystem::path& path, const PointCounts& counts);

void write_semantics_csv(const EpisodeLists& episodes, std::ostream& out);

/// Clustering settings that may come from the configuration file.
struct ClusteringParameters {
    std::optional<double> dbscan_eps;
    std::optional<std::size_t> dbscan_min_pts;
    std::optional<Linkage> linkage;
    std::optional<std::size_t> agglo_k;
    std::optional<double> agglo_height;
    std::optional<std::size_t> kmedoids_k;
    std::uint64_t kmedoids_seed = 0;
};

struct RunConfig {
    SimilarityConfig similarity;
    MatrixMetric metric = MatrixMetric::composite;
    /// Resample every trajectory to this many points before comparing.
    std::optional<std::size_t> resample;
    ClusteringParameters clustering;
};

/// Reads `key = value` lines; '#' starts a comment. Unspecified keys keep
/// their defaults. Throws Error(unknown_option), Error(invalid_value) (both
/// with the line number) or Error(weight_simplex_violation).
RunConfig read_config(std::istream& in);
RunConfig read_config(const std::filesystem::path& path);

/// The effective configuration as `key = value` pairs, in a stable order.
std::vector<std::pair<std::string, std::string>> config_entries(const RunConfig& config);

/// Everything a run needs, keyed and ordered by the points file.
struct DatasetBundle {
    std::vector<EnrichedTrajectory> trajectories;
    DistanceMode coordinate_mode = DistanceMode::euclidean;
    ContextSchema context_schema;

    const EnrichedTrajectory* find(const std::string& id) const noexcept;
};

/// Assembles a bundle from trajectories plus optional context and semantics.
/// Trajectories without context rows get no context series.
DatasetBundle make_bundle(std::vector<Trajectory> trajectories, const ContextSeries* context,
                          const EpisodeLists* episodes, const RunConfig& config);

DatasetBundle load_bundle(const std::filesystem::path& points, const std::optional<std::filesystem::path>& context,
                          const std::optional<std::filesystem::path>& semantics, const RunConfig& config);

/// Header `id,<id_0>,...`, then one row per element.
void write_matrix_csv(const DistanceMatrix& matrix, std::ostream& out);
void write_matrix_csv(const DistanceMatrix& matrix, const std::filesystem::path& path);
DistanceMatrix read_matrix_csv(std::istream& in);
DistanceMatrix read_matrix_csv(const std::filesystem::path& path);

/// `traj_id,cluster` with the literal `noise` for noise points.
void write_clusters_csv(const ClusterResult& result, std::span<const std::string> ids, std::ostream& out);
void write_clusters_csv(const ClusterResult& result, std::span<const std::string> ids,
                        const std::filesystem::path& path);
std::vector<std::pair<std::string, int>> read_clusters_csv(std::istream& in);

/// `left,right,height,count` merge list.
void write_dendrogram_csv(const Dendrogram& dendrogram, std::ostream& out);
void write_dendrogram_csv(const Dendrogram& dendrogram, const std::filesystem::path& path);
Dendrogram read_dendrogram_csv(std::istream& in, std::size_t leaves);

struct Report {
    std::string command;
    std::vector<std::pair<std::string, std::string>> parameters;
    std::optional<double> sigma;
    std::optional<DimensionSummary> dimensions;
    std::optional<ClusterResult> clusters;
    std::optional<double> silhouette;
};

void write_report(const Report& report, std::ostream& out);
void write_report(const Report& report, const std::filesystem::path& path);

/// Shortest representation that parses back to the same double.
std::string format_double(double value);

}  // namespace trajkit::io
