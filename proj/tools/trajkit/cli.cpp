#include "trajkit/cli.hpp"

#include "CLI11.hpp"
#include "trajkit/clustering.hpp"
#include "trajkit/composite.hpp"
#include "trajkit/distance_matrix.hpp"
#include "trajkit/error.hpp"
#include "trajkit/io.hpp"
#include "trajkit/similarity.hpp"
#include "trajkit/spatial.hpp"
#include "trajkit/temporal.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <thread>

namespace trajkit::cli {

namespace fs = std::filesystem;

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Inputs {
    std::string points;
    std::string context;
    std::string semantics;
    std::string config;
};

struct Options {
    Inputs in;
    // relate
    std::string a;
    std::string b;
    // distmat / cluster
    std::string metric;
    std::string out;
    std::string report;
    std::optional<std::size_t> jobs;
    // cluster
    std::string algo;
    std::string matrix;
    std::string dendrogram;
    std::optional<double> eps;
    std::optional<std::size_t> min_pts;
    std::string linkage;
    std::optional<std::size_t> k;
    std::optional<double> height;
    std::optional<std::uint64_t> seed;
};

void add_inputs(CLI::App* cmd, Inputs& in, bool enrichment) {
    cmd->add_option("--points", in.points, "Trajectory points CSV (traj_id,t,x,y[,z])")->required();
    cmd->add_option("--config", in.config, "Run configuration (key = value)");
    if (enrichment) {
        cmd->add_option("--context", in.context, "Context CSV (traj_id,point_index,key,value)");
        cmd->add_option("--semantics", in.semantics, "Semantic episodes CSV (traj_id,start_index,end_index,label)");
    }
}

io::RunConfig load_config(const Inputs& in) {
    return in.config.empty() ? io::RunConfig{} : io::read_config(fs::path(in.config));
}

io::DatasetBundle load_dataset(const Inputs& in, const io::RunConfig& config) {
    auto optional_path = [](const std::string& p) {
        return p.empty() ? std::nullopt : std::optional<fs::path>(p);
    };
    return io::load_bundle(in.points, optional_path(in.context), optional_path(in.semantics), config);
}

// Refuses to write over any of the files a command reads.
void guard_output(const std::string& out, std::initializer_list<const std::string*> inputs) {
    if (out.empty()) return;
    std::error_code ec;
    for (const std::string* in : inputs) {
        if (in->empty()) continue;
        if (fs::exists(out, ec) && fs::equivalent(out, *in, ec)) {
            throw UsageError("output '" + out + "' would overwrite input '" + *in + "'");
        }
    }
}

std::size_t resolve_jobs(const std::optional<std::size_t>& flag) {
    if (flag) {
        if (*flag == 0) throw UsageError("--jobs must be at least 1");
        return *flag;
    }
    if (const char* env = std::getenv("TRAJKIT_JOBS"); env != nullptr && *env != '\0') {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v < 1) {
            throw UsageError("TRAJKIT_JOBS must be a positive integer, got '" + std::string(env) + "'");
        }
        return static_cast<std::size_t>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::string number(double v) { return io::format_double(v); }

// ---------------------------------------------------------------------------

int cmd_validate(const Options& opt, std::ostream& out) {
    std::ifstream file(opt.in.points, std::ios::binary);
    if (!file) throw Error(Errc::io_error, "cannot open '" + opt.in.points + "' for reading");
    const auto groups = io::parse_points_csv(file);
    std::size_t invalid = 0;
    for (const auto& raw : groups) {
        try {
            const Trajectory t = Trajectory::validate(raw.id, raw.points);
            out << "ok " << t.id() << " points=" << t.size() << '\n';
        } catch (const Error& e) {
            ++invalid;
            out << "invalid " << raw.id << " (line " << raw.first_line << "): " << e.what() << '\n';
        }
    }
    out << groups.size() << " trajectories, " << invalid << " invalid\n";
    return invalid == 0 ? kExitOk : kExitFailure;
}

int cmd_info(const Options& opt, std::ostream& out) {
    const io::RunConfig config = load_config(opt.in);
    const auto trajectories = io::read_points_csv(fs::path(opt.in.points));
    out << "traj_id,points,start,end,duration,path_length,x_min,y_min,x_max,y_max\n";
    for (const Trajectory& t : trajectories) {
        const TimeInterval span = time_span(t);
        out << t.id() << ',' << t.size() << ',' << number(span.start()) << ',' << number(span.end()) << ','
            << number(span.duration()) << ',' << number(path_length(t, config.similarity.distance_mode));
        if (t.dimension() == 2) {
            const Region r = bounding_region(t);
            out << ',' << number(r.x_min()) << ',' << number(r.y_min()) << ',' << number(r.x_max()) << ','
                << number(r.y_max());
        } else {
            out << ",,,,";
        }
        out << '\n';
    }
    return kExitOk;
}

template <typename Fn>
void print_or_na(std::ostream& out, std::string_view key, Fn&& fn) {
    out << key << ": ";
    try {
        out << fn();
    } catch (const Error& e) {
        out << "n/a (" << to_string(e.code()) << ")";
    }
    out << '\n';
}

int cmd_relate(const Options& opt, std::ostream& out) {
    const io::RunConfig config = load_config(opt.in);
    const io::DatasetBundle bundle = load_dataset(opt.in, config);
    const EnrichedTrajectory* ea = bundle.find(opt.a);
    const EnrichedTrajectory* eb = bundle.find(opt.b);
    if (ea == nullptr || eb == nullptr) {
        throw Error(Errc::validation_error, "unknown trajectory id '" + (ea == nullptr ? opt.a : opt.b) + "'");
    }
    const Trajectory& ta = ea->trajectory();
    const Trajectory& tb = eb->trajectory();
    const SimilarityConfig& sim = config.similarity;
    const DistanceMode mode = sim.distance_mode;

    out << "a: " << ta.id() << '\n' << "b: " << tb.id() << '\n';
    out << "allen_relation: " << to_string(allen_relation(time_span(ta), time_span(tb))) << '\n';
    print_or_na(out, "temporal_overlap", [&] { return number(temporal_overlap_ratio(time_span(ta), time_span(tb))); });
    print_or_na(out, "topological_relation", [&] {
        return std::string(to_string(topological_relation(bounding_region(ta), bounding_region(tb))));
    });
    print_or_na(out, "direction_relation", [&] {
        return std::string(to_string(direction_relation(bounding_region(ta), bounding_region(tb))));
    });
    print_or_na(out, "centroid_distance",
                [&] { return number(centroid_distance(bounding_region(ta), bounding_region(tb))); });
    print_or_na(out, "min_distance", [&] { return number(min_distance(bounding_region(ta), bounding_region(tb))); });

    const MeasurementComparison cmp = measurement_compare(ta, tb, mode);
    out << "longer: " << cmp.longer.value_or("tie") << '\n';
    out << "longer_duration: " << cmp.longer_duration.value_or("tie") << '\n';
    out << "length_ratio: " << number(cmp.length_ratio) << '\n';

    print_or_na(out, "euclidean_lockstep", [&]() -> std::string {
        if (ta.size() == tb.size()) return number(lockstep_euclidean(ta, tb, mode));
        const std::size_t k = std::max(ta.size(), tb.size());
        return number(lockstep_euclidean(resample(ta, k), resample(tb, k), mode)) + " (resampled to " +
               std::to_string(k) + " points)";
    });
    print_or_na(out, "frechet", [&] { return number(discrete_frechet(ta, tb, mode)); });
    print_or_na(out, "dtw", [&] { return number(dtw(ta, tb, mode, sim.dtw_window)); });
    const LcssResult matched = lcss(ta, tb, sim.epsilon, sim.delta, mode);
    out << "lcss: " << number(matched.similarity) << " (length " << matched.length << ")\n";
    out << "edr: " << edit_distance_edr(ta, tb, sim.epsilon, mode) << '\n';
    print_or_na(out, "continuity", [&] { return number(continuity_score(matched.matches)); });
    return kExitOk;
}

MatrixMetric pick_metric(const Options& opt, const io::RunConfig& config) {
    if (opt.metric.empty()) return config.metric;
    const auto m = parse_matrix_metric(opt.metric);
    if (!m) throw UsageError("unknown metric '" + opt.metric + "'");
    return *m;
}

DistanceComputation compute_matrix(const Options& opt, const io::RunConfig& config) {
    const MatrixMetric metric = pick_metric(opt, config);
    const std::size_t jobs = resolve_jobs(opt.jobs);
    const io::DatasetBundle bundle = load_dataset(opt.in, config);
    return compute_distance_matrix(bundle.trajectories, config.similarity, metric, jobs);
}

std::vector<std::pair<std::string, std::string>> report_parameters(const Options& opt, const io::RunConfig& config) {
    auto params = io::config_entries(config);
    if (!opt.metric.empty()) {
        for (auto& [key, value] : params) {
            if (key == "metric") value = opt.metric;
        }
    }
    return params;
}

int cmd_distmat(const Options& opt, std::ostream& out) {
    guard_output(opt.out, {&opt.in.points, &opt.in.context, &opt.in.semantics, &opt.in.config});
    guard_output(opt.report, {&opt.in.points, &opt.in.context, &opt.in.semantics, &opt.in.config});
    const io::RunConfig config = load_config(opt.in);
    const DistanceComputation result = compute_matrix(opt, config);
    io::write_matrix_csv(result.matrix, fs::path(opt.out));
    if (!opt.report.empty()) {
        io::Report report{"distmat", report_parameters(opt, config), result.sigma, result.dimensions, std::nullopt,
                          std::nullopt};
        io::write_report(report, fs::path(opt.report));
    }
    out << "wrote " << result.matrix.size() << "x" << result.matrix.size() << " matrix to " << opt.out << '\n';
    return kExitOk;
}

int cmd_cluster(const Options& opt, std::ostream& out) {
    const std::initializer_list<const std::string*> inputs = {&opt.in.points, &opt.in.context, &opt.in.semantics,
                                                              &opt.in.config, &opt.matrix};
    guard_output(opt.out, inputs);
    guard_output(opt.report, inputs);
    guard_output(opt.dendrogram, inputs);

    const io::RunConfig config = load_config(opt.in);
    const io::ClusteringParameters& defaults = config.clustering;

    // Validate flags before any expensive work.
    if (opt.matrix.empty() == opt.in.points.empty()) {
        throw UsageError("give exactly one of --matrix or --points");
    }
    std::optional<double> eps = opt.eps ? opt.eps : defaults.dbscan_eps;
    std::optional<std::size_t> min_pts = opt.min_pts ? opt.min_pts : defaults.dbscan_min_pts;
    std::optional<Linkage> linkage = defaults.linkage;
    std::optional<std::size_t> k = opt.k;
    std::optional<double> height = opt.height;
    if (opt.algo == "dbscan") {
        if (!eps) throw UsageError("dbscan needs --eps");
        if (!min_pts) throw UsageError("dbscan needs --min-pts");
    } else if (opt.algo == "agglo") {
        if (!opt.linkage.empty()) {
            linkage = parse_linkage(opt.linkage);
            if (!linkage) throw UsageError("unknown linkage '" + opt.linkage + "'");
        }
        if (!linkage) linkage = Linkage::single;
        if (!k && !height) {
            k = defaults.agglo_k;
            height = defaults.agglo_height;
        }
        if (k.has_value() == height.has_value()) throw UsageError("agglo needs exactly one of --k or --height");
    } else {
        if (!k) k = defaults.kmedoids_k;
        if (!k) throw UsageError("kmedoids needs --k");
    }

    std::optional<DistanceComputation> computed;
    if (opt.in.points.empty()) {
        computed.emplace(DistanceComputation{io::read_matrix_csv(fs::path(opt.matrix)), std::nullopt, std::nullopt});
    } else {
        computed.emplace(compute_matrix(opt, config));
    }
    const DistanceMatrix& matrix = computed->matrix;

    ClusterResult result;
    if (opt.algo == "dbscan") {
        result = dbscan(matrix, *eps, *min_pts);
    } else if (opt.algo == "agglo") {
        const Dendrogram tree = agglomerative(matrix, *linkage);
        result = k ? cut_dendrogram(tree, *k) : cut_dendrogram_at_height(tree, *height);
        result.parameters.insert(result.parameters.begin(), {"linkage", std::string(to_string(*linkage))});
        if (!opt.dendrogram.empty()) io::write_dendrogram_csv(tree, fs::path(opt.dendrogram));
    } else {
        result = k_medoids(matrix, *k, opt.seed.value_or(defaults.kmedoids_seed)).clusters;
    }

    std::optional<double> score;
    try {
        score = silhouette(matrix, result);
    } catch (const Error& e) {
        if (e.code() != Errc::too_few_clusters) throw;
    }

    if (!opt.out.empty()) {
        io::write_clusters_csv(result, matrix.ids(), fs::path(opt.out));
    } else {
        io::write_clusters_csv(result, matrix.ids(), out);
    }
    if (!opt.report.empty()) {
        io::Report report{"cluster", report_parameters(opt, config), computed->sigma, computed->dimensions, result,
                          score};
        io::write_report(report, fs::path(opt.report));
    }
    if (!opt.out.empty()) {
        out << result.algorithm << ": " << result.k << " clusters, " << result.noise_count() << " noise, silhouette "
            << (score ? number(*score) : std::string("n/a")) << '\n';
    }
    return kExitOk;
}

int cmd_resample(const Options& opt, std::ostream& out) {
    guard_output(opt.out, {&opt.in.points});
    if (!opt.k || *opt.k < 2) throw UsageError("resample needs --k >= 2");
    const auto trajectories = io::read_points_csv(fs::path(opt.in.points));
    std::vector<Trajectory> resampled;
    resampled.reserve(trajectories.size());
    for (const Trajectory& t : trajectories) {
        resampled.push_back(resample(t, *opt.k));
    }
    io::write_points_csv(resampled, fs::path(opt.out));
    out << "resampled " << resampled.size() << " trajectories to " << *opt.k << " points\n";
    return kExitOk;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"trajkit: trajectory similarity and clustering toolkit", "trajkit"};
    app.require_subcommand(1, 1);
    Options opt;

    auto* validate = app.add_subcommand("validate", "Parse a points file and report invariant violations");
    validate->add_option("--points", opt.in.points, "Trajectory points CSV")->required();

    auto* info = app.add_subcommand("info", "Per-trajectory point count, duration, path length and bounding box");
    add_inputs(info, opt.in, false);

    auto* relate = app.add_subcommand("relate", "Relations and distances between two trajectories");
    add_inputs(relate, opt.in, true);
    relate->add_option("--a", opt.a, "First trajectory id")->required();
    relate->add_option("--b", opt.b, "Second trajectory id")->required();

    auto* distmat = app.add_subcommand("distmat", "Compute a pairwise distance matrix");
    add_inputs(distmat, opt.in, true);
    distmat->add_option("--metric", opt.metric, "euclidean_lockstep|frechet|dtw|lcss|edr|composite");
    distmat->add_option("--out", opt.out, "Matrix CSV to write")->required();
    distmat->add_option("--jobs", opt.jobs, "Worker threads (default: TRAJKIT_JOBS or hardware threads)");
    distmat->add_option("--report", opt.report, "Optional report file");

    auto* cluster = app.add_subcommand("cluster", "Cluster trajectories from a matrix or a points file");
    cluster->add_option("--algo", opt.algo, "dbscan|agglo|kmedoids")
        ->required()
        ->check(CLI::IsMember({"dbscan", "agglo", "kmedoids"}));
    cluster->add_option("--matrix", opt.matrix, "Precomputed matrix CSV");
    cluster->add_option("--points", opt.in.points, "Points CSV (computes the matrix)");
    cluster->add_option("--context", opt.in.context, "Context CSV");
    cluster->add_option("--semantics", opt.in.semantics, "Semantic episodes CSV");
    cluster->add_option("--config", opt.in.config, "Run configuration");
    cluster->add_option("--metric", opt.metric, "Metric when computing the matrix");
    cluster->add_option("--jobs", opt.jobs, "Worker threads when computing the matrix");
    cluster->add_option("--eps", opt.eps, "dbscan neighbourhood radius");
    cluster->add_option("--min-pts", opt.min_pts, "dbscan core threshold (self included)");
    cluster->add_option("--linkage", opt.linkage, "agglo linkage: single|complete|average");
    cluster->add_option("--k", opt.k, "Cluster count (agglo cut or kmedoids)");
    cluster->add_option("--height", opt.height, "agglo cut height");
    cluster->add_option("--seed", opt.seed, "kmedoids seed");
    cluster->add_option("--out", opt.out, "Cluster assignment CSV (default: stdout)");
    cluster->add_option("--dendrogram", opt.dendrogram, "agglo merge-list CSV");
    cluster->add_option("--report", opt.report, "Optional report file");

    auto* resample_cmd = app.add_subcommand("resample", "Resample every trajectory to k points");
    resample_cmd->add_option("--points", opt.in.points, "Points CSV")->required();
    resample_cmd->add_option("--k", opt.k, "Target point count")->required();
    resample_cmd->add_option("--out", opt.out, "Points CSV to write")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        if (*validate) return cmd_validate(opt, out);
        if (*info) return cmd_info(opt, out);
        if (*relate) return cmd_relate(opt, out);
        if (*distmat) return cmd_distmat(opt, out);
        if (*cluster) return cmd_cluster(opt, out);
        if (*resample_cmd) return cmd_resample(opt, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitUsage;
}

}  // namespace trajkit::cli
