#include "trajkit/io.hpp"

#include "trajkit/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>
#include <unordered_map>

namespace trajkit::io {

namespace {

std::string_view trim(std::string_view s) noexcept {
    const auto blank = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
    while (!s.empty() && blank(s.front())) s.remove_prefix(1);
    while (!s.empty() && blank(s.back())) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view line, char sep = ',') {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            fields.push_back(trim(line.substr(start)));
            return fields;
        }
        fields.push_back(trim(line.substr(start, pos - start)));
        start = pos + 1;
    }
}

[[noreturn]] void parse_failure(std::size_t line, const std::string& what) {
    throw Error(Errc::parse_error, "line " + std::to_string(line) + ": " + what, line);
}

std::optional<double> to_double(std::string_view s) noexcept {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
        return std::nullopt;
    }
    return v;
}

std::optional<std::size_t> to_index(std::string_view s) noexcept {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
        return std::nullopt;
    }
    return v;
}

double require_double(std::string_view s, std::size_t line, std::string_view column) {
    const auto v = to_double(s);
    if (!v) {
        parse_failure(line, "column '" + std::string(column) + "' is not a number: '" + std::string(s) + "'");
    }
    return *v;
}

std::size_t require_index(std::string_view s, std::size_t line, std::string_view column) {
    const auto v = to_index(s);
    if (!v) {
        parse_failure(line, "column '" + std::string(column) + "' is not a non-negative integer: '" +
                                std::string(s) + "'");
    }
    return *v;
}

// Line reader that tracks 1-based line numbers and skips blank lines.
class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    bool next(std::string& line) {
        while (std::getline(in_, line)) {
            ++number_;
            if (!trim(line).empty()) {
                return true;
            }
        }
        return false;
    }
    std::size_t number() const noexcept { return number_; }

private:
    std::istream& in_;
    std::size_t number_ = 0;
};

void expect_header(LineReader& reader, std::span<const std::vector<std::string_view>> accepted,
                   std::string_view what) {
    std::string line;
    if (!reader.next(line)) {
        parse_failure(1, std::string(what) + " file is empty");
    }
    const auto fields = split(line);
    for (const auto& header : accepted) {
        if (fields == header) {
            return;
        }
    }
    parse_failure(reader.number(), "unexpected " + std::string(what) + " header '" + std::string(trim(line)) + "'");
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(Errc::io_error, "cannot open '" + path.string() + "' for reading");
    }
    return in;
}

template <typename Fn>
void with_output(const std::filesystem::path& path, Fn&& fn) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(Errc::io_error, "cannot open '" + path.string() + "' for writing");
    }
    fn(out);
    out.flush();
    if (!out) {
        throw Error(Errc::io_error, "failed writing '" + path.string() + "'");
    }
}

template <typename Fn>
auto with_input(const std::filesystem::path& path, Fn&& fn) {
    std::ifstream in = open_input(path);
    try {
        return fn(in);
    } catch (const Error& e) {
        throw Error(e.code(), path.string() + ": " + e.detail(), e.index());
    }
}

}  // namespace

std::string format_double(double value) {
    char buffer[32];
    const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
    return std::string(buffer, ptr);
}

// ---------------------------------------------------------------------------
// points

std::vector<RawTrajectory> parse_points_csv(std::istream& in) {
    LineReader reader(in);
    const std::vector<std::vector<std::string_view>> headers = {{"traj_id", "t", "x", "y"},
                                                                {"traj_id", "t", "x", "y", "z"}};
    expect_header(reader, headers, "points");

    std::vector<RawTrajectory> groups;
    std::unordered_map<std::string, std::size_t> slot;
    std::optional<std::size_t> width;
    std::string line;
    while (reader.next(line)) {
        const auto fields = split(line);
        if (fields.size() != 4 && fields.size() != 5) {
            parse_failure(reader.number(), "expected 4 or 5 fields, got " + std::to_string(fields.size()));
        }
        if (!width) {
            width = fields.size();
        } else if (*width != fields.size()) {
            parse_failure(reader.number(), "row width differs from earlier rows");
        }
        if (fields[0].empty()) {
            parse_failure(reader.number(), "empty traj_id");
        }
        STPoint p;
        p.t = require_double(fields[1], reader.number(), "t");
        for (std::size_t c = 2; c < fields.size(); ++c) {
            p.coords.push_back(require_double(fields[c], reader.number(), c == 2 ? "x" : c == 3 ? "y" : "z"));
        }
        const std::string id(fields[0]);
        auto [it, inserted] = slot.try_emplace(id, groups.size());
        if (inserted) {
            groups.push_back(RawTrajectory{id, {}, reader.number()});
        }
        groups[it->second].points.push_back(std::move(p));
    }
    return groups;
}

std::vector<Trajectory> read_points_csv(std::istream& in) {
    std::vector<Trajectory> out;
    for (RawTrajectory& raw : parse_points_csv(in)) {
        try {
            out.push_back(Trajectory::validate(raw.id, raw.points));
        } catch (const Error& e) {
            std::string where = e.index() ? " at point " + std::to_string(*e.index()) : std::string();
            throw Error(Errc::validation_error,
                        "trajectory '" + raw.id + "': " + std::string(to_string(e.code())) + where + ": " + e.detail(),
                        e.index());
        }
    }
    return out;
}

std::vector<Trajectory> read_points_csv(const std::filesystem::path& path) {
    return with_input(path, [](std::istream& in) { return read_points_csv(in); });
}

void write_points_csv(std::span<const Trajectory> trajectories, std::ostream& out) {
    const bool has_z = std::any_of(trajectories.begin(), trajectories.end(),
                                   [](const Trajectory& t) { return t.dimension() == 3; });
    for (const Trajectory& t : trajectories) {
        if (t.dimension() != 2 && t.dimension() != 3) {
            throw Error(Errc::dimension_unsupported, "points files hold 2-D or 3-D trajectories only");
        }
        if (has_z && t.dimension() != 3) {
            throw Error(Errc::dimension_mismatch, "cannot mix 2-D and 3-D trajectories in one points file");
        }
    }
    out << (has_z ? "traj_id,t,x,y,z\n" : "traj_id,t,x,y\n");
    for (const Trajectory& t : trajectories) {
        for (std::size_t i = 0; i < t.size(); ++i) {
            out << t.id() << ',' << format_double(t.time(i));
            for (double c : t.coords(i)) {
                out << ',' << format_double(c);
            }
            out << '\n';
        }
    }
}

void write_points_csv(std::span<const Trajectory> trajectories, const std::filesystem::path& path) {
    with_output(path, [&](std::ostream& out) { write_points_csv(trajectories, out); });
}

PointCounts point_counts(std::span<const Trajectory> trajectories) {
    PointCounts counts;
    for (const Trajectory& t : trajectories) {
        counts[t.id()] = t.size();
    }
    return counts;
}

// ---------------------------------------------------------------------------
// context

namespace {

std::size_t count_for(const PointCounts& counts, const std::string& id, std::size_t line) {
    const auto it = counts.find(id);
    if (it == counts.end()) {
        throw Error(Errc::validation_error, "line " + std::to_string(line) + ": unknown trajectory '" + id + "'",
                    line);
    }
    return it->second;
}

}  // namespace

ContextSeries read_context_csv(std::istream& in, const ContextSchema& schema, const PointCounts& counts) {
    LineReader reader(in);
    const std::vector<std::vector<std::string_view>> headers = {{"traj_id", "point_index", "key", "value"}};
    expect_header(reader, headers, "context");

    ContextSeries series;
    std::string line;
    while (reader.next(line)) {
        const std::size_t ln = reader.number();
        const auto fields = split(line);
        if (fields.size() != 4) {
            parse_failure(ln, "expected 4 fields, got " + std::to_string(fields.size()));
        }
        const std::string id(fields[0]);
        const std::size_t index = require_index(fields[1], ln, "point_index");
        const std::string key(fields[2]);
        const std::size_t count = count_for(counts, id, ln);
        if (index >= count) {
            throw Error(Errc::index_out_of_range,
                        "line " + std::to_string(ln) + ": point_index " + std::to_string(index) + " but '" + id +
                            "' has " + std::to_string(count) + " points",
                        ln);
        }
        const auto spec = schema.find(key);
        if (spec == schema.end()) {
            throw Error(Errc::unknown_key, "line " + std::to_string(ln) + ": context key '" + key + "' is not declared",
                        ln);
        }
        ContextValue value;
        if (spec->second.kind == ContextKind::numeric) {
            value = require_double(fields[3], ln, "value");
        } else {
            value = std::string(fields[3]);
        }
        auto& samples = series[id];
        samples.resize(count);
        ContextSample& sample = samples[index];
        if (sample.count(key) > 0) {
            throw Error(Errc::invalid_value, "line " + std::to_string(ln) + ": duplicate value for key '" + key + "'",
                        ln);
        }
        sample.emplace(key, std::move(value));
        try {
            check_context(sample, schema);
        } catch (const Error& e) {
            throw Error(e.code(), "line " + std::to_string(ln) + ": " + e.detail(), ln);
        }
    }
    return series;
}

ContextSeries read_context_csv(const std::filesystem::path& path, const ContextSchema& schema,
                               const PointCounts& counts) {
    return with_input(path, [&](std::istream& in) { return read_context_csv(in, schema, counts); });
}

void write_context_csv(const ContextSeries& context, std::ostream& out) {
    out << "traj_id,point_index,key,value\n";
    for (const auto& [id, samples] : context) {
        for (std::size_t i = 0; i < samples.size(); ++i) {
            for (const auto& [key, value] : samples[i]) {
                out << id << ',' << i << ',' << key << ',';
                if (const auto* d = std::get_if<double>(&value)) {
                    out << format_double(*d);
                } else {
                    out << std::get<std::string>(value);
                }
                out << '\n';
            }
        }
    }
}

// ---------------------------------------------------------------------------
// semantics

EpisodeLists read_semantics_csv(std::istream& in, const PointCounts& counts) {
    LineReader reader(in);
    std::string line;
    if (!reader.next(line)) {
        return {};
    }
    if (split(line) != std::vector<std::string_view>{"traj_id", "start_index", "end_index", "label"}) {
        parse_failure(reader.number(), "unexpected semantics header '" + std::string(trim(line)) + "'");
    }

    EpisodeLists lists;
    while (reader.next(line)) {
        const std::size_t ln = reader.number();
        const auto fields = split(line);
        if (fields.size() != 4) {
            parse_failure(ln, "expected 4 fields, got " + std::to_string(fields.size()));
        }
        const std::string id(fields[0]);
        const std::size_t first = require_index(fields[1], ln, "start_index");
        const std::size_t last = require_index(fields[2], ln, "end_index");
        if (first > last) {
            parse_failure(ln, "start_index exceeds end_index");
        }
        if (fields[3].empty()) {
            parse_failure(ln, "empty label");
        }
        const std::size_t count = count_for(counts, id, ln);
        if (last >= count) {
            throw Error(Errc::index_out_of_range,
                        "line " + std::to_string(ln) + ": end_index " + std::to_string(last) + " but '" + id +
                            "' has " + std::to_string(count) + " points",
                        ln);
        }
        lists[id].push_back(SemanticEpisode{std::string(fields[3]), first, last});
    }

    for (auto& [id, episodes] : lists) {
        std::stable_sort(episodes.begin(), episodes.end(),
                         [](const SemanticEpisode& a, const SemanticEpisode& b) { return a.first < b.first; });
        for (std::size_t e = 1; e < episodes.size(); ++e) {
            if (episodes[e].first <= episodes[e - 1].last) {
                throw Error(Errc::overlapping_episodes, "trajectory '" + id + "' has overlapping episodes '" +
                                                            episodes[e - 1].label + "' and '" + episodes[e].label +
                                                            "'");
            }
        }
    }
    return lists;
}

EpisodeLists read_semantics_csv(const std::filesystem::path& path, const PointCounts& counts) {
    return with_input(path, [&](std::istream& in) { return read_semantics_csv(in, counts); });
}

void write_semantics_csv(const EpisodeLists& episodes, std::ostream& out) {
    out << "traj_id,start_index,end_index,label\n";
    for (const auto& [id, list] : episodes) {
        for (const SemanticEpisode& ep : list) {
            out << id << ',' << ep.first << ',' << ep.last << ',' << ep.label << '\n';
        }
    }
}

// ---------------------------------------------------------------------------
// configuration

namespace {

[[noreturn]] void invalid_value(std::size_t line, const std::string& key, std::string_view value) {
    throw Error(Errc::invalid_value,
                "line " + std::to_string(line) + ": invalid value '" + std::string(value) + "' for '" + key + "'", line);
}

double config_double(std::string_view value, std::size_t line, const std::string& key) {
    const auto v = to_double(value);
    if (!v || !std::isfinite(*v)) invalid_value(line, key, value);
    return *v;
}

std::size_t config_index(std::string_view value, std::size_t line, const std::string& key) {
    const auto v = to_index(value);
    if (!v) invalid_value(line, key, value);
    return *v;
}

std::vector<std::string_view> split_blank(std::string_view s) {
    std::vector<std::string_view> parts;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == ',' || s[i] == '/')) ++i;
        const std::size_t start = i;
        while (i < s.size() && !(s[i] == ' ' || s[i] == '\t' || s[i] == ',' || s[i] == '/')) ++i;
        if (i > start) parts.push_back(s.substr(start, i - start));
    }
    return parts;
}

void apply_option(RunConfig& config, const std::string& key, std::string_view value, std::size_t line) {
    SimilarityConfig& sim = config.similarity;
    ClusteringParameters& cl = config.clustering;

    if (key == "metric") {
        const auto m = parse_matrix_metric(value);
        if (!m) invalid_value(line, key, value);
        config.metric = *m;
    } else if (key == "spatial_metric") {
        const auto m = parse_spatial_metric(value);
        if (!m) invalid_value(line, key, value);
        sim.spatial_metric = *m;
    } else if (key == "coordinates") {
        if (value == "euclidean") {
            sim.distance_mode = DistanceMode::euclidean;
        } else if (value == "haversine") {
            sim.distance_mode = DistanceMode::haversine;
        } else {
            invalid_value(line, key, value);
        }
    } else if (key == "weights") {
        const auto parts = split_blank(value);
        if (parts.size() != 4) invalid_value(line, key, value);
        sim.weights = {config_double(parts[0], line, key), config_double(parts[1], line, key),
                       config_double(parts[2], line, key), config_double(parts[3], line, key)};
    } else if (key == "w_spatial") {
        sim.weights.spatial = config_double(value, line, key);
    } else if (key == "w_temporal") {
        sim.weights.temporal = config_double(value, line, key);
    } else if (key == "w_context") {
        sim.weights.context = config_double(value, line, key);
    } else if (key == "w_semantic") {
        sim.weights.semantic = config_double(value, line, key);
    } else if (key == "epsilon") {
        sim.epsilon = config_double(value, line, key);
        if (!(sim.epsilon > 0.0)) invalid_value(line, key, value);
    } else if (key == "delta") {
        sim.delta = value == "unbounded" ? std::nullopt : std::optional(config_index(value, line, key));
    } else if (key == "sigma") {
        if (value == "auto") {
            sim.sigma.reset();
        } else {
            sim.sigma = config_double(value, line, key);
            if (!(*sim.sigma > 0.0)) invalid_value(line, key, value);
        }
    } else if (key == "lambda") {
        sim.lambda = config_double(value, line, key);
        if (!(sim.lambda >= 0.0 && sim.lambda <= 1.0)) invalid_value(line, key, value);
    } else if (key == "dtw_window") {
        sim.dtw_window = value == "none" ? std::nullopt : std::optional(config_index(value, line, key));
    } else if (key == "resample") {
        config.resample = value == "none" ? std::nullopt : std::optional(config_index(value, line, key));
        if (config.resample && *config.resample < 2) invalid_value(line, key, value);
    } else if (key.rfind("context.", 0) == 0 && key.size() > 8) {
        const auto parts = split_blank(value);
        ContextKeySpec spec;
        if (parts.size() == 1 && parts[0] == "categorical") {
            spec.kind = ContextKind::categorical;
        } else if (parts.size() == 3 && parts[0] == "numeric") {
            spec.kind = ContextKind::numeric;
            spec.min = config_double(parts[1], line, key);
            spec.max = config_double(parts[2], line, key);
            if (!(spec.min <= spec.max)) invalid_value(line, key, value);
        } else {
            invalid_value(line, key, value);
        }
        sim.context_schema[key.substr(8)] = spec;
    } else if (key == "dbscan.eps") {
        cl.dbscan_eps = config_double(value, line, key);
        if (!(*cl.dbscan_eps > 0.0)) invalid_value(line, key, value);
    } else if (key == "dbscan.min_pts") {
        cl.dbscan_min_pts = config_index(value, line, key);
        if (*cl.dbscan_min_pts < 1) invalid_value(line, key, value);
    } else if (key == "agglo.linkage") {
        const auto l = parse_linkage(value);
        if (!l) invalid_value(line, key, value);
        cl.linkage = *l;
    } else if (key == "agglo.k") {
        cl.agglo_k = config_index(value, line, key);
    } else if (key == "agglo.height") {
        cl.agglo_height = config_double(value, line, key);
    } else if (key == "kmedoids.k") {
        cl.kmedoids_k = config_index(value, line, key);
    } else if (key == "kmedoids.seed") {
        const auto v = to_index(value);
        if (!v) invalid_value(line, key, value);
        cl.kmedoids_seed = *v;
    } else {
        throw Error(Errc::unknown_option, "line " + std::to_string(line) + ": unknown option '" + key + "'", line);
    }
}

}  // namespace

RunConfig read_config(std::istream& in) {
    RunConfig config;
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string_view text = raw;
        if (const auto hash = text.find('#'); hash != std::string_view::npos) {
            text = text.substr(0, hash);
        }
        text = trim(text);
        if (text.empty()) {
            continue;
        }
        const auto eq = text.find('=');
        if (eq == std::string_view::npos) {
            throw Error(Errc::invalid_value, "line " + std::to_string(line) + ": expected 'key = value'", line);
        }
        const std::string key(trim(text.substr(0, eq)));
        apply_option(config, key, trim(text.substr(eq + 1)), line);
    }

    const DimensionWeights& w = config.similarity.weights;
    if (w.spatial < 0.0 || w.temporal < 0.0 || w.context < 0.0 || w.semantic < 0.0 ||
        std::abs(w.sum() - 1.0) > kWeightSumTolerance) {
        throw Error(Errc::weight_simplex_violation,
                    "weights must be non-negative and sum to 1 (sum is " + format_double(w.sum()) + ")");
    }
    try {
        config.similarity.validate();
    } catch (const Error& e) {
        throw Error(Errc::invalid_value, e.detail());
    }
    return config;
}

RunConfig read_config(const std::filesystem::path& path) {
    return with_input(path, [](std::istream& in) { return read_config(in); });
}

std::vector<std::pair<std::string, std::string>> config_entries(const RunConfig& config) {
    const SimilarityConfig& sim = config.similarity;
    const ClusteringParameters& cl = config.clustering;
    std::vector<std::pair<std::string, std::string>> out = {
        {"metric", std::string(to_string(config.metric))},
        {"spatial_metric", std::string(to_string(sim.spatial_metric))},
        {"coordinates", sim.distance_mode == DistanceMode::haversine ? "haversine" : "euclidean"},
        {"weights", format_double(sim.weights.spatial) + "," + format_double(sim.weights.temporal) + "," +
                        format_double(sim.weights.context) + "," + format_double(sim.weights.semantic)},
        {"epsilon", format_double(sim.epsilon)},
        {"delta", sim.delta ? std::to_string(*sim.delta) : "unbounded"},
        {"sigma", sim.sigma ? format_double(*sim.sigma) : "auto"},
        {"lambda", format_double(sim.lambda)},
        {"dtw_window", sim.dtw_window ? std::to_string(*sim.dtw_window) : "none"},
        {"resample", config.resample ? std::to_string(*config.resample) : "none"},
    };
    for (const auto& [key, spec] : sim.context_schema) {
        out.emplace_back("context." + key, spec.kind == ContextKind::categorical
                                               ? std::string("categorical")
                                               : "numeric " + format_double(spec.min) + " " + format_double(spec.max));
    }
    if (cl.dbscan_eps) out.emplace_back("dbscan.eps", format_double(*cl.dbscan_eps));
    if (cl.dbscan_min_pts) out.emplace_back("dbscan.min_pts", std::to_string(*cl.dbscan_min_pts));
    if (cl.linkage) out.emplace_back("agglo.linkage", std::string(to_string(*cl.linkage)));
    if (cl.agglo_k) out.emplace_back("agglo.k", std::to_string(*cl.agglo_k));
    if (cl.agglo_height) out.emplace_back("agglo.height", format_double(*cl.agglo_height));
    if (cl.kmedoids_k) out.emplace_back("kmedoids.k", std::to_string(*cl.kmedoids_k));
    out.emplace_back("kmedoids.seed", std::to_string(cl.kmedoids_seed));
    return out;
}

// ---------------------------------------------------------------------------
// bundle

const EnrichedTrajectory* DatasetBundle::find(const std::string& id) const noexcept {
    const auto it = std::find_if(trajectories.begin(), trajectories.end(),
                                 [&](const EnrichedTrajectory& e) { return e.id() == id; });
    return it == trajectories.end() ? nullptr : &*it;
}

DatasetBundle make_bundle(std::vector<Trajectory> trajectories, const ContextSeries* context,
                          const EpisodeLists* episodes, const RunConfig& config) {
    DatasetBundle bundle;
    bundle.coordinate_mode = config.similarity.distance_mode;
    bundle.context_schema = config.similarity.context_schema;
    std::map<std::string, bool> seen;
    for (Trajectory& t : trajectories) {
        if (!seen.emplace(t.id(), true).second) {
            throw Error(Errc::validation_error, "duplicate trajectory id '" + t.id() + "'");
        }
        std::optional<std::vector<ContextSample>> series;
        if (context) {
            if (const auto it = context->find(t.id()); it != context->end()) series = it->second;
        }
        std::vector<SemanticEpisode> eps;
        if (episodes) {
            if (const auto it = episodes->find(t.id()); it != episodes->end()) eps = it->second;
        }
        EnrichedTrajectory enriched(std::move(t), std::move(series), std::move(eps));
        if (config.resample) {
            enriched = resample(enriched, *config.resample);
        }
        bundle.trajectories.push_back(std::move(enriched));
    }
    return bundle;
}

DatasetBundle load_bundle(const std::filesystem::path& points, const std::optional<std::filesystem::path>& context,
                          const std::optional<std::filesystem::path>& semantics, const RunConfig& config) {
    std::vector<Trajectory> trajectories = read_points_csv(points);
    const PointCounts counts = point_counts(trajectories);
    std::optional<ContextSeries> ctx;
    std::optional<EpisodeLists> eps;
    if (context) ctx = read_context_csv(*context, config.similarity.context_schema, counts);
    if (semantics) eps = read_semantics_csv(*semantics, counts);
    return make_bundle(std::move(trajectories), ctx ? &*ctx : nullptr, eps ? &*eps : nullptr, config);
}

// ---------------------------------------------------------------------------
// matrices, clusters, dendrograms

void write_matrix_csv(const DistanceMatrix& matrix, std::ostream& out) {
    out << "id";
    for (const std::string& id : matrix.ids()) out << ',' << id;
    out << '\n';
    for (std::size_t i = 0; i < matrix.size(); ++i) {
        out << matrix.ids()[i];
        for (double v : matrix.row(i)) out << ',' << format_double(v);
        out << '\n';
    }
}

void write_matrix_csv(const DistanceMatrix& matrix, const std::filesystem::path& path) {
    with_output(path, [&](std::ostream& out) { write_matrix_csv(matrix, out); });
}

DistanceMatrix read_matrix_csv(std::istream& in) {
    LineReader reader(in);
    std::string line;
    if (!reader.next(line)) {
        parse_failure(1, "matrix file is empty");
    }
    const auto header = split(line);
    if (header.empty() || header[0] != "id") {
        parse_failure(reader.number(), "matrix header must start with 'id'");
    }
    std::vector<std::string> ids(header.begin() + 1, header.end());
    const std::size_t n = ids.size();
    std::vector<double> values;
    values.reserve(n * n);
    std::size_t row = 0;
    while (reader.next(line)) {
        const auto fields = split(line);
        if (row >= n) parse_failure(reader.number(), "more rows than header ids");
        if (fields.size() != n + 1) {
            parse_failure(reader.number(), "expected " + std::to_string(n + 1) + " fields");
        }
        if (fields[0] != ids[row]) {
            parse_failure(reader.number(), "row id '" + std::string(fields[0]) + "' does not match header");
        }
        for (std::size_t c = 1; c <= n; ++c) {
            values.push_back(require_double(fields[c], reader.number(), ids[c - 1]));
        }
        ++row;
    }
    if (row != n) {
        parse_failure(reader.number(), "expected " + std::to_string(n) + " rows, got " + std::to_string(row));
    }
    return DistanceMatrix(std::move(ids), std::move(values));
}

DistanceMatrix read_matrix_csv(const std::filesystem::path& path) {
    return with_input(path, [](std::istream& in) { return read_matrix_csv(in); });
}

void write_clusters_csv(const ClusterResult& result, std::span<const std::string> ids, std::ostream& out) {
    if (ids.size() != result.labels.size()) {
        throw Error(Errc::invalid_parameter, "cluster labels and ids differ in length");
    }
    out << "traj_id,cluster\n";
    for (std::size_t i = 0; i < ids.size(); ++i) {
        out << ids[i] << ',';
        if (result.labels[i] == kNoise) {
            out << "noise";
        } else {
            out << result.labels[i];
        }
        out << '\n';
    }
}

void write_clusters_csv(const ClusterResult& result, std::span<const std::string> ids,
                        const std::filesystem::path& path) {
    with_output(path, [&](std::ostream& out) { write_clusters_csv(result, ids, out); });
}

std::vector<std::pair<std::string, int>> read_clusters_csv(std::istream& in) {
    LineReader reader(in);
    const std::vector<std::vector<std::string_view>> headers = {{"traj_id", "cluster"}};
    expect_header(reader, headers, "clusters");
    std::vector<std::pair<std::string, int>> out;
    std::string line;
    while (reader.next(line)) {
        const auto fields = split(line);
        if (fields.size() != 2) parse_failure(reader.number(), "expected 2 fields");
        int label = kNoise;
        if (fields[1] != "noise") {
            label = static_cast<int>(require_index(fields[1], reader.number(), "cluster"));
        }
        out.emplace_back(std::string(fields[0]), label);
    }
    return out;
}

void write_dendrogram_csv(const Dendrogram& dendrogram, std::ostream& out) {
    out << "left,right,height,count\n";
    for (const Merge& m : dendrogram.merges()) {
        out << m.left << ',' << m.right << ',' << format_double(m.height) << ',' << m.count << '\n';
    }
}

void write_dendrogram_csv(const Dendrogram& dendrogram, const std::filesystem::path& path) {
    with_output(path, [&](std::ostream& out) { write_dendrogram_csv(dendrogram, out); });
}

Dendrogram read_dendrogram_csv(std::istream& in, std::size_t leaves) {
    LineReader reader(in);
    const std::vector<std::vector<std::string_view>> headers = {{"left", "right", "height", "count"}};
    expect_header(reader, headers, "dendrogram");
    std::vector<Merge> merges;
    std::string line;
    while (reader.next(line)) {
        const auto fields = split(line);
        if (fields.size() != 4) parse_failure(reader.number(), "expected 4 fields");
        merges.push_back(Merge{require_index(fields[0], reader.number(), "left"),
                               require_index(fields[1], reader.number(), "right"),
                               require_double(fields[2], reader.number(), "height"),
                               require_index(fields[3], reader.number(), "count")});
    }
    return Dendrogram(leaves, std::move(merges));
}

// ---------------------------------------------------------------------------
// report

namespace {

void write_summary(std::ostream& out, std::string_view name, const ValueSummary& s) {
    out << name << ": mean=" << format_double(s.mean) << " min=" << format_double(s.min)
        << " max=" << format_double(s.max) << '\n';
}

}  // namespace

void write_report(const Report& report, std::ostream& out) {
    out << "# trajkit report\n";
    out << "command: " << report.command << "\n\n";
    out << "[parameters]\n";
    for (const auto& [key, value] : report.parameters) {
        out << key << " = " << value << '\n';
    }
    if (report.sigma) {
        out << "sigma_used = " << format_double(*report.sigma) << '\n';
    }
    if (report.dimensions) {
        const DimensionSummary& d = *report.dimensions;
        out << "\n[similarity]\n";
        write_summary(out, "total", d.total);
        write_summary(out, "spatial", d.spatial);
        write_summary(out, "temporal", d.temporal);
        write_summary(out, "context", d.context);
        write_summary(out, "semantic", d.semantic);
        write_summary(out, "continuity", d.continuity);
    }
    if (report.clusters) {
        const ClusterResult& c = *report.clusters;
        out << "\n[clustering]\n";
        out << "algorithm = " << c.algorithm << '\n';
        for (const auto& [key, value] : c.parameters) {
            out << key << " = " << value << '\n';
        }
        out << "clusters = " << c.k << '\n';
        out << "noise = " << c.noise_count() << '\n';
        out << "silhouette = " << (report.silhouette ? format_double(*report.silhouette) : "n/a") << '\n';
    }
}

void write_report(const Report& report, const std::filesystem::path& path) {
    with_output(path, [&](std::ostream& out) { write_report(report, out); });
}

}  // namespace trajkit::io
