#include "trajkit/similarity.hpp"

#include "trajkit/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <string>

namespace trajkit {

std::string_view to_string(SpatialMetric metric) noexcept {
    switch (metric) {
        case SpatialMetric::euclidean_lockstep: return "euclidean_lockstep";
        case SpatialMetric::frechet: return "frechet";
        case SpatialMetric::dtw: return "dtw";
        case SpatialMetric::lcss: return "lcss";
        case SpatialMetric::edr: return "edr";
    }
    return "unknown";
}

std::optional<SpatialMetric> parse_spatial_metric(std::string_view name) noexcept {
    for (SpatialMetric m : {SpatialMetric::euclidean_lockstep, SpatialMetric::frechet, SpatialMetric::dtw,
                            SpatialMetric::lcss, SpatialMetric::edr}) {
        if (to_string(m) == name) {
            return m;
        }
    }
    return std::nullopt;
}

namespace {

void require_same_dimension(PointSeries a, PointSeries b) {
    if (!a.empty() && !b.empty() && a.dimension() != b.dimension()) {
        throw Error(Errc::dimension_mismatch, "cannot compare dimension " + std::to_string(a.dimension()) +
                                                  " with dimension " + std::to_string(b.dimension()));
    }
}

void require_non_empty(PointSeries a, PointSeries b, std::string_view what) {
    if (a.empty() || b.empty()) {
        throw Error(Errc::invalid_parameter, std::string(what) + " needs two non-empty trajectories");
    }
    require_same_dimension(a, b);
}

// Pair cost functors. The planar Euclidean case is by far the most common and
// gets an unrolled version; the DP loops are instantiated per functor.
struct PlanarEuclidean {
    const double* a;
    const double* b;
    double operator()(std::size_t i, std::size_t j) const noexcept {
        const double dx = a[2 * i] - b[2 * j];
        const double dy = a[2 * i + 1] - b[2 * j + 1];
        return std::sqrt(dx * dx + dy * dy);
    }
};

struct GenericDistance {
    PointSeries a;
    PointSeries b;
    DistanceMode mode;
    double operator()(std::size_t i, std::size_t j) const noexcept { return base_distance(a[i], b[j], mode); }
};

template <typename Fn>
decltype(auto) with_pair_cost(PointSeries a, PointSeries b, DistanceMode mode, Fn&& fn) {
    if (mode == DistanceMode::euclidean && a.dimension() == 2) {
        return fn(PlanarEuclidean{a.data(), b.data()});
    }
    return fn(GenericDistance{a, b, mode});
}

template <typename Cost>
double frechet_kernel(std::size_t n, std::size_t m, const Cost& cost) {
    std::vector<double> prev(m);
    std::vector<double> curr(m);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const double d = cost(i, j);
            double reach;
            if (i == 0 && j == 0) {
                reach = d;
            } else if (i == 0) {
                reach = curr[j - 1];
            } else if (j == 0) {
                reach = prev[j];
            } else {
                reach = std::min({prev[j], prev[j - 1], curr[j - 1]});
            }
            curr[j] = std::max(reach, d);
        }
        std::swap(prev, curr);
    }
    return prev[m - 1];
}

template <typename Cost>
double dtw_kernel(std::size_t n, std::size_t m, std::size_t window, const Cost& cost) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    // Row buffers carry one leading sentinel column.
    std::vector<double> prev(m + 1, inf);
    std::vector<double> curr(m + 1, inf);
    prev[0] = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = i > window ? i - window : 0;
        const std::size_t hi = std::min(m, i + window + 1);
        std::fill(curr.begin(), curr.end(), inf);
        for (std::size_t j = lo; j < hi; ++j) {
            const double best = std::min({prev[j], prev[j + 1], curr[j]});
            curr[j + 1] = cost(i, j) + best;
        }
        std::swap(prev, curr);
    }
    return prev[m];
}

}  // namespace

double lockstep_euclidean(PointSeries a, PointSeries b, DistanceMode mode) {
    require_same_dimension(a, b);
    if (a.size() != b.size()) {
        throw Error(Errc::length_mismatch, "lock-step comparison needs equal point counts (" +
                                               std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
    }
    if (a.empty()) {
        throw Error(Errc::invalid_parameter, "lock-step comparison needs non-empty trajectories");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sum += base_distance(a[i], b[i], mode);
    }
    return sum / static_cast<double>(a.size());
}

double discrete_frechet(PointSeries a, PointSeries b, DistanceMode mode) {
    require_non_empty(a, b, "discrete Frechet distance");
    return with_pair_cost(a, b, mode, [&](const auto& cost) { return frechet_kernel(a.size(), b.size(), cost); });
}

double dtw(PointSeries a, PointSeries b, DistanceMode mode, std::optional<std::size_t> window) {
    require_non_empty(a, b, "dynamic time warping");
    const std::size_t n = a.size();
    const std::size_t m = b.size();
    const std::size_t spread = n > m ? n - m : m - n;
    const std::size_t band = window ? std::max(*window, spread) : std::max(n, m);
    return with_pair_cost(a, b, mode, [&](const auto& cost) { return dtw_kernel(n, m, band, cost); });
}

LcssResult lcss(PointSeries a, PointSeries b, double epsilon, std::optional<std::size_t> delta, DistanceMode mode) {
    require_non_empty(a, b, "LCSS");
    if (!(epsilon > 0.0)) {
        throw Error(Errc::invalid_parameter, "LCSS epsilon must be positive");
    }
    const std::size_t n = a.size();
    const std::size_t m = b.size();
    const std::size_t width = m + 1;

    std::vector<unsigned char> match(n * m);
    with_pair_cost(a, b, mode, [&](const auto& cost) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < m; ++j) {
                const std::size_t gap = i > j ? i - j : j - i;
                match[i * m + j] = (!delta || gap <= *delta) && cost(i, j) <= epsilon;
            }
        }
        return 0;
    });

    // suffix[i][j] = LCSS length of a[i..] and b[j..]
    std::vector<std::size_t> suffix((n + 1) * width, 0);
    for (std::size_t i = n; i-- > 0;) {
        for (std::size_t j = m; j-- > 0;) {
            std::size_t best = std::max(suffix[(i + 1) * width + j], suffix[i * width + j + 1]);
            if (match[i * m + j]) {
                best = std::max(best, suffix[(i + 1) * width + j + 1] + 1);
            }
            suffix[i * width + j] = best;
        }
    }

    LcssResult out;
    out.length = suffix[0];
    out.similarity = static_cast<double>(out.length) / static_cast<double>(std::min(n, m));
    out.matches.reserve(out.length);

    // Lexicographically smallest witness: the next pair is the one with the
    // smallest row, then smallest column, that still completes a maximum-length
    // subsequence. Each row is scanned at most once.
    std::size_t need = out.length;
    std::size_t row = 0;
    std::size_t col = 0;
    while (need > 0) {
        bool found = false;
        for (std::size_t i = row; i < n && !found; ++i) {
            for (std::size_t j = col; j < m; ++j) {
                if (match[i * m + j] && suffix[(i + 1) * width + j + 1] + 1 == need) {
                    out.matches.push_back({i, j});
                    row = i + 1;
                    col = j + 1;
                    --need;
                    found = true;
                    break;
                }
            }
        }
    }
    return out;
}

std::size_t edit_distance_edr(PointSeries a, PointSeries b, double epsilon, DistanceMode mode) {
    require_same_dimension(a, b);
    if (!(epsilon > 0.0)) {
        throw Error(Errc::invalid_parameter, "EDR epsilon must be positive");
    }
    const std::size_t n = a.size();
    const std::size_t m = b.size();
    if (n == 0 || m == 0) {
        return n + m;
    }
    return with_pair_cost(a, b, mode, [&](const auto& cost) {
        std::vector<std::size_t> prev(m + 1);
        std::vector<std::size_t> curr(m + 1);
        for (std::size_t j = 0; j <= m; ++j) {
            prev[j] = j;
        }
        for (std::size_t i = 1; i <= n; ++i) {
            curr[0] = i;
            for (std::size_t j = 1; j <= m; ++j) {
                const std::size_t substitution = cost(i - 1, j - 1) <= epsilon ? 0 : 1;
                curr[j] = std::min({prev[j - 1] + substitution, prev[j] + 1, curr[j - 1] + 1});
            }
            std::swap(prev, curr);
        }
        return prev[m];
    });
}

double continuity_score(std::span<const MatchPair> matches) {
    if (matches.empty()) {
        throw Error(Errc::empty_match_set, "continuity of an empty match set is undefined");
    }
    double squares = 0.0;
    double run = 1.0;
    for (std::size_t k = 1; k < matches.size(); ++k) {
        const MatchPair& p = matches[k - 1];
        const MatchPair& q = matches[k];
        if (!(p.first < q.first && p.second < q.second)) {
            throw Error(Errc::invalid_parameter, "match pairs must increase strictly in both indices", k);
        }
        if (q.first == p.first + 1 && q.second == p.second + 1) {
            run += 1.0;
        } else {
            squares += run * run;
            run = 1.0;
        }
    }
    squares += run * run;
    const double total = static_cast<double>(matches.size());
    return squares / (total * total);
}

double distance_to_similarity(double distance, double sigma) {
    if (!(distance >= 0.0) || !(sigma > 0.0)) {
        throw Error(Errc::invalid_parameter, "distance must be >= 0 and sigma > 0");
    }
    return std::exp(-distance / sigma);
}

namespace {

double value_agreement(const std::string& key, const ContextValue& x, const ContextValue& y,
                       const ContextSchema& schema) {
    if (x.index() != y.index()) {
        return 0.0;
    }
    if (const auto* sx = std::get_if<std::string>(&x)) {
        return *sx == std::get<std::string>(y) ? 1.0 : 0.0;
    }
    const auto spec = schema.find(key);
    if (spec == schema.end() || spec->second.kind != ContextKind::numeric) {
        throw Error(Errc::unknown_key, "numeric context key '" + key + "' has no declared range");
    }
    const double diff = std::abs(std::get<double>(x) - std::get<double>(y));
    const double range = spec->second.range();
    if (range <= 0.0) {
        return diff == 0.0 ? 1.0 : 0.0;
    }
    return std::clamp(1.0 - diff / range, 0.0, 1.0);
}

std::set<std::string> observed_keys(const std::vector<ContextSample>& series) {
    std::set<std::string> keys;
    for (const ContextSample& sample : series) {
        for (const auto& entry : sample) {
            keys.insert(entry.first);
        }
    }
    return keys;
}

}  // namespace

double contextual_similarity(const EnrichedTrajectory& a, const EnrichedTrajectory& b, const ContextSchema& schema) {
    if (!a.has_context() || !b.has_context()) {
        throw Error(Errc::no_context, "contextual similarity needs context on both '" + a.id() + "' and '" + b.id() + "'");
    }
    const auto& ca = *a.context();
    const auto& cb = *b.context();
    if (ca.size() != cb.size()) {
        throw Error(Errc::length_mismatch, "context series of '" + a.id() + "' and '" + b.id() +
                                               "' differ in length; resample first");
    }
    const auto keys_a = observed_keys(ca);
    const auto keys_b = observed_keys(cb);
    const bool shared = std::any_of(keys_a.begin(), keys_a.end(), [&](const auto& k) { return keys_b.count(k) > 0; });
    if (!shared) {
        throw Error(Errc::no_shared_schema, "'" + a.id() + "' and '" + b.id() + "' share no context key");
    }

    double sum = 0.0;
    std::size_t scored = 0;
    for (std::size_t i = 0; i < ca.size(); ++i) {
        std::set<std::string> keys;
        for (const auto& entry : ca[i]) keys.insert(entry.first);
        for (const auto& entry : cb[i]) keys.insert(entry.first);
        if (keys.empty()) {
            continue;
        }
        double at_index = 0.0;
        for (const std::string& key : keys) {
            const auto x = ca[i].find(key);
            const auto y = cb[i].find(key);
            if (x != ca[i].end() && y != cb[i].end()) {
                at_index += value_agreement(key, x->second, y->second, schema);
            }
        }
        sum += at_index / static_cast<double>(keys.size());
        ++scored;
    }
    return scored == 0 ? 0.0 : sum / static_cast<double>(scored);
}

namespace {

std::map<std::string, double> label_coverage(const EnrichedTrajectory& e) {
    std::map<std::string, double> coverage;
    const double points = static_cast<double>(e.trajectory().size());
    for (const SemanticEpisode& ep : e.episodes()) {
        coverage[ep.label] += static_cast<double>(ep.length()) / points;
    }
    return coverage;
}

}  // namespace

double semantic_similarity(const EnrichedTrajectory& a, const EnrichedTrajectory& b) {
    if (a.episodes().empty() && b.episodes().empty()) {
        return 1.0;
    }
    const auto cov_a = label_coverage(a);
    const auto cov_b = label_coverage(b);
    std::set<std::string> labels;
    for (const auto& entry : cov_a) labels.insert(entry.first);
    for (const auto& entry : cov_b) labels.insert(entry.first);

    double num = 0.0;
    double den = 0.0;
    for (const std::string& label : labels) {
        const auto x = cov_a.find(label);
        const auto y = cov_b.find(label);
        const double ca = x == cov_a.end() ? 0.0 : x->second;
        const double cb = y == cov_b.end() ? 0.0 : y->second;
        num += std::min(ca, cb);
        den += std::max(ca, cb);
    }
    return den > 0.0 ? num / den : 0.0;
}

}  // namespace trajkit
