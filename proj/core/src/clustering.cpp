#include "trajkit/clustering.hpp"

#include "trajkit/error.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <sstream>

namespace trajkit {

namespace {

std::string format_number(double v) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os.precision(17);
    os << v;
    return os.str();
}

// Relabels arbitrary non-negative group ids to 0..k-1 in order of first
// appearance; kNoise is preserved.
std::size_t compact_labels(std::vector<int>& labels) {
    std::vector<int> remap;
    int next = 0;
    for (int& label : labels) {
        if (label == kNoise) {
            continue;
        }
        const auto g = static_cast<std::size_t>(label);
        if (g >= remap.size()) {
            remap.resize(g + 1, -1);
        }
        if (remap[g] < 0) {
            remap[g] = next++;
        }
        label = remap[g];
    }
    return static_cast<std::size_t>(next);
}

}  // namespace

std::size_t ClusterResult::noise_count() const noexcept {
    return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), kNoise));
}

// ---------------------------------------------------------------------------
// DBSCAN

namespace {

void check_dbscan_parameters(double eps, std::size_t min_pts) {
    if (!(eps > 0.0) || !std::isfinite(eps)) {
        throw Error(Errc::invalid_parameter, "dbscan eps must be positive and finite");
    }
    if (min_pts < 1) {
        throw Error(Errc::invalid_parameter, "dbscan min_pts must be at least 1");
    }
}

}  // namespace

std::vector<bool> dbscan_core_points(const DistanceMatrix& matrix, double eps, std::size_t min_pts) {
    check_dbscan_parameters(eps, min_pts);
    const std::size_t n = matrix.size();
    std::vector<bool> core(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        const auto row = matrix.row(i);
        const auto neighbours = static_cast<std::size_t>(
            std::count_if(row.begin(), row.end(), [eps](double d) { return d <= eps; }));
        core[i] = neighbours >= min_pts;
    }
    return core;
}

ClusterResult dbscan(const DistanceMatrix& matrix, double eps, std::size_t min_pts) {
    const std::vector<bool> core = dbscan_core_points(matrix, eps, min_pts);
    const std::size_t n = matrix.size();

    ClusterResult result;
    result.algorithm = "dbscan";
    result.parameters = {{"eps", format_number(eps)}, {"min_pts", std::to_string(min_pts)}};
    result.labels.assign(n, kNoise);

    int next_cluster = 0;
    std::deque<std::size_t> frontier;
    for (std::size_t seed = 0; seed < n; ++seed) {
        if (!core[seed] || result.labels[seed] != kNoise) {
            continue;
        }
        const int cluster = next_cluster++;
        result.labels[seed] = cluster;
        frontier.push_back(seed);
        while (!frontier.empty()) {
            const std::size_t p = frontier.front();
            frontier.pop_front();
            for (std::size_t q = 0; q < n; ++q) {
                if (core[q] && result.labels[q] == kNoise && matrix(p, q) <= eps) {
                    result.labels[q] = cluster;
                    frontier.push_back(q);
                }
            }
        }
    }

    for (std::size_t p = 0; p < n; ++p) {
        if (core[p]) {
            continue;
        }
        for (std::size_t q = 0; q < n; ++q) {
            if (core[q] && matrix(p, q) <= eps) {
                result.labels[p] = result.labels[q];
                break;
            }
        }
    }
    result.k = static_cast<std::size_t>(next_cluster);
    return result;
}

// ---------------------------------------------------------------------------
// Agglomerative

std::string_view to_string(Linkage linkage) noexcept {
    switch (linkage) {
        case Linkage::single: return "single";
        case Linkage::complete: return "complete";
        case Linkage::average: return "average";
    }
    return "unknown";
}

std::optional<Linkage> parse_linkage(std::string_view name) noexcept {
    for (Linkage l : {Linkage::single, Linkage::complete, Linkage::average}) {
        if (to_string(l) == name) {
            return l;
        }
    }
    return std::nullopt;
}

Dendrogram::Dendrogram(std::size_t leaves, std::vector<Merge> merges) : leaves_(leaves), merges_(std::move(merges)) {
    if (leaves_ == 0 || merges_.size() != leaves_ - 1) {
        throw Error(Errc::invalid_parameter, "a dendrogram over " + std::to_string(leaves_) + " elements needs " +
                                                 std::to_string(leaves_ == 0 ? 0 : leaves_ - 1) + " merges");
    }
    std::vector<bool> consumed(2 * leaves_ - 1, false);
    for (std::size_t s = 0; s < merges_.size(); ++s) {
        const Merge& m = merges_[s];
        const std::size_t available = leaves_ + s;
        if (m.left >= available || m.right >= available || m.left == m.right || consumed[m.left] ||
            consumed[m.right] || !std::isfinite(m.height)) {
            throw Error(Errc::invalid_parameter, "merge references an unknown or already merged node", s);
        }
        consumed[m.left] = consumed[m.right] = true;
    }
}

namespace {

struct RowMinimum {
    double value = std::numeric_limits<double>::infinity();
    std::size_t column = 0;
};

}  // namespace

Dendrogram agglomerative(const DistanceMatrix& matrix, Linkage linkage) {
    const std::size_t n = matrix.size();
    if (n < 2) {
        throw Error(Errc::invalid_parameter, "agglomerative clustering needs at least two elements");
    }
    std::vector<double> dist(matrix.values().begin(), matrix.values().end());
    std::vector<bool> active(n, true);
    std::vector<std::size_t> node(n);
    std::vector<std::size_t> count(n, 1);
    std::iota(node.begin(), node.end(), 0);

    // Cached minimum of each row over active columns to its right. Scanning
    // left to right with strict comparison keeps the smallest column on ties.
    std::vector<RowMinimum> row_min(n);
    auto refresh = [&](std::size_t r) {
        RowMinimum best;
        for (std::size_t c = r + 1; c < n; ++c) {
            if (active[c] && dist[r * n + c] < best.value) {
                best = {dist[r * n + c], c};
            }
        }
        row_min[r] = best;
    };
    for (std::size_t r = 0; r < n; ++r) {
        refresh(r);
    }

    std::vector<Merge> merges;
    merges.reserve(n - 1);
    for (std::size_t step = 0; step + 1 < n; ++step) {
        std::size_t a = n;
        for (std::size_t r = 0; r < n; ++r) {
            if (active[r] && row_min[r].value < std::numeric_limits<double>::infinity() &&
                (a == n || row_min[r].value < row_min[a].value)) {
                a = r;
            }
        }
        const std::size_t b = row_min[a].column;
        const double height = row_min[a].value;

        merges.push_back(Merge{std::min(node[a], node[b]), std::max(node[a], node[b]), height, count[a] + count[b]});

        for (std::size_t x = 0; x < n; ++x) {
            if (!active[x] || x == a || x == b) {
                continue;
            }
            const double da = dist[a * n + x];
            const double db = dist[b * n + x];
            double merged = 0.0;
            switch (linkage) {
                case Linkage::single: merged = std::min(da, db); break;
                case Linkage::complete: merged = std::max(da, db); break;
                case Linkage::average:
                    merged = (static_cast<double>(count[a]) * da + static_cast<double>(count[b]) * db) /
                             static_cast<double>(count[a] + count[b]);
                    break;
            }
            dist[a * n + x] = merged;
            dist[x * n + a] = merged;
        }
        active[b] = false;
        node[a] = n + step;
        count[a] += count[b];

        refresh(a);
        for (std::size_t r = 0; r < a; ++r) {
            if (!active[r]) continue;
            const RowMinimum& cur = row_min[r];
            const double v = dist[r * n + a];
            if (cur.column == a || cur.column == b) {
                refresh(r);
            } else if (v < cur.value || (v == cur.value && a < cur.column)) {
                row_min[r] = {v, a};
            }
        }
        for (std::size_t r = a + 1; r < b; ++r) {
            if (active[r] && row_min[r].column == b) {
                refresh(r);
            }
        }
    }
    return Dendrogram(n, std::move(merges));
}

namespace {

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void unite(std::size_t x, std::size_t y) { parent_[find(y)] = find(x); }

private:
    std::vector<std::size_t> parent_;
};

ClusterResult apply_merges(const Dendrogram& dendrogram, std::size_t merge_count) {
    const std::size_t n = dendrogram.leaves();
    DisjointSets sets(2 * n - 1);
    for (std::size_t s = 0; s < merge_count; ++s) {
        const Merge& m = dendrogram.merges()[s];
        sets.unite(n + s, m.left);
        sets.unite(n + s, m.right);
    }
    ClusterResult result;
    result.algorithm = "agglomerative";
    result.labels.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        result.labels[i] = static_cast<int>(sets.find(i));
    }
    result.k = compact_labels(result.labels);
    return result;
}

}  // namespace

ClusterResult cut_dendrogram(const Dendrogram& dendrogram, std::size_t k) {
    const std::size_t n = dendrogram.leaves();
    if (k < 1 || k > n) {
        throw Error(Errc::invalid_parameter, "cluster count must lie in [1, " + std::to_string(n) + "]");
    }
    ClusterResult result = apply_merges(dendrogram, n - k);
    result.parameters = {{"k", std::to_string(k)}};
    return result;
}

ClusterResult cut_dendrogram_at_height(const Dendrogram& dendrogram, double height) {
    if (!(height >= 0.0) || std::isnan(height)) {
        throw Error(Errc::invalid_parameter, "cut height must be non-negative");
    }
    // Keeps the longest prefix of merges at or below the height; for the
    // monotone linkages this is every such merge.
    std::size_t kept = 0;
    while (kept < dendrogram.merges().size() && dendrogram.merges()[kept].height <= height) {
        ++kept;
    }
    ClusterResult result = apply_merges(dendrogram, kept);
    result.parameters = {{"height", format_number(height)}};
    return result;
}

// ---------------------------------------------------------------------------
// PAM

namespace {

double total_cost(const DistanceMatrix& m, const std::vector<std::size_t>& medoids) {
    double cost = 0.0;
    for (std::size_t j = 0; j < m.size(); ++j) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t med : medoids) {
            best = std::min(best, m(j, med));
        }
        cost += best;
    }
    return cost;
}

}  // namespace

KMedoidsResult k_medoids(const DistanceMatrix& matrix, std::size_t k, std::uint64_t seed) {
    const std::size_t n = matrix.size();
    if (k < 1 || k > n) {
        throw Error(Errc::invalid_parameter, "k must lie in [1, " + std::to_string(n) + "]");
    }
    constexpr double inf = std::numeric_limits<double>::infinity();

    std::vector<std::size_t> medoids;
    std::vector<bool> is_medoid(n, false);
    std::vector<double> nearest(n, inf);

    // BUILD
    {
        std::size_t first = 0;
        double best = inf;
        for (std::size_t c = 0; c < n; ++c) {
            const auto row = matrix.row(c);
            const double sum = std::accumulate(row.begin(), row.end(), 0.0);
            if (sum < best) {
                best = sum;
                first = c;
            }
        }
        medoids.push_back(first);
        is_medoid[first] = true;
        for (std::size_t j = 0; j < n; ++j) nearest[j] = matrix(j, first);
    }
    while (medoids.size() < k) {
        std::size_t pick = n;
        double best_gain = -1.0;
        for (std::size_t c = 0; c < n; ++c) {
            if (is_medoid[c]) continue;
            double gain = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                gain += std::max(0.0, nearest[j] - matrix(j, c));
            }
            if (gain > best_gain) {
                best_gain = gain;
                pick = c;
            }
        }
        medoids.push_back(pick);
        is_medoid[pick] = true;
        for (std::size_t j = 0; j < n; ++j) nearest[j] = std::min(nearest[j], matrix(j, pick));
    }

    KMedoidsResult out;
    double cost = total_cost(matrix, medoids);
    out.cost_trace.push_back(cost);

    // SWAP
    std::vector<std::size_t> owner(n);
    std::vector<double> second(n);
    for (;;) {
        for (std::size_t j = 0; j < n; ++j) {
            double d1 = inf, d2 = inf;
            std::size_t slot = 0;
            for (std::size_t s = 0; s < medoids.size(); ++s) {
                const double d = matrix(j, medoids[s]);
                if (d < d1) {
                    d2 = d1;
                    d1 = d;
                    slot = s;
                } else if (d < d2) {
                    d2 = d;
                }
            }
            nearest[j] = d1;
            second[j] = d2;
            owner[j] = slot;
        }

        double best_delta = 0.0;
        std::size_t best_slot = 0;
        std::size_t best_candidate = n;
        for (std::size_t s = 0; s < medoids.size(); ++s) {
            for (std::size_t o = 0; o < n; ++o) {
                if (is_medoid[o]) continue;
                double delta = 0.0;
                for (std::size_t j = 0; j < n; ++j) {
                    const double dj = matrix(j, o);
                    if (owner[j] == s) {
                        delta += std::min(dj, second[j]) - nearest[j];
                    } else if (dj < nearest[j]) {
                        delta += dj - nearest[j];
                    }
                }
                if (delta < best_delta) {
                    best_delta = delta;
                    best_slot = s;
                    best_candidate = o;
                }
            }
        }
        // Ignore improvements at the level of rounding noise so the loop
        // cannot cycle between equal-cost configurations.
        if (best_candidate == n || best_delta >= -1e-12 * std::max(1.0, cost)) {
            break;
        }
        const std::size_t replaced = medoids[best_slot];
        medoids[best_slot] = best_candidate;
        const double updated = total_cost(matrix, medoids);
        if (!(updated < cost)) {
            medoids[best_slot] = replaced;
            break;
        }
        is_medoid[replaced] = false;
        is_medoid[best_candidate] = true;
        cost = updated;
        out.cost_trace.push_back(cost);
    }

    std::sort(medoids.begin(), medoids.end());
    ClusterResult& clusters = out.clusters;
    clusters.algorithm = "kmedoids";
    clusters.parameters = {{"k", std::to_string(k)}, {"seed", std::to_string(seed)}};
    clusters.labels.assign(n, 0);
    clusters.k = k;
    for (std::size_t j = 0; j < n; ++j) {
        double best = inf;
        for (std::size_t c = 0; c < medoids.size(); ++c) {
            if (medoids[c] == j) {
                best = -1.0;
                clusters.labels[j] = static_cast<int>(c);
                break;
            }
            if (matrix(j, medoids[c]) < best) {
                best = matrix(j, medoids[c]);
                clusters.labels[j] = static_cast<int>(c);
            }
        }
    }
    out.medoids = std::move(medoids);
    out.total_cost = cost;
    return out;
}

// ---------------------------------------------------------------------------
// Validation

double silhouette(const DistanceMatrix& matrix, const ClusterResult& result) {
    const std::size_t n = matrix.size();
    if (result.labels.size() != n) {
        throw Error(Errc::invalid_parameter, "label count does not match the matrix");
    }
    int max_label = -1;
    for (int label : result.labels) max_label = std::max(max_label, label);
    const auto clusters = static_cast<std::size_t>(max_label + 1);

    std::vector<std::size_t> sizes(clusters, 0);
    for (int label : result.labels) {
        if (label != kNoise) ++sizes[static_cast<std::size_t>(label)];
    }
    const auto populated = static_cast<std::size_t>(std::count_if(sizes.begin(), sizes.end(), [](auto s) { return s > 0; }));
    if (populated < 2) {
        throw Error(Errc::too_few_clusters, "silhouette needs at least two clusters");
    }

    double sum = 0.0;
    std::size_t scored = 0;
    std::vector<double> to_cluster(clusters);
    for (std::size_t i = 0; i < n; ++i) {
        const int own = result.labels[i];
        if (own == kNoise) continue;
        ++scored;
        const auto own_c = static_cast<std::size_t>(own);
        if (sizes[own_c] == 1) continue;

        std::fill(to_cluster.begin(), to_cluster.end(), 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i && result.labels[j] != kNoise) {
                to_cluster[static_cast<std::size_t>(result.labels[j])] += matrix(i, j);
            }
        }
        const double a = to_cluster[own_c] / static_cast<double>(sizes[own_c] - 1);
        double b = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < clusters; ++c) {
            if (c != own_c && sizes[c] > 0) {
                b = std::min(b, to_cluster[c] / static_cast<double>(sizes[c]));
            }
        }
        const double denom = std::max(a, b);
        sum += denom > 0.0 ? (b - a) / denom : 0.0;
    }
    return sum / static_cast<double>(scored);
}

}  // namespace trajkit
