#include "generators.hpp"
#include "oracles.hpp"

#include <trajkit/clustering.hpp>
#include <trajkit/error.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

using namespace trajkit;

namespace {

Errc code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return Errc::io_error;
}

double assignment_cost(const oracle::Matrix& d, const std::vector<std::size_t>& medoids) {
    double cost = 0.0;
    for (std::size_t j = 0; j < d.size(); ++j) {
        double best = d[j][medoids[0]];
        for (std::size_t m : medoids) best = std::min(best, d[j][m]);
        cost += best;
    }
    return cost;
}

oracle::Matrix permuted(const oracle::Matrix& d, const std::vector<std::size_t>& perm) {
    oracle::Matrix out(d.size(), std::vector<double>(d.size()));
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = 0; j < d.size(); ++j) out[i][j] = d[perm[i]][perm[j]];
    return out;
}

}  // namespace

TEST(Dbscan, Examples) {
    gen::Rng rng(61);
    std::vector<int> truth;
    oracle::Matrix d(6, std::vector<double>(6, 0.0));
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j)
            if (i != j) d[i][j] = (i < 3) == (j < 3) ? 1.0 : 100.0;
    const auto r = dbscan(gen::to_distance_matrix(d), 5.0, 2);
    EXPECT_EQ(r.k, 2u);
    EXPECT_EQ(r.noise_count(), 0u);
    EXPECT_EQ(r.labels, (std::vector<int>{0, 0, 0, 1, 1, 1}));
    EXPECT_TRUE(gen::same_partition(r.labels, oracle::threshold_components(d, 5.0)));

    const auto zeros = dbscan(gen::to_distance_matrix(oracle::Matrix(4, std::vector<double>(4, 0.0))), 0.5, 2);
    EXPECT_EQ(zeros.k, 1u);
    EXPECT_EQ(zeros.labels, (std::vector<int>{0, 0, 0, 0}));

    const auto none = dbscan(gen::to_distance_matrix(d), 5.0, 7);
    EXPECT_EQ(none.k, 0u);
    EXPECT_EQ(none.noise_count(), 6u);
}

TEST(Dbscan, ClosedBallAndSelfCounted) {
    const oracle::Matrix d{{0, 2}, {2, 0}};
    EXPECT_EQ(dbscan(gen::to_distance_matrix(d), 2.0, 2).k, 1u);
    EXPECT_EQ(dbscan(gen::to_distance_matrix(d), 1.9, 2).k, 0u);
    EXPECT_EQ(dbscan(gen::to_distance_matrix(d), 1.0, 1).k, 2u);
}

TEST(Dbscan, BorderJoinsLowestIndexCore) {
    // Dense groups {0..3} and {5..8}; element 4 is a border point at distance
    // 1 from core points 3 and 5.
    oracle::Matrix d(9, std::vector<double>(9, 9.0));
    for (std::size_t i = 0; i < 9; ++i) {
        for (std::size_t j = 0; j < 9; ++j)
            if (i != 4 && j != 4 && (i < 4) == (j < 4)) d[i][j] = 0.5;
        d[i][i] = 0.0;
    }
    d[3][4] = d[4][3] = d[4][5] = d[5][4] = 1.0;
    const auto m = gen::to_distance_matrix(d);
    EXPECT_FALSE(dbscan_core_points(m, 1.0, 4)[4]);
    EXPECT_EQ(dbscan(m, 1.0, 4).labels, (std::vector<int>{0, 0, 0, 0, 0, 1, 1, 1, 1}));
}

TEST(Dbscan, InvalidParameters) {
    const auto m = gen::to_distance_matrix({{0, 1}, {1, 0}});
    EXPECT_EQ(code_of([&] { dbscan(m, 0.0, 2); }), Errc::invalid_parameter);
    EXPECT_EQ(code_of([&] { dbscan(m, 1.0, 0); }), Errc::invalid_parameter);
}

TEST(Dbscan, MinPtsTwoMatchesThresholdComponents) {
    gen::Rng rng(62);
    for (int trial = 0; trial < 100; ++trial) {
        const auto d = gen::random_matrix(rng, 50, trial % 2 == 0);
        const double eps = trial % 2 == 0 ? rng.integer(1, 2) : rng.real(0.1, 1.0);
        const auto r = dbscan(gen::to_distance_matrix(d), eps, 2);
        EXPECT_EQ(r.labels, oracle::threshold_components(d, eps));
    }
}

TEST(Dbscan, CorePartitionIsPermutationInvariant) {
    gen::Rng rng(63);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = rng.index(5, 30);
        const auto d = gen::point_matrix(rng, n);
        const double eps = rng.real(0.5, 3.0);
        const std::size_t min_pts = rng.index(2, 5);
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng.engine());

        const auto m = gen::to_distance_matrix(d);
        const auto mp = gen::to_distance_matrix(permuted(d, perm));
        const auto core = dbscan_core_points(m, eps, min_pts);
        const auto core_p = dbscan_core_points(mp, eps, min_pts);
        const auto r = dbscan(m, eps, min_pts);
        const auto rp = dbscan(mp, eps, min_pts);
        EXPECT_EQ(r.k, rp.k);
        for (std::size_t i = 0; i < n; ++i) {
            EXPECT_EQ(core_p[i], core[perm[i]]);
            for (std::size_t j = 0; j < n; ++j) {
                if (!core_p[i] || !core_p[j]) continue;
                EXPECT_EQ(rp.labels[i] == rp.labels[j], r.labels[perm[i]] == r.labels[perm[j]]);
            }
        }
    }
}

TEST(Agglomerative, Examples) {
    const auto two = agglomerative(gen::to_distance_matrix({{0, 3}, {3, 0}}), Linkage::single);
    ASSERT_EQ(two.merges().size(), 1u);
    EXPECT_EQ(two.merges()[0], (Merge{0, 1, 3.0, 2}));

    const oracle::Matrix d{{0, 1, 5}, {1, 0, 5}, {5, 5, 0}};
    const auto three = agglomerative(gen::to_distance_matrix(d), Linkage::single);
    ASSERT_EQ(three.merges().size(), 2u);
    EXPECT_EQ(three.merges()[0], (Merge{0, 1, 1.0, 2}));
    EXPECT_EQ(three.merges()[1], (Merge{2, 3, 5.0, 3}));
}

TEST(Agglomerative, LinkageHeights) {
    // Points on a line at 0, 1, 3: complete merges {0,1} at 1 then at 3;
    // average merges at (3 + 2) / 2.
    const oracle::Matrix d{{0, 1, 3}, {1, 0, 2}, {3, 2, 0}};
    const auto m = gen::to_distance_matrix(d);
    EXPECT_EQ(agglomerative(m, Linkage::complete).merges()[1].height, 3.0);
    EXPECT_EQ(agglomerative(m, Linkage::average).merges()[1].height, 2.5);
    EXPECT_EQ(agglomerative(m, Linkage::single).merges()[1].height, 2.0);
}

TEST(Agglomerative, SingleLinkageHeightsAreMstWeights) {
    gen::Rng rng(64);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = rng.index(2, 20);
        const auto d = trial % 2 == 0 ? gen::random_matrix(rng, n, true) : gen::point_matrix(rng, n);
        const auto dendro = agglomerative(gen::to_distance_matrix(d), Linkage::single);
        std::vector<double> heights;
        for (const auto& merge : dendro.merges()) heights.push_back(merge.height);
        EXPECT_EQ(heights, oracle::mst_weights(d));
    }
}

TEST(Agglomerative, MonotoneHeightsAndExactCuts) {
    gen::Rng rng(65);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = rng.index(2, 25);
        const auto d = gen::point_matrix(rng, n);
        for (auto linkage : {Linkage::single, Linkage::complete, Linkage::average}) {
            const auto dendro = agglomerative(gen::to_distance_matrix(d), linkage);
            ASSERT_EQ(dendro.merges().size(), n - 1);
            EXPECT_EQ(dendro.merges().back().count, n);
            for (std::size_t s = 1; s < dendro.merges().size(); ++s)
                EXPECT_LE(dendro.merges()[s - 1].height, dendro.merges()[s].height + 1e-12);
            for (std::size_t k = 1; k <= n; ++k) {
                const auto cut = cut_dendrogram(dendro, k);
                EXPECT_EQ(cut.k, k);
                EXPECT_EQ(std::set<int>(cut.labels.begin(), cut.labels.end()).size(), k);
                EXPECT_EQ(*std::max_element(cut.labels.begin(), cut.labels.end()), static_cast<int>(k) - 1);
            }
        }
    }
}

TEST(Cut, Examples) {
    const oracle::Matrix d{{0, 1, 5, 6}, {1, 0, 5, 6}, {5, 5, 0, 2}, {6, 6, 2, 0}};
    const auto dendro = agglomerative(gen::to_distance_matrix(d), Linkage::single);
    EXPECT_EQ(cut_dendrogram(dendro, 4).labels, (std::vector<int>{0, 1, 2, 3}));
    EXPECT_EQ(cut_dendrogram(dendro, 1).labels, (std::vector<int>{0, 0, 0, 0}));
    EXPECT_EQ(cut_dendrogram(dendro, 2).labels, (std::vector<int>{0, 0, 1, 1}));
    EXPECT_EQ(cut_dendrogram_at_height(dendro, 0.5).labels, (std::vector<int>{0, 1, 2, 3}));
    EXPECT_EQ(cut_dendrogram_at_height(dendro, 2.0).labels, (std::vector<int>{0, 0, 1, 1}));
    EXPECT_EQ(cut_dendrogram_at_height(dendro, 100).k, 1u);
    EXPECT_EQ(code_of([&] { cut_dendrogram(dendro, 0); }), Errc::invalid_parameter);
    EXPECT_EQ(code_of([&] { cut_dendrogram(dendro, 5); }), Errc::invalid_parameter);
    EXPECT_EQ(code_of([&] { cut_dendrogram_at_height(dendro, -1); }), Errc::invalid_parameter);
}

TEST(Dendrogram, ValidatesMerges) {
    EXPECT_EQ(code_of([] { Dendrogram(3, {{0, 1, 1, 2}}); }), Errc::invalid_parameter);
    EXPECT_EQ(code_of([] { Dendrogram(3, {{0, 1, 1, 2}, {0, 2, 2, 3}}); }), Errc::invalid_parameter);
    EXPECT_EQ(code_of([] { Dendrogram(3, {{0, 1, 1, 2}, {2, 4, 2, 3}}); }), Errc::invalid_parameter);
    EXPECT_NO_THROW(Dendrogram(3, {{0, 1, 1, 2}, {2, 3, 2, 3}}));
}

TEST(KMedoids, Examples) {
    gen::Rng rng(66);
    const auto d = gen::point_matrix(rng, 7);
    const auto all = k_medoids(gen::to_distance_matrix(d), 7);
    EXPECT_EQ(all.total_cost, 0.0);
    EXPECT_EQ(all.medoids, (std::vector<std::size_t>{0, 1, 2, 3, 4, 5, 6}));

    const auto one = k_medoids(gen::to_distance_matrix(d), 1);
    std::size_t argmin = 0;
    double best = 1e300;
    for (std::size_t i = 0; i < d.size(); ++i) {
        const double s = std::accumulate(d[i].begin(), d[i].end(), 0.0);
        if (s < best) {
            best = s;
            argmin = i;
        }
    }
    EXPECT_EQ(one.medoids, std::vector<std::size_t>{argmin});

    std::vector<int> truth;
    const auto planted = gen::planted_two_groups(rng, 12, truth);
    const auto two = k_medoids(gen::to_distance_matrix(planted), 2);
    EXPECT_TRUE(gen::same_partition(two.clusters.labels, truth));
}

TEST(KMedoids, InvalidK) {
    const auto m = gen::to_distance_matrix({{0, 1}, {1, 0}});
    EXPECT_EQ(code_of([&] { k_medoids(m, 0); }), Errc::invalid_parameter);
    EXPECT_EQ(code_of([&] { k_medoids(m, 3); }), Errc::invalid_parameter);
}

TEST(KMedoids, CostTraceNonIncreasingAndConsistent) {
    gen::Rng rng(67);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = rng.index(2, 40);
        const auto d = gen::point_matrix(rng, n);
        const auto r = k_medoids(gen::to_distance_matrix(d), rng.index(1, std::min<std::size_t>(n, 6)));
        ASSERT_FALSE(r.cost_trace.empty());
        for (std::size_t s = 1; s < r.cost_trace.size(); ++s) EXPECT_LT(r.cost_trace[s], r.cost_trace[s - 1]);
        EXPECT_EQ(r.cost_trace.back(), r.total_cost);
        EXPECT_NEAR(assignment_cost(d, r.medoids), r.total_cost, 1e-9);
        for (std::size_t c = 0; c < r.medoids.size(); ++c) EXPECT_EQ(r.clusters.labels[r.medoids[c]], static_cast<int>(c));
    }
}

TEST(KMedoids, ResultIsSwapLocalOptimum) {
    gen::Rng rng(68);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = rng.index(3, 20);
        const std::size_t k = rng.index(1, std::min<std::size_t>(n, 4));
        const auto d = trial % 2 == 0 ? gen::point_matrix(rng, n) : gen::random_matrix(rng, n, true);
        const auto r = k_medoids(gen::to_distance_matrix(d), k);
        EXPECT_TRUE(oracle::swap_local_optimum(d, r.medoids));
    }
}

TEST(KMedoids, MatchesExhaustiveSearchOnClusteredInputs) {
    // k planted groups: the optimum picks one medoid per group, which a swap
    // search always reaches.
    gen::Rng rng(69);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t k = rng.index(1, 3);
        const std::size_t n = rng.index(k, 12);
        oracle::Series centres = gen::real_series(rng, k, 2, 0.0, 1000.0);
        for (std::size_t c = 0; c < k; ++c) centres[c][0] += 400.0 * static_cast<double>(c);
        oracle::Series pts;
        for (std::size_t i = 0; i < n; ++i) {
            const auto& c = centres[i % k];
            pts.push_back({c[0] + rng.real(-1, 1), c[1] + rng.real(-1, 1)});
        }
        oracle::Matrix d(n, std::vector<double>(n, 0.0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) d[i][j] = i == j ? 0.0 : oracle::dist(pts[i], pts[j]);
        const auto r = k_medoids(gen::to_distance_matrix(d), k);
        const auto best = oracle::exhaustive_medoids(d, k);
        EXPECT_NEAR(r.total_cost, best.cost, 1e-9);
        EXPECT_NE(std::find(best.optimal_sets.begin(), best.optimal_sets.end(), r.medoids), best.optimal_sets.end());
    }
}

TEST(PlantedGroups, RecoveredByAllAlgorithms) {
    gen::Rng rng(69);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<int> truth;
        const auto d = gen::planted_two_groups(rng, rng.index(4, 40), truth);
        const auto m = gen::to_distance_matrix(d);
        EXPECT_TRUE(gen::same_partition(dbscan(m, 5.0, 2).labels, truth));
        for (auto linkage : {Linkage::single, Linkage::complete, Linkage::average})
            EXPECT_TRUE(gen::same_partition(cut_dendrogram(agglomerative(m, linkage), 2).labels, truth));
        EXPECT_TRUE(gen::same_partition(k_medoids(m, 2).clusters.labels, truth));
    }
}

TEST(Silhouette, Examples) {
    std::vector<int> truth;
    gen::Rng rng(70);
    const auto d = gen::planted_two_groups(rng, 10, truth);
    const auto m = gen::to_distance_matrix(d);
    ClusterResult r{truth, 2, "test", {}};
    const double s = silhouette(m, r);
    EXPECT_GT(s, 0.9);
    EXPECT_NEAR(s, oracle::silhouette(d, truth), 1e-12);

    std::vector<int> swapped = truth;
    for (std::size_t i = 0; i < swapped.size(); i += 2) swapped[i] = 1 - swapped[i];
    ClusterResult bad{swapped, 2, "test", {}};
    if (std::set<int>(swapped.begin(), swapped.end()).size() == 2) {
        EXPECT_LT(silhouette(m, bad), 0.0);
        EXPECT_NEAR(silhouette(m, bad), oracle::silhouette(d, swapped), 1e-12);
    }

    oracle::Matrix eq(5, std::vector<double>(5, 1.0));
    for (std::size_t i = 0; i < 5; ++i) eq[i][i] = 0.0;
    EXPECT_NEAR(silhouette(gen::to_distance_matrix(eq), {{0, 0, 1, 1, 1}, 2, "t", {}}), 0.0, 1e-15);

    EXPECT_EQ(code_of([&] { silhouette(m, {std::vector<int>(10, 0), 1, "t", {}}); }), Errc::too_few_clusters);
}

TEST(Silhouette, MatchesFormulaWithNoiseAndSingletons) {
    gen::Rng rng(71);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = rng.index(3, 25);
        const auto d = gen::point_matrix(rng, n);
        const auto r = dbscan(gen::to_distance_matrix(d), rng.real(0.5, 3.0), rng.index(1, 3));
        if (r.k < 2) continue;
        EXPECT_NEAR(silhouette(gen::to_distance_matrix(d), r), oracle::silhouette(d, r.labels), 1e-12);
    }
}
