#include "generators.hpp"
#include "oracles.hpp"

#include <trajkit/error.hpp>
#include <trajkit/similarity.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <numeric>

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

MatchSet to_match_set(const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
    MatchSet out;
    for (const auto& [i, j] : pairs) out.push_back({i, j});
    return out;
}

/// MatchSet whose runs have the given lengths, separated by one skipped index.
MatchSet from_runs(const std::vector<std::size_t>& runs) {
    MatchSet out;
    std::size_t i = 0;
    for (std::size_t len : runs) {
        for (std::size_t k = 0; k < len; ++k, ++i) out.push_back({i, i});
        ++i;
    }
    return out;
}

EnrichedTrajectory with_context(const Trajectory& t, std::vector<ContextSample> ctx,
                                std::vector<SemanticEpisode> episodes = {}) {
    return EnrichedTrajectory(t, std::move(ctx), std::move(episodes));
}

}  // namespace

TEST(Lockstep, Examples) {
    const auto t = gen::line("a", {1, 2, 3});
    EXPECT_DOUBLE_EQ(lockstep_euclidean(t, t), 0.0);
    EXPECT_DOUBLE_EQ(lockstep_euclidean(gen::line("a", {0, 0, 0}), gen::line("b", {1, 1, 1})), 1.0);
    EXPECT_DOUBLE_EQ(lockstep_euclidean(gen::line("a", {0, 2}), gen::line("b", {1, 5})), 2.0);
    EXPECT_EQ(code_of([] { lockstep_euclidean(gen::line("a", {0, 2}), gen::line("b", {1})); }),
              Errc::length_mismatch);
    EXPECT_EQ(code_of([] { lockstep_euclidean(gen::line("a", {0}), gen::make_trajectory("b", {{1, 1}})); }),
              Errc::dimension_mismatch);
}

TEST(Frechet, Examples) {
    const auto t = gen::make_trajectory("a", {{0, 0}, {1, 3}, {2, -1}});
    EXPECT_DOUBLE_EQ(discrete_frechet(t, t), 0.0);
    EXPECT_DOUBLE_EQ(discrete_frechet(gen::make_trajectory("p", {{0, 0}}), gen::make_trajectory("q", {{3, 4}})), 5.0);
    EXPECT_DOUBLE_EQ(discrete_frechet(gen::line("a", {0, 2}), gen::line("b", {0, 1, 2})), 1.0);
    EXPECT_DOUBLE_EQ(oracle::frechet({{0}, {2}}, {{0}, {1}, {2}}), 1.0);
    EXPECT_EQ(code_of([] { discrete_frechet(gen::line("a", {0}), gen::make_trajectory("b", {{1, 1}})); }),
              Errc::dimension_mismatch);
}

TEST(Dtw, Examples) {
    const auto t = gen::line("a", {0, 4, 1, 3});
    EXPECT_DOUBLE_EQ(dtw(t, t), 0.0);
    EXPECT_DOUBLE_EQ(dtw(gen::line("a", {0, 1, 2}), gen::line("b", {0, 2})), 1.0);
    EXPECT_DOUBLE_EQ(oracle::dtw({{0}, {1}, {2}}, {{0}, {2}}), 1.0);
    const auto u = gen::line("a", {1, 2, 3, 2, 1});
    const auto v = gen::line("b", {3, 2, 1, 2, 3});
    EXPECT_DOUBLE_EQ(dtw(u, v), dtw(v, u));
    EXPECT_EQ(code_of([] { dtw(gen::line("a", {0}), gen::make_trajectory("b", {{1, 1}})); }),
              Errc::dimension_mismatch);
}

TEST(Dtw, WindowWidensToLengthDifference) {
    const auto a = gen::line("a", {0, 1, 2, 3, 4, 5});
    const auto b = gen::line("b", {0, 5});
    EXPECT_DOUBLE_EQ(dtw(a, b, DistanceMode::euclidean, 0), dtw(a, b));
    // A band restricts the paths, so it can only increase the cost.
    gen::Rng rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        const auto x = gen::make_trajectory("x", gen::real_series(rng, rng.index(1, 12), 2));
        const auto y = gen::make_trajectory("y", gen::real_series(rng, rng.index(1, 12), 2));
        EXPECT_GE(dtw(x, y, DistanceMode::euclidean, rng.index(0, 3)) + 1e-9, dtw(x, y));
    }
}

TEST(Lcss, Examples) {
    const auto t = gen::line("a", {0, 5, 10});
    const auto full = lcss(t, t, 0.1);
    EXPECT_EQ(full.length, 3u);
    EXPECT_DOUBLE_EQ(full.similarity, 1.0);

    const auto r = lcss(gen::line("a", {0, 5, 10}), gen::line("b", {0.2, 10.3}), 0.5);
    EXPECT_EQ(r.length, 2u);
    EXPECT_DOUBLE_EQ(r.similarity, 1.0);
    EXPECT_EQ(r.matches, (MatchSet{{0, 0}, {2, 1}}));
    const auto brute = oracle::lcss({{0}, {5}, {10}}, {{0.2}, {10.3}}, 0.5, -1);
    EXPECT_EQ(brute.length, 2u);

    const auto none = lcss(gen::line("a", {0, 1}), gen::line("b", {100, 101}), 0.5);
    EXPECT_EQ(none.length, 0u);
    EXPECT_DOUBLE_EQ(none.similarity, 0.0);
    EXPECT_TRUE(none.matches.empty());
}

TEST(Lcss, DeltaWindow) {
    // Only the shifted match is possible; delta 0 forbids it.
    const auto a = gen::line("a", {9, 0});
    const auto b = gen::line("b", {0, 7});
    EXPECT_EQ(lcss(a, b, 0.5).length, 1u);
    EXPECT_EQ(lcss(a, b, 0.5, 0).length, 0u);
    EXPECT_EQ(lcss(a, b, 0.5, 1).length, 1u);
}

TEST(Lcss, WitnessIsLexicographicallySmallest) {
    // Every point matches every point: smallest witness is the diagonal.
    const auto a = gen::line("a", {0, 0, 0});
    const auto b = gen::line("b", {0, 0});
    EXPECT_EQ(lcss(a, b, 1.0).matches, (MatchSet{{0, 0}, {1, 1}}));
}

TEST(Edr, Examples) {
    const auto t = gen::line("a", {0, 3, 1});
    EXPECT_EQ(edit_distance_edr(t, t, 0.1), 0u);
    EXPECT_EQ(edit_distance_edr(PointSeries(), gen::line("b", {1, 2, 3, 4}), 0.5), 4u);
    EXPECT_EQ(edit_distance_edr(gen::line("b", {1, 2, 3, 4}), PointSeries(), 0.5), 4u);
    EXPECT_EQ(edit_distance_edr(gen::line("a", {0, 1, 2}), gen::line("b", {0, 9, 2}), 0.5), 1u);
    EXPECT_EQ(oracle::edr({{0}, {1}, {2}}, {{0}, {9}, {2}}, 0.5), 1u);
}

TEST(Kernels, MatchBruteForceOracles) {
    gen::Rng rng(32);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t dim = rng.index(1, 2);
        const auto sa = gen::grid_series(rng, rng.index(1, 5), dim);
        const auto sb = gen::grid_series(rng, rng.index(1, 5), dim);
        const auto a = gen::make_trajectory("a", sa);
        const auto b = gen::make_trajectory("b", sb);
        const double eps = 0.5 * rng.integer(1, 4);
        const long delta = rng.coin() ? -1 : static_cast<long>(rng.index(0, 3));

        EXPECT_NEAR(dtw(a, b), oracle::dtw(sa, sb), 1e-9);
        EXPECT_NEAR(discrete_frechet(a, b), oracle::frechet(sa, sb), 1e-9);
        EXPECT_EQ(edit_distance_edr(a, b, eps), oracle::edr(sa, sb, eps));

        const auto got = lcss(a, b, eps, delta < 0 ? std::nullopt : std::optional<std::size_t>(delta));
        const auto want = oracle::lcss(sa, sb, eps, delta);
        EXPECT_EQ(got.length, want.length);
        EXPECT_EQ(got.matches, to_match_set(want.matches));
        EXPECT_DOUBLE_EQ(got.similarity,
                         static_cast<double>(want.length) / static_cast<double>(std::min(sa.size(), sb.size())));
    }
}

TEST(Kernels, SymmetryIdentityTranslation) {
    gen::Rng rng(33);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = rng.index(1, 15);
        const auto sa = gen::real_series(rng, n, 2);
        const auto sb = gen::real_series(rng, rng.coin() ? n : rng.index(1, 15), 2);
        oracle::Series ta = sa, tb = sb;
        const double dx = rng.real(-100, 100), dy = rng.real(-100, 100);
        for (auto* s : {&ta, &tb})
            for (auto& p : *s) {
                p[0] += dx;
                p[1] += dy;
            }
        const auto a = gen::make_trajectory("a", sa), b = gen::make_trajectory("b", sb);
        const auto a2 = gen::make_trajectory("a", ta), b2 = gen::make_trajectory("b", tb);
        const double eps = rng.real(0.5, 8.0);

        EXPECT_EQ(dtw(a, a), 0.0);
        EXPECT_EQ(discrete_frechet(a, a), 0.0);
        EXPECT_EQ(lockstep_euclidean(a, a), 0.0);
        EXPECT_EQ(edit_distance_edr(a, a, eps), 0u);
        EXPECT_EQ(lcss(a, a, eps).similarity, 1.0);

        EXPECT_NEAR(dtw(a, b), dtw(b, a), 1e-9);
        EXPECT_NEAR(discrete_frechet(a, b), discrete_frechet(b, a), 1e-9);
        EXPECT_EQ(edit_distance_edr(a, b, eps), edit_distance_edr(b, a, eps));
        EXPECT_EQ(lcss(a, b, eps).length, lcss(b, a, eps).length);

        EXPECT_NEAR(dtw(a, b), dtw(a2, b2), 1e-9 * std::max(1.0, dtw(a, b)));
        EXPECT_NEAR(discrete_frechet(a, b), discrete_frechet(a2, b2), 1e-9);
        if (sa.size() == sb.size()) {
            EXPECT_NEAR(lockstep_euclidean(a, b), lockstep_euclidean(b, a), 1e-9);
            EXPECT_NEAR(lockstep_euclidean(a, b), lockstep_euclidean(a2, b2), 1e-9);
        }
    }
}

TEST(Continuity, Examples) {
    EXPECT_DOUBLE_EQ(continuity_score(from_runs({4})), 1.0);
    EXPECT_DOUBLE_EQ(continuity_score(from_runs({2, 2})), 0.5);
    EXPECT_DOUBLE_EQ(continuity_score(from_runs({1, 1, 1, 1})), 0.25);
    EXPECT_EQ(code_of([] { continuity_score(MatchSet{}); }), Errc::empty_match_set);
    EXPECT_EQ(code_of([] { continuity_score(MatchSet{{1, 1}, {1, 2}}); }), Errc::invalid_parameter);
}

TEST(Continuity, RunsNeedBothIndicesToAdvanceByOne) {
    EXPECT_DOUBLE_EQ(continuity_score(MatchSet{{0, 0}, {1, 2}, {2, 3}}), (1.0 + 4.0) / 9.0);
}

TEST(Continuity, ExhaustiveRunPartitions) {
    for (std::size_t total = 1; total <= 8; ++total) {
        double best = -1.0, worst = 2.0;
        std::vector<std::size_t> best_parts, worst_parts;
        for (const auto& parts : oracle::compositions(total)) {
            double squares = 0.0;
            for (std::size_t len : parts) squares += static_cast<double>(len * len);
            const double expected = squares / static_cast<double>(total * total);
            const double got = continuity_score(from_runs(parts));
            EXPECT_NEAR(got, expected, 1e-15);
            if (got > best) {
                best = got;
                best_parts = parts;
            }
            if (got < worst) {
                worst = got;
                worst_parts = parts;
            }
        }
        EXPECT_EQ(best_parts, std::vector<std::size_t>{total});
        EXPECT_EQ(best, 1.0);
        EXPECT_EQ(worst_parts, std::vector<std::size_t>(total, 1));
        EXPECT_NEAR(worst, 1.0 / static_cast<double>(total), 1e-15);
    }
}

TEST(DistanceToSimilarity, Examples) {
    EXPECT_EQ(distance_to_similarity(0.0, 2.0), 1.0);
    EXPECT_NEAR(distance_to_similarity(2.0, 2.0), std::exp(-1.0), 1e-15);
    EXPECT_GE(distance_to_similarity(1e6, 1.0), 0.0);
    EXPECT_EQ(code_of([] { distance_to_similarity(1.0, 0.0); }), Errc::invalid_parameter);
    EXPECT_EQ(code_of([] { distance_to_similarity(-1.0, 1.0); }), Errc::invalid_parameter);
}

TEST(Contextual, Examples) {
    const auto t = gen::line("a", {0, 1, 2});
    const ContextSchema schema{{"temp", {ContextKind::numeric, 0, 40}}, {"weather", {ContextKind::categorical}}};
    const std::vector<ContextSample> c10(3, {{"temp", 10.0}});
    const std::vector<ContextSample> c30(3, {{"temp", 30.0}});
    EXPECT_DOUBLE_EQ(contextual_similarity(with_context(t, c10), with_context(t, c10), schema), 1.0);
    EXPECT_DOUBLE_EQ(contextual_similarity(with_context(t, c10), with_context(t, c30), schema), 0.5);

    const std::vector<ContextSample> rain(3, {{"weather", std::string("rain")}});
    const std::vector<ContextSample> sun(3, {{"weather", std::string("sun")}});
    EXPECT_DOUBLE_EQ(contextual_similarity(with_context(t, rain), with_context(t, sun), schema), 0.0);
}

TEST(Contextual, KeysOnOneSideScoreZero) {
    const auto t = gen::line("a", {0, 1});
    const ContextSchema schema{{"temp", {ContextKind::numeric, 0, 40}}, {"weather", {ContextKind::categorical}}};
    const std::vector<ContextSample> both(2, {{"temp", 10.0}, {"weather", std::string("sun")}});
    const std::vector<ContextSample> temp_only(2, {{"temp", 10.0}});
    EXPECT_DOUBLE_EQ(contextual_similarity(with_context(t, both), with_context(t, temp_only), schema), 0.5);
}

TEST(Contextual, Errors) {
    const auto t = gen::line("a", {0, 1});
    const auto u = gen::line("b", {0, 1, 2});
    const ContextSchema schema{{"temp", {ContextKind::numeric, 0, 40}}, {"weather", {ContextKind::categorical}}};
    const std::vector<ContextSample> temps(2, {{"temp", 10.0}});
    const std::vector<ContextSample> weather(2, {{"weather", std::string("sun")}});
    EXPECT_EQ(code_of([&] { contextual_similarity(EnrichedTrajectory(t), with_context(t, temps), schema); }),
              Errc::no_context);
    EXPECT_EQ(code_of([&] {
                  contextual_similarity(with_context(t, temps), with_context(u, {3, {{"temp", 1.0}}}), schema);
              }),
              Errc::length_mismatch);
    EXPECT_EQ(code_of([&] { contextual_similarity(with_context(t, temps), with_context(t, weather), schema); }),
              Errc::no_shared_schema);
    EXPECT_EQ(code_of([&] { contextual_similarity(with_context(t, temps), with_context(t, temps), {}); }),
              Errc::unknown_key);
}

TEST(Semantic, Examples) {
    const auto t = gen::line("a", {0, 1, 2, 3});
    const EnrichedTrajectory work_all(t, std::nullopt, {{"work", 0, 3}});
    const EnrichedTrajectory work_half(t, std::nullopt, {{"work", 0, 1}});
    const EnrichedTrajectory shop(t, std::nullopt, {{"shop", 0, 3}});
    EXPECT_DOUBLE_EQ(semantic_similarity(work_all, work_all), 1.0);
    EXPECT_DOUBLE_EQ(semantic_similarity(work_all, shop), 0.0);
    EXPECT_DOUBLE_EQ(semantic_similarity(work_all, work_half), 0.5);
    EXPECT_DOUBLE_EQ(semantic_similarity(EnrichedTrajectory(t), EnrichedTrajectory(t)), 1.0);
    EXPECT_DOUBLE_EQ(semantic_similarity(EnrichedTrajectory(t), work_all), 0.0);
}

TEST(Similarities, SymmetricAndBounded) {
    gen::Rng rng(34);
    const auto schema = gen::demo_schema();
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = rng.index(1, 12);
        const auto a = gen::random_enriched(rng, "a", n);
        const auto b = gen::random_enriched(rng, "b", n);
        const double sem = semantic_similarity(a, b);
        EXPECT_EQ(sem, semantic_similarity(b, a));
        EXPECT_GE(sem, 0.0);
        EXPECT_LE(sem, 1.0);
        try {
            const double ctx = contextual_similarity(a, b, schema);
            EXPECT_NEAR(ctx, contextual_similarity(b, a, schema), 1e-12);
            EXPECT_GE(ctx, 0.0);
            EXPECT_LE(ctx, 1.0);
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), Errc::no_shared_schema);
        }
    }
}
