#include <map>
#include <cmath>

#include <gtest/gtest.h>

#include <pvote/simulate.hpp>

using namespace pvote;

TEST(Simulate, ConfigValidation) {
    SimulationConfig c;
    EXPECT_NO_THROW(c.validate());
    c.voters = 1000;
    EXPECT_THROW(c.validate(), input_error);
    c.voters = 11;
    c.candidates = 0;
    EXPECT_THROW(c.validate(), input_error);
    c.candidates = 3;
    c.trials = 0;
    EXPECT_THROW(c.validate(), input_error);
}

TEST(Simulate, TrivialCandidateCounts) {
    SimulationConfig c{1, 5, 50, 3};
    EXPECT_EQ(condorcet_winner_frequency(c).fraction, 1.0);
    c.candidates = 2;
    auto e = condorcet_winner_frequency(c);
    EXPECT_EQ(e.fraction, 1.0);
    EXPECT_EQ(e.hits, 50u);
    EXPECT_EQ(e.half_width_95, 0.0);
}

TEST(Simulate, SameSeedSameEstimate) {
    SimulationConfig c{4, 101, 400, 99};
    auto a = condorcet_winner_frequency(c);
    auto b = condorcet_winner_frequency(c);
    EXPECT_EQ(a.hits, b.hits);
    EXPECT_EQ(a.fraction, b.fraction);
    c.seed = 100;
    auto d = condorcet_winner_frequency(c);
    EXPECT_EQ(d.trials, 400u);
}

TEST(Simulate, ThreadCountDoesNotChangeEstimate) {
    SimulationConfig c{5, 51, 300, 7};
    const auto one = condorcet_winner_frequency(c, 1);
    for (unsigned t : {2u, 3u, 8u}) {
        const auto many = condorcet_winner_frequency(c, t);
        EXPECT_EQ(one.hits, many.hits) << t;
        EXPECT_EQ(one.half_width_95, many.half_width_95);
    }
}

TEST(Simulate, TrialStreamsDependOnlyOnSeedAndIndex) {
    auto a = trial_engine(5, 17);
    auto b = trial_engine(5, 17);
    auto c = trial_engine(5, 18);
    const auto x = a();
    EXPECT_EQ(x, b());
    EXPECT_NE(x, c());
    EXPECT_NE(trial_engine(1ull << 32, 0)(), trial_engine(0, 0)());
}

TEST(Simulate, FastCountMatchesProfilePath) {
    SimulationConfig c{4, 31, 200, 11};
    for (std::uint64_t t = 0; t < c.trials; ++t) {
        const auto m = margin_matrix(random_profile(c, t));
        ASSERT_EQ(detail::trial_has_condorcet_winner(c, t), find_condorcet_winner(m).has_value()) << t;
    }
}

TEST(Simulate, VotersAreUniformPermutations) {
    SimulationConfig c{3, 1, 1, 0};
    std::map<std::vector<std::size_t>, int> seen;
    for (std::uint64_t t = 0; t < 6000; ++t)
        detail::draw_voters(c, t, [&](const std::vector<std::size_t>& r) { ++seen[r]; });
    ASSERT_EQ(seen.size(), 6u);
    for (const auto& [r, k] : seen) EXPECT_NEAR(k, 1000, 150);
}

TEST(Simulate, HalfWidthFormula) {
    EXPECT_DOUBLE_EQ(half_width_95(0.5, 10000), 1.96 * std::sqrt(0.25 / 10000));
    EXPECT_EQ(half_width_95(1.0, 10), 0.0);
    SimulationConfig c{3, 11, 500, 1};
    auto e = condorcet_winner_frequency(c);
    EXPECT_DOUBLE_EQ(e.half_width_95, 1.96 * std::sqrt(e.fraction * (1 - e.fraction) / 500.0));
}

TEST(Simulate, DefaultNames) {
    auto n = detail::default_names(28);
    EXPECT_EQ(n[0], "A");
    EXPECT_EQ(n[25], "Z");
    EXPECT_EQ(n[26], "AA");
    EXPECT_EQ(n[27], "AB");
}

TEST(Simulate, FrequencyFallsWithMoreCandidates) {
    double prev = 1.0;
    for (std::size_t k : {3u, 5u, 8u}) {
        SimulationConfig c{k, 101, 1500, 2};
        auto e = condorcet_winner_frequency(c);
        EXPECT_LT(e.fraction, prev + e.half_width_95);
        prev = e.fraction;
    }
}
