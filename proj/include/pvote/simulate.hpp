#ifndef PVOTE_SIMULATE_HPP
#define PVOTE_SIMULATE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "core.hpp"
#include "solvers.hpp"

namespace pvote {

struct SimulationConfig {
    std::size_t candidates = 3;
    std::uint64_t voters = 1001;
    std::uint64_t trials = 20000;
    std::uint64_t seed = 0;

    void validate() const {
        if (candidates < 1) throw input_error("need at least one candidate");
        if (voters == 0 || voters % 2 == 0) throw input_error("voter count must be a positive odd number");
        if (trials == 0) throw input_error("trial count must be positive");
    }
};

struct FrequencyEstimate {
    double fraction = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t hits = 0;
    double half_width_95 = 0.0;
};

inline double half_width_95(double fraction, std::uint64_t trials) {
    return 1.96 * std::sqrt(fraction * (1.0 - fraction) / static_cast<double>(trials));
}

/// Generator for one trial; its stream depends only on (seed, trial).
inline std::mt19937_64 trial_engine(std::uint64_t seed, std::uint64_t trial) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
    return std::mt19937_64(seq);
}

namespace detail {

// Draws the trial's voters as uniform permutations, passing each to `sink`.
template <class Sink>
void draw_voters(const SimulationConfig& cfg, std::uint64_t trial, Sink&& sink) {
    auto rng = trial_engine(cfg.seed, trial);
    std::vector<std::size_t> ranking(cfg.candidates);
    for (std::uint64_t v = 0; v < cfg.voters; ++v) {
        std::iota(ranking.begin(), ranking.end(), std::size_t{0});
        std::shuffle(ranking.begin(), ranking.end(), rng);
        sink(ranking);
    }
}

inline std::vector<std::string> default_names(std::size_t n) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) {
        std::string s;
        std::size_t k = i;
        do {
            s.insert(s.begin(), static_cast<char>('A' + k % 26));
            k = k / 26;
        } while (k-- > 0);
        names.push_back(s);
    }
    return names;
}

// Condorcet winner check straight from the voters, without building a profile.
inline bool trial_has_condorcet_winner(const SimulationConfig& cfg, std::uint64_t trial) {
    const auto n = cfg.candidates;
    if (n == 1) return true;
    std::vector<std::uint32_t> wins(n * n, 0); // wins[i*n+j]: voters ranking i above j
    std::vector<std::size_t> pos(n);
    draw_voters(cfg, trial, [&](const std::vector<std::size_t>& ranking) {
        for (std::size_t r = 0; r < n; ++r) pos[ranking[r]] = r;
        for (std::size_t i = 0; i < n; ++i) {
            auto* row = &wins[i * n];
            const auto pi = pos[i];
            for (std::size_t j = 0; j < n; ++j) row[j] += pi < pos[j];
        }
    });
    const auto half = cfg.voters / 2; // voters odd: i beats j iff wins > half
    for (std::size_t i = 0; i < n; ++i) {
        bool all = true;
        for (std::size_t j = 0; j < n && all; ++j)
            if (j != i && wins[i * n + j] <= half) all = false;
        if (all) return true;
    }
    return false;
}

} // namespace detail

/// Impartial-culture election: every voter ranks the candidates uniformly at random.
inline ElectionProfile random_profile(const SimulationConfig& cfg, std::uint64_t trial) {
    cfg.validate();
    std::vector<Ballot> ballots;
    ballots.reserve(cfg.voters);
    detail::draw_voters(cfg, trial, [&](const std::vector<std::size_t>& r) { ballots.push_back({r, 1}); });
    return ElectionProfile(make_candidates(detail::default_names(cfg.candidates)), std::move(ballots));
}

/// Fraction of trials with a Condorcet winner. Trials are split across `threads`;
/// the result is identical for any thread count.
inline FrequencyEstimate condorcet_winner_frequency(const SimulationConfig& cfg, unsigned threads = 1) {
    cfg.validate();
    threads = static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(threads, cfg.trials)));
    std::vector<std::uint64_t> hits(threads, 0);
    auto work = [&](unsigned t) {
        for (std::uint64_t i = t; i < cfg.trials; i += threads) hits[t] += detail::trial_has_condorcet_winner(cfg, i);
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }
    FrequencyEstimate est;
    est.trials = cfg.trials;
    est.hits = std::accumulate(hits.begin(), hits.end(), std::uint64_t{0});
    est.fraction = static_cast<double>(est.hits) / static_cast<double>(cfg.trials);
    est.half_width_95 = half_width_95(est.fraction, cfg.trials);
    return est;
}

} // namespace pvote

#endif // PVOTE_SIMULATE_HPP
