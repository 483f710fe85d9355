#ifndef PVOTE_CONVERGENCE_HPP
#define PVOTE_CONVERGENCE_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "bigint.hpp"
#include "core.hpp"
#include "norms.hpp"
#include "solvers.hpp"

namespace pvote {

namespace detail {

inline std::vector<Margin> sorted_magnitudes(const MarginMatrix& m) {
    std::vector<Margin> mags;
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i + 1; j < m.size(); ++j) mags.push_back(std::abs(m.at(i, j)));
    std::sort(mags.begin(), mags.end());
    return mags;
}

// Every magnitude's power strictly exceeds the sum of the powers of all strictly smaller ones.
inline bool dominates(const std::vector<Margin>& mags, const std::vector<BigInt>& powers) {
    BigInt below = 0;   // sum over magnitudes strictly smaller than the current group
    BigInt group = 0;
    for (std::size_t k = 0; k < mags.size(); ++k) {
        if (k > 0 && mags[k] != mags[k - 1]) {
            below += group;
            group = 0;
        }
        if (powers[k] <= below) return false;
        group += powers[k];
    }
    return true;
}

} // namespace detail

/// Cumulative dominance at exponent p, evaluated exactly.
inline bool cdp_holds(const MarginMatrix& m, unsigned p) {
    const auto mags = detail::sorted_magnitudes(m);
    std::vector<BigInt> powers;
    powers.reserve(mags.size());
    for (auto v : mags) powers.push_back(ipow(v, p));
    return detail::dominates(mags, powers);
}

/// Smallest positive integer p at which cdp_holds; the property persists for all larger p.
inline unsigned cdp_threshold(const MarginMatrix& m) {
    if (!validate_margins(m).ok()) throw validity_error("dominance threshold requires distinct nonzero margins");
    const auto mags = detail::sorted_magnitudes(m);
    std::vector<BigInt> powers(mags.begin(), mags.end());
    for (unsigned p = 1;; ++p) {
        if (detail::dominates(mags, powers)) return p;
        if (p == PExponent::max_exact) throw limit_error("dominance threshold exceeds supported exponent");
        for (std::size_t k = 0; k < mags.size(); ++k) powers[k] *= mags[k];
    }
}

struct PStarBound {
    double value = 1.0;
    bool defined = true;
    std::string note;
};

/// max over non-minimal magnitudes |m| of ln(n(n-1)/2) / ln(|m| / (|m| - 1)).
/// At every integer p at or above this value the dominance property holds.
inline PStarBound p_star_bound(const MarginMatrix& m) {
    const auto mags = detail::sorted_magnitudes(m);
    PStarBound out;
    if (mags.size() < 2 || mags.front() == mags.back()) {
        out.defined = false;
        out.note = "fewer than two distinct margins; bound undefined, reported as 1";
        return out;
    }
    const double pairs = static_cast<double>(m.pair_count());
    double bound = 0.0;
    for (auto v : mags) {
        if (v == mags.front() || v < 2) continue;
        const double x = static_cast<double>(v);
        bound = std::max(bound, std::log(pairs) / std::log(x / (x - 1.0)));
    }
    out.value = bound;
    return out;
}

struct TraceEntry {
    unsigned p = 0;
    std::vector<Ordering> optima;
    std::uint64_t multiplicity = 0;
    BigInt q_sum = 0;

    const Ordering& ordering() const { return optima.front(); }
    bool unique() const { return multiplicity == 1; }
};

struct ConvergenceReport {
    PStarBound p_star_bound;
    unsigned cdp_threshold = 0;
    Ordering ranked_pairs;
    Ordering limit;
    std::vector<TraceEntry> trace; // p = 1..p_max
    std::optional<unsigned> stabilized_at;
    std::vector<unsigned> flips;   // p at which the representative ordering changed from p-1
    bool agrees = false;
    std::vector<std::string> warnings;
};

/// Exact p-orderings for p = 1..p_max, compared against Ranked Pairs and the limit ordering.
/// `threads` > 1 solves different p concurrently; the report does not depend on it.
inline ConvergenceReport convergence_profile(const MarginMatrix& m, unsigned p_max, const SolveOptions& opts = {},
                                             unsigned threads = 1) {
    if (p_max == 0) throw input_error("p_max must be positive");
    SolveOptions strict = opts;
    strict.allow_ties = false;
    require_valid(m, strict);
    require_size(m, strict);

    ConvergenceReport rep;
    rep.p_star_bound = p_star_bound(m);
    rep.cdp_threshold = cdp_threshold(m);
    rep.ranked_pairs = ranked_pairs(m, strict);
    rep.limit = limit_ordering(m, strict);
    if (p_max < rep.cdp_threshold)
        rep.warnings.push_back("p_max " + std::to_string(p_max) + " is below the dominance threshold " +
                               std::to_string(rep.cdp_threshold));

    rep.trace.resize(p_max);
    auto solve = [&](unsigned p) {
        auto r = p_ordering(m, PExponent::integer(p), strict);
        auto& e = rep.trace[p - 1];
        e.p = p;
        e.optima = std::move(r.optima);
        e.multiplicity = r.multiplicity;
        e.q_sum = *r.q_sum.exact;
    };
    threads = std::max(1u, std::min(threads, p_max));
    if (threads == 1) {
        for (unsigned p = 1; p <= p_max; ++p) solve(p);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&, t] {
                for (unsigned p = 1 + t; p <= p_max; p += threads) solve(p);
            });
        for (auto& th : pool) th.join();
    }

    for (std::size_t k = 1; k < rep.trace.size(); ++k)
        if (rep.trace[k].ordering() != rep.trace[k - 1].ordering()) rep.flips.push_back(rep.trace[k].p);

    for (std::size_t k = rep.trace.size(); k-- > 0;) {
        const auto& e = rep.trace[k];
        if (!e.unique() || e.ordering() != rep.ranked_pairs) break;
        rep.stabilized_at = e.p;
    }

    rep.agrees = rep.limit == rep.ranked_pairs;
    for (const auto& e : rep.trace)
        if (e.p >= rep.cdp_threshold && (!e.unique() || e.ordering() != rep.ranked_pairs)) rep.agrees = false;
    return rep;
}

} // namespace pvote

#endif // PVOTE_CONVERGENCE_HPP
