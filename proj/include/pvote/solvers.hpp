#ifndef PVOTE_SOLVERS_HPP
#define PVOTE_SOLVERS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "bigint.hpp"
#include "core.hpp"
#include "norms.hpp"

namespace pvote {

// ---------------------------------------------------------------------------
// Pair ordering shared by Ranked Pairs and the sign-vector view
// ---------------------------------------------------------------------------

struct RankedPair {
    std::size_t winner = 0;
    std::size_t loser = 0;
    Margin magnitude = 0;

    friend bool operator==(const RankedPair&, const RankedPair&) = default;
};

/// All pairs by strictly decreasing magnitude; equal magnitudes fall back to the
/// lexicographic (lower index, higher index) pair. Zero margins come last with the
/// lower index recorded as `winner`.
inline std::vector<RankedPair> pairs_by_strength(const MarginMatrix& m) {
    std::vector<RankedPair> out;
    out.reserve(m.pair_count());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i + 1; j < m.size(); ++j) {
            const Margin v = m.at(i, j);
            out.push_back(v >= 0 ? RankedPair{i, j, v} : RankedPair{j, i, -v});
        }
    std::stable_sort(out.begin(), out.end(),
                     [](const RankedPair& a, const RankedPair& b) { return a.magnitude > b.magnitude; });
    return out;
}

// ---------------------------------------------------------------------------
// Ranked Pairs
// ---------------------------------------------------------------------------

struct LockStep {
    RankedPair pair;
    bool locked = false;
};

/// Lock-in graph built by Ranked Pairs.
struct LockedGraph {
    std::size_t n = 0;
    std::vector<RankedPair> edges;     // in lock order
    std::vector<RankedPair> discarded; // in the order they were rejected
    std::vector<LockStep> steps;

    bool reaches(std::size_t from, std::size_t to) const {
        std::vector<bool> seen(n, false);
        std::vector<std::size_t> stack{from};
        seen[from] = true;
        while (!stack.empty()) {
            auto v = stack.back();
            stack.pop_back();
            if (v == to) return true;
            for (const auto& e : edges) {
                if (e.winner == v && !seen[e.loser]) {
                    seen[e.loser] = true;
                    stack.push_back(e.loser);
                }
            }
        }
        return false;
    }
};

struct RankedPairsResult {
    Ordering ordering;
    LockedGraph graph;
    bool total = true;         // the locked graph orients every pair
    bool tie_break_used = false;
};

/// Ranked Pairs with the full lock/discard trace.
inline RankedPairsResult ranked_pairs_trace(const MarginMatrix& m, const SolveOptions& opts = {}) {
    RankedPairsResult res;
    res.tie_break_used = require_valid(m, opts);
    auto& g = res.graph;
    g.n = m.size();
    for (const auto& pr : pairs_by_strength(m)) {
        if (pr.magnitude == 0) continue;
        const bool cycle = g.reaches(pr.loser, pr.winner);
        g.steps.push_back({pr, !cycle});
        (cycle ? g.discarded : g.edges).push_back(pr);
    }

    // Kahn's algorithm, smallest index first among ready candidates.
    std::vector<std::size_t> indeg(g.n, 0);
    for (const auto& e : g.edges) ++indeg[e.loser];
    std::vector<bool> placed(g.n, false);
    std::vector<std::size_t> order;
    while (order.size() < g.n) {
        std::size_t ready = 0;
        std::optional<std::size_t> pick;
        for (std::size_t v = 0; v < g.n; ++v) {
            if (!placed[v] && indeg[v] == 0) {
                ++ready;
                if (!pick) pick = v;
            }
        }
        if (ready > 1) res.total = false;
        placed[*pick] = true;
        order.push_back(*pick);
        for (const auto& e : g.edges)
            if (e.winner == *pick) --indeg[e.loser];
    }
    res.ordering = Ordering(std::move(order));
    return res;
}

inline Ordering ranked_pairs(const MarginMatrix& m, const SolveOptions& opts = {}) {
    return ranked_pairs_trace(m, opts).ordering;
}

// ---------------------------------------------------------------------------
// Condorcet winner / loser
// ---------------------------------------------------------------------------

inline std::optional<std::size_t> find_condorcet_winner(const MarginMatrix& m) {
    for (std::size_t i = 0; i < m.size(); ++i) {
        bool beats_all = true;
        for (std::size_t j = 0; j < m.size() && beats_all; ++j)
            if (j != i && m.at(i, j) <= 0) beats_all = false;
        if (beats_all) return i;
    }
    return std::nullopt;
}

inline std::optional<std::size_t> find_condorcet_loser(const MarginMatrix& m) {
    for (std::size_t i = 0; i < m.size(); ++i) {
        bool loses_all = true;
        for (std::size_t j = 0; j < m.size() && loses_all; ++j)
            if (j != i && m.at(i, j) >= 0) loses_all = false;
        if (loses_all) return i;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Hamiltonian orderings: each candidate beats the next one head-to-head
// ---------------------------------------------------------------------------

namespace detail {

template <class Visit>
void hamiltonian_dfs(const MarginMatrix& m, std::vector<std::size_t>& path, std::vector<bool>& used, Visit& visit) {
    const auto n = m.size();
    if (path.size() == n) {
        visit(Ordering(path));
        return;
    }
    for (std::size_t c = 0; c < n; ++c) {
        if (used[c] || (!path.empty() && m.at(path.back(), c) <= 0)) continue;
        used[c] = true;
        path.push_back(c);
        hamiltonian_dfs(m, path, used, visit);
        path.pop_back();
        used[c] = false;
    }
}

} // namespace detail

/// Calls `visit(const Ordering&)` for each Hamiltonian ordering, in lexicographic order.
template <class Visit>
void for_each_hamiltonian_ordering(const MarginMatrix& m, Visit&& visit) {
    std::vector<std::size_t> path;
    std::vector<bool> used(m.size(), false);
    path.reserve(m.size());
    detail::hamiltonian_dfs(m, path, used, visit);
}

inline std::vector<Ordering> hamiltonian_orderings(const MarginMatrix& m) {
    std::vector<Ordering> out;
    for_each_hamiltonian_ordering(m, [&](const Ordering& o) { out.push_back(o); });
    return out;
}

// ---------------------------------------------------------------------------
// Exact minimization of a pairwise penalty over orderings
// ---------------------------------------------------------------------------

/// Exact comparison for integer weights.
struct ExactCompare {
    template <class W>
    int operator()(const W& a, const W& b) const {
        return a < b ? -1 : (b < a ? 1 : 0);
    }
};

/// Floating comparison: values within a relative 1e-12 are too close to call.
struct TolerantCompare {
    double rel = 1e-12;
    int operator()(double a, double b) const {
        const double scale = std::max(std::abs(a), std::abs(b));
        if (std::abs(a - b) <= rel * scale) return 0;
        return a < b ? -1 : 1;
    }
};

template <class W>
struct SearchResult {
    std::vector<Ordering> optima; // lexicographic order, capped at max_reported_optima
    std::uint64_t multiplicity = 0;
    W cost{};
};

namespace detail {

template <class W, class Cmp>
struct BranchAndBound {
    const MarginMatrix& m;
    const std::vector<W>& penalty; // penalty[i*n+j]: cost of placing i anywhere before j
    Cmp cmp;
    std::size_t cap;
    std::size_t n;
    SearchResult<W> best;
    bool have_best = false;
    std::vector<std::size_t> path;

    void run() {
        path.reserve(n);
        std::uint32_t unplaced = n == 32 ? 0xffffffffu : ((1u << n) - 1u);
        descend(unplaced, W{});
    }

    void descend(std::uint32_t unplaced, const W& cost) {
        if (unplaced == 0) {
            record(cost);
            return;
        }
        for (std::size_t c = 0; c < n; ++c) {
            if (!(unplaced & (1u << c))) continue;
            // Every minimizer has a nonnegative superdiagonal (adjacent swaps only help).
            if (!path.empty() && m.at(path.back(), c) < 0) continue;
            const std::uint32_t rest = unplaced & ~(1u << c);
            W next = cost;
            for (std::size_t u = 0; u < n; ++u)
                if (rest & (1u << u)) next += penalty[c * n + u];
            // Penalties only accumulate, so a partial cost above the incumbent cannot recover.
            if (have_best && cmp(next, best.cost) > 0) continue;
            path.push_back(c);
            descend(rest, next);
            path.pop_back();
        }
    }

    void record(const W& cost) {
        const int c = have_best ? cmp(cost, best.cost) : -1;
        if (c < 0) {
            best.optima.clear();
            best.multiplicity = 0;
            best.cost = cost;
            have_best = true;
        } else if (c > 0) {
            return;
        }
        ++best.multiplicity;
        if (best.optima.size() < cap) best.optima.emplace_back(path);
    }
};

} // namespace detail

/// Minimizes the sum of penalty[i*n+j] over pairs with i placed before j, by
/// depth-first branch and bound restricted to orderings whose consecutive
/// margins are nonnegative. Returns every optimum.
template <class W, class Cmp = ExactCompare>
SearchResult<W> minimize_pairwise_penalty(const MarginMatrix& m, const std::vector<W>& penalty,
                                          const SolveOptions& opts, Cmp cmp = {}) {
    require_size(m, opts);
    if (m.size() > 32) throw limit_error("exact search supports at most 32 candidates");
    detail::BranchAndBound<W, Cmp> bb{m, penalty, cmp, std::max<std::size_t>(opts.max_reported_optima, 1), m.size(), {}, false, {}};
    bb.run();
    return std::move(bb.best);
}

// ---------------------------------------------------------------------------
// p-ordering
// ---------------------------------------------------------------------------

struct POrderingResult {
    std::vector<Ordering> optima; // lexicographic; front() is the representative
    std::uint64_t multiplicity = 0;
    PExponent p = PExponent::integer(1);
    bool exact = true;
    std::optional<BigInt> negative_mass; // exact path only
    double p_norm = 0.0;
    QValue q_sum;
    bool tie_break_used = false;

    const Ordering& ordering() const { return optima.front(); }
    bool unique() const { return multiplicity == 1; }
    /// p < 1 or the tie-break override was needed.
    bool outside_guarantees() const { return tie_break_used || p.below_one(); }
};

/// Ordering(s) minimizing the p-norm of the margins that go against them.
inline POrderingResult p_ordering(const MarginMatrix& m, const PExponent& p, const SolveOptions& opts = {}) {
    POrderingResult res;
    res.p = p;
    res.tie_break_used = require_valid(m, opts);
    const auto n = m.size();
    if (p.is_integer()) {
        const unsigned e = p.as_integer();
        std::vector<BigInt> penalty(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (m.at(i, j) < 0) penalty[i * n + j] = ipow(-m.at(i, j), e);
        auto sr = minimize_pairwise_penalty(m, penalty, opts);
        res.optima = std::move(sr.optima);
        res.multiplicity = sr.multiplicity;
        res.q_sum = QValue::from_exact(total_mass(m, e) - 2 * sr.cost);
        res.p_norm = root_of(sr.cost, p.value());
        res.negative_mass = std::move(sr.cost);
    } else {
        res.exact = false;
        std::vector<double> penalty(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (m.at(i, j) < 0) penalty[i * n + j] = detail::real_power(-m.at(i, j), p.value());
        auto sr = minimize_pairwise_penalty(m, penalty, opts, TolerantCompare{});
        res.optima = std::move(sr.optima);
        res.multiplicity = sr.multiplicity;
        res.p_norm = sr.cost == 0 ? 0.0 : std::pow(sr.cost, 1.0 / p.value());
        res.q_sum = q_sum_real(m, res.optima.front(), p.value());
    }
    return res;
}

// ---------------------------------------------------------------------------
// Kemeny-Young
// ---------------------------------------------------------------------------

struct KemenyResult {
    std::vector<Ordering> optima;
    std::uint64_t multiplicity = 0;
    std::int64_t score = 0; // sum of signed margins agreeing with the ordering
    bool tie_break_used = false;

    const Ordering& ordering() const { return optima.front(); }
    bool unique() const { return multiplicity == 1; }
};

/// Kemeny-Young by dynamic programming over candidate subsets: the best score of
/// an ordering is the best first candidate plus the best ordering of the rest.
inline KemenyResult kemeny(const MarginMatrix& m, const SolveOptions& opts = {}) {
    KemenyResult res;
    res.tie_break_used = require_valid(m, opts);
    require_size(m, opts);
    const auto n = m.size();
    if (n > 24) throw limit_error("subset dynamic program supports at most 24 candidates");
    const std::size_t full = (std::size_t{1} << n) - 1;

    // best[S]: highest score of an ordering of S placed as the tail; count[S]: how many achieve it.
    std::vector<std::int64_t> best(full + 1, 0);
    std::vector<std::uint64_t> count(full + 1, 0);
    count[0] = 1;
    auto gain = [&](std::size_t first, std::size_t set) {
        std::int64_t g = 0;
        for (std::size_t u = 0; u < n; ++u)
            if (set & (std::size_t{1} << u)) g += m.at(first, u);
        return g;
    };
    for (std::size_t s = 1; s <= full; ++s) {
        bool any = false;
        for (std::size_t c = 0; c < n; ++c) {
            if (!(s & (std::size_t{1} << c))) continue;
            const auto rest = s & ~(std::size_t{1} << c);
            const auto v = gain(c, rest) + best[rest];
            if (!any || v > best[s]) {
                best[s] = v;
                count[s] = count[rest];
                any = true;
            } else if (v == best[s]) {
                count[s] += count[rest];
            }
        }
    }
    res.score = best[full];
    res.multiplicity = count[full];

    const auto cap = std::max<std::size_t>(opts.max_reported_optima, 1);
    std::vector<std::size_t> path;
    auto walk = [&](auto& self, std::size_t s) -> void {
        if (res.optima.size() >= cap) return;
        if (s == 0) {
            res.optima.emplace_back(path);
            return;
        }
        for (std::size_t c = 0; c < n; ++c) {
            if (!(s & (std::size_t{1} << c))) continue;
            const auto rest = s & ~(std::size_t{1} << c);
            if (gain(c, rest) + best[rest] != best[s]) continue;
            path.push_back(c);
            self(self, rest);
            path.pop_back();
        }
    };
    walk(walk, full);
    return res;
}

// ---------------------------------------------------------------------------
// Limit ordering (p -> infinity)
// ---------------------------------------------------------------------------

/// Signs of the permuted margins, listed by decreasing magnitude (see pairs_by_strength).
struct SignVector {
    std::vector<RankedPair> pairs;
    std::vector<int> signs; // +1, -1, or 0 for a zero margin

    std::string str() const {
        std::string s;
        for (int v : signs) s += v > 0 ? '+' : (v < 0 ? '-' : '0');
        return s;
    }
};

inline SignVector sign_vector(const MarginMatrix& m, const Ordering& o) {
    if (o.size() != m.size()) throw input_error("ordering length does not match candidate count");
    SignVector sv;
    sv.pairs = pairs_by_strength(m);
    const auto pos = o.positions();
    for (const auto& pr : sv.pairs) {
        if (pr.magnitude == 0) sv.signs.push_back(0);
        else sv.signs.push_back(pos[pr.winner] < pos[pr.loser] ? 1 : -1);
    }
    return sv;
}

/// The ordering whose sign vector is lexicographically greatest. Each pair's weight
/// is 2^(rank from the weakest), so any pair outweighs all weaker ones combined and
/// minimizing total weight of reversed pairs is the lexicographic comparison.
inline Ordering limit_ordering(const MarginMatrix& m, const SolveOptions& opts = {}) {
    require_valid(m, opts);
    const auto n = m.size();
    if (m.pair_count() > 63) throw limit_error("limit ordering supports at most 11 candidates");
    auto pairs = pairs_by_strength(m);
    std::vector<std::uint64_t> penalty(n * n, 0);
    const auto k = pairs.size();
    for (std::size_t r = 0; r < k; ++r) {
        const auto& pr = pairs[r];
        if (pr.magnitude == 0) continue;
        penalty[pr.loser * n + pr.winner] = std::uint64_t{1} << (k - 1 - r);
    }
    auto sr = minimize_pairwise_penalty(m, penalty, opts);
    return sr.optima.front();
}

} // namespace pvote

#endif // PVOTE_SOLVERS_HPP
