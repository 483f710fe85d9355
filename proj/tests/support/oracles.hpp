#pragma once

// Brute-force reference computations. They read the raw matrix directly and
// never call the library's norms or solvers.

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include <pvote/bigint.hpp>
#include <pvote/core.hpp>

namespace pvote::test {

inline std::vector<std::vector<std::size_t>> all_permutations(std::size_t n) {
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), std::size_t{0});
    std::vector<std::vector<std::size_t>> out;
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

inline BigInt naive_pow(std::int64_t base, unsigned p) {
    BigInt r = 1;
    for (unsigned k = 0; k < p; ++k) r *= base;
    return r;
}

inline BigInt oracle_q(const MarginMatrix& m, const std::vector<std::size_t>& perm, unsigned p) {
    BigInt s = 0;
    for (std::size_t a = 0; a < perm.size(); ++a)
        for (std::size_t b = a + 1; b < perm.size(); ++b) {
            const auto v = m.at(perm[a], perm[b]);
            if (v > 0) s += naive_pow(v, p);
            if (v < 0) s -= naive_pow(-v, p);
        }
    return s;
}

inline BigInt oracle_negative(const MarginMatrix& m, const std::vector<std::size_t>& perm, unsigned p) {
    BigInt s = 0;
    for (std::size_t a = 0; a < perm.size(); ++a)
        for (std::size_t b = a + 1; b < perm.size(); ++b)
            if (m.at(perm[a], perm[b]) < 0) s += naive_pow(-m.at(perm[a], perm[b]), p);
    return s;
}

struct OracleBest {
    BigInt q;
    std::vector<std::vector<std::size_t>> argmax; // lexicographic
};

/// Exhaustive Q-sum maximization over all n! orderings.
inline OracleBest oracle_best(const MarginMatrix& m, unsigned p) {
    OracleBest best;
    bool first = true;
    for (const auto& perm : all_permutations(m.size())) {
        auto q = oracle_q(m, perm, p);
        if (first || q > best.q) {
            best.q = q;
            best.argmax.clear();
            first = false;
        }
        if (q == best.q) best.argmax.push_back(perm);
    }
    return best;
}

inline std::vector<std::vector<std::size_t>> oracle_hamiltonian(const MarginMatrix& m) {
    std::vector<std::vector<std::size_t>> out;
    for (const auto& perm : all_permutations(m.size())) {
        bool ok = true;
        for (std::size_t k = 0; k + 1 < perm.size(); ++k) ok = ok && m.at(perm[k], perm[k + 1]) > 0;
        if (ok) out.push_back(perm);
    }
    return out;
}

/// Ranked Pairs as sequence elimination: keep every total order consistent with the
/// pairs accepted so far; a pair is accepted when some surviving order honours it.
inline std::vector<std::size_t> oracle_ranked_pairs(const MarginMatrix& m) {
    struct P {
        std::size_t w, l;
        Margin mag;
    };
    std::vector<P> pairs;
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i + 1; j < m.size(); ++j)
            pairs.push_back(m.at(i, j) > 0 ? P{i, j, m.at(i, j)} : P{j, i, -m.at(i, j)});
    std::sort(pairs.begin(), pairs.end(), [](const P& a, const P& b) { return a.mag > b.mag; });
    auto alive = all_permutations(m.size());
    for (const auto& pr : pairs) {
        std::vector<std::vector<std::size_t>> keep;
        for (const auto& perm : alive) {
            auto wi = std::find(perm.begin(), perm.end(), pr.w);
            auto li = std::find(perm.begin(), perm.end(), pr.l);
            if (wi < li) keep.push_back(perm);
        }
        if (!keep.empty()) alive = std::move(keep);
    }
    return alive.front();
}

/// Direct dominance check at exponent p.
inline bool oracle_cdp(const MarginMatrix& m, unsigned p) {
    std::vector<Margin> mags;
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i + 1; j < m.size(); ++j) mags.push_back(std::abs(m.at(i, j)));
    for (auto a : mags) {
        BigInt smaller = 0;
        for (auto b : mags)
            if (b < a) smaller += naive_pow(b, p);
        if (!(naive_pow(a, p) > smaller)) return false;
    }
    return true;
}

} // namespace pvote::test
