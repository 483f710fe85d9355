#ifndef PVOTE_CORE_HPP
#define PVOTE_CORE_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace pvote {

/// Malformed or inconsistent input (bad file, bad ranking, bad matrix).
class input_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A matrix violates the distinct-nonzero-margin assumption and no override was given.
class validity_error : public input_error {
  public:
    using input_error::input_error;
};

/// An exact search was asked to go beyond its configured size.
class limit_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

using Margin = std::int64_t;

struct Candidate {
    std::size_t index = 0;
    std::string name;
};

inline std::vector<Candidate> make_candidates(const std::vector<std::string>& names) {
    std::vector<Candidate> out;
    out.reserve(names.size());
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i].empty()) throw input_error("candidate name must be nonempty");
        for (std::size_t j = 0; j < i; ++j) {
            if (names[j] == names[i]) throw input_error("duplicate candidate '" + names[i] + "'");
        }
        out.push_back({i, names[i]});
    }
    return out;
}

/// A permutation of 0..n-1, first place first.
class Ordering {
  public:
    Ordering() = default;

    explicit Ordering(std::vector<std::size_t> perm) : perm_(std::move(perm)) {
        std::vector<bool> seen(perm_.size(), false);
        for (auto c : perm_) {
            if (c >= perm_.size() || seen[c]) throw input_error("ordering is not a permutation");
            seen[c] = true;
        }
    }

    static Ordering identity(std::size_t n) {
        std::vector<std::size_t> p(n);
        std::iota(p.begin(), p.end(), std::size_t{0});
        return Ordering(std::move(p));
    }

    std::size_t size() const { return perm_.size(); }
    std::size_t operator[](std::size_t rank) const { return perm_[rank]; }
    auto begin() const { return perm_.begin(); }
    auto end() const { return perm_.end(); }
    const std::vector<std::size_t>& indices() const { return perm_; }

    /// Rank (0 = first place) of each candidate.
    std::vector<std::size_t> positions() const {
        std::vector<std::size_t> pos(perm_.size());
        for (std::size_t r = 0; r < perm_.size(); ++r) pos[perm_[r]] = r;
        return pos;
    }

    Ordering reversed() const { return Ordering(std::vector<std::size_t>(perm_.rbegin(), perm_.rend())); }

    friend bool operator==(const Ordering&, const Ordering&) = default;
    friend auto operator<=>(const Ordering&, const Ordering&) = default;

  private:
    std::vector<std::size_t> perm_;
};

struct Ballot {
    std::vector<std::size_t> ranking;
    std::uint64_t count = 1;

    friend bool operator==(const Ballot&, const Ballot&) = default;
};

/// Candidates plus strict complete rankings with multiplicities.
class ElectionProfile {
  public:
    ElectionProfile(std::vector<Candidate> candidates, std::vector<Ballot> ballots)
        : candidates_(std::move(candidates)), ballots_(std::move(ballots)) {
        const auto n = candidates_.size();
        if (n == 0) throw input_error("election has no candidates");
        for (std::size_t i = 0; i < n; ++i) {
            if (candidates_[i].index != i) throw input_error("candidate indices must be 0..n-1 in order");
        }
        if (ballots_.empty()) throw input_error("election has no ballots");
        for (const auto& b : ballots_) {
            if (b.count == 0) throw input_error("ballot count must be positive");
            if (b.ranking.size() != n) throw input_error("ballot does not rank every candidate");
            Ordering check(b.ranking);
            (void)check;
        }
    }

    std::size_t size() const { return candidates_.size(); }
    const std::vector<Candidate>& candidates() const { return candidates_; }
    const std::vector<Ballot>& ballots() const { return ballots_; }

    std::vector<std::string> names() const {
        std::vector<std::string> out;
        for (const auto& c : candidates_) out.push_back(c.name);
        return out;
    }

    std::uint64_t voter_count() const {
        std::uint64_t total = 0;
        for (const auto& b : ballots_) total += b.count;
        return total;
    }

    friend bool operator==(const ElectionProfile& a, const ElectionProfile& b) {
        return a.names() == b.names() && a.ballots_ == b.ballots_;
    }

  private:
    std::vector<Candidate> candidates_;
    std::vector<Ballot> ballots_;
};

/// Antisymmetric matrix of pairwise margins: at(i, j) = voters preferring i to j minus the reverse.
class MarginMatrix {
  public:
    MarginMatrix() = default;

    /// Row-major full matrix; must be antisymmetric with a zero diagonal.
    MarginMatrix(std::vector<std::string> names, std::vector<Margin> entries)
        : n_(names.size()), names_(std::move(names)), m_(std::move(entries)) {
        make_candidates(names_);
        if (m_.size() != n_ * n_) throw input_error("margin matrix has wrong number of entries");
        for (std::size_t i = 0; i < n_; ++i) {
            if (at(i, i) != 0) throw input_error("margin matrix diagonal must be zero");
            for (std::size_t j = i + 1; j < n_; ++j) {
                if (at(i, j) != -at(j, i)) {
                    throw input_error("margin matrix is not antisymmetric at " + names_[i] + "," + names_[j]);
                }
            }
        }
    }

    /// Build from upper-triangle declarations {i, j, m_ij}; undeclared pairs are zero.
    static MarginMatrix from_pairs(std::vector<std::string> names,
                                   const std::vector<std::tuple<std::size_t, std::size_t, Margin>>& pairs) {
        const auto n = names.size();
        std::vector<Margin> m(n * n, 0);
        for (auto [i, j, v] : pairs) {
            if (i >= n || j >= n || i == j) throw input_error("invalid candidate pair in margin list");
            m[i * n + j] = v;
            m[j * n + i] = -v;
        }
        return MarginMatrix(std::move(names), std::move(m));
    }

    std::size_t size() const { return n_; }
    Margin at(std::size_t i, std::size_t j) const { return m_[i * n_ + j]; }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(std::size_t i) const { return names_[i]; }

    std::size_t pair_count() const { return n_ * (n_ - 1) / 2; }

    MarginMatrix negated() const {
        auto m = m_;
        for (auto& v : m) v = -v;
        return MarginMatrix(names_, std::move(m));
    }

    MarginMatrix scaled(Margin factor) const {
        auto m = m_;
        for (auto& v : m) v *= factor;
        return MarginMatrix(names_, std::move(m));
    }

    /// Drop one candidate; the rest keep their relative order and are renumbered.
    MarginMatrix without(std::size_t removed) const {
        if (removed >= n_) throw input_error("candidate index out of range");
        std::vector<std::size_t> keep;
        for (std::size_t i = 0; i < n_; ++i)
            if (i != removed) keep.push_back(i);
        return submatrix(keep);
    }

    /// Matrix restricted to `keep`, in the given order.
    MarginMatrix submatrix(const std::vector<std::size_t>& keep) const {
        std::vector<std::string> names;
        std::vector<Margin> m;
        for (auto i : keep) names.push_back(names_.at(i));
        for (auto i : keep)
            for (auto j : keep) m.push_back(at(i, j));
        return MarginMatrix(std::move(names), std::move(m));
    }

    friend bool operator==(const MarginMatrix&, const MarginMatrix&) = default;

  private:
    std::size_t n_ = 0;
    std::vector<std::string> names_;
    std::vector<Margin> m_;
};

inline MarginMatrix margin_matrix(const ElectionProfile& profile) {
    const auto n = profile.size();
    std::vector<Margin> m(n * n, 0);
    for (const auto& b : profile.ballots()) {
        const auto w = static_cast<Margin>(b.count);
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t c = a + 1; c < n; ++c) {
                m[b.ranking[a] * n + b.ranking[c]] += w;
                m[b.ranking[c] * n + b.ranking[a]] -= w;
            }
        }
    }
    return MarginMatrix(profile.names(), std::move(m));
}

inline ElectionProfile reverse_profile(const ElectionProfile& profile) {
    std::vector<Ballot> out;
    out.reserve(profile.ballots().size());
    for (const auto& b : profile.ballots()) {
        out.push_back({std::vector<std::size_t>(b.ranking.rbegin(), b.ranking.rend()), b.count});
    }
    return ElectionProfile(profile.candidates(), std::move(out));
}

/// Entry (r, c) of the result is m(perm[r], perm[c]); names follow the permutation.
inline MarginMatrix permuted_view(const MarginMatrix& matrix, const Ordering& ordering) {
    if (ordering.size() != matrix.size()) throw input_error("ordering length does not match candidate count");
    return matrix.submatrix(ordering.indices());
}

struct MarginViolation {
    enum class Kind { zero_margin, duplicate_magnitude };
    Kind kind;
    std::size_t i, j;          // the offending pair
    std::size_t other_i = 0;   // first pair sharing the magnitude (duplicates only)
    std::size_t other_j = 0;
    Margin magnitude = 0;

    std::string describe(const MarginMatrix& m) const {
        if (kind == Kind::zero_margin) return "zero margin " + m.name(i) + "," + m.name(j);
        return "duplicate magnitude " + std::to_string(magnitude) + " (" + m.name(other_i) + "," + m.name(other_j) +
               " and " + m.name(i) + "," + m.name(j) + ")";
    }
};

struct ValidityVerdict {
    std::vector<MarginViolation> violations;

    bool ok() const { return violations.empty(); }

    std::vector<std::string> messages(const MarginMatrix& m) const {
        std::vector<std::string> out;
        for (const auto& v : violations) out.push_back(v.describe(m));
        return out;
    }
};

/// OK iff every off-diagonal margin is nonzero and the upper-triangle magnitudes are pairwise distinct.
inline ValidityVerdict validate_margins(const MarginMatrix& matrix) {
    ValidityVerdict verdict;
    std::map<Margin, std::pair<std::size_t, std::size_t>> first_seen;
    for (std::size_t i = 0; i < matrix.size(); ++i) {
        for (std::size_t j = i + 1; j < matrix.size(); ++j) {
            const Margin v = matrix.at(i, j);
            if (v == 0) {
                verdict.violations.push_back({MarginViolation::Kind::zero_margin, i, j});
                continue;
            }
            const Margin mag = std::abs(v);
            auto [it, inserted] = first_seen.emplace(mag, std::make_pair(i, j));
            if (!inserted) {
                verdict.violations.push_back({MarginViolation::Kind::duplicate_magnitude, i, j, it->second.first,
                                              it->second.second, mag});
            }
        }
    }
    return verdict;
}

/// Options shared by everything that consumes a MarginMatrix.
struct SolveOptions {
    /// Accept matrices with zero or repeated margins, breaking ties deterministically
    /// (larger magnitude first, then lexicographic candidate pair).
    bool allow_ties = false;
    /// Largest candidate count the exact searches will attempt.
    std::size_t max_exact_candidates = 10;
    /// Cap on how many tied optima are materialized (the count is always exact).
    std::size_t max_reported_optima = 1000;
};

/// Throws validity_error unless the matrix is valid or ties are explicitly allowed.
/// Returns true when the run relies on the tie-break override.
inline bool require_valid(const MarginMatrix& matrix, const SolveOptions& opts) {
    auto verdict = validate_margins(matrix);
    if (verdict.ok()) return false;
    if (opts.allow_ties) return true;
    std::string msg = "margins are not distinct and nonzero:";
    for (const auto& s : verdict.messages(matrix)) msg += " [" + s + "]";
    throw validity_error(msg);
}

inline void require_size(const MarginMatrix& matrix, const SolveOptions& opts) {
    if (matrix.size() > opts.max_exact_candidates) {
        throw limit_error("exact search limited to " + std::to_string(opts.max_exact_candidates) +
                          " candidates, election has " + std::to_string(matrix.size()));
    }
}

inline std::string format_ordering(const Ordering& ordering, const std::vector<std::string>& names,
                                   const std::string& sep = " > ") {
    std::string out;
    for (std::size_t r = 0; r < ordering.size(); ++r) {
        if (r) out += sep;
        out += names.at(ordering[r]);
    }
    return out;
}

/// Look up candidate names; throws on an unknown or repeated name.
inline Ordering ordering_from_names(const std::vector<std::string>& names, const std::vector<std::string>& wanted) {
    std::vector<std::size_t> perm;
    for (const auto& w : wanted) {
        auto it = std::find(names.begin(), names.end(), w);
        if (it == names.end()) throw input_error("unknown candidate '" + w + "'");
        perm.push_back(static_cast<std::size_t>(it - names.begin()));
    }
    if (perm.size() != names.size()) throw input_error("ordering must list every candidate exactly once");
    return Ordering(std::move(perm));
}

} // namespace pvote

#endif // PVOTE_CORE_HPP
