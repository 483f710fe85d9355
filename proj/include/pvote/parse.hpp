#ifndef PVOTE_PARSE_HPP
#define PVOTE_PARSE_HPP

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "core.hpp"

namespace pvote {

/// Syntax or content error in an election file; `line()` is 1-based, 0 when not tied to a line.
class parse_error : public input_error {
  public:
    parse_error(std::size_t line, const std::string& what)
        : input_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    std::size_t line() const { return line_; }

  private:
    std::size_t line_;
};

using ParsedElection = std::variant<ElectionProfile, MarginMatrix>;

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto* ws = " \t\r\f\v";
    auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_ws(std::string_view s) {
    std::vector<std::string> out;
    std::istringstream in{std::string(s)};
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

template <class Int>
bool parse_int(std::string_view s, Int& out) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size() && !s.empty();
}

inline std::size_t lookup(const std::vector<std::string>& names, std::string_view name, std::size_t line) {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return i;
    throw parse_error(line, "unknown candidate '" + std::string(name) + "'");
}

} // namespace detail

/// Parse either the ballots form or the margins form; candidates keep their declaration order.
///
///   candidates: A B C            candidates: A B C
///   2: A > B > C                 margins:
///   1: C > B > A                 A B -1
///                                A C 2
///                                B C -3
///
/// `#` starts a comment, blank lines are ignored. Pairs not declared in the margins form are zero.
inline ParsedElection parse_election(std::string_view text) {
    std::vector<std::string> names;
    bool have_header = false;
    bool margins_mode = false;
    std::vector<Ballot> ballots;
    std::vector<std::tuple<std::size_t, std::size_t, Margin>> pairs;
    std::vector<std::size_t> declared_at; // line of each declaration in `pairs`

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        auto raw = text.substr(pos, nl - pos);
        pos = nl + 1;
        ++line_no;

        if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
        auto line = detail::trim(raw);
        if (line.empty()) continue;

        if (!have_header) {
            constexpr std::string_view key = "candidates:";
            if (line.substr(0, key.size()) != key) throw parse_error(line_no, "expected 'candidates:' header");
            names = detail::split_ws(line.substr(key.size()));
            if (names.empty()) throw parse_error(line_no, "no candidates declared");
            for (std::size_t i = 0; i < names.size(); ++i) {
                if (names[i].find_first_of(">:") != std::string::npos)
                    throw parse_error(line_no, "candidate name '" + names[i] + "' contains '>' or ':'");
                for (std::size_t j = 0; j < i; ++j)
                    if (names[j] == names[i]) throw parse_error(line_no, "duplicate candidate '" + names[i] + "'");
            }
            have_header = true;
            continue;
        }

        if (line == "margins:") {
            if (margins_mode) throw parse_error(line_no, "repeated 'margins:' section");
            if (!ballots.empty()) throw parse_error(line_no, "cannot mix ballots and margins");
            margins_mode = true;
            continue;
        }

        if (margins_mode) {
            auto toks = detail::split_ws(line);
            if (toks.size() != 3) throw parse_error(line_no, "expected '<name> <name> <integer>'");
            auto i = detail::lookup(names, toks[0], line_no);
            auto j = detail::lookup(names, toks[1], line_no);
            if (i == j) throw parse_error(line_no, "margin of a candidate against itself");
            Margin v{};
            if (!detail::parse_int(toks[2], v)) throw parse_error(line_no, "margin '" + toks[2] + "' is not an integer");
            for (std::size_t k = 0; k < pairs.size(); ++k) {
                auto [a, b, prev] = pairs[k];
                if ((a == i && b == j) || (a == j && b == i)) {
                    const Margin same_orientation = (a == i) ? prev : -prev;
                    throw parse_error(line_no, std::string(same_orientation == v ? "repeated" : "conflicting") +
                                                   " margin for " + toks[0] + "," + toks[1] +
                                                   " (first declared on line " + std::to_string(declared_at[k]) +
                                                   ")");
                }
            }
            pairs.emplace_back(i, j, v);
            declared_at.push_back(line_no);
            continue;
        }

        auto colon = line.find(':');
        if (colon == std::string_view::npos) throw parse_error(line_no, "expected '<count>: <ranking>'");
        auto count_text = detail::trim(line.substr(0, colon));
        std::int64_t count{};
        if (!detail::parse_int(count_text, count))
            throw parse_error(line_no, "ballot count '" + std::string(count_text) + "' is not an integer");
        if (count <= 0) throw parse_error(line_no, "ballot count must be positive");

        Ballot ballot;
        ballot.count = static_cast<std::uint64_t>(count);
        std::vector<bool> seen(names.size(), false);
        auto rest = line.substr(colon + 1);
        std::size_t p = 0;
        while (p <= rest.size()) {
            auto gt = rest.find('>', p);
            if (gt == std::string_view::npos) gt = rest.size();
            auto name = detail::trim(rest.substr(p, gt - p));
            p = gt + 1;
            if (name.empty()) throw parse_error(line_no, "empty name in ranking");
            if (name.find_first_of(" \t=,") != std::string_view::npos)
                throw parse_error(line_no, "malformed ranking entry '" + std::string(name) + "' (ties are not supported)");
            auto idx = detail::lookup(names, name, line_no);
            if (seen[idx]) throw parse_error(line_no, "candidate '" + std::string(name) + "' ranked twice");
            seen[idx] = true;
            ballot.ranking.push_back(idx);
        }
        if (ballot.ranking.size() != names.size())
            throw parse_error(line_no, "ranking must list every candidate (truncated ballots are not supported)");
        ballots.push_back(std::move(ballot));
    }

    if (!have_header) throw parse_error(0, "empty document: missing 'candidates:' header");
    if (margins_mode) return MarginMatrix::from_pairs(names, pairs);
    if (ballots.empty()) throw parse_error(0, "no ballots or margins given");
    return ElectionProfile(make_candidates(names), std::move(ballots));
}

inline ParsedElection load_election(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot open '" + path + "': file not found or unreadable");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_election(buf.str());
}

/// Margins of either parsed form.
inline MarginMatrix to_margins(const ParsedElection& parsed) {
    if (auto* p = std::get_if<ElectionProfile>(&parsed)) return margin_matrix(*p);
    return std::get<MarginMatrix>(parsed);
}

/// Margins form text for a matrix (upper triangle, declaration order).
inline std::string write_margins(const MarginMatrix& m) {
    std::string out = "candidates:";
    for (const auto& n : m.names()) out += " " + n;
    out += "\nmargins:\n";
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i + 1; j < m.size(); ++j)
            out += m.name(i) + " " + m.name(j) + " " + std::to_string(m.at(i, j)) + "\n";
    return out;
}

} // namespace pvote

#endif // PVOTE_PARSE_HPP
