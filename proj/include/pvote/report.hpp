#ifndef PVOTE_REPORT_HPP
#define PVOTE_REPORT_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include <json.hpp>

#include "bigint.hpp"
#include "core.hpp"

namespace pvote {

using json = nlohmann::json;

/// Round to 12 significant digits, the precision reports carry for norms and bounds.
inline double round12(double x) {
    if (!std::isfinite(x)) return x;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

inline std::string fmt12(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

// Exact integers go out as JSON integers when they fit in 64 bits, otherwise as decimal strings.
inline json bigint_to_json(const BigInt& x) {
    if (fits_int64(x)) return json(x.convert_to<std::int64_t>());
    return json(x.str());
}

inline BigInt bigint_from_json(const json& j) {
    if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
    if (j.is_number_unsigned()) return BigInt(j.get<std::uint64_t>());
    if (j.is_string()) return BigInt(j.get<std::string>());
    throw input_error("expected an integer in report");
}

/// null, an exact integer, or a decimal.
using Objective = std::variant<std::monostate, BigInt, double>;

inline json objective_to_json(const Objective& o) {
    if (auto* b = std::get_if<BigInt>(&o)) return bigint_to_json(*b);
    if (auto* d = std::get_if<double>(&o)) return json(*d);
    return json(nullptr);
}

inline Objective objective_from_json(const json& j) {
    if (j.is_null()) return std::monostate{};
    if (j.is_number_float()) return j.get<double>();
    return bigint_from_json(j);
}

inline std::string objective_text(const Objective& o) {
    if (auto* b = std::get_if<BigInt>(&o)) return b->str();
    if (auto* d = std::get_if<double>(&o)) return fmt12(*d);
    return "-";
}

struct DiscardedPair {
    std::string winner, loser;
    Margin magnitude = 0;
    friend bool operator==(const DiscardedPair&, const DiscardedPair&) = default;
};

struct MethodEntry {
    std::string name;
    std::optional<double> p;
    std::vector<std::string> ordering;
    Objective objective;
    std::uint64_t multiplicity = 1;
    bool exact = true;
    std::optional<BigInt> q_sum;
    std::optional<std::string> sign_vector;
    std::vector<DiscardedPair> discarded;
    bool outside_guarantees = false;
};

struct TraceRow {
    unsigned p = 0;
    std::vector<std::string> ordering;
    BigInt q_sum = 0;
    std::uint64_t multiplicity = 1;
};

struct ConvergenceSummary {
    double p_star_bound = 1.0;
    bool p_star_defined = true;
    unsigned cdp_threshold = 0;
    std::optional<unsigned> stabilized_at;
    bool agrees = false;
    unsigned p_max = 0;
    std::vector<unsigned> flips;
    std::vector<TraceRow> trace;
};

struct TableRow {
    std::vector<std::string> ordering;
    std::vector<std::optional<BigInt>> q_sums; // null where p is not an integer
    std::vector<double> p_norms;
};

/// Every ordering scored at each exponent of `p_list`.
struct OrderingTable {
    std::vector<double> p_list;
    std::vector<TableRow> rows;
};

struct Diagnostics {
    bool valid = true;
    std::vector<std::string> violations;
    bool tie_break_override = false;
    bool outside_guarantees = false;
    std::vector<std::string> notes;
};

struct Report {
    std::vector<std::string> candidates;
    std::vector<std::tuple<std::size_t, std::size_t, Margin>> margins; // upper triangle
    std::vector<MethodEntry> methods;
    std::optional<ConvergenceSummary> convergence;
    std::optional<OrderingTable> table;
    Diagnostics diagnostics;
};

inline json to_json(const Report& r) {
    json j;
    j["candidates"] = r.candidates;
    j["margins"] = json::array();
    for (auto [a, b, v] : r.margins) j["margins"].push_back({a, b, v});

    j["methods"] = json::array();
    for (const auto& m : r.methods) {
        json e;
        e["name"] = m.name;
        e["p"] = m.p ? json(*m.p) : json(nullptr);
        e["ordering"] = m.ordering;
        e["objective"] = objective_to_json(m.objective);
        e["multiplicity"] = m.multiplicity;
        e["exact"] = m.exact;
        if (m.q_sum) e["q_sum"] = bigint_to_json(*m.q_sum);
        if (m.sign_vector) e["sign_vector"] = *m.sign_vector;
        if (!m.discarded.empty()) {
            e["discarded"] = json::array();
            for (const auto& d : m.discarded) e["discarded"].push_back({d.winner, d.loser, d.magnitude});
        }
        e["outside_guarantees"] = m.outside_guarantees;
        j["methods"].push_back(std::move(e));
    }

    if (r.convergence) {
        const auto& c = *r.convergence;
        json e;
        e["p_star_bound"] = c.p_star_bound;
        e["p_star_defined"] = c.p_star_defined;
        e["cdp_threshold"] = c.cdp_threshold;
        e["stabilized_at"] = c.stabilized_at ? json(*c.stabilized_at) : json(nullptr);
        e["agrees"] = c.agrees;
        e["p_max"] = c.p_max;
        e["flips"] = c.flips;
        e["trace"] = json::array();
        for (const auto& t : c.trace)
            e["trace"].push_back(
                {{"p", t.p}, {"ordering", t.ordering}, {"q_sum", bigint_to_json(t.q_sum)}, {"multiplicity", t.multiplicity}});
        j["convergence"] = std::move(e);
    } else {
        j["convergence"] = nullptr;
    }

    if (r.table) {
        json t;
        t["p_list"] = r.table->p_list;
        t["rows"] = json::array();
        for (const auto& row : r.table->rows) {
            json q = json::array();
            for (const auto& v : row.q_sums) q.push_back(v ? bigint_to_json(*v) : json(nullptr));
            t["rows"].push_back({{"ordering", row.ordering}, {"q_sums", q}, {"p_norms", row.p_norms}});
        }
        j["table"] = std::move(t);
    }

    const auto& d = r.diagnostics;
    j["diagnostics"] = {{"valid", d.valid},
                        {"violations", d.violations},
                        {"tie_break_override", d.tie_break_override},
                        {"outside_guarantees", d.outside_guarantees},
                        {"notes", d.notes}};
    return j;
}

inline Report report_from_json(const json& j) {
    Report r;
    r.candidates = j.at("candidates").get<std::vector<std::string>>();
    for (const auto& t : j.at("margins"))
        r.margins.emplace_back(t.at(0).get<std::size_t>(), t.at(1).get<std::size_t>(), t.at(2).get<Margin>());

    for (const auto& e : j.at("methods")) {
        MethodEntry m;
        m.name = e.at("name").get<std::string>();
        if (!e.at("p").is_null()) m.p = e.at("p").get<double>();
        m.ordering = e.at("ordering").get<std::vector<std::string>>();
        m.objective = objective_from_json(e.at("objective"));
        m.multiplicity = e.at("multiplicity").get<std::uint64_t>();
        m.exact = e.at("exact").get<bool>();
        if (e.contains("q_sum")) m.q_sum = bigint_from_json(e.at("q_sum"));
        if (e.contains("sign_vector")) m.sign_vector = e.at("sign_vector").get<std::string>();
        if (e.contains("discarded"))
            for (const auto& d : e.at("discarded"))
                m.discarded.push_back({d.at(0).get<std::string>(), d.at(1).get<std::string>(), d.at(2).get<Margin>()});
        m.outside_guarantees = e.at("outside_guarantees").get<bool>();
        r.methods.push_back(std::move(m));
    }

    if (!j.at("convergence").is_null()) {
        const auto& e = j.at("convergence");
        ConvergenceSummary c;
        c.p_star_bound = e.at("p_star_bound").get<double>();
        c.p_star_defined = e.at("p_star_defined").get<bool>();
        c.cdp_threshold = e.at("cdp_threshold").get<unsigned>();
        if (!e.at("stabilized_at").is_null()) c.stabilized_at = e.at("stabilized_at").get<unsigned>();
        c.agrees = e.at("agrees").get<bool>();
        c.p_max = e.at("p_max").get<unsigned>();
        c.flips = e.at("flips").get<std::vector<unsigned>>();
        for (const auto& t : e.at("trace"))
            c.trace.push_back({t.at("p").get<unsigned>(), t.at("ordering").get<std::vector<std::string>>(),
                               bigint_from_json(t.at("q_sum")), t.at("multiplicity").get<std::uint64_t>()});
        r.convergence = std::move(c);
    }

    if (j.contains("table")) {
        OrderingTable t;
        t.p_list = j.at("table").at("p_list").get<std::vector<double>>();
        for (const auto& row : j.at("table").at("rows")) {
            TableRow tr;
            tr.ordering = row.at("ordering").get<std::vector<std::string>>();
            for (const auto& q : row.at("q_sums"))
                tr.q_sums.push_back(q.is_null() ? std::nullopt : std::optional<BigInt>(bigint_from_json(q)));
            tr.p_norms = row.at("p_norms").get<std::vector<double>>();
            t.rows.push_back(std::move(tr));
        }
        r.table = std::move(t);
    }

    const auto& d = j.at("diagnostics");
    r.diagnostics.valid = d.at("valid").get<bool>();
    r.diagnostics.violations = d.at("violations").get<std::vector<std::string>>();
    r.diagnostics.tie_break_override = d.at("tie_break_override").get<bool>();
    r.diagnostics.outside_guarantees = d.at("outside_guarantees").get<bool>();
    r.diagnostics.notes = d.at("notes").get<std::vector<std::string>>();
    return r;
}

enum class ReportFormat { human, json };

namespace detail {

inline std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
    return out;
}

// Left-aligned text table.
inline std::string render_table(const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width;
    for (const auto& row : rows)
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (width.size() <= c) width.push_back(0);
            width[c] = std::max(width[c], row[c].size());
        }
    std::string out;
    for (const auto& row : rows) {
        std::string line;
        for (std::size_t c = 0; c < row.size(); ++c) {
            line += row[c];
            if (c + 1 < row.size()) line += std::string(width[c] - row[c].size() + 2, ' ');
        }
        out += "  " + line + "\n";
    }
    return out;
}

inline std::string p_text(double p) { return fmt12(p); }

} // namespace detail

inline std::string format_report(const Report& r, ReportFormat mode) {
    if (mode == ReportFormat::json) return to_json(r).dump(2) + "\n";

    std::ostringstream out;
    out << "candidates: " << detail::join(r.candidates, " ") << "\n";

    if (!r.candidates.empty()) {
        // Upper triangle only, as in the margins file.
        const auto n = r.candidates.size();
        std::vector<std::vector<std::string>> grid(n + 1, std::vector<std::string>(n + 1));
        for (std::size_t i = 0; i < n; ++i) grid[0][i + 1] = grid[i + 1][0] = r.candidates[i];
        for (auto [a, b, v] : r.margins) grid[a + 1][b + 1] = std::to_string(v);
        out << "margins (row beats column by):\n" << detail::render_table(grid);
    }

    if (!r.methods.empty()) {
        std::vector<std::vector<std::string>> rows{{"method", "p", "ordering", "objective", "q_sum", "optima", "exact"}};
        for (const auto& m : r.methods) {
            rows.push_back({m.name, m.p ? detail::p_text(*m.p) : "-", detail::join(m.ordering, " > "),
                            objective_text(m.objective), m.q_sum ? m.q_sum->str() : "-",
                            std::to_string(m.multiplicity), m.exact ? "yes" : "no"});
        }
        out << "\nmethods:\n" << detail::render_table(rows);
        for (const auto& m : r.methods) {
            if (m.sign_vector) out << "  " << m.name << " sign vector (strongest margin first): " << *m.sign_vector << "\n";
            for (const auto& d : m.discarded)
                out << "  " << m.name << " discarded " << d.winner << " > " << d.loser << " (margin " << d.magnitude
                    << ")\n";
            if (m.outside_guarantees) out << "  " << m.name << ": outside the distinct-margin guarantees\n";
        }
    }

    if (r.convergence) {
        const auto& c = *r.convergence;
        out << "\nconvergence:\n";
        out << "  p* bound:             "
            << (c.p_star_defined ? detail::p_text(c.p_star_bound) : std::string("undefined (1)")) << "\n";
        out << "  dominance threshold:  " << c.cdp_threshold << "\n";
        out << "  stabilized at p:      " << (c.stabilized_at ? std::to_string(*c.stabilized_at) : "-") << "\n";
        out << "  agrees with ranked pairs above threshold: " << (c.agrees ? "yes" : "no") << "\n";
        if (!c.flips.empty()) {
            std::vector<std::string> f;
            for (auto p : c.flips) f.push_back(std::to_string(p));
            out << "  ordering changed at p: " << detail::join(f, ", ") << "\n";
        }
        if (!c.trace.empty()) {
            std::vector<std::vector<std::string>> rows{{"p", "p-ordering", "q_sum", "optima"}};
            for (const auto& t : c.trace)
                rows.push_back({std::to_string(t.p), detail::join(t.ordering, " > "), t.q_sum.str(),
                                std::to_string(t.multiplicity)});
            out << detail::render_table(rows);
        }
    }

    if (r.table) {
        std::vector<std::string> head{"ordering"};
        for (double p : r.table->p_list) {
            head.push_back("Q(p=" + detail::p_text(p) + ")");
            head.push_back("norm(p=" + detail::p_text(p) + ")");
        }
        std::vector<std::vector<std::string>> rows{head};
        for (const auto& row : r.table->rows) {
            std::vector<std::string> cells{detail::join(row.ordering, " > ")};
            for (std::size_t k = 0; k < r.table->p_list.size(); ++k) {
                cells.push_back(row.q_sums[k] ? row.q_sums[k]->str() : "-");
                cells.push_back(fmt12(row.p_norms[k]));
            }
            rows.push_back(std::move(cells));
        }
        out << "\norderings:\n" << detail::render_table(rows);
    }

    const auto& d = r.diagnostics;
    out << "\ndiagnostics:\n";
    out << "  margins distinct and nonzero: " << (d.valid ? "yes" : "no") << "\n";
    for (const auto& v : d.violations) out << "  violation: " << v << "\n";
    if (d.tie_break_override) out << "  tie-break override in effect\n";
    if (d.outside_guarantees) out << "  results are outside the distinct-margin guarantees\n";
    for (const auto& n : d.notes) out << "  note: " << n << "\n";
    return out.str();
}

} // namespace pvote

#endif // PVOTE_REPORT_HPP
