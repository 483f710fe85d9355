#ifndef PVOTE_CLI_HPP
#define PVOTE_CLI_HPP

#include <algorithm>
#include <iostream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "convergence.hpp"
#include "core.hpp"
#include "norms.hpp"
#include "parse.hpp"
#include "report.hpp"
#include "simulate.hpp"
#include "solvers.hpp"

namespace pvote {

namespace exit_code {
constexpr int ok = 0;
constexpr int limit = 1;
constexpr int invalid_input = 2;
} // namespace exit_code

// ---------------------------------------------------------------------------
// Report builders
// ---------------------------------------------------------------------------

inline std::vector<std::string> names_of(const MarginMatrix& m, const Ordering& o) {
    std::vector<std::string> out;
    for (auto c : o) out.push_back(m.name(c));
    return out;
}

inline Report base_report(const MarginMatrix& m, const SolveOptions& opts) {
    Report r;
    r.candidates = m.names();
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i + 1; j < m.size(); ++j) r.margins.emplace_back(i, j, m.at(i, j));
    auto verdict = validate_margins(m);
    r.diagnostics.valid = verdict.ok();
    r.diagnostics.violations = verdict.messages(m);
    r.diagnostics.tie_break_override = !verdict.ok() && opts.allow_ties;
    r.diagnostics.outside_guarantees = r.diagnostics.tie_break_override;
    return r;
}

inline MethodEntry ranked_pairs_entry(const MarginMatrix& m, const SolveOptions& opts) {
    auto rp = ranked_pairs_trace(m, opts);
    MethodEntry e;
    e.name = "ranked-pairs";
    e.ordering = names_of(m, rp.ordering);
    for (const auto& d : rp.graph.discarded) e.discarded.push_back({m.name(d.winner), m.name(d.loser), d.magnitude});
    e.multiplicity = 1;
    e.outside_guarantees = rp.tie_break_used;
    return e;
}

inline MethodEntry kemeny_entry(const MarginMatrix& m, const SolveOptions& opts) {
    auto k = kemeny(m, opts);
    MethodEntry e;
    e.name = "kemeny";
    e.ordering = names_of(m, k.ordering());
    e.objective = BigInt(k.score);
    e.multiplicity = k.multiplicity;
    e.outside_guarantees = k.tie_break_used;
    return e;
}

inline MethodEntry p_norm_entry(const MarginMatrix& m, const PExponent& p, const SolveOptions& opts) {
    auto r = p_ordering(m, p, opts);
    MethodEntry e;
    e.name = "p-norm";
    e.p = p.value();
    e.ordering = names_of(m, r.ordering());
    e.objective = round12(r.p_norm);
    e.multiplicity = r.multiplicity;
    e.exact = r.exact;
    if (r.q_sum.exact) e.q_sum = *r.q_sum.exact;
    e.outside_guarantees = r.outside_guarantees();
    return e;
}

inline MethodEntry limit_entry(const MarginMatrix& m, const SolveOptions& opts) {
    auto o = limit_ordering(m, opts);
    MethodEntry e;
    e.name = "limit";
    e.ordering = names_of(m, o);
    e.sign_vector = sign_vector(m, o).str();
    e.outside_guarantees = !validate_margins(m).ok();
    return e;
}

inline ConvergenceSummary summarize(const MarginMatrix& m, const ConvergenceReport& c, unsigned p_max) {
    ConvergenceSummary s;
    s.p_star_bound = round12(c.p_star_bound.value);
    s.p_star_defined = c.p_star_bound.defined;
    s.cdp_threshold = c.cdp_threshold;
    s.stabilized_at = c.stabilized_at;
    s.agrees = c.agrees;
    s.p_max = p_max;
    s.flips = c.flips;
    for (const auto& t : c.trace) s.trace.push_back({t.p, names_of(m, t.ordering()), t.q_sum, t.multiplicity});
    return s;
}

/// Every ordering with its Q-sum (integer p) and p-norm at each exponent.
inline OrderingTable ordering_table(const MarginMatrix& m, const std::vector<PExponent>& ps) {
    OrderingTable t;
    for (const auto& p : ps) t.p_list.push_back(p.value());
    std::vector<std::size_t> perm(m.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    do {
        Ordering o(perm);
        TableRow row;
        row.ordering = names_of(m, o);
        for (const auto& p : ps) {
            row.q_sums.push_back(p.is_integer() ? std::optional<BigInt>(*q_sum(m, o, p.as_integer()).exact)
                                                : std::nullopt);
            row.p_norms.push_back(round12(p_norm(m, o, p)));
        }
        t.rows.push_back(std::move(row));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return t;
}

inline std::vector<PExponent> parse_p_list(const std::string& text) {
    std::vector<PExponent> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(PExponent::parse(detail::trim(item)));
    if (out.empty()) throw input_error("empty --p-list");
    return out;
}

struct SimulationReport {
    SimulationConfig config;
    FrequencyEstimate estimate;
};

inline json to_json(const SimulationReport& s) {
    return {{"candidates", s.config.candidates},
            {"voters", s.config.voters},
            {"trials", s.config.trials},
            {"seed", s.config.seed},
            {"condorcet_winner_trials", s.estimate.hits},
            {"fraction", s.estimate.fraction},
            {"half_width_95", round12(s.estimate.half_width_95)}};
}

inline std::string format_simulation(const SimulationReport& s, ReportFormat mode) {
    if (mode == ReportFormat::json) return to_json(s).dump(2) + "\n";
    std::ostringstream out;
    out << "candidates:              " << s.config.candidates << "\n"
        << "voters per election:     " << s.config.voters << "\n"
        << "trials:                  " << s.config.trials << "\n"
        << "seed:                    " << s.config.seed << "\n"
        << "condorcet winner trials: " << s.estimate.hits << "\n"
        << "fraction:                " << fmt12(s.estimate.fraction) << " +/- " << fmt12(round12(s.estimate.half_width_95))
        << " (95%)\n";
    return out.str();
}

// ---------------------------------------------------------------------------
// Command line
// ---------------------------------------------------------------------------

/// Runs one subcommand; `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Ranked Pairs, Kemeny-Young and p-norm election orderings"};
    app.require_subcommand(1);

    std::string input;
    std::string method;
    std::string p_text = "1";
    std::string p_list = "1,2,3";
    bool as_json = false;
    bool allow_ties = false;
    std::size_t max_candidates = SolveOptions{}.max_exact_candidates;
    unsigned max_p = 0;
    unsigned threads = 1;
    SimulationConfig sim;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--input", input, "ballots or margins file")->required();
        sub->add_flag("--json", as_json, "emit the JSON report");
        sub->add_option("--max-candidates", max_candidates, "largest election the exact searches attempt");
    };

    auto* tally = app.add_subcommand("tally", "order the candidates by one method");
    add_common(tally);
    tally->add_option("--method", method, "ranked-pairs | kemeny | p-norm | limit")
        ->required()
        ->check(CLI::IsMember({"ranked-pairs", "kemeny", "p-norm", "limit"}));
    tally->add_option("--p", p_text, "exponent for p-norm (positive decimal)");
    tally->add_flag("--allow-ties", allow_ties, "break zero/repeated margins deterministically");

    auto* compare = app.add_subcommand("compare", "all methods side by side");
    add_common(compare);
    compare->add_option("--p-list", p_list, "comma-separated exponents");
    compare->add_flag("--allow-ties", allow_ties, "break zero/repeated margins deterministically");

    auto* converge = app.add_subcommand("converge", "p-orderings for p = 1..N against Ranked Pairs");
    add_common(converge);
    converge->add_option("--max-p", max_p, "largest exponent")->required()->check(CLI::PositiveNumber);
    converge->add_option("--threads", threads, "worker threads for the p sweep")->check(CLI::PositiveNumber);

    auto* simulate = app.add_subcommand("simulate", "Condorcet winner frequency under impartial culture");
    simulate->add_option("--candidates", sim.candidates)->required()->check(CLI::PositiveNumber);
    simulate->add_option("--voters", sim.voters)->required();
    simulate->add_option("--trials", sim.trials)->required()->check(CLI::PositiveNumber);
    simulate->add_option("--seed", sim.seed)->required();
    simulate->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
    simulate->add_flag("--json", as_json, "emit JSON");

    auto* matrix = app.add_subcommand("matrix", "print the margin matrix");
    matrix->add_option("--input", input, "ballots or margins file")->required();
    matrix->add_flag("--json", as_json, "emit JSON");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return exit_code::ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::invalid_input;
    }

    const auto mode = as_json ? ReportFormat::json : ReportFormat::human;
    SolveOptions opts;
    opts.allow_ties = allow_ties;
    opts.max_exact_candidates = max_candidates;

    try {
        if (simulate->parsed()) {
            SimulationReport rep{sim, condorcet_winner_frequency(sim, threads)};
            out << format_simulation(rep, mode);
            return exit_code::ok;
        }

        const auto parsed = load_election(input);
        const auto m = to_margins(parsed);
        auto report = base_report(m, opts);
        if (std::holds_alternative<ElectionProfile>(parsed))
            report.diagnostics.notes.push_back(
                "margins computed from " + std::to_string(std::get<ElectionProfile>(parsed).voter_count()) + " ballots");

        if (tally->parsed()) {
            if (method == "ranked-pairs") report.methods.push_back(ranked_pairs_entry(m, opts));
            else if (method == "kemeny") report.methods.push_back(kemeny_entry(m, opts));
            else if (method == "limit") report.methods.push_back(limit_entry(m, opts));
            else {
                const auto p = PExponent::parse(p_text);
                report.methods.push_back(p_norm_entry(m, p, opts));
                if (!p.is_integer()) report.diagnostics.notes.push_back("non-integer p: floating-point result");
                if (p.below_one()) {
                    report.diagnostics.outside_guarantees = true;
                    report.diagnostics.notes.push_back("p < 1 is outside the range covered by the guarantees");
                }
            }
            if (report.methods.back().multiplicity > 1)
                report.diagnostics.notes.push_back("optimum not unique; lexicographically least ordering shown");
        } else if (compare->parsed()) {
            const auto ps = parse_p_list(p_list);
            report.methods.push_back(ranked_pairs_entry(m, opts));
            report.methods.push_back(kemeny_entry(m, opts));
            for (const auto& p : ps) report.methods.push_back(p_norm_entry(m, p, opts));
            report.methods.push_back(limit_entry(m, opts));
            if (m.size() <= 6) report.table = ordering_table(m, ps);
            else report.diagnostics.notes.push_back("ordering table omitted above 6 candidates");
            if (report.diagnostics.valid) {
                const auto thr = cdp_threshold(m);
                report.convergence = summarize(m, convergence_profile(m, thr, opts), thr);
            } else {
                report.diagnostics.notes.push_back("convergence summary requires distinct nonzero margins");
            }
        } else if (converge->parsed()) {
            auto c = convergence_profile(m, max_p, opts, threads);
            report.methods.push_back(ranked_pairs_entry(m, opts));
            report.methods.push_back(limit_entry(m, opts));
            report.convergence = summarize(m, c, max_p);
            for (const auto& w : c.warnings) report.diagnostics.notes.push_back(w);
            if (!c.p_star_bound.defined) report.diagnostics.notes.push_back(c.p_star_bound.note);
        }
        out << format_report(report, mode);
        return exit_code::ok;
    } catch (const input_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::invalid_input;
    } catch (const limit_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::limit;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return exit_code::limit;
    }
}

inline int run(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

} // namespace pvote

#endif // PVOTE_CLI_HPP
