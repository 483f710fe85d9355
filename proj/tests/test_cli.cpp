#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include <pvote/cli.hpp>

using namespace pvote;
namespace fs = std::filesystem;

namespace {

const char* kE3 = "candidates: A B C\nmargins:\nA B -1\nA C 2\nB C -3\n";
const char* kE4a = "candidates: A B C D\nmargins:\nA B 1\nA C 11\nA D -7\nB C 5\nB D 3\nC D 9\n";

struct Outcome {
    int code;
    std::string out, err;
    json j() const { return json::parse(out); }
};

class Cli : public ::testing::Test {
  protected:
    fs::path dir;

    void SetUp() override {
        dir = fs::temp_directory_path() /
              ("pvote_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }

    std::string file(const std::string& name, const std::string& text) {
        auto p = dir / name;
        std::ofstream(p) << text;
        return p.string();
    }

    static Outcome call(std::vector<std::string> args) {
        std::ostringstream out, err;
        const int code = run(args, out, err);
        return {code, out.str(), err.str()};
    }
};

} // namespace

TEST_F(Cli, TallyRankedPairs) {
    auto r = call({"tally", "--input", file("e4a.txt", kE4a), "--method", "ranked-pairs", "--json"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto m = r.j()["methods"][0];
    EXPECT_EQ(m["ordering"], json({"A", "B", "C", "D"}));
    ASSERT_EQ(m["discarded"].size(), 1u);
    EXPECT_EQ(m["discarded"][0], json({"D", "A", 7}));
}

TEST_F(Cli, TallyPNormReportsUnitNorm) {
    auto r = call({"tally", "--input", file("e3.txt", kE3), "--method", "p-norm", "--p", "2", "--json"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto m = r.j()["methods"][0];
    EXPECT_EQ(m["ordering"], json({"A", "C", "B"}));
    EXPECT_EQ(m["objective"], 1.0);
    EXPECT_EQ(m["q_sum"], 12);
    EXPECT_EQ(m["exact"], true);
}

TEST_F(Cli, NonIntegerExponentIsMarkedInexact) {
    auto r = call({"tally", "--input", file("e3.txt", kE3), "--method", "p-norm", "--p", "1.5", "--json"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.j()["methods"][0]["exact"], false);
    auto low = call({"tally", "--input", file("e3.txt", kE3), "--method", "p-norm", "--p", "0.5", "--json"});
    EXPECT_EQ(low.j()["diagnostics"]["outside_guarantees"], true);
}

TEST_F(Cli, TallyKemenyAndLimit) {
    auto k = call({"tally", "--input", file("e3.txt", kE3), "--method", "kemeny", "--json"});
    ASSERT_EQ(k.code, 0);
    EXPECT_EQ(k.j()["methods"][0]["objective"], 4);
    auto l = call({"tally", "--input", file("e3.txt", kE3), "--method", "limit", "--json"});
    EXPECT_EQ(l.j()["methods"][0]["sign_vector"], "++-");
}

TEST_F(Cli, BallotsInput) {
    auto r = call({"tally", "--input", file("b.txt", "candidates: X Y Z\n4: X > Y > Z\n2: Z > X > Y\n1: Y > Z > X\n"), "--method",
                   "ranked-pairs"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("X > Y > Z"), std::string::npos) << r.out;
}

TEST_F(Cli, MissingFileExitsTwo) {
    auto r = call({"tally", "--input", (dir / "missing.txt").string(), "--method", "kemeny"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("missing.txt"), std::string::npos);
}

TEST_F(Cli, MalformedInputNamesLine) {
    auto r = call({"matrix", "--input", file("bad.txt", "candidates: A B\n1: A > B\n2: A > Q\n")});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
}

TEST_F(Cli, UnknownFlagExitsTwo) {
    EXPECT_EQ(call({"tally", "--input", file("e3.txt", kE3), "--method", "kemeny", "--bogus"}).code, 2);
    EXPECT_EQ(call({"tally", "--input", file("e3.txt", kE3), "--method", "borda"}).code, 2);
    EXPECT_EQ(call({}).code, 2);
}

TEST_F(Cli, InvalidMarginsExitTwoUnlessOverridden) {
    auto path = file("tie.txt", "candidates: A B C\nmargins:\nA B 2\nA C 2\nB C 1\n");
    auto r = call({"tally", "--input", path, "--method", "p-norm", "--p", "2"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("duplicate magnitude 2"), std::string::npos) << r.err;

    auto o = call({"tally", "--input", path, "--method", "p-norm", "--p", "2", "--allow-ties", "--json"});
    ASSERT_EQ(o.code, 0) << o.err;
    auto j = o.j();
    EXPECT_EQ(j["diagnostics"]["valid"], false);
    EXPECT_EQ(j["diagnostics"]["tie_break_override"], true);
    EXPECT_EQ(j["methods"][0]["outside_guarantees"], true);

    auto h = call({"tally", "--input", path, "--method", "ranked-pairs", "--allow-ties"});
    EXPECT_NE(h.out.find("override"), std::string::npos) << h.out;
}

TEST_F(Cli, SizeCapExitsOne) {
    std::string text = "candidates: A B C D E F G H I J K L\nmargins:\n";
    int v = 1;
    for (char a = 'A'; a <= 'L'; ++a)
        for (char b = a + 1; b <= 'L'; ++b) text += std::string(1, a) + " " + b + " " + std::to_string(v++) + "\n";
    auto path = file("big.txt", text);
    EXPECT_EQ(call({"tally", "--input", path, "--method", "kemeny"}).code, 1);
    EXPECT_EQ(call({"tally", "--input", path, "--method", "ranked-pairs"}).code, 0);
    EXPECT_EQ(call({"tally", "--input", path, "--method", "kemeny", "--max-candidates", "5"}).code, 1);
}

TEST_F(Cli, CompareTableForThreeCandidates) {
    auto r = call({"compare", "--input", file("e3.txt", kE3), "--p-list", "1,2,3", "--json"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = r.j();
    ASSERT_EQ(j["table"]["rows"].size(), 6u);
    std::map<std::string, std::int64_t> q1;
    for (const auto& row : j["table"]["rows"]) {
        std::string key;
        for (const auto& n : row["ordering"]) key += n.get<std::string>();
        q1[key] = row["q_sums"][0].get<std::int64_t>();
    }
    EXPECT_EQ(q1, (std::map<std::string, std::int64_t>{
                      {"ABC", -2}, {"ACB", 4}, {"BAC", 0}, {"BCA", -4}, {"CAB", 0}, {"CBA", 2}}));
    EXPECT_EQ(j["convergence"]["cdp_threshold"], 2);
    EXPECT_EQ(j["convergence"]["agrees"], true);
    // ranked-pairs, kemeny, three p-norms, limit
    EXPECT_EQ(j["methods"].size(), 6u);
}

TEST_F(Cli, ConvergeReport) {
    auto r = call({"converge", "--input", file("e4a.txt", kE4a), "--max-p", "10", "--threads", "3", "--json"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto c = r.j()["convergence"];
    EXPECT_EQ(c["cdp_threshold"], 3);
    EXPECT_EQ(c["agrees"], true);
    EXPECT_NEAR(c["p_star_bound"].get<double>(), 18.7992, 1e-4);
    EXPECT_EQ(c["trace"].size(), 10u);
    EXPECT_EQ(c["trace"][9]["q_sum"], 29151558428);

    auto one = call({"converge", "--input", file("e4a.txt", kE4a), "--max-p", "10", "--json"});
    EXPECT_EQ(one.out, r.out);
}

TEST_F(Cli, HugeQSumsSerializeAsStrings) {
    auto r = call({"converge", "--input", file("e4a.txt", kE4a), "--max-p", "30", "--json"});
    ASSERT_EQ(r.code, 0);
    auto q = r.j()["convergence"]["trace"][29]["q_sum"];
    EXPECT_TRUE(q.is_string());
    EXPECT_EQ(report_from_json(r.j()).convergence->trace[29].q_sum, BigInt(q.get<std::string>()));
}

TEST_F(Cli, JsonRoundTripIsIdentical) {
    for (auto args : std::vector<std::vector<std::string>>{
             {"compare", "--input", file("e3.txt", kE3), "--json"},
             {"compare", "--input", file("e4a.txt", kE4a), "--p-list", "1,2.5,3", "--json"},
             {"converge", "--input", file("e4a.txt", kE4a), "--max-p", "25", "--json"},
             {"tally", "--input", file("e4a.txt", kE4a), "--method", "ranked-pairs", "--json"}}) {
        auto r = call(args);
        ASSERT_EQ(r.code, 0) << r.err;
        auto back = format_report(report_from_json(json::parse(r.out)), ReportFormat::json);
        EXPECT_EQ(back, r.out);
    }
}

TEST_F(Cli, EmptyMethodListGivesDiagnosticsOnly) {
    Report rep;
    rep.candidates = {"A", "B"};
    rep.margins = {{0, 1, 3}};
    auto j = json::parse(format_report(rep, ReportFormat::json));
    EXPECT_TRUE(j["methods"].empty());
    EXPECT_TRUE(j["diagnostics"]["valid"].get<bool>());
    EXPECT_NE(format_report(rep, ReportFormat::human).find("diagnostics"), std::string::npos);
}

TEST_F(Cli, HumanReportCarriesJsonNumbers) {
    auto h = call({"compare", "--input", file("e3.txt", kE3), "--p-list", "2"});
    ASSERT_EQ(h.code, 0);
    for (const char* s : {"3.16227766017", "3.60555127546", "A > C > B", "12"})
        EXPECT_NE(h.out.find(s), std::string::npos) << s << "\n" << h.out;
}

TEST_F(Cli, MatrixCommand) {
    auto r = call({"matrix", "--input", file("e3.txt", kE3), "--json"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.j()["margins"], json::parse("[[0,1,-1],[0,2,2],[1,2,-3]]"));
}

TEST_F(Cli, Simulate) {
    auto r = call({"simulate", "--candidates", "3", "--voters", "101", "--trials", "200", "--seed", "4", "--json"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = r.j();
    EXPECT_EQ(j["trials"], 200);
    auto t = call({"simulate", "--candidates", "3", "--voters", "101", "--trials", "200", "--seed", "4", "--threads",
                   "4", "--json"});
    EXPECT_EQ(t.out, r.out);
    EXPECT_EQ(call({"simulate", "--candidates", "3", "--voters", "100", "--trials", "2", "--seed", "1"}).code, 2);
}

TEST_F(Cli, BinaryRuns) {
    auto path = file("e4a.txt", kE4a);
    auto outp = dir / "out.json";
    const std::string cmd = std::string("\"") + PVOTE_CLI_PATH + "\" tally --input \"" + path +
                            "\" --method ranked-pairs --json > \"" + outp.string() + "\"";
    ASSERT_EQ(std::system(cmd.c_str()), 0);
    std::ifstream in(outp);
    auto j = json::parse(in);
    EXPECT_EQ(j["methods"][0]["ordering"], json({"A", "B", "C", "D"}));
}
