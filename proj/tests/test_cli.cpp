// End-to-end checks of the command-line driver: output formats, round-trips
// through the verifier, exit codes, stdin handling, and the bench CSV.
#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "test_util.hpp"

using namespace cftest;

namespace {

struct CmdResult {
    std::string out;
    int code = -1;
};

// Runs a shell command, capturing stdout; stderr is dropped unless merged.
CmdResult run_cmd(const std::string& cmd, bool merge_stderr = false) {
    std::string full = cmd + (merge_stderr ? " 2>&1" : " 2>/dev/null");
    FILE* pipe = popen(full.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CmdResult r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string cli() { return CHROMAFLUX_CLI_PATH; }

std::string temp_file(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() /
               ("chromaflux-cli-test-" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    return (dir / name).string();
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

std::vector<int> colors_from_text(const Instance& inst, const std::string& text) {
    std::istringstream in(text);
    auto by_id = parse_assignment_file(in);
    std::vector<int> colors(inst.num_edges(), 0);
    for (const auto& [id, c] : by_id) {
        auto e = inst.edge_index(id);
        REQUIRE(e.has_value());
        colors[*e] = c;
    }
    return colors;
}

std::vector<std::vector<int>> rounds_from_text(const Instance& inst, const std::string& text) {
    std::istringstream in(text);
    auto by_id = parse_schedule_file(in);
    std::vector<std::vector<int>> rounds;
    for (const auto& round_ids : by_id) {
        rounds.emplace_back();
        for (const auto& id : round_ids) {
            auto e = inst.edge_index(id);
            REQUIRE(e.has_value());
            rounds.back().push_back(*e);
        }
    }
    return rounds;
}

}  // namespace

TEST_CASE("assign emits a verifiable optimal coloring for the triangle") {
    auto inst = load_fixture("triangle-k3.txt");
    auto r = run_cmd(cli() + " assign --algo balanced -k 3 " + fixture_path("triangle-k3.txt"));
    REQUIRE(r.code == 0);
    auto colors = colors_from_text(inst, r.out);
    REQUIRE(validate_assignment(inst, colors).empty());
    CHECK(conflict_report(inst, colors).total == 6);
}

TEST_CASE("assign greedy reads from stdin when asked") {
    auto inst = load_fixture("path2-k2.txt");
    auto r = run_cmd(cli() + " assign --algo greedy -k 2 - < " + fixture_path("path2-k2.txt"));
    REQUIRE(r.code == 0);
    auto colors = colors_from_text(inst, r.out);
    CHECK(conflict_report(inst, colors).total == 4);
}

TEST_CASE("assign clustered handles two-level instances") {
    auto inst = load_fixture("clustered-hub.txt");
    auto r = run_cmd(cli() + " assign --algo clustered -k 2 " + fixture_path("clustered-hub.txt"));
    REQUIRE(r.code == 0);
    auto colors = colors_from_text(inst, r.out);
    REQUIRE(validate_assignment(inst, colors).empty());
    CHECK(conflict_report(inst, colors).total == 16);
}

TEST_CASE("the balancedness audit is printed on request") {
    auto r = run_cmd(cli() + " assign --algo balanced -k 2 --check-balanced " +
                         fixture_path("star14-k2.txt"),
                     /*merge_stderr=*/true);
    REQUIRE(r.code == 0);
    CHECK(r.out.find("balance hub") != std::string::npos);
    CHECK(r.out.find("UNBALANCED") == std::string::npos);
    CHECK(r.out.find("summary command=assign") != std::string::npos);
}

TEST_CASE("migrate even produces an optimal two-round schedule for K4") {
    auto inst = load_fixture("k4-c2.txt");
    auto r = run_cmd(cli() + " migrate --algo even " + fixture_path("k4-c2.txt"));
    REQUIRE(r.code == 0);
    auto rounds = rounds_from_text(inst, r.out);
    REQUIRE(validate_schedule(inst, rounds).empty());
    CHECK(rounds.size() == 2);
}

TEST_CASE("migrate general schedules the unit-constraint triangle in 3 rounds") {
    auto inst = load_fixture("triangle-c1.txt");
    auto out_path = temp_file("triangle-c1.rounds");
    auto trace_path = temp_file("triangle-c1.trace");
    auto r = run_cmd(cli() + " migrate --algo general --strict --trace " + trace_path + " -o " +
                     out_path + " " + fixture_path("triangle-c1.txt"));
    REQUIRE(r.code == 0);
    std::ifstream sched(out_path);
    std::stringstream buf;
    buf << sched.rdbuf();
    auto rounds = rounds_from_text(inst, buf.str());
    REQUIRE(validate_schedule(inst, rounds).empty());
    CHECK(rounds.size() == 3);

    std::ifstream trace(trace_path);
    std::stringstream tbuf;
    tbuf << trace.rdbuf();
    CHECK(tbuf.str().find("palette initial q=2") != std::string::npos);
    CHECK(tbuf.str().find("rounds=3") != std::string::npos);
}

TEST_CASE("migrate even --explain narrates the padded construction") {
    auto r = run_cmd(cli() + " migrate --algo even --explain " +
                         fixture_path("single-edge-c2.txt"),
                     /*merge_stderr=*/true);
    REQUIRE(r.code == 0);
    CHECK(r.out.find("explain delta'=1") != std::string::npos);
    CHECK(r.out.find("explain dummy u v") != std::string::npos);
    CHECK(r.out.find("explain matching 1") != std::string::npos);
}

TEST_CASE("the strict environment switch reaches the general scheduler") {
    auto r = run_cmd("CHROMAFLUX_STRICT=1 " + cli() + " migrate --algo general " +
                         fixture_path("triangle-c1.txt"),
                     /*merge_stderr=*/true);
    REQUIRE(r.code == 0);
    CHECK(r.out.find("strict=1") != std::string::npos);
}

TEST_CASE("verify accepts its two files in either order") {
    auto colors_path = temp_file("triangle-k3.colors");
    auto r0 = run_cmd(cli() + " assign --algo balanced -k 3 -o " + colors_path + " " +
                      fixture_path("triangle-k3.txt"));
    REQUIRE(r0.code == 0);

    auto fwd = run_cmd(cli() + " verify " + fixture_path("triangle-k3.txt") + " " + colors_path);
    CHECK(fwd.code == 0);
    CHECK(fwd.out == "ok CF_G=6\n");
    auto rev = run_cmd(cli() + " verify " + colors_path + " " + fixture_path("triangle-k3.txt"));
    CHECK(rev.code == 0);
    CHECK(rev.out == "ok CF_G=6\n");
}

TEST_CASE("verify checks schedules and reports violations") {
    auto rounds_path = temp_file("k4-c2.rounds");
    auto r0 = run_cmd(cli() + " migrate --algo even -o " + rounds_path + " " +
                      fixture_path("k4-c2.txt"));
    REQUIRE(r0.code == 0);
    auto ok = run_cmd(cli() + " verify " + fixture_path("k4-c2.txt") + " " + rounds_path);
    CHECK(ok.code == 0);
    CHECK(ok.out == "ok rounds=2\n");

    // Cram every edge into one round: four transfers at a 2-constraint node.
    auto bad_path = temp_file("k4-c2.bad-rounds");
    {
        std::ofstream bad(bad_path);
        bad << "round 1 ab ac ad bc bd cd\n";
    }
    auto bad = run_cmd(cli() + " verify " + fixture_path("k4-c2.txt") + " " + bad_path);
    CHECK(bad.code == 2);
    CHECK(bad.out.find("violation") != std::string::npos);
}

TEST_CASE("verify flags colors outside the channel range") {
    auto bad_path = temp_file("triangle.bad-colors");
    {
        std::ofstream bad(bad_path);
        bad << "color 1 5\ncolor 2 1\ncolor 3 1\n";
    }
    auto r = run_cmd(cli() + " verify " + fixture_path("triangle.txt") + " " + bad_path);
    CHECK(r.code == 2);
    CHECK(r.out.find("violation") != std::string::npos);
}

TEST_CASE("verify rejects ambiguous file pairs") {
    auto two_instances = run_cmd(cli() + " verify " + fixture_path("triangle.txt") + " " +
                                 fixture_path("path2-k2.txt"));
    CHECK(two_instances.code == 2);
}

TEST_CASE("bounds prints the channel quantities") {
    auto r = run_cmd(cli() + " bounds " + fixture_path("path2-k2.txt"));
    REQUIRE(r.code == 0);
    auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 4);
    CHECK(lines[0].rfind("instance path2-k2 digest ", 0) == 0);
    CHECK(lines[1] == "kind channel");
    CHECK(lines[2] == "homogeneous_lb 3");
    CHECK(lines[3] == "balanced_local_lb 4");

    auto mixed = run_cmd(cli() + " bounds " + fixture_path("clustered-path.txt"));
    REQUIRE(mixed.code == 0);
    auto mixed_lines = lines_of(mixed.out);
    REQUIRE(mixed_lines.size() == 3);
    CHECK(mixed_lines[2] == "conflict_lb 4");
}

TEST_CASE("bounds prints the migration quantities") {
    auto r = run_cmd(cli() + " bounds " + fixture_path("triangle-c1.txt"));
    REQUIRE(r.code == 0);
    auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 4);
    CHECK(lines[1] == "kind migration");
    CHECK(lines[2] == "lb1 2");
    CHECK(lines[3] == "lb2 3 exact");
}

TEST_CASE("the conflict oracle prints the optimum and a witness") {
    auto inst = load_fixture("path2-k2.txt");
    auto r = run_cmd(cli() + " oracle conflicts " + fixture_path("path2-k2.txt"));
    REQUIRE(r.code == 0);
    auto lines = lines_of(r.out);
    REQUIRE(lines.size() >= 2);
    CHECK(lines[0] == "optimum 4");
    std::string witness_text;
    for (std::size_t i = 1; i < lines.size(); ++i) witness_text += lines[i] + "\n";
    auto colors = colors_from_text(inst, witness_text);
    CHECK(conflict_report(inst, colors).total == 4);
}

TEST_CASE("the rounds oracle prints the optimum and a witness") {
    auto inst = load_fixture("triangle-c1.txt");
    auto r = run_cmd(cli() + " oracle rounds " + fixture_path("triangle-c1.txt"));
    REQUIRE(r.code == 0);
    auto lines = lines_of(r.out);
    REQUIRE(!lines.empty());
    CHECK(lines[0] == "optimum 3");
    std::string witness_text;
    for (std::size_t i = 1; i < lines.size(); ++i) witness_text += lines[i] + "\n";
    auto rounds = rounds_from_text(inst, witness_text);
    CHECK(validate_schedule(inst, rounds).empty());
    CHECK(rounds.size() == 3);
}

TEST_CASE("the oracle refuses instances above its size guard") {
    auto r = run_cmd(cli() + " oracle rounds --max-edges 3 " + fixture_path("parallel4-c1.txt"));
    CHECK(r.code == 2);
    CHECK(r.out == "status too-large\n");
}

TEST_CASE("bench sweeps the corpus and emits one CSV row per run") {
    auto r = run_cmd(cli() + " bench " + std::string(CHROMAFLUX_FIXTURE_DIR) + " --oracle");
    REQUIRE(r.code == 0);
    auto lines = lines_of(r.out);
    REQUIRE(lines.size() > 1);
    CHECK(lines[0] == csv_header());
    auto commas = [](const std::string& s) {
        return std::count(s.begin(), s.end(), ',');
    };
    long long header_commas = commas(lines[0]);
    bool saw_greedy = false, saw_even = false, saw_general = false, saw_clustered = false,
         saw_ratio_one = false;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        CHECK(commas(lines[i]) == header_commas);
        saw_greedy |= lines[i].find(",greedy,") != std::string::npos;
        saw_even |= lines[i].find(",even,") != std::string::npos;
        saw_general |= lines[i].find(",general,") != std::string::npos;
        saw_clustered |= lines[i].find(",clustered,") != std::string::npos;
        saw_ratio_one |= lines[i].find(",1.0000,") != std::string::npos;
    }
    CHECK(saw_greedy);
    CHECK(saw_even);
    CHECK(saw_general);
    CHECK(saw_clustered);
    CHECK(saw_ratio_one);  // oracle columns present on the tiny fixtures
}

TEST_CASE("usage errors exit with the input-error code") {
    CHECK(run_cmd(cli() + " assign --algo greedy -k 2 /no/such/file.txt").code == 2);
    CHECK(run_cmd(cli() + " assign --bogus-flag").code == 2);
    CHECK(run_cmd(cli()).code == 2);  // a subcommand is required
    CHECK(run_cmd(cli() + " assign --algo nonsense -k 2 " + fixture_path("triangle-k3.txt")).code ==
          2);
    CHECK(run_cmd(cli() + " migrate --algo even " + fixture_path("triangle.txt")).code == 2);
    CHECK(run_cmd(cli() + " assign --algo greedy -k 2 " + fixture_path("triangle-c1.txt")).code ==
          2);
    CHECK(run_cmd(cli() + " --help").code == 0);
}
