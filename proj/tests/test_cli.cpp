#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

namespace fs = std::filesystem;

struct run_result {
  int exit_code;
  std::string output;
};

// Runs the CLI through the shell; stderr is folded into the output unless
// quiet_stderr is set.
run_result run(const std::string& args, bool quiet_stderr = false) {
  const std::string cmd = std::string(PAIRCOVER_CLI_PATH) + " " + args +
                          (quiet_stderr ? " 2>/dev/null" : " 2>&1");
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

fs::path work_dir() {
  const auto dir = fs::temp_directory_path() / "paircover_cli_tests";
  fs::create_directories(dir);
  return dir;
}

std::string fixture(const std::string& name) {
  return std::string(FIXTURES_DIR) + "/" + name;
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("generate writes a design file and a summary") {
  const auto path = (work_dir() / "d60.txt").string();
  const auto res = run("generate --group-size 6 --groups 10 --out " + path);
  CHECK(res.exit_code == 0);
  CHECK(contains(res.output, "n: 60"));
  CHECK(contains(res.output, "blocks: 30"));
  CHECK(contains(res.output, "threshold: 6"));

  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "60 6 30");
  std::string first_block;
  std::getline(in, first_block);
  CHECK(first_block == "1 2 3 4 5 6 # base 1");
}

TEST_CASE("generate without --out streams the design to stdout") {
  const auto res = run("generate --group-size 2 --groups 4", /*quiet_stderr=*/true);
  CHECK(res.exit_code == 0);
  CHECK(res.output.substr(0, res.output.find('\n')) == "8 2 12");
}

TEST_CASE("generate rejects odd parameters with exit 2") {
  CHECK(run("generate --group-size 5 --groups 10").exit_code == 2);
  CHECK(run("generate --group-size 6 --groups 3").exit_code == 2);
  CHECK(run("generate --group-size 0 --groups 4").exit_code == 2);
}

TEST_CASE("verify --mode all holds on the published design") {
  const auto res = run("verify " + fixture("design60.txt") + " --subset-size 6 --mode all");
  CHECK(res.exit_code == 0);
  CHECK(contains(res.output, "method: exhaustive"));
  CHECK(contains(res.output, "method: graph"));
  CHECK(contains(res.output, "method: structural"));
  CHECK(contains(res.output, "scanned: 50063860"));
  CHECK(contains(res.output, "certificate_size: 5"));
  CHECK(contains(res.output, "agreement: yes"));
  CHECK_FALSE(contains(res.output, "FAILS"));
}

TEST_CASE("verify derives the subset size from structure when omitted") {
  const auto res = run("verify " + fixture("design60.txt") + " --mode structural");
  CHECK(res.exit_code == 0);
  CHECK(contains(res.output, "certified_threshold: 6"));
}

TEST_CASE("verify fails with a printed counterexample on a mutilated design") {
  // drop block 14 = {4,5,6,10,11,12} and the structure annotations
  const auto src = fixture("design60.txt");
  const auto dst = (work_dir() / "mutilated.txt").string();
  std::ifstream in(src);
  std::ofstream out(dst);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (lineno == 1) {
      out << "60 6 29\n";
      continue;
    }
    if (lineno == 15) continue;  // block 14 lives on line 15
    out << line.substr(0, line.find(" #")) << '\n';
  }
  out.close();

  const auto res = run("verify " + dst + " --subset-size 6 --mode exhaustive");
  CHECK(res.exit_code == 1);
  CHECK(contains(res.output, "outcome: FAILS"));
  CHECK(contains(res.output, "counterexample: 4 10 13 25 37 49"));

  const auto graph = run("verify " + dst + " --subset-size 6 --mode graph");
  CHECK(graph.exit_code == 1);

  // no structure annotations survive, so structural mode is an input error
  const auto structural = run("verify " + dst + " --subset-size 6 --mode structural");
  CHECK(structural.exit_code == 2);
}

TEST_CASE("verify at subset size 5 fails via the graph method") {
  const auto res = run("verify " + fixture("design60.txt") + " --subset-size 5 --mode graph");
  CHECK(res.exit_code == 1);
  CHECK(contains(res.output, "alpha: 5"));
  CHECK(contains(res.output, "counterexample: 1 13 25 37 49"));
}

TEST_CASE("verify reports undecided with exit 3 when the budget is tiny") {
  const auto path = (work_dir() / "c5.txt").string();
  std::ofstream(path) << "5 2 5\n1 2\n2 3\n3 4\n4 5\n1 5\n";
  const auto res = run("verify " + path + " --subset-size 3 --mode graph --budget 1");
  CHECK(res.exit_code == 3);
  CHECK(contains(res.output, "outcome: UNDECIDED"));
}

TEST_CASE("verify propagates file and usage errors as exit 2") {
  CHECK(run("verify /nonexistent/design.txt --subset-size 6").exit_code == 2);
  CHECK(run("verify").exit_code == 2);
  CHECK(run("verify " + fixture("design60.txt") + " --mode bogus").exit_code == 2);
  CHECK(run("frobnicate").exit_code == 2);
  CHECK(run("").exit_code == 2);
  CHECK(run("--help").exit_code == 0);

  const auto bad = fixture("malformed/m1_duplicate.txt");
  const auto res = run("verify " + bad + " --subset-size 3");
  CHECK(res.exit_code == 2);
  CHECK(contains(res.output, "line 3"));
}

TEST_CASE("verify --json emits one object per method") {
  const auto res = run("verify " + fixture("design60.txt") +
                       " --subset-size 6 --mode graph --json");
  CHECK(res.exit_code == 0);
  std::istringstream lines(res.output);
  std::string line;
  int objects = 0;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    const auto j = nlohmann::json::parse(line);
    ++objects;
    if (j.contains("method")) {
      CHECK(j["method"] == "graph");
      CHECK(j["outcome"] == "HOLDS");
      CHECK(j["certificate"].size() == 5);
    }
  }
  CHECK(objects == 1);
}

TEST_CASE("witness prints the proof case") {
  const auto design = fixture("design60.txt");
  const auto pair_case = run("witness " + design + " --set 1,7,13,25,37,49");
  CHECK(pair_case.exit_code == 0);
  CHECK(pair_case.output == "PAIR m=1 u=1 v=1 -> block 11: 1 2 3 7 8 9\n");

  const auto base_case = run("witness " + design + " --set 1,2,13,25,37,49");
  CHECK(base_case.exit_code == 0);
  CHECK(base_case.output == "BASE i=1 -> block 1: 1 2 3 4 5 6\n");

  // a collision resolves even below the threshold size
  const auto tiny = run("witness " + design + " --set 1,2,3");
  CHECK(tiny.exit_code == 0);
  CHECK(contains(tiny.output, "BASE i=1"));
}

TEST_CASE("witness rejects bad queries and structureless designs") {
  const auto design = fixture("design60.txt");
  CHECK(run("witness " + design + " --set 1,13,25").exit_code == 2);
  CHECK(run("witness " + design + " --set 1,2,x").exit_code == 2);
  CHECK(run("witness " + design + " --set 0,2,3").exit_code == 2);

  const auto plain = (work_dir() / "plain.txt").string();
  std::ofstream(plain) << "4 2 2\n1 2\n3 4\n";
  const auto res = run("witness " + plain + " --set 1,2");
  CHECK(res.exit_code == 2);
  CHECK(contains(res.output, "no construction metadata"));
}

TEST_CASE("stats reports coverage, alpha and the clique cover") {
  const auto res = run("stats " + fixture("design60.txt"));
  CHECK(res.exit_code == 0);
  CHECK(contains(res.output, "covered_pairs: 330"));
  CHECK(contains(res.output, "multiplicity_histogram: 1:270 3:60"));
  CHECK(contains(res.output, "alpha: 5"));
  CHECK(contains(res.output, "alpha_witness: 1 13 25 37 49"));
  CHECK(contains(res.output, "clique_cover_size: 5"));
}

TEST_CASE("stats exits 3 when the solver budget is too small for alpha") {
  const auto path = (work_dir() / "c5_stats.txt").string();
  std::ofstream(path) << "5 2 5\n1 2\n2 3\n3 4\n4 5\n1 5\n";
  const auto res = run("stats " + path + " --budget 1");
  CHECK(res.exit_code == 3);
  CHECK(contains(res.output, "alpha: undecided"));
}

TEST_CASE("stats --irredundancy lists necessary blocks") {
  const auto path = (work_dir() / "d24.txt").string();
  REQUIRE(run("generate --group-size 2 --groups 4 --out " + path).exit_code == 0);
  const auto res = run("stats " + path + " --irredundancy");
  CHECK(res.exit_code == 0);
  CHECK(contains(res.output, "necessary: 12/12"));
  CHECK(contains(res.output, "block 12: necessary"));

  const auto json_res = run("stats " + path + " --irredundancy --json");
  CHECK(json_res.exit_code == 0);
  const auto j = nlohmann::json::parse(json_res.output);
  CHECK(j["covered_pairs"] == 12);
  CHECK(j["alpha"] == 2);
  CHECK(j["necessary_blocks"].size() == 12);
}
