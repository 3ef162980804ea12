#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <string>
#include <sys/wait.h>

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int status;
  std::string output;
};

RunResult run_cli(const std::string& args, bool merge_stderr = true) {
  std::string cmd = std::string(TOREX_CLI_PATH) + " " + args +
                    (merge_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t got = 0;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  const int rc = ::pclose(pipe);
  return {WIFEXITED(rc) ? WEXITSTATUS(rc) : -1, out};
}

const fs::path& scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "torex_cli_tests";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string write_fixture(const std::string& name, const std::string& body) {
  const fs::path p = scratch_dir() / name;
  std::ofstream out(p);
  out << body;
  out.close();
  return p.string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::string s((std::istreambuf_iterator<char>(in)),
                std::istreambuf_iterator<char>());
  return s;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) lines.push_back(cur);
  return lines;
}

constexpr const char* kCsvHeader =
    "construction,generators,epsilon,m_A,m_union,ratio,bound,margin,passed";

}  // namespace

TEST_CASE("usage errors exit with status 2") {
  CHECK(run_cli("").status == 2);
  CHECK(run_cli("bogus").status == 2);
  CHECK(run_cli("verify").status == 2);           // --epsilon is required
  CHECK(run_cli("verify --epsilon").status == 2);  // missing value
  CHECK(run_cli("verify --epsilon 1/10 --frobnicate").status == 2);
  CHECK(run_cli("--help").status == 0);
}

TEST_CASE("verify accepts only epsilon in (0, 1/8]") {
  CHECK(run_cli("verify --epsilon 1/4 --no-mc").status == 2);
  CHECK(run_cli("verify --epsilon 0 --no-mc").status == 2);
  CHECK(run_cli("verify --epsilon -1/10 --no-mc").status == 2);
  CHECK(run_cli("verify --epsilon 0.1 --no-mc").status == 2);
  CHECK(run_cli("verify --epsilon abc --no-mc").status == 2);
}

TEST_CASE("verify at 1/10 passes every check") {
  const auto r = run_cli("verify --epsilon 1/10 --no-mc");
  CHECK(r.status == 0);
  CHECK(r.output.find("[FAIL]") == std::string::npos);
  CHECK(r.output.find("[PASS]") != std::string::npos);
  CHECK(r.output.find("verify: all") != std::string::npos);
  CHECK(r.output.find("16/25") != std::string::npos);  // expansion union
  CHECK(r.output.find("2/25") != std::string::npos);   // margin below bound
}

TEST_CASE("verify with the Monte Carlo oracle enabled") {
  const auto r = run_cli("verify --epsilon 1/10 --mc-samples 20000");
  CHECK(r.status == 0);
  CHECK(r.output.find("[FAIL]") == std::string::npos);
  CHECK(r.output.find("sigma") != std::string::npos);
}

TEST_CASE("verify writes machine-readable reports") {
  const std::string json_path = (scratch_dir() / "verify.json").string();
  const std::string csv_path = (scratch_dir() / "verify.csv").string();
  const auto r = run_cli("verify --epsilon 1/10 --no-mc --json " + json_path +
                         " --csv " + csv_path);
  REQUIRE(r.status == 0);

  const auto doc = nlohmann::json::parse(slurp(json_path));
  CHECK(doc.at("schema_version") == 1);
  CHECK(doc.at("command") == "verify");
  CHECK(doc.at("passed") == true);
  bool saw_cross = false;
  for (const auto& row : doc.at("rows")) {
    if (row.at("construction") == "cross") {
      saw_cross = true;
      CHECK(row.at("generators") == "symmetric");
      CHECK(row.at("epsilon") == "1/10");
      CHECK(row.at("m_A") == "9/25");
      CHECK(row.at("m_union") == "16/25");
      CHECK(row.at("ratio") == "16/9");
      CHECK(row.at("bound") == "18/25");
      CHECK(row.at("margin") == "2/25");
      CHECK(row.at("passed") == true);
    }
  }
  CHECK(saw_cross);

  const auto csv = lines_of(slurp(csv_path));
  REQUIRE(csv.size() == 4);
  CHECK(csv[0] == kCsvHeader);
  CHECK(csv[1] == "cross,symmetric,1/10,9/25,16/25,16/9,18/25,2/25,true");
  CHECK(csv[2].rfind("cross-antidiag,forward,1/10,51/100,16/25,", 0) == 0);
  CHECK(csv[3].rfind("cross-shifted,symmetric,1/10,9/25,3/5,5/3,", 0) == 0);
}

TEST_CASE("sweep prints CSV rows for explicit epsilon lists") {
  const auto r = run_cli("sweep --epsilons 1/10,1/20", false);
  REQUIRE(r.status == 0);
  const auto lines = lines_of(r.output);
  REQUIRE(lines.size() == 7);  // header + 3 rows per epsilon
  CHECK(lines[0] == kCsvHeader);
  CHECK(lines[1] == "cross,symmetric,1/10,9/25,16/25,16/9,18/25,2/25,true");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    CHECK(lines[i].rfind(",true") == lines[i].size() - 5);
  }
  // Byte-identical on rerun.
  const auto again = run_cli("sweep --epsilons 1/10,1/20", false);
  CHECK(again.output == r.output);
}

TEST_CASE("sweep halves epsilon from a start value") {
  const auto r = run_cli("sweep --start 1/10 --count 3", false);
  REQUIRE(r.status == 0);
  const auto lines = lines_of(r.output);
  REQUIRE(lines.size() == 10);
  CHECK(lines[0] == kCsvHeader);
  CHECK(r.output.find(",1/10,") != std::string::npos);
  CHECK(r.output.find(",1/20,") != std::string::npos);
  CHECK(r.output.find(",1/40,") != std::string::npos);
}

TEST_CASE("sweep aborts before any output on invalid epsilon") {
  const auto r = run_cli("sweep --epsilons 1/10,1/4", false);
  CHECK(r.status == 2);
  CHECK(r.output.empty());

  CHECK(run_cli("sweep --epsilons 1/10,zzz", false).status == 2);
  // Either a list or a range is required, but not both.
  CHECK(run_cli("sweep", false).status == 2);
  CHECK(run_cli("sweep --epsilons 1/10 --start 1/10 --count 2", false).status ==
        2);
  CHECK(run_cli("sweep --start 1/10", false).status == 2);  // missing --count
}

TEST_CASE("discrete checks the named equalities") {
  const auto r = run_cli("discrete --p 5");
  CHECK(r.status == 0);
  CHECK(r.output.find("|A|             = 8") != std::string::npos);
  CHECK(r.output.find("|A u N(A)|      = 16") != std::string::npos);
  CHECK(r.output.find("2/1") != std::string::npos);
  CHECK(r.output.find("equality") != std::string::npos);
  CHECK(r.output.find("[PASS]") != std::string::npos);

  const auto r7 = run_cli("discrete --p 7 --mode directed --set cross-antidiag");
  CHECK(r7.status == 0);
  CHECK(r7.output.find("|A|             = 18") != std::string::npos);
  CHECK(r7.output.find("|A u N(A)|      = 24") != std::string::npos);
  CHECK(r7.output.find("4/3") != std::string::npos);
  CHECK(r7.output.find("[PASS]") != std::string::npos);
}

TEST_CASE("discrete reports non-named pairings without judging them") {
  const auto r = run_cli("discrete --p 5 --mode directed");
  CHECK(r.status == 0);
  CHECK(r.output.find("3/2") != std::string::npos);
  CHECK(r.output.find("[info] no equality expectation") != std::string::npos);
  CHECK(r.output.find("[FAIL]") == std::string::npos);
}

TEST_CASE("discrete validates the modulus") {
  CHECK(run_cli("discrete --p 9").status == 2);
  CHECK(run_cli("discrete --p 2").status == 2);
  CHECK(run_cli("discrete --p -5").status == 2);
  CHECK(run_cli("discrete --p 5 --mode sideways").status == 2);
  CHECK(run_cli("discrete --p 5 --set hexagon").status == 2);
}

TEST_CASE("discrete custom set files") {
  const std::string good =
      write_fixture("verts_good.txt", "# axis pair\n1 0\n0 1\n");
  const std::string origin = write_fixture("verts_origin.txt", "1 0\n0 0\n");
  const std::string range = write_fixture("verts_range.txt", "7 0\n");
  const std::string malformed = write_fixture("verts_bad.txt", "1\n");

  const auto r = run_cli("discrete --p 5 --set-file " + good);
  CHECK(r.status == 0);
  CHECK(r.output.find("|A|             = 2") != std::string::npos);
  CHECK(r.output.find("[info]") != std::string::npos);

  CHECK(run_cli("discrete --p 5 --set-file " + origin).status == 3);
  CHECK(run_cli("discrete --p 5 --set-file " + range).status == 3);
  CHECK(run_cli("discrete --p 5 --set-file " + malformed).status == 3);
  CHECK(run_cli("discrete --p 5 --set-file /nonexistent/v.txt").status == 3);
  // --set and --set-file are mutually exclusive.
  CHECK(run_cli("discrete --p 5 --set cross --set-file " + good).status == 2);
}

TEST_CASE("discrete JSON report") {
  const std::string json_path = (scratch_dir() / "discrete.json").string();
  const auto r = run_cli("discrete --p 5 --json " + json_path);
  REQUIRE(r.status == 0);
  const auto doc = nlohmann::json::parse(slurp(json_path));
  CHECK(doc.at("schema_version") == 1);
  CHECK(doc.at("command") == "discrete");
  CHECK(doc.at("p") == 5);
  CHECK(doc.at("set_size") == 8);
  CHECK(doc.at("neighborhood_size") == 16);
  CHECK(doc.at("ratio") == "2/1");
  CHECK(doc.at("bound") == "2/1");
  CHECK(doc.at("equality") == true);
  CHECK(doc.at("members").size() == 8);
}

TEST_CASE("plane expansion of the unit square") {
  const std::string square = write_fixture(
      "square.txt", "# unit square\n0 0 1 0 1 1 0 1\n");

  const auto sym = run_cli("plane --polygons " + square);
  CHECK(sym.status == 0);
  CHECK(sym.output.find("ratio = 3/1") != std::string::npos);
  CHECK(sym.output.find("respected") != std::string::npos);

  const auto fwd = run_cli("plane --polygons " + square + " --generators forward");
  CHECK(fwd.status == 0);
  CHECK(fwd.output.find("ratio = 2/1") != std::string::npos);
  CHECK(fwd.output.find("respected") != std::string::npos);
}

TEST_CASE("plane accepts non-convex polygons and rational coordinates") {
  const std::string ell = write_fixture(
      "ell.txt", "0 0 2 0 2 1 1 1 1 2 0 2\n");
  const auto r = run_cli("plane --polygons " + ell);
  CHECK(r.status == 0);
  CHECK(r.output.find("measure = 3/1") != std::string::npos);
  CHECK(r.output.find("respected") != std::string::npos);

  const std::string half = write_fixture(
      "half.txt", "0 0 1/2 0 1/2 1/2 0 1/2\n");
  const auto r2 = run_cli("plane --polygons " + half);
  CHECK(r2.status == 0);
  CHECK(r2.output.find("measure = 1/4") != std::string::npos);
}

TEST_CASE("plane rejects unusable polygon files with status 3") {
  const std::string empty = write_fixture("empty.txt", "# nothing here\n");
  const std::string odd = write_fixture("odd.txt", "0 0 1 0 1\n");
  const std::string degen = write_fixture("degen.txt", "0 0 1 0\n");
  const std::string bowtie = write_fixture(
      "bowtie.txt", "0 1 3 0 3 3 0 0\n");
  const std::string junk = write_fixture("junk.txt", "0 0 x 0 1 1\n");

  CHECK(run_cli("plane --polygons /nonexistent/p.txt").status == 3);
  CHECK(run_cli("plane --polygons " + empty).status == 3);
  CHECK(run_cli("plane --polygons " + odd).status == 3);
  CHECK(run_cli("plane --polygons " + degen).status == 3);
  CHECK(run_cli("plane --polygons " + bowtie).status == 3);
  CHECK(run_cli("plane --polygons " + junk).status == 3);
}

TEST_CASE("plane JSON report") {
  const std::string square = write_fixture(
      "square2.txt", "0 0 1 0 1 1 0 1\n");
  const std::string json_path = (scratch_dir() / "plane.json").string();
  const auto r = run_cli("plane --polygons " + square + " --json " + json_path);
  REQUIRE(r.status == 0);
  const auto doc = nlohmann::json::parse(slurp(json_path));
  CHECK(doc.at("schema_version") == 1);
  CHECK(doc.at("ratio") == "3/1");
  CHECK(doc.at("respected") == true);
  CHECK(doc.at("generators") == "symmetric");
}
