// End-to-end tests that drive the installed binary through its public
// command-line surface. The binary path arrives in the ORIENT_CLI
// environment variable, set by the build.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
};

std::string cli_path() {
  const char* env = std::getenv("ORIENT_CLI");
  REQUIRE_MESSAGE(env != nullptr, "ORIENT_CLI must point at the binary under test");
  return env;
}

CliResult run_cli(const std::string& args) {
  std::string cmd = cli_path() + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult res;
  char buf[4096];
  for (std::size_t got; (got = fread(buf, 1, sizeof buf, pipe)) > 0;)
    res.out.append(buf, got);
  int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

// Writes the file once per process into a temp directory.
class Workspace {
 public:
  Workspace() {
    char tmpl[] = "/tmp/orient_cli_XXXXXX";
    REQUIRE(mkdtemp(tmpl) != nullptr);
    dir_ = tmpl;
    write("triangle.g", "s a\ns b\na b\n");
    write("path.g", "vertices: u v w\nu v\nv w\n");
    write("k4-ab.g", "# complete graph on four vertices without the edge a-b\n"
                     "vertices: s a b c\ns a\ns b\ns c\na c\nb c\n");
    write("edge.g", "x y\n");
  }
  std::string path(const std::string& name) const { return dir_ + "/" + name; }

 private:
  void write(const std::string& name, const std::string& content) {
    std::ofstream out(dir_ + "/" + name);
    out << content;
  }
  std::string dir_;
};

const Workspace& workspace() {
  static Workspace ws;
  return ws;
}

nlohmann::json parse_report(const CliResult& res) {
  return nlohmann::json::parse(res.out);
}

}  // namespace

TEST_CASE("cli: law identities on the path graph") {
  auto res = run_cli("verify lemma1 --graph " + workspace().path("path.g") + " --u u --p 1/2");
  CHECK(res.exit_code == 0);
  auto j = parse_report(res);
  CHECK(j["subcommand"] == "verify lemma1");
  CHECK(j["summary"]["violated"] == 0);
  CHECK(j["summary"]["checked"] == 4);
  for (const auto& e : j["entries"]) {
    CHECK(e["holds"] == true);
    CHECK(!e.contains("diffs"));
  }
}

TEST_CASE("cli: corollaries on the four vertex example") {
  auto res = run_cli("verify corollaries --graph " + workspace().path("k4-ab.g") +
                     " --s s --a a --b b --t c");
  CHECK(res.exit_code == 0);
  auto j = parse_report(res);
  CHECK(j["entries"].size() == 3);
  for (const auto& e : j["entries"]) CHECK(e["holds"] == true);
}

TEST_CASE("cli: seeded estimate lands near the exact value") {
  auto res = run_cli("mc --model o --graph " + workspace().path("triangle.g") +
                     " --event 'reach:s->a' --samples 100000 --seed 42");
  CHECK(res.exit_code == 0);
  auto j = parse_report(res);
  const auto& e = j["entries"][0];
  CHECK(e["type"] == "mc");
  double estimate = std::stod(e["estimate"].get<std::string>());
  double se = std::stod(e["standard_error"].get<std::string>());
  CHECK(std::abs(estimate - 0.625) <= 3.0 * se);
  CHECK(j["summary"]["checked"] == 0);
}

TEST_CASE("cli: exact distribution printout") {
  auto res = run_cli("dist --model o --graph " + workspace().path("triangle.g") + " --u s");
  CHECK(res.exit_code == 0);
  auto j = parse_report(res);
  const auto& entries = j["entries"][0]["entries"];
  CHECK(entries.size() == 4);
  CHECK(entries[0]["cluster"] == nlohmann::json::array({"s"}));
  CHECK(entries[0]["probability"] == "1/4");
  CHECK(entries[3]["cluster"] == nlohmann::json::array({"s", "a", "b"}));
  CHECK(entries[3]["probability"] == "1/2");
}

TEST_CASE("cli: joint distribution with two roots") {
  auto res = run_cli("dist --model e:p=1/3 --graph " + workspace().path("path.g") +
                     " --u u --v w");
  CHECK(res.exit_code == 0);
  auto j = parse_report(res);
  CHECK(j["entries"][0]["type"] == "joint_distribution");
  bool found = false;
  for (const auto& e : j["entries"][0]["entries"])
    if (e["cluster_u"] == nlohmann::json::array({"u"}) &&
        e["cluster_w"] == nlohmann::json::array({"w"})) {
      CHECK(e["probability"] == "4/9");
      found = true;
    }
  CHECK(found);
}

TEST_CASE("cli: reports are byte identical modulo timing") {
  std::string cmd = "verify lemma2 --graph " + workspace().path("triangle.g") +
                    " --u s --v b --p 1/2";
  auto a = parse_report(run_cli(cmd));
  auto b = parse_report(run_cli(cmd));
  a.erase("wall_time_ms");
  b.erase("wall_time_ms");
  CHECK(a.dump() == b.dump());
  CHECK(a["input_digest"] == b["input_digest"]);
}

TEST_CASE("cli: sign search reports findings") {
  auto res = run_cli("search signs --n 3 --mode a_to_s");
  CHECK(res.exit_code == 0);
  auto j = parse_report(res);
  CHECK(j["entries"][0]["type"] == "sign_search");
  CHECK(j["entries"][0]["instances"] == 8 * 27);
}

TEST_CASE("cli: two layer check holds on the single edge") {
  auto res = run_cli("bunkbed --graph " + workspace().path("edge.g") + " --u x --v y --p 1/2");
  CHECK(res.exit_code == 0);
  auto j = parse_report(res);
  const auto& e = j["entries"][0];
  CHECK(e["lhs"] == "9/16");
  CHECK(e["rhs"] == "7/16");
  CHECK(e["conjecture"] == true);
}

TEST_CASE("cli: semi directed identities") {
  auto res = run_cli("verify mixed --graph " + workspace().path("triangle.g") +
                     " --u s --pp 1/3 --p 1/3");
  CHECK(res.exit_code == 0);
  auto j = parse_report(res);
  CHECK(j["summary"]["checked"] == 2);
  CHECK(j["summary"]["violated"] == 0);
}

TEST_CASE("cli: oriented correlation subcommands") {
  auto res = run_cli("verify oriented-harris --graph " + workspace().path("triangle.g") +
                     " --s s --a a --b b");
  CHECK(res.exit_code == 0);
  auto j = parse_report(res);
  CHECK(j["entries"][0]["margin"] == "7/64");

  auto res2 = run_cli("verify oriented-vdbhk --graph " + workspace().path("triangle.g") +
                      " --s s --a a --b a --x b --y \"\"");
  CHECK(res2.exit_code == 0);
  auto j2 = parse_report(res2);
  CHECK(j2["entries"][0]["lhs"] == "5/64");
  CHECK(j2["entries"][0]["rhs"] == "15/64");

  auto res3 = run_cli("verify harris --graph " + workspace().path("triangle.g") +
                      " --p 1/3 --x s-a --y s-b");
  CHECK(res3.exit_code == 0);
  auto j3 = parse_report(res3);
  CHECK(j3["entries"][0]["holds"] == true);
}

TEST_CASE("cli: text format renders") {
  auto res = run_cli("verify lemma1 --graph " + workspace().path("triangle.g") +
                     " --u s --p 1/2 --format text");
  CHECK(res.exit_code == 0);
  CHECK(res.out.rfind("orient 0.1.0", 0) == 0);
  CHECK(res.out.find("[ok]") != std::string::npos);
}

TEST_CASE("cli: help exits cleanly") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("verify --help").exit_code == 0);
}

TEST_CASE("cli: usage and input errors exit with one") {
  CHECK(run_cli("verify lemma1 --u u --p 1/2").exit_code == 1);  // missing --graph
  CHECK(run_cli("nonsense").exit_code == 1);
  CHECK(run_cli("verify lemma1 --graph /nonexistent.g --u u --p 1/2").exit_code == 1);
  CHECK(run_cli("verify lemma1 --graph " + workspace().path("path.g") + " --u zz --p 1/2")
            .exit_code == 1);
  CHECK(run_cli("verify lemma1 --graph " + workspace().path("path.g") + " --u u --p 0.5")
            .exit_code == 1);
  CHECK(run_cli("verify lemma1 --graph " + workspace().path("path.g") + " --u u --p 3/2")
            .exit_code == 1);
  CHECK(run_cli("search signs --n 9 --mode a_to_s").exit_code == 1);
  CHECK(run_cli("search signs --n 3 --mode a_to_s --conditioned").exit_code == 1);
  CHECK(run_cli("verify oriented-vdbhk --graph " + workspace().path("triangle.g") +
                " --s s --a a --b b --x s --y b")
            .exit_code == 1);
  CHECK(run_cli("verify corollaries --graph " + workspace().path("edge.g") +
                " --s x --a y --b y --t x")
            .exit_code == 1);  // impossible conditioning
}
