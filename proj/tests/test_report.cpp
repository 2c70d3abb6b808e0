#include <doctest.h>

#include "orient/report.hpp"

using namespace orient;

namespace {

InequalityReport sample_inequality(bool holds, bool conjecture = false) {
  InequalityReport rep;
  rep.name = "example";
  rep.instance = "u=s p=1/2";
  rep.lhs = Rational(1, 4);
  rep.rhs = holds ? Rational(1, 2) : Rational(1, 8);
  rep.holds = holds;
  rep.margin = rep.rhs - rep.lhs;
  rep.conjecture = conjecture;
  return rep;
}

Graph path2() {
  Graph g;
  g.add_vertex("u");
  g.add_vertex("v");
  g.add_edge(0, 1);
  return g;
}

}  // namespace

TEST_SUITE("report") {
  TEST_CASE("hash primitives") {
    CHECK(fnv1a64("") == 14695981039346656037ULL);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(digest_hex(0) == "0000000000000000");
    CHECK(digest_hex(0xabcdef0123456789ULL) == "abcdef0123456789");
    CHECK(format_decimal(0.625) == "0.625");
    CHECK(format_decimal(1.0) == "1");
  }

  TEST_CASE("summary counts partition inequality entries") {
    RunReport rep;
    rep.subcommand = "verify example";
    rep.input_digest = "0";
    rep.add_inequality(sample_inequality(true));
    rep.add_inequality(sample_inequality(true));
    rep.add_inequality(sample_inequality(false));
    CHECK(rep.checked() == 3);
    CHECK(rep.held() == 2);
    CHECK(rep.violated() == 1);
    CHECK(rep.exit_code() == 2);
  }

  TEST_CASE("conjecture findings use the distinguished exit code") {
    RunReport rep;
    rep.add_inequality(sample_inequality(false, /*conjecture=*/true));
    CHECK(rep.exit_code() == 3);
    rep.add_inequality(sample_inequality(false, /*conjecture=*/false));
    CHECK(rep.exit_code() == 2);  // a theorem violation dominates
    RunReport clean;
    clean.add_inequality(sample_inequality(true));
    CHECK(clean.exit_code() == 0);
    clean.note_skipped(5);
    CHECK(clean.skipped() == 5);
  }

  TEST_CASE("sweep entries merge their counts") {
    SweepSummary sum;
    sum.graphs = 7;
    sum.instances = 100;
    sum.held = 99;
    sum.violated = 1;
    sum.skipped = 3;
    sum.violations.push_back(sample_inequality(false));
    RunReport rep;
    rep.add_sweep("example-sweep", sum);
    CHECK(rep.checked() == 100);
    CHECK(rep.held() == 99);
    CHECK(rep.violated() == 1);
    CHECK(rep.skipped() == 3);
    CHECK(rep.exit_code() == 2);
    auto j = nlohmann::json::parse(rep.to_json());
    CHECK(j["entries"].size() == 2);
    CHECK(j["entries"][0]["type"] == "sweep");
    CHECK(j["entries"][1]["type"] == "inequality");
  }

  TEST_CASE("json schema carries rationals as strings") {
    RunReport rep;
    rep.subcommand = "verify example";
    rep.input_digest = "deadbeef";
    rep.wall_time_ms = 12.5;
    InequalityReport ineq = sample_inequality(true);
    ineq.note = "demo";
    KeyDiff kd;
    kd.key_u = {"u", "v"};
    kd.lhs = Rational(1, 2);
    kd.rhs = Rational(1, 3);
    ineq.diffs.push_back(kd);
    rep.add_inequality(ineq);
    auto j = nlohmann::json::parse(rep.to_json());
    CHECK(j["tool"]["name"] == "orient");
    CHECK(j["subcommand"] == "verify example");
    CHECK(j["input_digest"] == "deadbeef");
    CHECK(j["summary"]["checked"] == 1);
    CHECK(j["summary"]["held"] == 1);
    const auto& e = j["entries"][0];
    CHECK(e["lhs"] == "1/4");
    CHECK(e["rhs"] == "1/2");
    CHECK(e["margin"] == "1/4");
    CHECK(e["holds"] == true);
    CHECK(e["note"] == "demo");
    CHECK(e["diffs"][0]["key"][0] == "u");
    CHECK(e["diffs"][0]["lhs"] == "1/2");
    CHECK(j["wall_time_ms"] == "12.5");
  }

  TEST_CASE("distribution entries list clusters by name") {
    Graph g = path2();
    ClusterDistribution law =
        cluster_distribution_bruteforce(g, ModelSpec::edge_percolation(Rational(1, 3)), 0);
    RunReport rep;
    rep.subcommand = "dist";
    rep.add_distribution(g, law);
    auto j = nlohmann::json::parse(rep.to_json());
    const auto& entries = j["entries"][0]["entries"];
    CHECK(entries.size() == 2);
    CHECK(entries[0]["cluster"] == nlohmann::json::array({"u"}));
    CHECK(entries[0]["probability"] == "2/3");
    CHECK(entries[1]["cluster"] == nlohmann::json::array({"u", "v"}));
    CHECK(entries[1]["probability"] == "1/3");
    CHECK(rep.exit_code() == 0);

    JointClusterDistribution joint =
        joint_distribution_bruteforce(g, ModelSpec::random_orientation(), 0, 1);
    RunReport rep2;
    rep2.add_joint_distribution(g, joint);
    auto j2 = nlohmann::json::parse(rep2.to_json());
    CHECK(j2["entries"][0]["type"] == "joint_distribution");
    CHECK(j2["entries"][0]["entries"][0].contains("cluster_u"));
  }

  TEST_CASE("sign and monte carlo entries are informational") {
    RunReport rep;
    SignSearchResult res;
    res.instances = 10;
    res.skipped = 2;
    SignFinding f;
    f.n = 2;
    f.edge_mask = 1;
    f.graph_desc = "v0-v1";
    f.mode = "a_to_s";
    f.s = "v0";
    f.a = "v0";
    f.b = "v1";
    f.covariance = Rational(1, 4);
    f.sign = 1;
    res.findings.push_back(f);
    rep.add_sign_search(res);
    McEstimate est;
    est.estimate = 0.625;
    est.standard_error = 0.0015;
    est.samples = 100000;
    est.seed = 42;
    est.model_tag = "o";
    rep.add_mc(est);
    CHECK(rep.checked() == 0);
    CHECK(rep.skipped() == 2);
    CHECK(rep.exit_code() == 0);
    auto j = nlohmann::json::parse(rep.to_json());
    CHECK(j["entries"].size() == 3);
    CHECK(j["entries"][0]["type"] == "sign_search");
    CHECK(j["entries"][1]["covariance"] == "1/4");
    CHECK(!j["entries"][1].contains("t"));
    CHECK(j["entries"][2]["estimate"] == "0.625");
  }

  TEST_CASE("reports are deterministic") {
    auto build = [] {
      RunReport rep;
      rep.subcommand = "verify example";
      rep.input_digest = "00ff";
      rep.wall_time_ms = 1.0;
      rep.add_inequality(sample_inequality(true));
      return rep.to_json();
    };
    CHECK(build() == build());
  }

  TEST_CASE("text rendering mentions every entry") {
    RunReport rep;
    rep.subcommand = "verify example";
    rep.input_digest = "00";
    rep.add_inequality(sample_inequality(true));
    rep.add_inequality(sample_inequality(false, true));
    std::string text = rep.to_text();
    CHECK(text.find("orient 0.1.0") != std::string::npos);
    CHECK(text.find("[ok]") != std::string::npos);
    CHECK(text.find("[finding]") != std::string::npos);
    CHECK(text.find("summary: checked=2") != std::string::npos);
  }
}
