// Command-line front-end: maps subcommands onto the exact verifiers and
// prints a machine-readable run report.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "orient/cluster_dist.hpp"
#include "orient/events.hpp"
#include "orient/graph.hpp"
#include "orient/model.hpp"
#include "orient/montecarlo.hpp"
#include "orient/report.hpp"
#include "orient/verifier.hpp"

namespace {

using namespace orient;

struct Options {
  std::string format = "json";
  std::uint64_t max_states = StateCaps{}.max_states;
  int threads = 1;

  std::string graph_path;
  std::string p = "1/2";
  std::string pp = "1/2";
  std::string u, v, s, a, b, t;
  std::string x, y;
  std::string model = "o";
  std::string event = "true";
  std::string mode = "a_to_s";
  bool conditioned = false;
  int n = 4;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 0;
};

// Accumulates the bytes covered by the input digest: the subcommand name,
// the flags in a fixed order, and the raw graph file when one is loaded.
struct DigestInputs {
  std::string bytes;
  void add(const std::string& key, const std::string& value) {
    bytes += key;
    bytes += '=';
    bytes += value;
    bytes += '\n';
  }
  std::string digest() const { return digest_hex(fnv1a64(bytes)); }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read graph file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Graph load_graph(const std::string& path, DigestInputs& digest) {
  std::string text = read_file(path);
  digest.bytes += text;
  return parse_edge_list(text);
}

VertexSet parse_vertex_list(const Graph& g, const std::string& text) {
  VertexSet set;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ','))
    if (!token.empty()) set.add(g.require_vertex(token));
  return set;
}

// Edge tokens look like "a-b"; each token becomes one singleton generator,
// so the family is "at least one listed edge is present".
EdgeUpwardFamily parse_edge_family(const Graph& g, const std::string& text) {
  EdgeUpwardFamily family;
  std::string token;
  std::istringstream in(text);
  bool any = false;
  while (std::getline(in, token, ',')) {
    if (token.empty()) continue;
    auto dash = token.find('-');
    if (dash == std::string::npos || dash == 0 || dash + 1 == token.size())
      throw std::invalid_argument("edge token must look like a-b: '" + token + "'");
    int ia = g.require_vertex(token.substr(0, dash));
    int ib = g.require_vertex(token.substr(dash + 1));
    int e = g.find_edge(ia, ib);
    if (e < 0) throw std::invalid_argument("no such edge: '" + token + "'");
    family.add_generator(std::uint64_t(1) << e);
    any = true;
  }
  if (!any) throw std::invalid_argument("edge family cannot be empty");
  return family;
}

int finish(RunReport& rep, const Options& opt, const DigestInputs& digest,
           std::chrono::steady_clock::time_point start) {
  rep.input_digest = digest.digest();
  rep.wall_time_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
  std::cout << (opt.format == "text" ? rep.to_text() : rep.to_json());
  return rep.exit_code();
}

int run(CLI::App& app, const Options& opt) {
  const auto start = std::chrono::steady_clock::now();
  const StateCaps caps{opt.max_states};
  RunReport rep;
  DigestInputs digest;

  CLI::App* verify = app.get_subcommand("verify");
  CLI::App* search = app.get_subcommand("search");

  if (verify->parsed()) {
    if (verify->get_subcommand("lemma1")->parsed()) {
      rep.subcommand = "verify lemma1";
      digest.add("subcommand", rep.subcommand);
      digest.add("u", opt.u);
      digest.add("p", opt.p);
      Graph g = load_graph(opt.graph_path, digest);
      for (const InequalityReport& r :
           verify_lemma1(g, g.require_vertex(opt.u), parse_rational(opt.p), caps))
        rep.add_inequality(r);
    } else if (verify->get_subcommand("lemma2")->parsed()) {
      rep.subcommand = "verify lemma2";
      digest.add("subcommand", rep.subcommand);
      digest.add("u", opt.u);
      digest.add("v", opt.v);
      digest.add("p", opt.p);
      Graph g = load_graph(opt.graph_path, digest);
      for (const InequalityReport& r : verify_lemma2(g, g.require_vertex(opt.u),
                                                     g.require_vertex(opt.v),
                                                     parse_rational(opt.p), caps))
        rep.add_inequality(r);
    } else if (verify->get_subcommand("harris")->parsed()) {
      rep.subcommand = "verify harris";
      digest.add("subcommand", rep.subcommand);
      digest.add("p", opt.p);
      digest.add("x", opt.x);
      digest.add("y", opt.y);
      Graph g = load_graph(opt.graph_path, digest);
      rep.add_inequality(verify_harris_classical(g, parse_rational(opt.p),
                                                 parse_edge_family(g, opt.x),
                                                 parse_edge_family(g, opt.y), caps));
    } else if (verify->get_subcommand("oriented-harris")->parsed()) {
      rep.subcommand = "verify oriented-harris";
      digest.add("subcommand", rep.subcommand);
      digest.add("s", opt.s);
      digest.add("a", opt.a);
      digest.add("b", opt.b);
      Graph g = load_graph(opt.graph_path, digest);
      int s = g.require_vertex(opt.s);
      rep.add_inequality(verify_oriented_harris(
          g, s, make_reachability_family(s, VertexSet::single(g.require_vertex(opt.a))),
          make_reachability_family(s, VertexSet::single(g.require_vertex(opt.b))), caps));
    } else if (verify->get_subcommand("oriented-vdbhk")->parsed()) {
      rep.subcommand = "verify oriented-vdbhk";
      digest.add("subcommand", rep.subcommand);
      digest.add("s", opt.s);
      digest.add("a", opt.a);
      digest.add("b", opt.b);
      digest.add("x", opt.x);
      digest.add("y", opt.y);
      Graph g = load_graph(opt.graph_path, digest);
      int s = g.require_vertex(opt.s);
      rep.add_inequality(verify_oriented_vdbhk(
          g, s, make_reachability_family(s, VertexSet::single(g.require_vertex(opt.a))),
          make_reachability_family(s, VertexSet::single(g.require_vertex(opt.b))),
          parse_vertex_list(g, opt.x), parse_vertex_list(g, opt.y), caps));
    } else if (verify->get_subcommand("corollaries")->parsed()) {
      rep.subcommand = "verify corollaries";
      digest.add("subcommand", rep.subcommand);
      digest.add("s", opt.s);
      digest.add("a", opt.a);
      digest.add("b", opt.b);
      digest.add("t", opt.t);
      Graph g = load_graph(opt.graph_path, digest);
      for (const InequalityReport& r :
           verify_corollaries(g, g.require_vertex(opt.s), g.require_vertex(opt.a),
                              g.require_vertex(opt.b), g.require_vertex(opt.t), caps))
        rep.add_inequality(r);
    } else if (verify->get_subcommand("mixed")->parsed()) {
      rep.subcommand = "verify mixed";
      digest.add("subcommand", rep.subcommand);
      digest.add("u", opt.u);
      digest.add("pp", opt.pp);
      digest.add("p", opt.p);
      Graph g = load_graph(opt.graph_path, digest);
      for (const InequalityReport& r :
           verify_mixed_model(g, g.require_vertex(opt.u), parse_rational(opt.pp),
                              parse_rational(opt.p), caps))
        rep.add_inequality(r);
    } else {
      throw CLI::CallForHelp();
    }
    return finish(rep, opt, digest, start);
  }

  if (search->parsed()) {
    if (!search->get_subcommand("signs")->parsed()) throw CLI::CallForHelp();
    rep.subcommand = "search signs";
    digest.add("subcommand", rep.subcommand);
    digest.add("n", std::to_string(opt.n));
    digest.add("mode", opt.mode);
    digest.add("conditioned", opt.conditioned ? "1" : "0");
    rep.add_sign_search(search_correlation_signs(opt.n, parse_sign_search_mode(opt.mode),
                                                 opt.conditioned, opt.threads));
    return finish(rep, opt, digest, start);
  }

  if (app.get_subcommand("dist")->parsed()) {
    rep.subcommand = "dist";
    digest.add("subcommand", rep.subcommand);
    digest.add("model", opt.model);
    digest.add("u", opt.u);
    digest.add("v", opt.v);
    Graph g = load_graph(opt.graph_path, digest);
    ModelSpec model = parse_model_spec(opt.model);
    if (opt.v.empty()) {
      rep.add_distribution(
          g, cluster_distribution_bruteforce(g, model, g.require_vertex(opt.u), caps));
    } else {
      rep.add_joint_distribution(
          g, joint_distribution_bruteforce(g, model, g.require_vertex(opt.u),
                                           g.require_vertex(opt.v), caps));
    }
    return finish(rep, opt, digest, start);
  }

  if (app.get_subcommand("bunkbed")->parsed()) {
    rep.subcommand = "bunkbed";
    digest.add("subcommand", rep.subcommand);
    digest.add("u", opt.u);
    digest.add("v", opt.v);
    digest.add("p", opt.p);
    Graph g = load_graph(opt.graph_path, digest);
    rep.add_inequality(bunkbed_check(g, g.require_vertex(opt.u), g.require_vertex(opt.v),
                                     parse_rational(opt.p), caps));
    return finish(rep, opt, digest, start);
  }

  if (app.get_subcommand("mc")->parsed()) {
    rep.subcommand = "mc";
    digest.add("subcommand", rep.subcommand);
    digest.add("model", opt.model);
    digest.add("event", opt.event);
    digest.add("samples", std::to_string(opt.samples));
    digest.add("seed", std::to_string(opt.seed));
    Graph g = load_graph(opt.graph_path, digest);
    ModelSpec model = parse_model_spec(opt.model);
    rep.add_mc(estimate_event(g, model, parse_event(g, opt.event), opt.samples, opt.seed));
    return finish(rep, opt, digest, start);
  }

  throw CLI::CallForHelp();
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"Exact probabilities and correlation checks for random orientations "
               "and percolation on small graphs"};
  app.require_subcommand(0, 1);
  app.fallthrough();
  app.add_option("--format", opt.format, "Output format")
      ->check(CLI::IsMember({"json", "text"}));
  app.add_option("--max-states", opt.max_states, "State-space cap for exact enumeration");
  app.add_option("--threads", opt.threads, "Worker threads for sweeps")
      ->check(CLI::PositiveNumber);

  auto add_graph = [&](CLI::App* sub) {
    sub->add_option("--graph", opt.graph_path, "Edge-list file")->required();
  };

  CLI::App* verify = app.add_subcommand("verify", "Check an exact identity or inequality");
  verify->require_subcommand(0, 1);
  verify->fallthrough();

  CLI::App* lemma1 = verify->add_subcommand("lemma1", "Single-cluster law identities");
  add_graph(lemma1);
  lemma1->add_option("--u", opt.u, "Root vertex")->required();
  lemma1->add_option("--p", opt.p, "Edge probability num/den");

  CLI::App* lemma2 = verify->add_subcommand("lemma2", "Joint two-cluster law identities");
  add_graph(lemma2);
  lemma2->add_option("--u", opt.u, "First root (out-cluster)")->required();
  lemma2->add_option("--v", opt.v, "Second root (in-cluster)")->required();
  lemma2->add_option("--p", opt.p, "Edge probability num/den");

  CLI::App* harris = verify->add_subcommand("harris", "Classical increasing-event correlation");
  add_graph(harris);
  harris->add_option("--p", opt.p, "Edge probability num/den");
  harris->add_option("--x", opt.x, "First edge family, comma list of a-b tokens")->required();
  harris->add_option("--y", opt.y, "Second edge family, comma list of a-b tokens")->required();

  CLI::App* oharris = verify->add_subcommand("oriented-harris", "Out-cluster event correlation");
  add_graph(oharris);
  oharris->add_option("--s", opt.s, "Source vertex")->required();
  oharris->add_option("--a", opt.a, "Target of the first event")->required();
  oharris->add_option("--b", opt.b, "Target of the second event")->required();

  CLI::App* vdbhk = verify->add_subcommand("oriented-vdbhk", "Avoidance-extended correlation");
  add_graph(vdbhk);
  vdbhk->add_option("--s", opt.s, "Source vertex")->required();
  vdbhk->add_option("--a", opt.a, "Target of the first event")->required();
  vdbhk->add_option("--b", opt.b, "Target of the second event")->required();
  vdbhk->add_option("--x", opt.x, "Avoided vertices for the first event (comma list)");
  vdbhk->add_option("--y", opt.y, "Avoided vertices for the second event (comma list)");

  CLI::App* coroll = verify->add_subcommand("corollaries", "Two-path and conditioned correlations");
  add_graph(coroll);
  coroll->add_option("--s", opt.s, "Source vertex")->required();
  coroll->add_option("--a", opt.a, "First target")->required();
  coroll->add_option("--b", opt.b, "Second target")->required();
  coroll->add_option("--t", opt.t, "Conditioning target (s does not reach t)")->required();

  CLI::App* mixed = verify->add_subcommand("mixed", "Semi-directed model law identities");
  add_graph(mixed);
  mixed->add_option("--u", opt.u, "Root vertex")->required();
  mixed->add_option("--pp", opt.pp, "Undirected-split probability num/den");
  mixed->add_option("--p", opt.p, "Directed-model probability num/den");

  CLI::App* dist = app.add_subcommand("dist", "Print an exact cluster distribution");
  add_graph(dist);
  dist->add_option("--model", opt.model, "Model string, e.g. e:p=1/2, o, d:p=1/3");
  dist->add_option("--u", opt.u, "Root vertex")->required();
  dist->add_option("--v", opt.v, "Optional second root for the joint law");

  CLI::App* search = app.add_subcommand("search", "Exhaustive searches over small graphs");
  search->require_subcommand(0, 1);
  search->fallthrough();
  CLI::App* signs = search->add_subcommand("signs", "Covariance sign search in model O");
  signs->add_option("--n", opt.n, "Vertex count (1..5)");
  signs->add_option("--mode", opt.mode, "Pair mode: a_to_s or a_in_in_cluster_t");
  signs->add_flag("--conditioned", opt.conditioned, "Condition on s not reaching t");

  CLI::App* bunkbed = app.add_subcommand("bunkbed", "Two-layer product reachability check");
  add_graph(bunkbed);
  bunkbed->add_option("--u", opt.u, "Source vertex (bottom layer)")->required();
  bunkbed->add_option("--v", opt.v, "Target vertex")->required();
  bunkbed->add_option("--p", opt.p, "Edge probability num/den");

  CLI::App* mc = app.add_subcommand("mc", "Seeded Monte Carlo estimate of an event");
  add_graph(mc);
  mc->add_option("--model", opt.model, "Model string")->required();
  mc->add_option("--event", opt.event, "Event string, e.g. reach:s->a")->required();
  mc->add_option("--samples", opt.samples, "Sample count");
  mc->add_option("--seed", opt.seed, "Master seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    return run(app, opt);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::logic_error& e) {
    std::cerr << "defect: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
