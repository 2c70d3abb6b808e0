#include <doctest.h>

#include <stdexcept>

#include "orient/model.hpp"

using namespace orient;

namespace {

Graph triangle() {
  Graph g;
  g.add_vertex("s");
  g.add_vertex("a");
  g.add_vertex("b");
  g.add_edge(0, 1);
  g.add_edge(0, 2);
  g.add_edge(1, 2);
  return g;
}

Graph path3() {
  Graph g;
  g.add_vertex("u");
  g.add_vertex("v");
  g.add_vertex("w");
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  return g;
}

// Sum of all state weights under exhaustive enumeration.
Rational total_weight(const Graph& g, const ModelSpec& model) {
  Rational total(0);
  StateEnumerator en(g, model);
  for (; !en.done(); en.advance()) total += en.weight();
  return total;
}

}  // namespace

TEST_SUITE("model") {
  TEST_CASE("factories validate parameters") {
    CHECK(ModelSpec::edge_percolation(Rational(1, 3)).p == Rational(1, 3));
    CHECK_THROWS_AS(ModelSpec::edge_percolation(Rational(3, 2)), std::invalid_argument);
    CHECK_THROWS_AS(ModelSpec::directed_percolation(Rational(-1, 2)), std::invalid_argument);
    CHECK_THROWS_AS(ModelSpec::mixed(Rational(1, 2), Rational(2)), std::invalid_argument);
    CHECK(ModelSpec::random_orientation().states_per_edge() == 2);
    CHECK(ModelSpec::edge_percolation(Rational(1, 2)).states_per_edge() == 2);
    CHECK(ModelSpec::directed_percolation(Rational(1, 2)).states_per_edge() == 4);
    CHECK(ModelSpec::mixed(Rational(1, 2), Rational(1, 2)).states_per_edge() == 4);
  }

  TEST_CASE("model strings parse and round trip") {
    for (const char* text : {"e:p=1/2", "o", "d:p=1/3", "mixed:pp=1/3,p1=1/2"}) {
      ModelSpec spec = parse_model_spec(text);
      CHECK(spec.tag() == text);
      CHECK(parse_model_spec(spec.tag()).tag() == spec.tag());
    }
    CHECK(parse_model_spec("e:p=2/4").tag() == "e:p=1/2");
    CHECK_THROWS_AS(parse_model_spec("e"), std::invalid_argument);
    CHECK_THROWS_AS(parse_model_spec("z:p=1/2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_model_spec("e:p=0.5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_model_spec("mixed:pp=1/3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_model_spec("e:p=3/2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_model_spec(""), std::invalid_argument);
  }

  TEST_CASE("state counts and overflow") {
    Graph tri = triangle();
    CHECK(state_count(tri, ModelSpec::edge_percolation(Rational(1, 2))) == 8);
    CHECK(state_count(tri, ModelSpec::directed_percolation(Rational(1, 2))) == 64);
    Graph lone;
    lone.add_vertex("x");
    CHECK(state_count(lone, ModelSpec::mixed(Rational(1, 2), Rational(1, 2))) == 1);
    // 32 edges under a four-state model would need 2^64 states.
    Graph big;
    for (int i = 0; i < 9; ++i) big.add_vertex("v" + std::to_string(i));
    int added = 0;
    for (int i = 0; i < 9 && added < 32; ++i)
      for (int j = i + 1; j < 9 && added < 32; ++j, ++added) big.add_edge(i, j);
    CHECK(big.m() == 32);
    CHECK_THROWS_AS(state_count(big, ModelSpec::directed_percolation(Rational(1, 2))),
                    std::overflow_error);
  }

  TEST_CASE("enumerator respects the state cap") {
    Graph g = triangle();
    CHECK_THROWS_AS(StateEnumerator(g, ModelSpec::directed_percolation(Rational(1, 2)),
                                    StateCaps{32}),
                    std::runtime_error);
    StateEnumerator ok(g, ModelSpec::directed_percolation(Rational(1, 2)), StateCaps{64});
    CHECK(ok.size() == 64);
  }

  TEST_CASE("weights sum to one for every model") {
    Graph tri = triangle();
    Graph p3 = path3();
    for (const Graph* g : {&tri, &p3}) {
      CHECK(total_weight(*g, ModelSpec::edge_percolation(Rational(1, 3))).is_one());
      CHECK(total_weight(*g, ModelSpec::random_orientation()).is_one());
      CHECK(total_weight(*g, ModelSpec::directed_percolation(Rational(2, 5))).is_one());
      CHECK(total_weight(*g, ModelSpec::mixed(Rational(1, 3), Rational(1, 4))).is_one());
    }
  }

  TEST_CASE("orientation state zero points every edge forward") {
    Graph g = triangle();
    StateEnumerator en(g, ModelSpec::random_orientation());
    CHECK(en.index() == 0);
    CHECK(en.reach_from(0) == VertexSet::full(3));
    CHECK(en.reach_from(2) == VertexSet::single(2));  // sink under all-forward
    CHECK(en.reach_into(2) == VertexSet::full(3));
    CHECK(en.weight() == Rational(1, 8));
  }

  TEST_CASE("incremental reachability matches fresh search on every state") {
    Graph tri = triangle();
    Graph p3 = path3();
    std::vector<ModelSpec> models = {
        ModelSpec::edge_percolation(Rational(1, 3)), ModelSpec::random_orientation(),
        ModelSpec::directed_percolation(Rational(1, 2)),
        ModelSpec::mixed(Rational(1, 3), Rational(1, 2))};
    for (const Graph* g : {&tri, &p3})
      for (const ModelSpec& model : models) {
        StateEnumerator en(*g, model);
        for (; !en.done(); en.advance()) {
          WorldState st = en.world_state();
          for (int v = 0; v < g->n(); ++v) {
            CHECK(en.reach_from(v) == out_cluster(*g, st, v));
            CHECK(en.reach_into(v) == in_cluster(*g, st, v));
          }
        }
      }
  }

  TEST_CASE("event probabilities from enumeration") {
    Graph g;
    g.add_vertex("u");
    g.add_vertex("v");
    g.add_edge(0, 1);
    auto linked = [](const Graph& gr, const WorldState& st) {
      return out_cluster(gr, st, 0).has(1);
    };
    CHECK(event_probability(g, ModelSpec::edge_percolation(Rational(1, 3)), linked) ==
          Rational(1, 3));
    CHECK(event_probability(g, ModelSpec::random_orientation(), linked) == Rational(1, 2));
    // Directed: forward arc present, 1 - q = p over the two-arc pair.
    CHECK(event_probability(g, ModelSpec::directed_percolation(Rational(1, 3)), linked) ==
          Rational(1, 3));
    // Mixed: undirected edge or forward orientation.
    CHECK(event_probability(g, ModelSpec::mixed(Rational(1, 2), Rational(1, 2)), linked) ==
          Rational(1, 2));
  }

  TEST_CASE("directed split parameters reproduce the directed model") {
    auto [pp, p1] = dp_split_parameters(Rational(1, 3));
    CHECK(pp == Rational(5, 9));
    CHECK(p1 == Rational(1, 5));
    auto [pph, p1h] = dp_split_parameters(Rational(1, 2));
    CHECK(pph == Rational(1, 2));
    CHECK(p1h == Rational(1, 2));

    // Per-edge weights match the directed model's arc classes.
    Graph g;
    g.add_vertex("u");
    g.add_vertex("v");
    g.add_edge(0, 1);
    ModelSpec mixed = ModelSpec::mixed(pp, p1);
    auto absent = [](const Graph& gr, const WorldState& st) {
      return !out_cluster(gr, st, 0).has(1) && !out_cluster(gr, st, 1).has(0);
    };
    auto both_ways = [](const Graph& gr, const WorldState& st) {
      return out_cluster(gr, st, 0).has(1) && out_cluster(gr, st, 1).has(0);
    };
    CHECK(event_probability(g, mixed, absent) == Rational(4, 9));     // q^2
    CHECK(event_probability(g, mixed, both_ways) == Rational(1, 9));  // p^2
  }

  TEST_CASE("world state digits match the enumerator") {
    Graph g = path3();
    StateEnumerator en(g, ModelSpec::mixed(Rational(1, 3), Rational(1, 2)));
    std::uint64_t seen = 0;
    for (; !en.done(); en.advance()) {
      ++seen;
      WorldState st = en.world_state();
      CHECK(st.kind == ModelKind::Mixed);
      CHECK(st.edge_states.size() == 2);
      CHECK(st.edge_states[0] == en.digits()[0]);
      CHECK(st.weight == en.weight());
    }
    CHECK(seen == 16);
  }
}
