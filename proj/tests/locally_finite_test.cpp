#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "ends/locally_finite.hpp"

using namespace ends;

namespace {

LazyGraph graph(const std::string& name) { return find_builder(name).make(); }

std::set<Label> keys(const std::map<Label, Label>& m) {
  std::set<Label> out;
  for (const auto& [k, v] : m) {
    (void)v;
    out.insert(k);
  }
  return out;
}

}  // namespace

TEST_CASE("lazy graphs reject broken neighbor functions") {
  LazyGraph asym("a", [](const Label& v) -> std::vector<Label> {
    if (v == "a") return {"b"};
    return {};
  });
  CHECK_THROWS_AS(prefix(asym, 1), std::invalid_argument);

  LazyGraph looped("a", [](const Label&) { return std::vector<Label>{"a"}; });
  CHECK_THROWS_AS(prefix(looped, 1), std::invalid_argument);

  LazyGraph doubled("a", [](const Label& v) -> std::vector<Label> {
    if (v == "a") return {"b", "b"};
    return {"a"};
  });
  CHECK_THROWS_AS(prefix(doubled, 1), std::invalid_argument);
}

TEST_CASE("prefix layers and induced graphs") {
  auto ray = prefix(graph("ray"), 2);
  REQUIRE(ray.layers.size() == 3);
  CHECK(ray.layers[0] == std::set<Label>{"0"});
  CHECK(ray.layers[1] == std::set<Label>{"1"});
  CHECK(ray.layers[2] == std::set<Label>{"2"});
  CHECK(ray.graph.edge_count() == 2);
  CHECK(ray.graph.has_edge("0--1"));
  CHECK(ray.graph.has_edge("1--2"));

  auto tree = prefix(graph("binary_tree"), 2);
  CHECK(tree.graph.vertex_count() == 7);
  CHECK(tree.graph.edge_count() == 6);
  CHECK(tree.layers[2].size() == 4);

  // quadrant grid at depth 2: layers 1,2,3 and exactly the six lattice
  // edges among them (hand enumeration of the corner)
  auto grid = prefix(graph("quadrant_grid"), 2);
  CHECK(grid.layers[0].size() == 1);
  CHECK(grid.layers[1].size() == 2);
  CHECK(grid.layers[2].size() == 3);
  std::set<Label> expected{"0,0--0,1", "0,0--1,0", "0,1--0,2",
                           "0,1--1,1", "1,0--1,1", "1,0--2,0"};
  std::set<Label> got;
  for (const auto& [e, uv] : grid.graph.edges()) {
    (void)uv;
    got.insert(e);
  }
  CHECK(got == expected);

  // a finite graph explored past its radius keeps empty trailing layers
  auto single = prefix(graph("single"), 3);
  REQUIRE(single.layers.size() == 4);
  CHECK(single.layers[0] == std::set<Label>{"0"});
  CHECK(single.layers[1].empty());
  CHECK(single.graph.vertex_count() == 1);
  CHECK(single.graph.edge_count() == 0);

  // layers agree with a BFS of the induced graph itself
  for (const char* name : {"ray", "double_ray", "binary_tree", "quadrant_grid",
                           "ladder", "stacked_cliques"}) {
    auto pre = prefix(graph(name), 3);
    auto via_bfs = bfs_layers(pre.graph, graph(name).root());
    REQUIRE(via_bfs.size() == 4);
    for (int d = 0; d <= 3; ++d) CHECK(via_bfs[d] == pre.layers[d]);
  }

  // stacked cliques: vertex c2.0 sees 1 + 1 + 3 neighbors
  auto st = prefix(graph("stacked_cliques"), 3);
  CHECK(degree(st.graph, "c2.0") == 5);
}

TEST_CASE("frontier pieces and their parents") {
  auto f0 = frontier(graph("binary_tree"), 0);
  CHECK(f0.stage == 1);
  REQUIRE(f0.pieces.size() == 2);
  CHECK(f0.pieces[0].vertices == std::set<Label>{"r0"});
  CHECK(f0.pieces[1].vertices == std::set<Label>{"r1"});
  CHECK(f0.pieces[0].parent_piece == 0);
  CHECK(f0.pieces[1].parent_piece == 0);

  auto f1 = frontier(graph("binary_tree"), 1);
  REQUIRE(f1.pieces.size() == 4);
  // pieces sorted by smallest vertex: r00, r01, r10, r11
  CHECK(f1.pieces[0].vertices == std::set<Label>{"r00"});
  CHECK(f1.pieces[0].parent_piece == 0);
  CHECK(f1.pieces[1].parent_piece == 0);
  CHECK(f1.pieces[2].parent_piece == 1);
  CHECK(f1.pieces[3].parent_piece == 1);

  auto d1 = frontier(graph("double_ray"), 1);
  REQUIRE(d1.pieces.size() == 2);
  CHECK(d1.pieces[0].vertices == std::set<Label>{"-2"});
  CHECK(d1.pieces[1].vertices == std::set<Label>{"2"});
  CHECK(d1.pieces[0].parent_piece == 0);  // parents {-1} and {1}
  CHECK(d1.pieces[1].parent_piece == 1);

  auto r2 = frontier(graph("ray"), 2);
  REQUIRE(r2.pieces.size() == 1);
  CHECK(r2.pieces[0].vertices == std::set<Label>{"3"});

  // finite graph: no pieces beyond its radius
  CHECK(frontier(graph("single"), 1).pieces.empty());
}

TEST_CASE("truncations contract components to dummies") {
  auto t0 = truncation(graph("ray"), 0);
  CHECK(t0.graph.vertex_count() == 1);
  CHECK(t0.graph.edge_count() == 0);
  CHECK(keys(t0.dummies) == std::set<Label>{"*0"});

  auto t1 = truncation(graph("ray"), 1);
  CHECK(t1.graph.vertices() == std::set<Label>{"0", "*1"});
  CHECK(t1.graph.edge_count() == 1);
  CHECK(t1.graph.ends_of("0--1") == std::pair<Label, Label>{"*1", "0"});
  CHECK(t1.projection.at("2") == "*1");

  auto bt = truncation(graph("binary_tree"), 2);
  CHECK(bt.graph.vertex_count() == 7);  // r, r0, r1 + 4 dummies
  CHECK(bt.graph.edge_count() == 6);
  CHECK(keys(bt.dummies) ==
        std::set<Label>{"*r00", "*r01", "*r10", "*r11"});
  CHECK(bt.graph.ends_of("r0--r00") == std::pair<Label, Label>{"*r00", "r0"});

  // stacked cliques keep parallel edges into the contracted tail
  auto st = truncation(graph("stacked_cliques"), 1);
  CHECK(st.graph.vertices() == std::set<Label>{"c1.0", "*c2.0"});
  CHECK(st.graph.edge_count() == 2);
  CHECK(st.graph.ends_of("c1.0--c2.0") ==
        std::pair<Label, Label>{"*c2.0", "c1.0"});
  CHECK(st.graph.ends_of("c1.0--c2.1") ==
        std::pair<Label, Label>{"*c2.0", "c1.0"});

  auto grid = truncation(graph("quadrant_grid"), 2);
  CHECK(grid.graph.vertex_count() == 4);  // three reals + one dummy
  CHECK(keys(grid.dummies) == std::set<Label>{"*0,2"});
  CHECK(grid.graph.edge_count() == 6);    // 2 inside S_2, 4 in parallel

  // loop-freeness and dummy monotonicity across the catalog
  for (const char* name :
       {"ray", "double_ray", "binary_tree", "quadrant_grid", "ladder",
        "stacked_cliques"}) {
    std::size_t prev = 1;
    for (int n = 1; n <= 4; ++n) {
      auto t = truncation(graph(name), n);
      for (const auto& [e, uv] : t.graph.edges())
        CHECK_MESSAGE(uv.first != uv.second, name << " stage " << n << " edge " << e);
      CHECK(t.dummies.size() >= prev);
      prev = t.dummies.size();
      CHECK(t.stage == n);
    }
  }
}

TEST_CASE("truncation export lists its dummies") {
  auto text = to_json(truncation(graph("binary_tree"), 1));
  CHECK(text.find("\"dummies\"") != std::string::npos);
  CHECK(text.find("\"*r0\"") != std::string::npos);
  CHECK(text.find("\"*r1\"") != std::string::npos);
}

TEST_CASE("bonding maps collapse one layer at a time") {
  auto bm = bonding(graph("ray"), 1);
  CHECK(bm.stage == 1);
  CHECK(bm.vertex_map.at("0") == "0");
  CHECK(bm.vertex_map.at("1") == "*1");
  CHECK(bm.vertex_map.at("*2") == "*1");
  CHECK(bm.kept_edges == std::set<Label>{"0--1"});
  CHECK(bm.collapsed_edges.at("1--2") == "*1");

  // the four stage-2 dummies of the binary tree map 2-to-1 onto stage 1
  auto bt = bonding(graph("binary_tree"), 1);
  CHECK(bt.vertex_map.at("*r00") == "*r0");
  CHECK(bt.vertex_map.at("*r01") == "*r0");
  CHECK(bt.vertex_map.at("*r10") == "*r1");
  CHECK(bt.vertex_map.at("*r11") == "*r1");
  CHECK(bt.vertex_map.at("r0") == "*r0");

  // identity on surviving vertices, surjectivity onto the coarse stage
  for (const char* name :
       {"ray", "double_ray", "binary_tree", "quadrant_grid", "ladder",
        "stacked_cliques"}) {
    for (int n = 0; n <= 3; ++n) {
      auto g = graph(name);
      auto bm2 = bonding(g, n);
      auto coarse = truncation(g, n);
      auto fine = truncation(g, n + 1);
      std::set<Label> image;
      for (const auto& [v, w] : bm2.vertex_map) {
        CHECK(fine.graph.has_vertex(v));
        CHECK(coarse.graph.has_vertex(w));
        if (coarse.graph.has_vertex(v) && coarse.dummies.count(v) == 0)
          CHECK(v == w);
        image.insert(w);
      }
      CHECK(image == coarse.graph.vertices());
      CHECK(bm2.kept_edges.size() + bm2.collapsed_edges.size() ==
            fine.graph.edge_count());
      for (const auto& e : bm2.kept_edges) CHECK(coarse.graph.has_edge(e));
    }
  }
}

TEST_CASE("end prefixes follow the truncation system") {
  auto g = graph("ray");
  auto ep = end_prefix(g, find_builder("ray").ends[0], 3);
  CHECK(ep.dummies == std::vector<Label>{"*1", "*2", "*3"});

  auto dr = graph("double_ray");
  auto pos = end_prefix(dr, find_builder("double_ray").ends[0], 2);
  auto neg = end_prefix(dr, find_builder("double_ray").ends[1], 2);
  CHECK(pos.dummies == std::vector<Label>{"*1", "*2"});
  CHECK(neg.dummies == std::vector<Label>{"*-1", "*-2"});

  // binary tree: ends 00 and 01 agree at stage 1 and split at stage 2
  auto bt = graph("binary_tree");
  const auto& ends = find_builder("binary_tree").ends;
  auto e00 = end_prefix(bt, ends[0], 2);
  auto e01 = end_prefix(bt, ends[1], 2);
  CHECK(e00.dummies[0] == e01.dummies[0]);
  CHECK(e00.dummies[1] == "*r00");
  CHECK(e01.dummies[1] == "*r01");

  // bonding sends the stage-(k+1) dummy to the stage-k dummy
  for (const char* name : {"ray", "double_ray", "binary_tree", "ladder"}) {
    auto gg = graph(name);
    for (const auto& end : find_builder(name).ends) {
      auto pre = end_prefix(gg, end, 4);
      for (int k = 1; k < 4; ++k) {
        auto bm = bonding(gg, k);
        CHECK(bm.vertex_map.at(pre.dummies[k]) == pre.dummies[k - 1]);
      }
    }
  }

  OracleEnd lazy_end{"stuck", [](int) { return Label("0"); }};
  CHECK_THROWS_AS(end_prefix(g, lazy_end, 2), std::invalid_argument);
}

TEST_CASE("the builder catalog is closed under exploration") {
  CHECK_THROWS_WITH_AS(find_builder("moebius"),
                       "unknown graph 'moebius'; available: ray, double_ray, "
                       "binary_tree, quadrant_grid, ladder, stacked_cliques, "
                       "single, blowup_lf, blowup_gl",
                       std::invalid_argument);
  for (const auto& b : builder_catalog()) {
    auto pre = prefix(b.make(), 2);
    CHECK(pre.graph.vertex_count() >= 1);
  }
}
