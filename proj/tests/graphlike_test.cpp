#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <string>
#include <vector>

#include "doctest.h"
#include "ends/graphlike.hpp"

using namespace ends;

namespace {

std::vector<Label> edge_labels(const FiniteMultigraph& g) {
  std::vector<Label> out;
  for (const auto& [e, uv] : g.edges()) {
    (void)uv;
    out.push_back(e);
  }
  return out;
}

// stage sizes straight from the finite graph: |V(G_k)| is the number of
// components left after deleting the first k edges
std::vector<std::size_t> component_count_oracle(
    const FiniteMultigraph& g, const std::vector<Label>& order) {
  std::vector<std::size_t> counts;
  for (std::size_t k = 0; k <= order.size(); ++k) {
    std::map<Label, std::pair<Label, Label>> rest = g.edges();
    for (std::size_t i = 0; i < k; ++i) rest.erase(order[i]);
    counts.push_back(components(FiniteMultigraph(g.vertices(), rest)).size());
  }
  return counts;
}

}  // namespace

TEST_CASE("wedge-of-circles stages grow loop by split") {
  EdgeContractionSystem sys = hawaiian(2);
  CHECK(sys.root() == "z");
  CHECK(sys.size() == 4);

  CHECK(sys.expand(0) == FiniteMultigraph({"z"}, {}));
  CHECK(sys.expand(1) == FiniteMultigraph({"z"}, {{"e1", {"z", "z"}}}));
  CHECK(sys.expand(2) == FiniteMultigraph({"z", "z1"}, {{"e1", {"z", "z1"}},
                                                        {"e2", {"z", "z1"}}}));
  CHECK(sys.expand(3) ==
        FiniteMultigraph({"z", "z1"}, {{"e1", {"z", "z1"}},
                                       {"e2", {"z", "z1"}},
                                       {"e3", {"z", "z"}}}));
  CHECK(sys.expand(4) ==
        FiniteMultigraph({"z", "z1", "z2"}, {{"e1", {"z", "z1"}},
                                             {"e2", {"z", "z1"}},
                                             {"e3", {"z", "z2"}},
                                             {"e4", {"z", "z2"}}}));
  CHECK_THROWS_AS(sys.expand(5), std::invalid_argument);
  CHECK_THROWS_AS(sys.expand(-1), std::invalid_argument);

  Report r = validate(hawaiian(4), 8);
  CHECK_MESSAGE(r.pass, to_json(r));
  CHECK_THROWS_AS(validate(sys, 5), std::invalid_argument);
}

TEST_CASE("three parallel strands contract one loop at a time") {
  EdgeContractionSystem sys = theta_system();
  std::vector<std::size_t> sizes;
  for (int n = 0; n <= 3; ++n) sizes.push_back(sys.expand(n).vertex_count());
  CHECK(sizes == std::vector<std::size_t>{1, 1, 1, 2});
  auto oracle = component_count_oracle(theta_graph(), {"e1", "e2", "e3"});
  CHECK(std::vector<std::size_t>(oracle.begin(), oracle.end()) == sizes);
  CHECK(sys.expand(2) ==
        FiniteMultigraph({"u"}, {{"e1", {"u", "u"}}, {"e2", {"u", "u"}}}));
  CHECK(sys.expand(3) == theta_graph());
  CHECK(validate(sys, 3).pass);
}

TEST_CASE("cycle systems rebuild their cycles") {
  EdgeContractionSystem c3 = cycle_system(3);
  CHECK(c3.expand(1) == FiniteMultigraph({"v0"}, {{"e1", {"v0", "v0"}}}));
  CHECK(c3.expand(2) == FiniteMultigraph({"v0", "v1"}, {{"e1", {"v0", "v1"}},
                                                        {"e2", {"v0", "v1"}}}));
  CHECK(c3.expand(3) == cycle_graph(3));
  for (int n : {1, 2, 3, 5, 6}) {
    EdgeContractionSystem sys = cycle_system(n);
    CHECK(sys.expand(n) == cycle_graph(n));
    CHECK_MESSAGE(validate(sys, n).pass, "cycle " << n);
  }
}

TEST_CASE("rebuilding survives every edge order") {
  struct Case {
    FiniteMultigraph g;
    const char* name;
  };
  for (const auto& [g, name] : {Case{cycle_graph(3), "c3"},
                                Case{theta_graph(), "theta"},
                                Case{cycle_graph(5), "c5"}}) {
    std::vector<Label> order = edge_labels(g);
    std::sort(order.begin(), order.end());
    std::size_t tried = 0;
    do {
      EdgeContractionSystem sys = from_finite_graph(g, order);
      CHECK(sys.expand(sys.size()) == g);
      Report r = validate(sys, sys.size());
      CHECK_MESSAGE(r.pass, name << ": " << to_json(r));
      ++tried;
    } while (std::next_permutation(order.begin(), order.end()));
    CHECK(tried == (order.size() == 3 ? 6u : 120u));
  }
  CHECK(validate(dumbbell3_system(), 7).pass);
  CHECK(dumbbell3_system().expand(7) == dumbbell3_graph());
  CHECK(validate(k4_system(), 6).pass);
  CHECK(k4_system().expand(6) == k4_graph());
}

TEST_CASE("rebuilding rejects bad inputs") {
  CHECK_THROWS_AS(from_finite_graph(FiniteMultigraph(), {}),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      from_finite_graph(FiniteMultigraph({"a", "b"}, {}), {}),
      std::invalid_argument);  // disconnected
  CHECK_THROWS_AS(from_finite_graph(cycle_graph(3), {"e1", "e2"}),
                  std::invalid_argument);
  CHECK_THROWS_AS(from_finite_graph(cycle_graph(3), {"e1", "e2", "e2"}),
                  std::invalid_argument);
  CHECK_THROWS_AS(from_finite_graph(cycle_graph(3), {"e1", "e2", "nope"}),
                  std::invalid_argument);
}

TEST_CASE("malformed steps are rejected with reasons") {
  auto expand_throws = [](std::vector<UncontractionStep> steps) {
    EdgeContractionSystem sys("z", std::move(steps));
    CHECK_THROWS_AS(sys.expand(sys.size()), std::invalid_argument);
    // and validate reports instead of throwing
    Report r = validate(sys, sys.size());
    CHECK_FALSE(r.pass);
    CHECK_FALSE(r.witnesses.empty());
  };
  // loop at a vertex that does not exist
  expand_throws({{"e1", LoopStep{"ghost"}}});
  // reused edge label
  expand_throws({{"e1", LoopStep{"z"}}, {"e1", LoopStep{"z"}}});
  // split keeping the wrong label
  expand_throws({{"e1", SplitStep{"z", {"w", "z"}, {}}}});
  // split onto an existing vertex
  expand_throws({{"e1", LoopStep{"z"}},
                 {"e2",
                  SplitStep{"z",
                            {"z", "z"},
                            {{Incidence{"e1", 0}, "z"},
                             {Incidence{"e1", 1}, "z"}}}}});
  // missing incidence in assign
  expand_throws({{"e1", LoopStep{"z"}},
                 {"e2", SplitStep{"z", {"z", "z9"}, {{Incidence{"e1", 0}, "z"}}}}});
  // alien incidence in assign
  expand_throws({{"e1", LoopStep{"z"}},
                 {"e2",
                  SplitStep{"z",
                            {"z", "z9"},
                            {{Incidence{"e1", 0}, "z"},
                             {Incidence{"e1", 1}, "z9"},
                             {Incidence{"e7", 0}, "z"}}}}});
  // assign target outside the split pair
  expand_throws({{"e1", LoopStep{"z"}},
                 {"e2",
                  SplitStep{"z",
                            {"z", "z9"},
                            {{Incidence{"e1", 0}, "z"},
                             {Incidence{"e1", 1}, "elsewhere"}}}}});
  CHECK_THROWS_AS(EdgeContractionSystem("", {}), std::invalid_argument);
}

TEST_CASE("systems round-trip through JSON") {
  for (int which = 0; which < 4; ++which) {
    EdgeContractionSystem sys = which == 0   ? hawaiian(3)
                                : which == 1 ? theta_system()
                                : which == 2 ? cycle_system(4)
                                             : k4_system();
    std::string text = to_json(sys);
    EdgeContractionSystem back = system_from_json(text);
    CHECK(to_json(back) == text);
    CHECK(back.root() == sys.root());
    REQUIRE(back.size() == sys.size());
    for (int n = 0; n <= sys.size(); ++n)
      CHECK(back.expand(n) == sys.expand(n));
  }
  CHECK_THROWS_AS(system_from_json("not json"), std::invalid_argument);
  CHECK_THROWS_AS(system_from_json("{}"), std::invalid_argument);
  CHECK_THROWS_AS(system_from_json(R"({"root":"z","steps":[{}]})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      system_from_json(
          R"({"root":"z","steps":[{"edge":"e1","kind":"twist","at":"z"}]})"),
      std::invalid_argument);
  CHECK_THROWS_AS(
      system_from_json(
          R"({"root":"z","steps":[{"edge":"e1","kind":"split","at":"z"}]})"),
      std::invalid_argument);
  CHECK_THROWS_AS(
      system_from_json(
          R"({"root":"z","steps":[{"edge":"e","kind":"split","at":"z",
              "into":["z","w"],"assign":{"oops":"z"}}]})"),
      std::invalid_argument);
}

TEST_CASE("gasket approximations come out the right size") {
  std::vector<Label> order1;
  FiniteMultigraph g1 = sierpinski_graph(1, &order1);
  CHECK(g1.vertex_count() == 9);
  CHECK(g1.edge_count() == 12);
  CHECK(order1.size() == 12);
  CHECK(order1[0] == "c.01");
  CHECK(order1[1] == "c.02");
  CHECK(order1[2] == "c.12");
  CHECK(g1.ends_of("c.01") == std::make_pair(Label("s0.1"), Label("s1.0")));
  CHECK(g1.ends_of("t2.01") == std::make_pair(Label("s2.0"), Label("s2.1")));

  std::vector<Label> order2;
  FiniteMultigraph g2 = sierpinski_graph(2, &order2);
  CHECK(g2.vertex_count() == 27);
  CHECK(g2.edge_count() == 39);
  // coarse connectors come before fine ones
  CHECK(order2[0] == "c.01");
  CHECK(order2[3] == "c0.01");
  CHECK(g2.ends_of("c.01") == std::make_pair(Label("s01.1"), Label("s10.0")));

  EdgeContractionSystem sys = sierpinski_graphlike(1);
  CHECK(sys.size() == 12);
  CHECK(sys.expand(12) == g1);
  CHECK(validate(sys, 12).pass);
  // after the three coarse connectors the gasket has split into its
  // three corner triangles
  CHECK(sys.expand(3).vertex_count() == 3);
}

TEST_CASE("system specs parse against the catalog") {
  CHECK(parse_system_spec("hawaiian:3").size() == 6);
  CHECK(parse_system_spec("hawaiian").size() == 8);
  CHECK(parse_system_spec("theta").size() == 3);
  CHECK(parse_system_spec("cycle:5").size() == 5);
  CHECK(parse_system_spec("cycle").size() == 3);
  CHECK(parse_system_spec("k4").size() == 6);
  CHECK(parse_system_spec("dumbbell3").size() == 7);
  CHECK(parse_system_spec("sierpinski:1").size() == 12);
  CHECK_THROWS_WITH_AS(
      parse_system_spec("moebius"),
      "unknown system 'moebius'; available: cycle:n, dumbbell3, hawaiian:m, "
      "k4, sierpinski:d, theta",
      std::invalid_argument);
  CHECK_THROWS_AS(parse_system_spec("theta:3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_system_spec("cycle:x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_system_spec("cycle:"), std::invalid_argument);
  CHECK(system_catalog_names().size() == 6);
}
