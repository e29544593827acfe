#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <string>
#include <vector>

#include "doctest.h"
#include "ends/embed_gl.hpp"

using namespace ends;

namespace {

BlowupVertex bv(const TreeAddr& t, int i) { return BlowupVertex{t, i}; }

bool has_witness(const Report& r, const std::string& needle) {
  for (const auto& w : r.witnesses)
    if (w.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("the first circle lands around the root block") {
  GLEmbedding emb = run(hawaiian(1), 2);
  CHECK(emb.stages[0].g_map.at("z") == "");
  CHECK(emb.stages[0].p_map.empty());

  CHECK(emb.stages[1].g_map.at("z") == "0");
  CHECK(emb.stages[1].p_map.at("e1") ==
        BlowupPath{bv("0", 0), bv("", 0), bv("0", 1)});
  CHECK(emb.stages[1].used.at("0") == std::set<int>{0, 1});
  CHECK(emb.stages[1].used.at("") == std::set<int>{0});

  CHECK(emb.stages[2].g_map.at("z") == "00");
  CHECK(emb.stages[2].g_map.at("z1") == "01");
  CHECK(emb.stages[2].p_map.at("e1") ==
        BlowupPath{bv("00", 0), bv("0", 0), bv("", 0), bv("0", 1),
                   bv("01", 0)});
  CHECK(emb.stages[2].p_map.at("e2") ==
        BlowupPath{bv("00", 1), bv("0", 2), bv("01", 1)});

  CHECK_THROWS_AS(run(hawaiian(1), 3), std::invalid_argument);
  CHECK_THROWS_AS(run(hawaiian(1), -1), std::invalid_argument);
}

TEST_CASE("later circles reuse the torn block's old home for their apex") {
  GLEmbedding emb = run(hawaiian(2), 4);
  CHECK(emb.stages[3].g_map.at("z") == "000");
  CHECK(emb.stages[3].g_map.at("z1") == "010");
  CHECK(emb.stages[3].p_map.at("e3") ==
        BlowupPath{bv("000", 2), bv("00", 2), bv("000", 3)});
  CHECK(emb.stages[4].g_map.at("z") == "0000");
  CHECK(emb.stages[4].g_map.at("z2") == "0001");
  CHECK(emb.stages[4].g_map.at("z1") == "0100");
  Report r = verify_gl(emb);
  CHECK_MESSAGE(r.pass, to_json(r));
}

TEST_CASE("the construction verifies across the system catalog") {
  struct Case {
    EdgeContractionSystem sys;
    int horizon;
    const char* name;
  };
  for (auto& [sys, horizon, name] :
       std::vector<Case>{{hawaiian(4), 8, "hawaiian"},
                         {cycle_system(3), 3, "cycle3"},
                         {cycle_system(6), 6, "cycle6"},
                         {theta_system(), 3, "theta"},
                         {k4_system(), 6, "k4"},
                         {dumbbell3_system(), 7, "dumbbell3"},
                         {sierpinski_graphlike(1), 12, "gasket"}}) {
    GLEmbedding emb = run(sys, horizon);
    Report r = verify_gl(emb);
    CHECK_MESSAGE(r.pass, name << ": " << to_json(r));
    CHECK(r.witnesses.empty());
  }
}

TEST_CASE("verification notices tampered embeddings") {
  GLEmbedding emb = run(hawaiian(2), 4);
  REQUIRE(verify_gl(emb).pass);

  SUBCASE("vertex block dragged out of its parent subtree") {
    emb.stages[2].g_map.at("z1") = "10";
    Report r = verify_gl(emb);
    CHECK_FALSE(r.pass);
    CHECK(has_witness(r, "z1"));
  }
  SUBCASE("stray allocation in the used ledger") {
    emb.stages[3].used["00"].insert(4);
    Report r = verify_gl(emb);
    CHECK_FALSE(r.pass);
    CHECK(has_witness(r, "ledger"));
  }
  SUBCASE("two paths forced through one position") {
    emb.stages[2].p_map.at("e2")[1] = emb.stages[2].p_map.at("e1")[1];
    Report r = verify_gl(emb);
    CHECK_FALSE(r.pass);
  }
  SUBCASE("path end pulled below its level") {
    emb.stages[2].p_map.at("e2").front() = bv("0", 3);
    Report r = verify_gl(emb);
    CHECK_FALSE(r.pass);
  }
  SUBCASE("missing edge path") {
    emb.stages[4].p_map.erase("e3");
    Report r = verify_gl(emb);
    CHECK_FALSE(r.pass);
    CHECK(has_witness(r, "cover E"));
  }
}

TEST_CASE("stage maps send vertices to dummies and edges to walks") {
  GLEmbedding emb = run(hawaiian(1), 2);

  StageMap m0 = stage_map(emb, 0);
  CHECK(m0.target.graph == FiniteMultigraph({"*"}, {}));
  CHECK(m0.vertex_map.at("z") == "*");
  CHECK(m0.edge_map.empty());

  StageMap m1 = stage_map(emb, 1);
  CHECK(m1.target.stage == 1);
  CHECK(m1.vertex_map.at("z") == "*0");
  CHECK(m1.edge_map.at("e1") == std::vector<Label>{"*0", "b.0", "*0"});
  // walk elements are vertices of the target truncation
  for (const auto& x : m1.edge_map.at("e1"))
    CHECK(m1.target.graph.has_vertex(x));

  StageMap m2 = stage_map(emb, 2);
  CHECK(m2.vertex_map.at("z") == "*00");
  CHECK(m2.vertex_map.at("z1") == "*01");
  CHECK(m2.edge_map.at("e2") ==
        std::vector<Label>{"*00", "b0.2", "*01"});
  CHECK(m2.edge_map.at("e1") ==
        std::vector<Label>{"*00", "b0.0", "b.0", "b0.1", "*01"});
  for (const auto& [e, walk] : m2.edge_map)
    for (const auto& x : walk) CHECK(m2.target.graph.has_vertex(x));

  CHECK_THROWS_AS(stage_map(emb, 3), std::invalid_argument);
}

TEST_CASE("a cycle closes into a walk through three dummies") {
  GLEmbedding emb = run(cycle_system(3), 3);
  REQUIRE(verify_gl(emb).pass);
  StageMap m = stage_map(emb, 3);
  std::set<std::pair<Label, Label>> joined;
  for (const auto& [e, walk] : m.edge_map) {
    (void)e;
    joined.insert(std::minmax(walk.front(), walk.back()));
  }
  // three edges, three distinct dummy pairs: a triangle of walks
  CHECK(joined.size() == 3);
  std::set<Label> dummies;
  for (const auto& [a, b] : joined) {
    dummies.insert(a);
    dummies.insert(b);
  }
  CHECK(dummies.size() == 3);
  for (const auto& d : dummies) CHECK(m.target.dummies.count(d) == 1);
}

TEST_CASE("consecutive stage maps commute") {
  struct Case {
    EdgeContractionSystem sys;
    int horizon;
    const char* name;
  };
  for (auto& [sys, horizon, name] :
       std::vector<Case>{{hawaiian(3), 6, "hawaiian"},
                         {cycle_system(4), 4, "cycle"},
                         {theta_system(), 3, "theta"},
                         {sierpinski_graphlike(1), 6, "gasket"}}) {
    GLEmbedding emb = run(sys, horizon);
    for (int n = 0; n < horizon; ++n) {
      Report r = check_commute(emb, n);
      CHECK_MESSAGE(r.pass, name << " stage " << n << ": " << to_json(r));
    }
  }

  GLEmbedding emb = run(hawaiian(2), 4);
  CHECK_THROWS_AS(check_commute(emb, 4), std::invalid_argument);
  SUBCASE("a moved block breaks the square") {
    emb.stages[2].g_map.at("z1") = "10";
    Report r = check_commute(emb, 1);
    CHECK_FALSE(r.pass);
    CHECK(has_witness(r, "z1"));
  }
}

TEST_CASE("edge paths grow into double ray prefixes") {
  GLEmbedding emb = run(hawaiian(4), 8);
  for (int b = 1; b <= 8; ++b) {
    Label e = "e" + std::to_string(b);
    for (int n = b; n <= 8; ++n)
      CHECK(double_ray_prefix(emb, e, n).size() ==
            3 + 2 * static_cast<std::size_t>(n - b));
  }
  BlowupPath p7 = double_ray_prefix(emb, "e1", 7);
  BlowupPath p8 = double_ray_prefix(emb, "e1", 8);
  BlowupPath inner(std::next(p8.begin()), std::prev(p8.end()));
  BlowupPath rev(p7.rbegin(), p7.rend());
  CHECK((inner == p7 || inner == rev));
  CHECK_THROWS_AS(double_ray_prefix(emb, "e9", 8), std::invalid_argument);
  CHECK_THROWS_AS(double_ray_prefix(emb, "e1", 9), std::invalid_argument);
}

TEST_CASE("vertices separate into distinct blocks") {
  GLEmbedding emb = run(hawaiian(2), 4);
  Report r = check_vertex_separation(emb, 4);
  CHECK_MESSAGE(r.pass, to_json(r));
  CHECK(has_witness(r, "ok: z|z1 separate at stage 2"));
  CHECK(has_witness(r, "ok: z|z2 separate at stage 4"));
  CHECK(has_witness(r, "ok: z1|z2 separate at stage 2"));

  GLEmbedding k4 = run(k4_system(), 6);
  Report rk = check_vertex_separation(k4, 6);
  CHECK(rk.pass);
  CHECK(rk.witnesses.size() == 6);  // one line per vertex pair
  CHECK_THROWS_AS(check_vertex_separation(k4, 7), std::invalid_argument);
}
