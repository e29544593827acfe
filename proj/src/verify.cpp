#include "ends/verify.hpp"

#include <algorithm>
#include <stdexcept>

#include "ends/embed_gl.hpp"
#include "ends/embed_lf.hpp"
#include "ends/graphlike.hpp"

namespace ends {

namespace {

std::string stage_tag(int n) { return "stage " + std::to_string(n) + ": "; }

std::set<Label> key_set(const std::map<Label, Label>& m) {
  std::set<Label> out;
  for (const auto& [k, v] : m) {
    (void)v;
    out.insert(k);
  }
  return out;
}

}  // namespace

Report check_bonding(const LazyGraph& g, int stage, const BondingMap& bm) {
  if (stage < 0) throw std::invalid_argument("bonding stage must be >= 0");
  Report r;
  r.check = "bonding map onto stage " + std::to_string(stage);
  r.stage_lo = stage;
  r.stage_hi = stage + 1;

  Truncation fine = truncation(g, stage + 1);
  Truncation coarse = truncation(g, stage);
  r.require(bm.stage == stage, "map claims stage " + std::to_string(bm.stage));
  r.require(key_set(bm.vertex_map) == fine.graph.vertices(),
            "vertex map does not cover the finer truncation");

  auto image = [&](const Label& v) -> const Label* {
    auto it = bm.vertex_map.find(v);
    return it == bm.vertex_map.end() ? nullptr : &it->second;
  };

  std::set<Label> hit;
  for (const auto& [v, img] : bm.vertex_map) {
    if (!coarse.graph.has_vertex(img)) {
      r.require(false, "image of " + v + " is not a stage-" +
                           std::to_string(stage) + " vertex");
      continue;
    }
    hit.insert(img);
    bool v_is_dummy = fine.dummies.count(v) > 0;
    bool img_is_dummy = coarse.dummies.count(img) > 0;
    if (!v_is_dummy && coarse.graph.has_vertex(v) &&
        coarse.dummies.count(v) == 0) {
      r.require(img == v, "interior vertex " + v + " moved to " + img);
    } else {
      r.require(img_is_dummy,
                "boundary vertex " + v + " lands on interior " + img);
    }
  }
  r.require(hit == coarse.graph.vertices(),
            "vertex map misses part of the coarser truncation");

  std::set<Label> listed = bm.kept_edges;
  bool overlap = false;
  for (const auto& [e, c] : bm.collapsed_edges) {
    (void)c;
    overlap = !listed.insert(e).second || overlap;
  }
  r.require(!overlap, "an edge is both kept and collapsed");
  std::set<Label> fine_edges;
  for (const auto& [e, uv] : fine.graph.edges()) {
    (void)uv;
    fine_edges.insert(e);
  }
  r.require(listed == fine_edges,
            "kept and collapsed edges do not partition the finer edges");

  for (const auto& e : bm.kept_edges) {
    if (!fine.graph.has_edge(e) || !coarse.graph.has_edge(e)) {
      r.require(false, "kept edge " + e + " is missing from a truncation");
      continue;
    }
    const auto& uv = fine.graph.ends_of(e);
    const Label* a = image(uv.first);
    const Label* b = image(uv.second);
    if (!a || !b) continue;  // coverage failure already recorded
    r.require(*a != *b, "kept edge " + e + " has a collapsed endpoint pair");
    std::pair<Label, Label> want = std::minmax(*a, *b);
    r.require(coarse.graph.ends_of(e) == want,
              "kept edge " + e + " lands on the wrong endpoints");
  }
  for (const auto& [e, c] : bm.collapsed_edges) {
    if (!fine.graph.has_edge(e)) {
      r.require(false, "collapsed edge " + e + " is not a finer edge");
      continue;
    }
    const auto& uv = fine.graph.ends_of(e);
    const Label* a = image(uv.first);
    const Label* b = image(uv.second);
    if (!a || !b) continue;
    r.require(*a == *b && *a == c,
              "collapsed edge " + e + " does not land on " + c);
  }
  std::set<Label> coarse_edges;
  for (const auto& [e, uv] : coarse.graph.edges()) {
    (void)uv;
    coarse_edges.insert(e);
  }
  r.require(bm.kept_edges == coarse_edges,
            "kept edges do not reproduce the coarser edge set");
  return r;
}

Report suite_inverse_system(const std::string& graph_name, int max_stage) {
  const GraphBuilder& builder = find_builder(graph_name);
  if (max_stage < 1)
    throw std::invalid_argument("inverse system suite needs max_stage >= 1");
  LazyGraph g = builder.make();

  Report r;
  r.check = "inverse system of " + graph_name + " through stage " +
            std::to_string(max_stage);
  r.stage_lo = 1;
  r.stage_hi = max_stage;

  std::vector<std::size_t> dummy_counts;
  for (int n = 1; n <= max_stage; ++n) {
    try {
      Truncation t = truncation(g, n);
      GraphPrefix pre = prefix(g, n);
      FrontierDecomposition dec = frontier(g, n - 1);
      dummy_counts.push_back(t.dummies.size());

      // rebuild the truncation from prefix plus frontier and compare
      std::set<Label> verts;
      for (int d = 0; d < n; ++d)
        verts.insert(pre.layers[d].begin(), pre.layers[d].end());
      std::map<Label, Label> dummy_of;  // boundary vertex -> dummy label
      std::set<Label> dummies;
      for (const auto& piece : dec.pieces) {
        Label dummy = "*" + *piece.vertices.begin();
        dummies.insert(dummy);
        for (const auto& v : piece.vertices) dummy_of.emplace(v, dummy);
      }
      std::set<Label> expected_verts = verts;
      expected_verts.insert(dummies.begin(), dummies.end());
      r.require(t.graph.vertices() == expected_verts,
                stage_tag(n) + "vertex set disagrees with prefix + frontier");
      std::set<Label> t_dummies;
      for (const auto& [d, id] : t.dummies) {
        (void)id;
        t_dummies.insert(d);
      }
      r.require(t_dummies == dummies,
                stage_tag(n) + "dummy labels disagree with the frontier");

      std::map<Label, std::pair<Label, Label>> expected_edges;
      for (const auto& [e, uv] : pre.graph.edges()) {
        bool u_in = verts.count(uv.first) > 0;
        bool v_in = verts.count(uv.second) > 0;
        if (u_in && v_in)
          expected_edges.emplace(e, uv);
        else if (u_in)
          expected_edges.emplace(e,
                                 std::minmax(uv.first, dummy_of.at(uv.second)));
        else if (v_in)
          expected_edges.emplace(e,
                                 std::minmax(uv.second, dummy_of.at(uv.first)));
      }
      r.require(t.graph.edges() == expected_edges,
                stage_tag(n) + "edges disagree with prefix + frontier");

      for (const auto& [e, uv] : t.graph.edges())
        r.require(uv.first != uv.second, stage_tag(n) + "loop at " + uv.first);

      // parallel dummy edges count the cut into each component
      for (const auto& piece : dec.pieces) {
        Label dummy = "*" + *piece.vertices.begin();
        std::size_t cut =
            edge_cut(pre.graph, pre.layers[n - 1], piece.vertices).size();
        r.require(degree(t.graph, dummy) == cut,
                  stage_tag(n) + "dummy " + dummy + " has degree " +
                      std::to_string(degree(t.graph, dummy)) + ", cut is " +
                      std::to_string(cut));
      }

      // projection fixes the kept region and respects the pieces
      for (const auto& v : verts)
        r.require(t.projection.count(v) > 0 && t.projection.at(v) == v,
                  stage_tag(n) + "projection moves interior vertex " + v);
      for (const auto& piece : dec.pieces)
        for (const auto& v : piece.vertices)
          r.require(t.projection.count(v) > 0 &&
                        t.projection.at(v) == dummy_of.at(v),
                    stage_tag(n) + "projection misroutes " + v);
    } catch (const std::exception& ex) {
      r.require(false, stage_tag(n) + ex.what());
    }
  }

  for (std::size_t i = 1; i < dummy_counts.size(); ++i)
    r.require(dummy_counts[i] >= dummy_counts[i - 1],
              "dummy count drops between stages " + std::to_string(i) +
                  " and " + std::to_string(i + 1));

  for (int n = 1; n < max_stage; ++n) {
    try {
      r.absorb(check_bonding(g, n, bonding(g, n)));
    } catch (const std::exception& ex) {
      r.require(false, stage_tag(n) + ex.what());
    }
  }

  for (const auto& end : builder.ends) {
    try {
      EndPrefix ep = end_prefix(g, end, max_stage);
      for (int k = 1; k <= max_stage; ++k)
        r.require(truncation(g, k).dummies.count(ep.dummies[k - 1]) > 0,
                  "end " + end.name + " misses its stage-" +
                      std::to_string(k) + " dummy");
      for (int k = 1; k < max_stage; ++k) {
        BondingMap bm = bonding(g, k);
        auto it = bm.vertex_map.find(ep.dummies[k]);
        r.require(it != bm.vertex_map.end() && it->second == ep.dummies[k - 1],
                  "end " + end.name + " is not bonding-coherent at stage " +
                      std::to_string(k));
      }
    } catch (const std::exception& ex) {
      r.require(false, "end " + end.name + ": " + ex.what());
    }
  }
  if (builder.ends.size() > 1 && max_stage >= 2) {
    try {
      std::set<Label> finals;
      for (const auto& end : builder.ends)
        finals.insert(end_prefix(g, end, max_stage).dummies.back());
      r.require(finals.size() == builder.ends.size(),
                "oracle ends do not separate by stage " +
                    std::to_string(max_stage));
    } catch (const std::exception& ex) {
      r.require(false, std::string("end separation: ") + ex.what());
    }
  }
  return r;
}

Report suite_thm32(const std::string& graph_name, int depth) {
  const GraphBuilder& builder = find_builder(graph_name);
  if (depth < 0) throw std::invalid_argument("embedding depth must be >= 0");
  LazyGraph g = builder.make();

  Report r;
  r.check = "tree-blowup embedding of " + graph_name + " at depth " +
            std::to_string(depth);
  r.stage_lo = 0;
  r.stage_hi = depth;

  try {
    EmbeddingState st = embed(g, depth);
    r.absorb(verify_embedding(g, st));

    // the construction is monotone: shallower runs are literal submaps
    for (int k = 0; k < depth; ++k) {
      EmbeddingState sub = embed(g, k);
      bool agrees = true;
      for (const auto& [v, pos] : sub.vertex_map) {
        auto it = st.vertex_map.find(v);
        agrees = agrees && it != st.vertex_map.end() && it->second == pos;
      }
      for (const auto& [e, path] : sub.edge_map) {
        auto it = st.edge_map.find(e);
        agrees = agrees && it != st.edge_map.end() && it->second == path;
      }
      for (int j = 0; j <= k; ++j)
        agrees = agrees && sub.block_assignment[j] == st.block_assignment[j];
      r.require(agrees, "the depth-" + std::to_string(k) +
                            " run is not a submap of the full embedding");
    }

    for (int n = 0; n <= depth; ++n) r.absorb(verify_star(g, st, n));

    std::map<std::string, TreeAddr> final_blocks;
    for (const auto& end : builder.ends) {
      try {
        LiftedEndPrefix lifted = lift_end(st, end_prefix(g, end, depth));
        bool chain = lifted.blocks.size() ==
                     static_cast<std::size_t>(depth) + 1;
        for (std::size_t k = 0; k + 1 < lifted.blocks.size(); ++k)
          chain = chain && addr_prefix(lifted.blocks[k], lifted.blocks[k + 1]);
        for (std::size_t k = 0; k < lifted.blocks.size(); ++k)
          chain = chain &&
                  level(lifted.blocks[k]) == st.h(static_cast<int>(k));
        r.require(chain, "end " + end.name +
                             " does not lift to a descending block chain");
        if (!lifted.blocks.empty())
          final_blocks.emplace(end.name, lifted.blocks.back());
      } catch (const std::exception& ex) {
        r.require(false, "end " + end.name + ": " + ex.what());
      }
    }
    if (builder.ends.size() > 1 && depth >= 2) {
      std::set<TreeAddr> distinct;
      for (const auto& [name, t] : final_blocks) {
        (void)name;
        distinct.insert(t);
      }
      r.require(distinct.size() == final_blocks.size(),
                "lifted ends do not separate by depth " +
                    std::to_string(depth));
    }
  } catch (const std::exception& ex) {
    r.require(false, ex.what());
  }
  return r;
}

Report suite_prop31(const std::string& graph_name, int depth) {
  const GraphBuilder& builder = find_builder(graph_name);
  if (depth < 0) throw std::invalid_argument("embedding depth must be >= 0");
  LazyGraph g = builder.make();

  Report r;
  r.check = "stacked-clique embedding of " + graph_name + " at depth " +
            std::to_string(depth);
  r.stage_lo = 0;
  r.stage_hi = depth;

  try {
    WarmupEmbedding st = warmup_embed(g, depth);
    r.absorb(verify_warmup(g, st));
    for (int k = 0; k < depth; ++k) {
      WarmupEmbedding sub = warmup_embed(g, k);
      bool agrees = true;
      for (const auto& [v, pos] : sub.vertex_map) {
        auto it = st.vertex_map.find(v);
        agrees = agrees && it != st.vertex_map.end() && it->second == pos;
      }
      for (const auto& [e, path] : sub.edge_map) {
        auto it = st.edge_map.find(e);
        agrees = agrees && it != st.edge_map.end() && it->second == path;
      }
      r.require(agrees, "the depth-" + std::to_string(k) +
                            " run is not a submap of the full embedding");
    }
  } catch (const std::exception& ex) {
    r.require(false, ex.what());
  }
  return r;
}

Report suite_thm42(const std::string& system_spec, int horizon) {
  EdgeContractionSystem sys = parse_system_spec(system_spec);
  if (horizon < 0 || horizon > sys.size())
    throw std::invalid_argument("horizon must lie in 0.." +
                                std::to_string(sys.size()));

  Report r;
  r.check = "graph-like blowup embedding of " + system_spec +
            " through stage " + std::to_string(horizon);
  r.stage_lo = 0;
  r.stage_hi = horizon;

  r.absorb(validate(sys, horizon));
  try {
    GLEmbedding emb = run(sys, horizon);
    r.absorb(verify_gl(emb));

    // stage maps stay affordable only while the truncations are small
    int map_bound = std::min(horizon, 6);
    for (int n = 0; n <= map_bound; ++n) {
      StageMap m = stage_map(emb, n);
      bool sound = true;
      for (const auto& [v, dummy] : m.vertex_map)
        sound = sound && (n == 0 ? dummy == "*"
                                 : m.target.dummies.count(dummy) > 0);
      for (const auto& [e, walk] : m.edge_map) {
        const auto& uv = sys.expand(n).ends_of(e);
        sound = sound && !walk.empty() &&
                walk.front() == m.vertex_map.at(uv.first) &&
                walk.back() == m.vertex_map.at(uv.second);
        for (const auto& x : walk) sound = sound && m.target.graph.has_vertex(x);
      }
      r.require(sound, stage_tag(n) + "stage map leaves its truncation");
    }
    for (int n = 0; n < map_bound; ++n) r.absorb(check_commute(emb, n));

    for (int b = 1; b <= horizon; ++b) {
      const Label& e = sys.steps()[b - 1].edge;
      r.require(double_ray_prefix(emb, e, horizon).size() ==
                    3 + 2 * static_cast<std::size_t>(horizon - b),
                "edge " + e + " has the wrong double-ray prefix length");
    }
    r.absorb(check_vertex_separation(emb, horizon));
  } catch (const std::exception& ex) {
    r.require(false, ex.what());
  }
  return r;
}

}  // namespace ends
