#include "ends/embed_gl.hpp"

#include <algorithm>
#include <stdexcept>

namespace ends {

namespace {

// vertex image of v under the contraction undoing the given step
Label pulled_back(const UncontractionStep& step, const Label& v) {
  if (const auto* split = std::get_if<SplitStep>(&step.kind))
    if (v == split->into.second) return split->at;
  return v;
}

int lowest_free(const std::set<int>& taken) {
  int i = 0;
  while (taken.count(i) > 0) ++i;
  return i;
}

BlowupVertex allocate(GLStage& st, const TreeAddr& block,
                      const BlowupParams& params) {
  std::set<int>& taken = st.used[block];
  int i = lowest_free(taken);
  if (i >= params.block_size(level(block)))
    throw std::runtime_error("block " + block + " is out of positions");
  taken.insert(i);
  return BlowupVertex{block, i};
}

}  // namespace

GLEmbedding run(const EdgeContractionSystem& sys, int horizon) {
  if (horizon < 0 || horizon > sys.size())
    throw std::invalid_argument("embedding horizon out of range");
  GLEmbedding emb{BlowupParams{BlowupProfile::universal_gl}, sys, {}};
  GLStage st;
  st.g_map.emplace(sys.root(), "");
  emb.stages.push_back(st);

  for (int n = 1; n <= horizon; ++n) {
    const UncontractionStep& step = sys.steps()[n - 1];
    const FiniteMultigraph& prev = sys.expand(n - 1);
    GLStage next;
    next.used = emb.stages.back().used;

    // vertex blocks: the split halves take the two children, everyone else
    // follows its block into child "0"
    const auto* split = std::get_if<SplitStep>(&step.kind);
    const Label& torn = split ? split->at : std::get<LoopStep>(step.kind).at;
    TreeAddr torn_block = emb.stages.back().g_map.at(torn);
    for (const auto& [v, t] : emb.stages.back().g_map)
      next.g_map.emplace(v, t + "0");
    if (split) {
      next.g_map.at(split->at) = torn_block + "0";
      next.g_map.emplace(split->into.second, torn_block + "1");
    }

    // old paths grow one step into the blocks of their (possibly rerouted)
    // endpoints, fronts staying on incidence #0
    for (const auto& [e, uv] : prev.edges()) {
      Label front_v = uv.first, back_v = uv.second;
      if (split) {
        if (front_v == split->at) front_v = split->assign.at(Incidence{e, 0});
        if (back_v == split->at) back_v = split->assign.at(Incidence{e, 1});
      }
      BlowupPath path = emb.stages.back().p_map.at(e);
      path.insert(path.begin(),
                  allocate(next, next.g_map.at(front_v), emb.params));
      path.push_back(allocate(next, next.g_map.at(back_v), emb.params));
      if (front_v > back_v) std::reverse(path.begin(), path.end());
      next.p_map.emplace(e, std::move(path));
    }

    // the new edge: down from a through the apex in the torn block's old
    // home, back up to b
    Label av = split ? std::min(split->at, split->into.second) : torn;
    Label bv = split ? std::max(split->at, split->into.second) : torn;
    BlowupVertex a = allocate(next, next.g_map.at(av), emb.params);
    BlowupVertex apex = allocate(next, torn_block, emb.params);
    BlowupVertex b = allocate(next, next.g_map.at(bv), emb.params);
    next.p_map.emplace(step.edge, BlowupPath{a, apex, b});

    emb.stages.push_back(std::move(next));
  }
  return emb;
}

Report verify_gl(const GLEmbedding& emb) {
  Report r;
  r.check = "graph-like blowup embedding stages 0.." +
            std::to_string(emb.horizon());
  r.stage_lo = 0;
  r.stage_hi = emb.horizon();

  for (int n = 0; n <= emb.horizon(); ++n) {
    std::string tag = "stage " + std::to_string(n) + ": ";
    const GLStage& st = emb.stages[n];
    const FiniteMultigraph& g = emb.sys.expand(n);
    try {

    // vertex blocks: complete, injective, level n, parent-compatible
    std::set<Label> mapped;
    for (const auto& [v, t] : st.g_map) mapped.insert(v);
    r.require(mapped == g.vertices(), tag + "vertex blocks do not cover V");
    std::set<TreeAddr> blocks;
    for (const auto& [v, t] : st.g_map) {
      r.require(is_tree_addr(t) && level(t) == n,
                tag + "block of " + v + " is not at level " + std::to_string(n));
      r.require(blocks.insert(t).second,
                tag + "two vertices share the block " + t);
    }
    if (n >= 1) {
      const UncontractionStep& step = emb.sys.steps()[n - 1];
      for (const auto& [v, t] : st.g_map) {
        Label up = pulled_back(step, v);
        auto it = emb.stages[n - 1].g_map.find(up);
        r.require(it != emb.stages[n - 1].g_map.end() &&
                      t.substr(0, t.size() - 1) == it->second,
                  tag + "block of " + v + " does not descend from " + up);
      }
    }

    // edge paths: complete, well-shaped, ends in the endpoint blocks
    std::set<Label> pathed;
    for (const auto& [e, path] : st.p_map) {
      (void)path;
      pathed.insert(e);
    }
    std::set<Label> edges;
    for (const auto& [e, uv] : g.edges()) {
      (void)uv;
      edges.insert(e);
    }
    r.require(pathed == edges, tag + "paths do not cover E");

    std::map<TreeAddr, int> endpoint_count;
    for (const auto& [e, uv] : g.edges()) {
      auto it = st.p_map.find(e);
      if (it == st.p_map.end()) continue;
      const BlowupPath& path = it->second;
      if (path.size() < 3 || path.size() % 2 == 0) {
        r.require(false, tag + "path of " + e + " has bad length " +
                             std::to_string(path.size()));
        continue;
      }
      std::set<BlowupVertex> seen;
      bool simple = true;
      for (const auto& pv : path) simple = seen.insert(pv).second && simple;
      r.require(simple, tag + "path of " + e + " repeats a vertex");
      bool steps_ok = true;
      for (std::size_t i = 1; i < path.size(); ++i)
        steps_ok = steps_ok && adjacent(emb.params, path[i - 1], path[i]);
      r.require(steps_ok, tag + "path of " + e + " makes a non-adjacent step");
      std::map<int, int> per_level;
      for (const auto& pv : path) ++per_level[level(pv.addr)];
      for (const auto& [lvl, cnt] : per_level)
        r.require(cnt <= 2, tag + "path of " + e + " visits level " +
                                std::to_string(lvl) + " " +
                                std::to_string(cnt) + " times");
      r.require(level(path.front().addr) == n && level(path.back().addr) == n,
                tag + "path of " + e + " does not end at level " +
                    std::to_string(n));
      r.require(path.front().addr == st.g_map.at(uv.first) &&
                    path.back().addr == st.g_map.at(uv.second),
                tag + "path of " + e + " misses its endpoint blocks");
      ++endpoint_count[path.front().addr];
      ++endpoint_count[path.back().addr];
    }

    // path ends fill each vertex block to exactly the vertex degree
    for (const auto& [v, t] : st.g_map)
      r.require(endpoint_count[t] == static_cast<int>(degree(g, v)),
                tag + "block of " + v + " hosts " +
                    std::to_string(endpoint_count[t]) + " path ends for degree " +
                    std::to_string(degree(g, v)));

    // pairwise vertex disjointness of the whole path system
    std::map<BlowupVertex, Label> owner;
    for (const auto& [e, path] : st.p_map)
      for (const auto& pv : path) {
        auto [it, fresh] = owner.emplace(pv, e);
        r.require(fresh, tag + "paths of " + it->second + " and " + e +
                             " both use " + pv.label());
      }

    // the used ledger is exactly the footprint, and blocks never overflow
    std::map<TreeAddr, std::set<int>> footprint;
    for (const auto& [e, path] : st.p_map) {
      (void)e;
      for (const auto& pv : path) footprint[pv.addr].insert(pv.index);
    }
    r.require(footprint == st.used, tag + "used ledger drifts from the paths");
    for (const auto& [t, idxs] : st.used) {
      r.require(!idxs.empty() && *idxs.begin() >= 0 &&
                    *idxs.rbegin() < emb.params.block_size(level(t)),
                tag + "block " + t + " overflows its size");
    }

    // strict nesting under extension
    if (n >= 1) {
      for (const auto& [e, old_path] : emb.stages[n - 1].p_map) {
        auto it = st.p_map.find(e);
        if (it == st.p_map.end() || it->second.size() != old_path.size() + 2) {
          r.require(false, tag + "path of " + e + " did not grow by one step per side");
          continue;
        }
        BlowupPath inner(std::next(it->second.begin()),
                         std::prev(it->second.end()));
        BlowupPath rev(old_path.rbegin(), old_path.rend());
        r.require(inner == old_path || inner == rev,
                  tag + "path of " + e + " does not extend its predecessor");
      }
    }
    } catch (const std::exception& ex) {
      r.require(false, tag + ex.what());
    }
  }

  r.require(emb.stages[0].g_map.size() == 1 && emb.stages[0].p_map.empty(),
            "stage 0 is not the bare root block");
  return r;
}

StageMap stage_map(const GLEmbedding& emb, int stage) {
  if (stage < 0 || stage > emb.horizon())
    throw std::invalid_argument("stage map out of range");
  StageMap out;
  out.stage = stage;
  if (stage == 0) {
    out.target.stage = 0;
    out.target.graph = FiniteMultigraph({"*"}, {});
    out.target.dummies.emplace("*", "");
    for (int i = 0; i < emb.params.block_size(0); ++i)
      out.target.projection.emplace(BlowupVertex{"", i}.label(), "*");
    out.vertex_map.emplace(emb.sys.root(), "*");
    return out;
  }
  out.target = blowup_truncation(emb.params, stage - 1);
  const GLStage& st = emb.stages[stage];
  for (const auto& [v, t] : st.g_map) out.vertex_map.emplace(v, "*" + t);
  for (const auto& [e, path] : st.p_map) {
    std::vector<Label> walk;
    walk.push_back("*" + path.front().addr);
    for (std::size_t i = 1; i + 1 < path.size(); ++i)
      walk.push_back(path[i].label());
    walk.push_back("*" + path.back().addr);
    out.edge_map.emplace(e, std::move(walk));
  }
  return out;
}

namespace {

// image of a stage-(n+1) walk element in the stage-n truncation
Label collapse_elem(const Label& x, int n) {
  if (!x.empty() && x[0] == '*') return "*" + x.substr(1, n);
  BlowupVertex v = parse_blowup_label(x);
  if (level(v.addr) == n) return "*" + v.addr;
  return x;
}

std::vector<Label> collapse_walk(const std::vector<Label>& walk, int n) {
  std::vector<Label> out;
  for (const auto& x : walk) {
    Label y = collapse_elem(x, n);
    if (out.empty() || out.back() != y) out.push_back(y);
  }
  return out;
}

}  // namespace

Report check_commute(const GLEmbedding& emb, int stage) {
  if (stage < 0 || stage >= emb.horizon())
    throw std::invalid_argument("commuting square needs stage < horizon");
  Report r;
  r.check = "stage maps commute between stages " + std::to_string(stage + 1) +
            " and " + std::to_string(stage);
  r.stage_lo = stage;
  r.stage_hi = stage + 1;

  StageMap fine = stage_map(emb, stage + 1);
  StageMap coarse = stage_map(emb, stage);
  const UncontractionStep& step = emb.sys.steps()[stage];

  for (const auto& [v, dummy] : fine.vertex_map) {
    Label via_contraction = coarse.vertex_map.at(pulled_back(step, v));
    Label via_bonding = collapse_elem(dummy, stage);
    r.require(via_contraction == via_bonding,
              "vertex " + v + ": " + via_bonding + " != " + via_contraction);
  }
  for (const auto& [e, walk] : fine.edge_map) {
    std::vector<Label> down = collapse_walk(walk, stage);
    if (e == step.edge) {
      Label at = coarse.vertex_map.at(
          std::get_if<SplitStep>(&step.kind)
              ? std::get<SplitStep>(step.kind).at
              : std::get<LoopStep>(step.kind).at);
      r.require(down == std::vector<Label>{at},
                "new edge " + e + " does not collapse onto " + at);
      continue;
    }
    const std::vector<Label>& want = coarse.edge_map.at(e);
    std::vector<Label> rev(want.rbegin(), want.rend());
    r.require(down == want || down == rev,
              "edge " + e + ": collapsed walk disagrees with stage " +
                  std::to_string(stage));
  }
  return r;
}

BlowupPath double_ray_prefix(const GLEmbedding& emb, const Label& e,
                             int horizon) {
  if (horizon < 0 || horizon > emb.horizon())
    throw std::invalid_argument("double ray horizon out of range");
  const auto& pm = emb.stages[horizon].p_map;
  auto it = pm.find(e);
  if (it == pm.end())
    throw std::invalid_argument("edge " + e + " is not present at stage " +
                                std::to_string(horizon));
  return it->second;
}

Report check_vertex_separation(const GLEmbedding& emb, int horizon) {
  if (horizon < 0 || horizon > emb.horizon())
    throw std::invalid_argument("separation horizon out of range");
  Report r;
  r.check = "vertex separation through stage " + std::to_string(horizon);
  r.stage_lo = 0;
  r.stage_hi = horizon;

  // trajectory[v][n]: the stage-n contraction image of v in V(G_horizon)
  std::map<Label, std::vector<Label>> trajectory;
  for (const auto& v : emb.sys.expand(horizon).vertices()) {
    std::vector<Label> back{v};
    for (int n = horizon; n >= 1; --n)
      back.push_back(pulled_back(emb.sys.steps()[n - 1], back.back()));
    trajectory.emplace(v, std::vector<Label>(back.rbegin(), back.rend()));
  }

  // image blocks descend along each trajectory
  for (const auto& [v, chain] : trajectory) {
    for (int n = 1; n <= horizon; ++n) {
      TreeAddr t = emb.stages[n].g_map.at(chain[n]);
      TreeAddr up = emb.stages[n - 1].g_map.at(chain[n - 1]);
      r.require(addr_prefix(up, t),
                "trajectory of " + v + " jumps subtrees at stage " +
                    std::to_string(n));
    }
  }

  for (auto it = trajectory.begin(); it != trajectory.end(); ++it)
    for (auto jt = std::next(it); jt != trajectory.end(); ++jt) {
      int sep = -1;
      for (int n = 0; n <= horizon; ++n)
        if (it->second[n] != jt->second[n]) {
          sep = n;
          break;
        }
      if (sep < 0) {
        r.require(false, it->first + " and " + jt->first +
                             " never separate by stage " +
                             std::to_string(horizon));
        continue;
      }
      TreeAddr ta = emb.stages[sep].g_map.at(it->second[sep]);
      TreeAddr tb = emb.stages[sep].g_map.at(jt->second[sep]);
      r.require(ta != tb, it->first + " and " + jt->first +
                              " share a block at their separating stage");
      r.witnesses.push_back("ok: " + it->first + "|" + jt->first +
                            " separate at stage " + std::to_string(sep));
    }
  return r;
}

}  // namespace ends
