#include "ends/embed_lf.hpp"

#include <algorithm>
#include <stdexcept>

namespace ends {

namespace {

// width-digit binary word for the k-th child slot under a block
TreeAddr binary_word(int k, int width) {
  if (k < 0 || width < 0 || (width < 31 && k >= (1 << width)))
    throw std::logic_error("child slot does not fit its address width");
  TreeAddr w(width, '0');
  for (int b = 0; b < width && k > 0; ++b, k >>= 1)
    if (k & 1) w[width - 1 - b] = '1';
  return w;
}

struct StagePieces {
  // piece vertex sets sorted by smallest member, with parent indices
  std::vector<std::set<Label>> pieces;
  std::vector<std::size_t> parents;
};

// stage 0 is the root alone; deeper stages come from frontier()
std::vector<StagePieces> piece_chain(const LazyGraph& g, int depth) {
  std::vector<StagePieces> chain(depth + 1);
  chain[0].pieces = {{g.root()}};
  chain[0].parents = {0};
  for (int n = 1; n <= depth; ++n) {
    FrontierDecomposition dec = frontier(g, n - 1);
    for (auto& piece : dec.pieces) {
      chain[n].pieces.push_back(piece.vertices);
      chain[n].parents.push_back(piece.parent_piece);
    }
  }
  return chain;
}

int layer_of(const std::vector<std::set<Label>>& layers, const Label& v) {
  for (std::size_t d = 0; d < layers.size(); ++d)
    if (layers[d].count(v) > 0) return static_cast<int>(d);
  return -1;
}

}  // namespace

int LevelFunction::operator()(int n) const {
  if (n < 0 || n >= static_cast<int>(values.size()))
    throw std::invalid_argument("level function has no stage " +
                                std::to_string(n));
  return values[n];
}

LevelFunction level_function(const LazyGraph& g, LevelVariant variant,
                             int depth) {
  if (depth < 0) throw std::invalid_argument("level depth must be >= 0");
  GraphPrefix pre = prefix(g, depth + 1);
  LevelFunction h;
  h.variant = variant;
  int d0 = static_cast<int>(degree(pre.graph, g.root()));
  h.values.push_back(variant == LevelVariant::stacked ? std::max(d0, 1) : d0);
  for (int n = 1; n <= depth; ++n) {
    int cut = static_cast<int>(
        edge_cut(pre.graph, pre.layers[n], pre.layers[n + 1]).size());
    int layer = static_cast<int>(pre.layers[n].size());
    int v = (variant == LevelVariant::tree_blowup)
                ? std::max(h.values[n - 1] + layer, cut)
                : std::max({h.values[n - 1] + 1, cut, layer});
    h.values.push_back(v);
  }
  return h;
}

EmbeddingState embed(const LazyGraph& g, int depth) {
  if (depth < 0) throw std::invalid_argument("embed depth must be >= 0");
  BlowupParams params{BlowupProfile::universal_lf};
  EmbeddingState st;
  st.depth = depth;
  st.h = level_function(g, LevelVariant::tree_blowup, depth);
  GraphPrefix pre = prefix(g, depth);
  st.layers = pre.layers;
  st.block_assignment.resize(depth + 1);

  auto chain = piece_chain(g, depth);

  // vertex placement: one block per piece, leftmost free child address
  TreeAddr t0(st.h(0), '0');
  st.block_assignment[0].emplace(g.root(), t0);
  st.vertex_map.emplace(g.root(), BlowupVertex{t0, 0});
  for (int n = 1; n <= depth; ++n) {
    int width = st.h(n) - st.h(n - 1);
    std::map<std::size_t, int> slot;  // next child slot per parent piece
    for (std::size_t i = 0; i < chain[n].pieces.size(); ++i) {
      const auto& piece = chain[n].pieces[i];
      const Label& parent_id = *chain[n - 1].pieces[chain[n].parents[i]].begin();
      TreeAddr t = st.block_assignment[n - 1].at(parent_id) +
                   binary_word(slot[chain[n].parents[i]]++, width);
      st.block_assignment[n].emplace(*piece.begin(), t);
      int index = 0;
      for (const auto& v : piece)
        st.vertex_map.emplace(v, BlowupVertex{t, index++});
    }
  }

  // same-layer edges become in-block edges; cross edges become monotone
  // paths avoiding the interiors of earlier same-stage paths
  std::map<int, std::vector<std::pair<Label, Label>>> cross;  // by lower layer
  for (const auto& [e, uv] : pre.graph.edges()) {
    (void)e;
    int du = layer_of(st.layers, uv.first);
    int dv = layer_of(st.layers, uv.second);
    if (du == dv) {
      st.edge_map.emplace(uv.first + "--" + uv.second,
                          MonotonePath{st.vertex_map.at(uv.first),
                                       st.vertex_map.at(uv.second)});
    } else {
      auto [x, y] = du < dv ? uv : std::make_pair(uv.second, uv.first);
      cross[std::min(du, dv)].emplace_back(x, y);
    }
  }
  for (auto& [n, list] : cross) {
    (void)n;
    std::sort(list.begin(), list.end());
    std::set<BlowupVertex> avoid;
    for (const auto& [x, y] : list) {
      MonotonePath path = monotone_path(params, st.vertex_map.at(x),
                                        st.vertex_map.at(y), avoid);
      for (std::size_t i = 1; i + 1 < path.size(); ++i) avoid.insert(path[i]);
      st.edge_map.emplace(std::min(x, y) + "--" + std::max(x, y),
                          std::move(path));
    }
  }
  return st;
}

Report verify_embedding(const LazyGraph& g, const EmbeddingState& st) {
  BlowupParams params{BlowupProfile::universal_lf};
  Report r;
  r.check = "tree-blowup embedding at depth " + std::to_string(st.depth);
  r.stage_lo = 0;
  r.stage_hi = st.depth;

  LevelFunction fresh = level_function(g, LevelVariant::tree_blowup, st.depth);
  r.require(fresh.values == st.h.values, "level recurrence mismatch");
  GraphPrefix pre = prefix(g, st.depth);
  r.require(pre.layers == st.layers, "layer structure mismatch");

  // every prefix vertex lands at the level of its layer
  for (int n = 0; n <= st.depth; ++n)
    for (const auto& v : pre.layers[n]) {
      auto it = st.vertex_map.find(v);
      if (it == st.vertex_map.end()) {
        r.require(false, "vertex " + v + " is not embedded");
        continue;
      }
      r.require(level(it->second.addr) == st.h(n),
                "vertex " + v + " sits at level " +
                    std::to_string(level(it->second.addr)) + ", expected h(" +
                    std::to_string(n) + ")");
      r.require(it->second.index >= 0 &&
                    it->second.index < params.block_size(st.h(n)),
                "vertex " + v + " has an out-of-block index");
    }

  // injectivity
  std::map<BlowupVertex, Label> image_of;
  for (const auto& [v, pos] : st.vertex_map) {
    auto [it, fresh_pos] = image_of.emplace(pos, v);
    r.require(fresh_pos,
              "vertices " + it->second + " and " + v + " share a position");
  }

  // distinct pieces to distinct blocks, vertices inside their piece's block
  auto chain = piece_chain(g, st.depth);
  for (int n = 0; n <= st.depth; ++n) {
    r.require(st.block_assignment[n].size() == chain[n].pieces.size(),
              "stage " + std::to_string(n) + " has " +
                  std::to_string(st.block_assignment[n].size()) +
                  " assigned blocks for " +
                  std::to_string(chain[n].pieces.size()) + " pieces");
    std::set<TreeAddr> used;
    for (const auto& piece : chain[n].pieces) {
      auto it = st.block_assignment[n].find(*piece.begin());
      if (it == st.block_assignment[n].end()) {
        r.require(false, "piece " + *piece.begin() + " has no block");
        continue;
      }
      r.require(level(it->second) == st.h(n),
                "piece " + *piece.begin() + " sits at the wrong level");
      r.require(used.insert(it->second).second,
                "two stage-" + std::to_string(n) + " pieces share a block");
      for (const auto& v : piece) {
        auto vit = st.vertex_map.find(v);
        r.require(vit != st.vertex_map.end() && vit->second.addr == it->second,
                  "vertex " + v + " left its piece's block");
      }
    }
  }

  // edge paths: present, well-shaped, inside their band, ends correct
  for (const auto& [e, uv] : pre.graph.edges()) {
    (void)e;
    Label key = uv.first + "--" + uv.second;
    auto it = st.edge_map.find(key);
    if (it == st.edge_map.end()) {
      r.require(false, "edge " + key + " has no path");
      continue;
    }
    const MonotonePath& path = it->second;
    int du = layer_of(st.layers, uv.first);
    int dv = layer_of(st.layers, uv.second);
    const BlowupVertex& front = path.front();
    const BlowupVertex& back = path.back();
    bool ends_match =
        (front == st.vertex_map.at(uv.first) &&
         back == st.vertex_map.at(uv.second)) ||
        (front == st.vertex_map.at(uv.second) &&
         back == st.vertex_map.at(uv.first));
    r.require(ends_match, "path of " + key + " misses its endpoints");
    if (du == dv) {
      r.require(path.size() == 2 && path[0].addr == path[1].addr &&
                    path[0].index != path[1].index,
                "same-layer edge " + key + " is not an in-block edge");
    } else {
      r.require(monotone_path_valid(params, path),
                "path of " + key + " is not monotone");
      int lo = st.h(std::min(du, dv));
      int hi = st.h(std::max(du, dv));
      for (const auto& pv : path)
        r.require(level(pv.addr) >= lo && level(pv.addr) <= hi,
                  "path of " + key + " leaves its level band");
    }
    for (std::size_t i = 1; i + 1 < path.size(); ++i)
      r.require(image_of.count(path[i]) == 0,
                "path of " + key + " runs through the image of a vertex");
  }
  r.require(st.edge_map.size() == pre.graph.edge_count(),
            "embedding carries extra edge paths");

  // exhaustive pairwise internal disjointness
  for (auto it = st.edge_map.begin(); it != st.edge_map.end(); ++it)
    for (auto jt = std::next(it); jt != st.edge_map.end(); ++jt) {
      std::set<BlowupVertex> internal(std::next(it->second.begin()),
                                      std::prev(it->second.end()));
      for (const auto& pv : jt->second)
        r.require(internal.count(pv) == 0, "paths of " + it->first + " and " +
                                               jt->first + " collide at " +
                                               pv.label());
    }
  return r;
}

WarmupEmbedding warmup_embed(const LazyGraph& g, int depth) {
  if (depth < 0) throw std::invalid_argument("embed depth must be >= 0");
  WarmupEmbedding st;
  st.depth = depth;
  st.h = level_function(g, LevelVariant::stacked, depth);
  GraphPrefix pre = prefix(g, depth);
  st.layers = pre.layers;

  for (int n = 0; n <= depth; ++n) {
    int index = 0;
    for (const auto& v : pre.layers[n])
      st.vertex_map.emplace(v, std::make_pair(st.h(n), index++));
  }

  std::map<int, std::vector<std::pair<Label, Label>>> cross;
  for (const auto& [e, uv] : pre.graph.edges()) {
    (void)e;
    int du = layer_of(st.layers, uv.first);
    int dv = layer_of(st.layers, uv.second);
    if (du == dv) {
      st.edge_map.emplace(uv.first + "--" + uv.second,
                          std::vector<std::pair<int, int>>{
                              st.vertex_map.at(uv.first),
                              st.vertex_map.at(uv.second)});
    } else {
      auto [x, y] = du < dv ? uv : std::make_pair(uv.second, uv.first);
      cross[std::min(du, dv)].emplace_back(x, y);
    }
  }
  for (auto& [n, list] : cross) {
    std::sort(list.begin(), list.end());
    int lane = 0;  // one private index per same-stage path
    for (const auto& [x, y] : list) {
      std::vector<std::pair<int, int>> path{st.vertex_map.at(x)};
      for (int m = st.h(n) + 1; m < st.h(n + 1); ++m)
        path.emplace_back(m, lane);
      path.push_back(st.vertex_map.at(y));
      ++lane;
      st.edge_map.emplace(std::min(x, y) + "--" + std::max(x, y),
                          std::move(path));
    }
  }
  return st;
}

Report verify_warmup(const LazyGraph& g, const WarmupEmbedding& st) {
  Report r;
  r.check = "stacked-clique embedding at depth " + std::to_string(st.depth);
  r.stage_lo = 0;
  r.stage_hi = st.depth;

  LevelFunction fresh = level_function(g, LevelVariant::stacked, st.depth);
  r.require(fresh.values == st.h.values, "level recurrence mismatch");
  for (int n = 1; n <= st.depth; ++n)
    r.require(st.h(n) > st.h(n - 1), "level function is not increasing");
  GraphPrefix pre = prefix(g, st.depth);
  r.require(pre.layers == st.layers, "layer structure mismatch");

  auto valid_pos = [](const std::pair<int, int>& pos) {
    return pos.first >= 1 && pos.second >= 0 && pos.second < pos.first;
  };
  auto clique_adjacent = [](const std::pair<int, int>& a,
                            const std::pair<int, int>& b) {
    if (a == b) return false;
    return std::abs(a.first - b.first) <= 1;
  };

  std::map<std::pair<int, int>, Label> image_of;
  for (int n = 0; n <= st.depth; ++n)
    for (const auto& v : pre.layers[n]) {
      auto it = st.vertex_map.find(v);
      if (it == st.vertex_map.end()) {
        r.require(false, "vertex " + v + " is not embedded");
        continue;
      }
      r.require(valid_pos(it->second), "vertex " + v + " sits outside its clique");
      r.require(it->second.first == st.h(n),
                "vertex " + v + " is not in clique h(" + std::to_string(n) + ")");
      auto [pit, fresh_pos] = image_of.emplace(it->second, v);
      r.require(fresh_pos,
                "vertices " + pit->second + " and " + v + " share a position");
    }

  for (const auto& [e, uv] : pre.graph.edges()) {
    (void)e;
    Label key = uv.first + "--" + uv.second;
    auto it = st.edge_map.find(key);
    if (it == st.edge_map.end()) {
      r.require(false, "edge " + key + " has no path");
      continue;
    }
    const auto& path = it->second;
    r.require(path.size() >= 2, "path of " + key + " is degenerate");
    for (const auto& pos : path)
      r.require(valid_pos(pos), "path of " + key + " leaves the cliques");
    for (std::size_t i = 1; i < path.size(); ++i)
      r.require(clique_adjacent(path[i - 1], path[i]),
                "path of " + key + " makes an illegal step");
    int du = layer_of(st.layers, uv.first);
    int dv = layer_of(st.layers, uv.second);
    int lo = st.h(std::min(du, dv)), hi = st.h(std::max(du, dv));
    for (const auto& pos : path)
      r.require(pos.first >= lo && pos.first <= hi,
                "path of " + key + " leaves its clique band");
    bool ends_match = (path.front() == st.vertex_map.at(uv.first) &&
                       path.back() == st.vertex_map.at(uv.second)) ||
                      (path.front() == st.vertex_map.at(uv.second) &&
                       path.back() == st.vertex_map.at(uv.first));
    r.require(ends_match, "path of " + key + " misses its endpoints");
    for (std::size_t i = 1; i + 1 < path.size(); ++i)
      r.require(image_of.count(path[i]) == 0,
                "path of " + key + " runs through the image of a vertex");
  }
  r.require(st.edge_map.size() == pre.graph.edge_count(),
            "embedding carries extra edge paths");

  for (auto it = st.edge_map.begin(); it != st.edge_map.end(); ++it)
    for (auto jt = std::next(it); jt != st.edge_map.end(); ++jt) {
      std::set<std::pair<int, int>> internal(std::next(it->second.begin()),
                                             std::prev(it->second.end()));
      for (const auto& pos : jt->second)
        r.require(internal.count(pos) == 0,
                  "paths of " + it->first + " and " + jt->first + " collide");
    }
  return r;
}

LiftedEndPrefix lift_end(const EmbeddingState& st, const EndPrefix& end) {
  LiftedEndPrefix out;
  if (st.block_assignment.empty() || st.block_assignment[0].empty())
    throw std::invalid_argument("embedding has no stage-0 block");
  out.blocks.push_back(st.block_assignment[0].begin()->second);
  int stages = std::min<int>(st.depth, static_cast<int>(end.dummies.size()));
  for (int k = 1; k <= stages; ++k) {
    const Label& dummy = end.dummies[k - 1];
    if (dummy.empty() || dummy[0] != '*')
      throw std::invalid_argument("malformed end dummy label: " + dummy);
    Label id = dummy.substr(1);
    auto it = st.block_assignment[k].find(id);
    if (it == st.block_assignment[k].end())
      throw std::invalid_argument("end prefix leaves the embedded region at stage " +
                                  std::to_string(k) + " (piece " + id + ")");
    out.blocks.push_back(it->second);
  }
  return out;
}

Report verify_star(const LazyGraph& g, const EmbeddingState& st, int stage) {
  Report r;
  r.check = "subtree separation at stage " + std::to_string(stage);
  r.stage_lo = r.stage_hi = stage;
  if (stage < 0 || stage > st.depth)
    throw std::invalid_argument("verify_star stage out of range");

  auto chain = piece_chain(g, st.depth);

  // components of G - D^{<stage} within the prefix = stage pieces plus all
  // their descendants along the parent links
  std::vector<std::vector<std::size_t>> anc(st.depth + 1);
  anc[stage].resize(chain[stage].pieces.size());
  for (std::size_t i = 0; i < anc[stage].size(); ++i) anc[stage][i] = i;
  for (int m = stage + 1; m <= st.depth; ++m) {
    anc[m].resize(chain[m].pieces.size());
    for (std::size_t i = 0; i < anc[m].size(); ++i)
      anc[m][i] = anc[m - 1][chain[m].parents[i]];
  }

  std::vector<TreeAddr> roots;
  std::set<TreeAddr> distinct;
  for (const auto& piece : chain[stage].pieces) {
    auto it = st.block_assignment[stage].find(*piece.begin());
    if (it == st.block_assignment[stage].end()) {
      r.require(false, "piece " + *piece.begin() + " has no block");
      roots.push_back("");
      continue;
    }
    roots.push_back(it->second);
    r.require(distinct.insert(it->second).second,
              "two components share the subtree at " + it->second);
  }

  std::map<Label, std::size_t> comp_of;  // vertex at depth >= stage -> component
  for (int m = stage; m <= st.depth; ++m)
    for (std::size_t i = 0; i < chain[m].pieces.size(); ++i)
      for (const auto& v : chain[m].pieces[i]) comp_of[v] = anc[m][i];

  for (const auto& [v, c] : comp_of) {
    auto it = st.vertex_map.find(v);
    if (it == st.vertex_map.end()) {
      r.require(false, "vertex " + v + " is not embedded");
      continue;
    }
    r.require(addr_prefix(roots[c], it->second.addr),
              "vertex " + v + " leaves the subtree of its component");
  }

  for (const auto& [key, path] : st.edge_map) {
    auto sep = key.find("--");
    Label u = key.substr(0, sep), w = key.substr(sep + 2);
    auto cu = comp_of.find(u);
    auto cw = comp_of.find(w);
    if (cu == comp_of.end() || cw == comp_of.end()) continue;
    r.require(cu->second == cw->second,
              "edge " + key + " bridges two components");
    for (const auto& pv : path)
      r.require(addr_prefix(roots[cu->second], pv.addr),
                "path of " + key + " leaves the subtree of its component");
  }
  return r;
}

}  // namespace ends
