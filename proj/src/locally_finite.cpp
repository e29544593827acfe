#include "ends/locally_finite.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <stdexcept>

#include "json.hpp"

namespace ends {

struct LazyGraph::State {
  Label root;
  NeighborFn fn;
  std::mutex mu;
  std::map<Label, std::vector<Label>> cache;
};

LazyGraph::LazyGraph(Label root, NeighborFn neighbor_fn)
    : state_(std::make_shared<State>()) {
  if (!neighbor_fn)
    throw std::invalid_argument("LazyGraph needs a neighbor function");
  state_->root = std::move(root);
  state_->fn = std::move(neighbor_fn);
}

const Label& LazyGraph::root() const { return state_->root; }

std::vector<Label> LazyGraph::neighbors(const Label& v) const {
  {
    std::lock_guard<std::mutex> lock(state_->mu);
    auto it = state_->cache.find(v);
    if (it != state_->cache.end()) return it->second;
  }
  auto ns = state_->fn(v);  // may be expensive; run outside the lock
  std::sort(ns.begin(), ns.end());
  if (std::adjacent_find(ns.begin(), ns.end()) != ns.end())
    throw std::invalid_argument("neighbor list of " + v + " repeats a vertex");
  if (std::binary_search(ns.begin(), ns.end(), v))
    throw std::invalid_argument("neighbor list of " + v + " contains itself");
  std::lock_guard<std::mutex> lock(state_->mu);
  return state_->cache.emplace(v, std::move(ns)).first->second;
}

namespace {

Label edge_label(const Label& u, const Label& v) {
  return std::min(u, v) + "--" + std::max(u, v);
}

// Breadth-first exploration: every vertex at distance <= queried gets its
// neighbor list pulled, so the induced graph on D^{<= queried} is complete
// and membership of D^{queried + 1} is known.
struct Exploration {
  const LazyGraph* g = nullptr;
  int queried = 0;
  std::vector<std::set<Label>> layers;  // D^0 .. D^{queried+1}
  std::map<Label, int> dist;

  const std::set<Label>& layer(int d) const {
    static const std::set<Label> empty;
    if (d < 0 || d >= static_cast<int>(layers.size())) return empty;
    return layers[d];
  }
};

Exploration explore(const LazyGraph& g, int queried) {
  Exploration ex;
  ex.g = &g;
  ex.queried = queried;
  ex.layers.assign(queried + 2, {});
  ex.layers[0].insert(g.root());
  ex.dist[g.root()] = 0;
  for (int d = 0; d <= queried; ++d) {
    for (const auto& v : ex.layers[d]) {
      for (const auto& w : g.neighbors(v)) {
        if (ex.dist.emplace(w, d + 1).second) {
          if (ex.dist.size() > vertex_cap())
            throw std::runtime_error(
                "exploration exceeds the vertex cap "
                "(ENDS_UNIVERSAL_MAX_VERTICES)");
          ex.layers[d + 1].insert(w);
        }
      }
    }
  }
  // symmetry over every queried pair
  for (int d = 0; d <= queried; ++d)
    for (const auto& v : ex.layers[d])
      for (const auto& w : g.neighbors(v)) {
        auto it = ex.dist.find(w);
        if (it == ex.dist.end() || it->second > queried) continue;
        const auto back = g.neighbors(w);
        if (!std::binary_search(back.begin(), back.end(), v))
          throw std::invalid_argument("neighbor function is asymmetric: " + v +
                                      " lists " + w + " but not conversely");
      }
  return ex;
}

// Induced finite multigraph on D^{<= depth}; requires depth <= queried.
FiniteMultigraph induced(const Exploration& ex, int depth) {
  std::set<Label> verts;
  std::map<Label, std::pair<Label, Label>> edges;
  for (int d = 0; d <= depth; ++d)
    verts.insert(ex.layer(d).begin(), ex.layer(d).end());
  for (int d = 0; d <= depth; ++d)
    for (const auto& v : ex.layer(d))
      for (const auto& w : ex.g->neighbors(v))
        if (auto it = ex.dist.find(w); it != ex.dist.end() && it->second <= depth)
          edges.emplace(edge_label(v, w), std::minmax(v, w));
  return FiniteMultigraph(std::move(verts), std::move(edges));
}

/// Partition of D^{cut}..D^{horizon} into components of the explored graph
/// minus D^{<cut}, with block indices per vertex.
struct CutPartition {
  int cut = 0;
  int horizon = 0;
  std::vector<std::set<Label>> blocks;  // sorted by smallest member
  std::map<Label, std::size_t> block_index;
};

CutPartition cut_components(const Exploration& ex, int cut, int horizon) {
  std::set<Label> verts;
  for (int d = cut; d <= horizon; ++d)
    verts.insert(ex.layer(d).begin(), ex.layer(d).end());
  CutPartition part{cut, horizon, {}, {}};
  std::set<Label> seen;
  for (const auto& start : verts) {
    if (seen.count(start) > 0) continue;
    std::set<Label> comp;
    std::deque<Label> queue{start};
    seen.insert(start);
    while (!queue.empty()) {
      Label v = queue.front();
      queue.pop_front();
      comp.insert(v);
      for (const auto& w : ex.g->neighbors(v))
        if (verts.count(w) > 0 && seen.insert(w).second) queue.push_back(w);
    }
    part.blocks.push_back(std::move(comp));
  }
  std::sort(part.blocks.begin(), part.blocks.end(),
            [](const auto& a, const auto& b) { return *a.begin() < *b.begin(); });
  for (std::size_t i = 0; i < part.blocks.size(); ++i)
    for (const auto& v : part.blocks[i]) part.block_index[v] = i;
  return part;
}

// Restriction of a partition to D^{cut} and D^{cut+1}, as a canonical
// set of blocks for horizon-stability comparison.
std::set<std::set<Label>> shallow_restriction(const Exploration& ex,
                                              const CutPartition& part) {
  std::set<std::set<Label>> out;
  for (const auto& block : part.blocks) {
    std::set<Label> r;
    for (const auto& v : block) {
      int d = ex.dist.at(v);
      if (d == part.cut || d == part.cut + 1) r.insert(v);
    }
    if (!r.empty()) out.insert(std::move(r));
  }
  return out;
}

/// Components of G - D^{<cut}, explored deeper until their trace on
/// D^{cut} and D^{cut+1} stops changing between consecutive horizons.
/// Also hands back the exploration it settled on.
std::pair<Exploration, CutPartition> stable_cut_partition(const LazyGraph& g,
                                                          int cut) {
  constexpr int kExtraHorizons = 8;
  Exploration ex = explore(g, cut + 2);
  CutPartition prev = cut_components(ex, cut, cut + 1);
  for (int h = cut + 2; h <= cut + 2 + kExtraHorizons; ++h) {
    if (h > ex.queried) ex = explore(g, h);
    CutPartition next = cut_components(ex, cut, h);
    if (shallow_restriction(ex, prev) == shallow_restriction(ex, next))
      return {std::move(ex), std::move(next)};
    prev = std::move(next);
  }
  throw std::runtime_error(
      "component structure beyond depth " + std::to_string(cut) +
      " does not stabilize within the explored horizon");
}

}  // namespace

GraphPrefix prefix(const LazyGraph& g, int depth) {
  if (depth < 0) throw std::invalid_argument("prefix depth must be >= 0");
  Exploration ex = explore(g, depth);
  GraphPrefix out;
  out.depth = depth;
  out.layers.assign(ex.layers.begin(), ex.layers.begin() + depth + 1);
  out.graph = induced(ex, depth);
  return out;
}

FrontierDecomposition frontier(const LazyGraph& g, int stage) {
  if (stage < 0) throw std::invalid_argument("frontier stage must be >= 0");
  auto [ex_new, part_new] = stable_cut_partition(g, stage + 1);
  auto [ex_old, part_old] = stable_cut_partition(g, stage);

  // stage-n pieces, sorted by their smallest member
  std::vector<std::set<Label>> old_pieces;
  for (const auto& block : part_old.blocks) {
    std::set<Label> trace;
    for (const auto& v : block)
      if (ex_old.dist.at(v) == stage) trace.insert(v);
    old_pieces.push_back(std::move(trace));
  }
  std::sort(old_pieces.begin(), old_pieces.end(),
            [](const auto& a, const auto& b) { return *a.begin() < *b.begin(); });

  std::vector<FrontierPiece> pieces;
  for (const auto& block : part_new.blocks) {
    FrontierPiece piece;
    for (const auto& v : block)
      if (ex_new.dist.at(v) == stage + 1) piece.vertices.insert(v);
    // locate the unique stage-n piece the component attaches to
    std::set<std::size_t> parents;
    for (const auto& v : piece.vertices)
      for (const auto& w : g.neighbors(v)) {
        auto it = ex_new.dist.find(w);
        if (it == ex_new.dist.end() || it->second != stage) continue;
        for (std::size_t i = 0; i < old_pieces.size(); ++i)
          if (old_pieces[i].count(w) > 0) parents.insert(i);
      }
    if (parents.size() != 1)
      throw std::runtime_error(
          "frontier piece at stage " + std::to_string(stage + 1) +
          " does not attach to exactly one stage-" + std::to_string(stage) +
          " piece");
    piece.parent_piece = *parents.begin();
    pieces.push_back(std::move(piece));
  }
  std::sort(pieces.begin(), pieces.end(), [](const auto& a, const auto& b) {
    return *a.vertices.begin() < *b.vertices.begin();
  });
  return FrontierDecomposition{stage + 1, std::move(pieces)};
}

Truncation truncation(const LazyGraph& g, int stage) {
  if (stage < 0) throw std::invalid_argument("truncation stage must be >= 0");
  auto [ex, part] = stable_cut_partition(g, stage);

  Truncation out;
  out.stage = stage;

  // dummy label per component: "*" + smallest vertex of its stage layer
  std::vector<Label> dummy_of_block(part.blocks.size());
  for (std::size_t i = 0; i < part.blocks.size(); ++i) {
    Label id;
    for (const auto& v : part.blocks[i])
      if (ex.dist.at(v) == stage && (id.empty() || v < id)) id = v;
    if (id.empty())
      throw std::runtime_error("component beyond stage " +
                               std::to_string(stage) +
                               " misses its boundary layer");
    dummy_of_block[i] = "*" + id;
    out.dummies.emplace(dummy_of_block[i], id);
  }

  std::set<Label> verts;
  std::map<Label, std::pair<Label, Label>> edges;
  for (int d = 0; d < stage; ++d)
    verts.insert(ex.layer(d).begin(), ex.layer(d).end());
  for (const auto& [dummy, id] : out.dummies) {
    (void)id;
    verts.insert(dummy);
  }
  // edges inside S_n keep both endpoints; edges D^{n-1} -> D^n keep their
  // label and land on the dummy, preserving parallels
  for (int d = 0; d < stage; ++d)
    for (const auto& v : ex.layer(d))
      for (const auto& w : g.neighbors(v)) {
        int dw = ex.dist.at(w);
        if (dw < stage)
          edges.emplace(edge_label(v, w), std::minmax(v, w));
        else  // dw == stage, from d == stage - 1
          edges.emplace(edge_label(v, w),
                        std::minmax(v, dummy_of_block[part.block_index.at(w)]));
      }
  out.graph = FiniteMultigraph(std::move(verts), std::move(edges));

  for (int d = 0; d < stage; ++d)
    for (const auto& v : ex.layer(d)) out.projection.emplace(v, v);
  for (const auto& [v, i] : part.block_index)
    out.projection.emplace(v, dummy_of_block[i]);
  return out;
}

BondingMap bonding(const LazyGraph& g, int stage) {
  if (stage < 0) throw std::invalid_argument("bonding stage must be >= 0");
  Truncation fine = truncation(g, stage + 1);
  Truncation coarse = truncation(g, stage);

  BondingMap bm;
  bm.stage = stage;
  for (const auto& v : fine.graph.vertices()) {
    auto dummy = fine.dummies.find(v);
    const Label& carrier = (dummy == fine.dummies.end()) ? v : dummy->second;
    auto it = coarse.projection.find(carrier);
    if (it == coarse.projection.end())
      throw std::runtime_error("bonding: vertex " + v +
                               " has no stage-" + std::to_string(stage) +
                               " image");
    bm.vertex_map.emplace(v, it->second);
  }
  for (const auto& [e, uv] : fine.graph.edges()) {
    const Label& a = bm.vertex_map.at(uv.first);
    const Label& b = bm.vertex_map.at(uv.second);
    if (a == b) {
      bm.collapsed_edges.emplace(e, a);
      continue;
    }
    std::pair<Label, Label> image = std::minmax(a, b);
    if (!coarse.graph.has_edge(e) || coarse.graph.ends_of(e) != image)
      throw std::runtime_error("bonding: edge " + e +
                               " does not persist into stage " +
                               std::to_string(stage));
    bm.kept_edges.insert(e);
  }
  return bm;
}

EndPrefix end_prefix(const LazyGraph& g, const OracleEnd& end, int stages) {
  if (!end.at_depth)
    throw std::invalid_argument("oracle end " + end.name + " has no ray");
  EndPrefix out;
  for (int k = 1; k <= stages; ++k) {
    Label v = end.at_depth(k);
    Truncation t = truncation(g, k);
    auto it = t.projection.find(v);
    if (it == t.projection.end())
      throw std::invalid_argument("oracle end " + end.name + " leaves the explored region at depth " +
                                  std::to_string(k) + " (vertex " + v + ")");
    if (t.dummies.count(it->second) == 0)
      throw std::invalid_argument("oracle end " + end.name + " returned " + v +
                                  " at depth " + std::to_string(k) +
                                  ", which is too close to the root");
    out.dummies.push_back(it->second);
  }
  return out;
}

std::string to_json(const Truncation& t) {
  nlohmann::ordered_json j = nlohmann::ordered_json::parse(to_json(t.graph));
  j["dummies"] = nlohmann::ordered_json::array();
  for (const auto& [dummy, id] : t.dummies) {
    (void)id;
    j["dummies"].push_back(dummy);
  }
  return j.dump(2);
}

}  // namespace ends
