#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ends/multigraph.hpp"

namespace ends {

/// A connected, locally finite, simple graph given by a root and a neighbor
/// function. Neighbor lists are memoized behind a shared, mutex-guarded
/// cache, so copies of a LazyGraph share their exploration. The neighbor
/// function must be symmetric and loop-free; exploration checks both over
/// every queried pair and throws std::invalid_argument on violations.
class LazyGraph {
 public:
  using NeighborFn = std::function<std::vector<Label>(const Label&)>;

  LazyGraph(Label root, NeighborFn neighbor_fn);

  const Label& root() const;
  std::vector<Label> neighbors(const Label& v) const;

 private:
  struct State;
  std::shared_ptr<State> state_;
};

/// Distance classes D^0..D^depth plus the induced finite multigraph on
/// their union. Induced edges are labeled "u--v" with u < v. For a finite
/// graph explored past its eccentricity, trailing layers are empty sets.
struct GraphPrefix {
  int depth = 0;
  std::vector<std::set<Label>> layers;
  FiniteMultigraph graph;
};

/// One component trace of stage n+1: the vertices H = C cap D^{n+1} of a
/// component C of G - D^{<=n}, plus the index of the unique stage-n piece
/// the component attaches to. Pieces are sorted by their smallest vertex.
struct FrontierPiece {
  std::set<Label> vertices;
  std::size_t parent_piece = 0;
};

struct FrontierDecomposition {
  int stage = 0;  // the pieces live in D^{stage}
  std::vector<FrontierPiece> pieces;
};

/// Finite truncation at stage n: the induced graph on S_n = D^{<n} plus one
/// dummy vertex per component of G - S_n, with every S_n-to-component edge
/// kept in parallel and component-internal edges gone. Loop-free by
/// construction. The dummy for component C is labeled "*" + min(C cap D^n)
/// and dummies maps it to that component identifier. projection sends every
/// explored vertex to its image (itself or a dummy).
struct Truncation {
  int stage = 0;
  FiniteMultigraph graph;
  std::map<Label, Label> dummies;
  std::map<Label, Label> projection;
};

/// The bonding map G_{n+1} -> G_n of the truncation inverse system: real
/// vertices of S_n are fixed, the rest collapse into stage-n dummies. Edges
/// either keep their label or collapse onto the vertex absorbing both ends.
struct BondingMap {
  int stage = 0;  // maps truncation(stage + 1) onto truncation(stage)
  std::map<Label, Label> vertex_map;
  std::set<Label> kept_edges;
  std::map<Label, Label> collapsed_edges;
};

/// The finite trace of an end: its dummy vertex in each of the first
/// truncations, dummies[k] living in truncation k+1.
struct EndPrefix {
  std::vector<Label> dummies;
};

/// Oracle description of an end: a ray given as depth -> vertex, where the
/// vertex at depth k must lie at distance k or k+1 from the root.
struct OracleEnd {
  std::string name;
  std::function<Label(int)> at_depth;
};

GraphPrefix prefix(const LazyGraph& g, int depth);
FrontierDecomposition frontier(const LazyGraph& g, int stage);
Truncation truncation(const LazyGraph& g, int stage);
BondingMap bonding(const LazyGraph& g, int stage);
EndPrefix end_prefix(const LazyGraph& g, const OracleEnd& end, int stages);

// Truncation JSON: the graph object plus a "dummies" array.
std::string to_json(const Truncation& t);

/// A named infinite graph with oracle ends for verification.
struct GraphBuilder {
  std::string name;
  std::function<LazyGraph()> make;
  std::vector<OracleEnd> ends;
};

// ray, double_ray, binary_tree, quadrant_grid, ladder, stacked_cliques,
// single, blowup_lf, blowup_gl — each with at least one oracle end where
// one exists.
const std::vector<GraphBuilder>& builder_catalog();
const GraphBuilder& find_builder(const std::string& name);

}  // namespace ends
