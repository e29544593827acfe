#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "ends/blowup.hpp"
#include "ends/graphlike.hpp"
#include "ends/locally_finite.hpp"
#include "ends/multigraph.hpp"
#include "ends/report.hpp"

namespace ends {

/// Stage n of the inductive embedding of an edge-contraction system into
/// the universal_gl blowup: an injection g of V(G_n) into the level-n tree
/// nodes and, per edge of G_n, a path p through the blowup whose two ends
/// lie in the blocks of the edge's endpoints. Path fronts carry incidence
/// #0 of the edge at this stage. used records every block position ever
/// allocated, keyed by address.
struct GLStage {
  std::map<Label, TreeAddr> g_map;
  std::map<Label, BlowupPath> p_map;
  std::map<TreeAddr, std::set<int>> used;
};

struct GLEmbedding {
  BlowupParams params;  // universal_gl
  EdgeContractionSystem sys;
  std::vector<GLStage> stages;  // 0..horizon
  int horizon() const { return static_cast<int>(stages.size()) - 1; }
};

/// Runs the recursion: the split vertex's halves take the two children of
/// its block, every other vertex follows its parent into child "0"; old
/// paths grow one step into the blocks of their endpoints and the new edge
/// becomes the path a-l-b with apex l in the block of the contracted
/// vertex. All allocations take the lowest unused index.
GLEmbedding run(const EdgeContractionSystem& sys, int horizon);

// Properties of the construction, checked exhaustively over all stages:
// injectivity of g, parent-compatibility with the contraction maps, path
// shape (ends at level n, each level visited at most twice), pairwise
// disjointness, strict nesting of the p_n(e) under extension, and block
// capacity (allocations per block never exceed its size, with equality
// only through the apex).
Report verify_gl(const GLEmbedding& emb);

/// Truncation-level picture of stage n: G_n maps onto the blowup
/// truncation at tree level n-1 (every vertex to a dummy, every edge to a
/// dummy-to-dummy walk through real blowup vertices).
struct StageMap {
  int stage = 0;
  Truncation target;
  std::map<Label, Label> vertex_map;
  std::map<Label, std::vector<Label>> edge_map;
};

StageMap stage_map(const GLEmbedding& emb, int stage);

// The square between consecutive stage maps commutes: bonding after
// h_{n+1} equals h_n after contraction, edge paths compared up to
// reversal and collapse.
Report check_commute(const GLEmbedding& emb, int stage);

// p_horizon(e): the double-ray prefix of edge e, growing by one step on
// each side per stage after its introduction.
BlowupPath double_ray_prefix(const GLEmbedding& emb, const Label& e,
                             int horizon);

// Distinct vertices of G_horizon obtain distinct blocks at some stage; the
// report's witnesses list the first separating stage per pair.
Report check_vertex_separation(const GLEmbedding& emb, int horizon);

}  // namespace ends
