#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "ends/blowup.hpp"
#include "ends/locally_finite.hpp"
#include "ends/multigraph.hpp"
#include "ends/report.hpp"

namespace ends {

/// Which level recurrence drives an embedding.
///
/// tree_blowup: h(0) = d(root), h(n) = max(h(n-1) + |D^n|, |E(D^n, D^{n+1})|)
/// stacked:     h(0) = max(d(root), 1),
///              h(n) = max(h(n-1) + 1, |E(D^n, D^{n+1})|, |D^n|)
enum class LevelVariant { tree_blowup, stacked };

struct LevelFunction {
  LevelVariant variant = LevelVariant::tree_blowup;
  std::vector<int> values;  // h(0)..h(depth)
  int operator()(int n) const;
  int depth() const { return static_cast<int>(values.size()) - 1; }
};

LevelFunction level_function(const LazyGraph& g, LevelVariant variant,
                             int depth);

/// Embedding of the depth-N prefix of a locally finite graph into the
/// universal_lf blowup. Layer D^n lands inside blocks at level h(n), one
/// block per stage-n piece; edges become pairwise internally disjoint
/// monotone paths (in-block and parent-child edges are single-step paths).
struct EmbeddingState {
  int depth = 0;
  LevelFunction h;
  std::vector<std::set<Label>> layers;  // D^0..D^depth
  std::map<Label, BlowupVertex> vertex_map;
  std::map<Label, MonotonePath> edge_map;  // prefix edge label -> path
  // per stage: piece identifier (smallest vertex) -> assigned block address
  std::vector<std::map<Label, TreeAddr>> block_assignment;
};

EmbeddingState embed(const LazyGraph& g, int depth);

// Structural validation of an embedding: layer placement, distinct blocks
// for distinct pieces, band containment of every edge path, injectivity,
// and exhaustive pairwise internal disjointness.
Report verify_embedding(const LazyGraph& g, const EmbeddingState& st);

/// Warm-up variant: embedding into the stacked-clique chain K_1, K_2, ...
/// Positions are (clique, index) pairs; D^n lands inside clique h(n).
struct WarmupEmbedding {
  int depth = 0;
  LevelFunction h;
  std::vector<std::set<Label>> layers;
  std::map<Label, std::pair<int, int>> vertex_map;
  std::map<Label, std::vector<std::pair<int, int>>> edge_map;
};

WarmupEmbedding warmup_embed(const LazyGraph& g, int depth);
Report verify_warmup(const LazyGraph& g, const WarmupEmbedding& st);

/// Image of an end under the embedding: the chain of block addresses
/// blocks[k] (at blowup level h(k)) assigned to the end's stage-k piece.
/// Consecutive entries are tree-descendants — the lift of the end.
struct LiftedEndPrefix {
  std::vector<TreeAddr> blocks;
};

LiftedEndPrefix lift_end(const EmbeddingState& st, const EndPrefix& end);

// The subtree separation property at stage n: distinct components of
// G - D^{<n} map into distinct subtrees of the blowup, rooted at the
// distinct blocks assigned to their stage-n pieces.
Report verify_star(const LazyGraph& g, const EmbeddingState& st, int stage);

}  // namespace ends
