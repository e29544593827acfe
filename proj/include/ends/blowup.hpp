#pragma once

#include <set>
#include <string>
#include <vector>

#include "ends/locally_finite.hpp"
#include "ends/multigraph.hpp"
#include "ends/report.hpp"

namespace ends {

/// Address of a node in the infinite rooted binary tree: a word over
/// {'0','1'}, the empty word being the root. The level of an address is its
/// length.
using TreeAddr = std::string;

inline int level(const TreeAddr& t) { return static_cast<int>(t.size()); }
bool is_tree_addr(const TreeAddr& t);
// strict-or-equal prefix test
bool addr_prefix(const TreeAddr& ancestor, const TreeAddr& descendant);

/// Block-size profile of a tree blowup: every tree node t is replaced by a
/// complete block K(t) on s(level(t)) vertices and blocks of adjacent tree
/// nodes are completely joined. universal_lf uses s(n) = n + 1, the tight
/// profile for locally finite graphs; universal_gl uses s(n) = 2n + 1, the
/// profile with room for one apex above the 2n path endpoints per block.
enum class BlowupProfile { universal_lf, universal_gl };

struct BlowupParams {
  BlowupProfile profile = BlowupProfile::universal_lf;
  int block_size(int lvl) const {
    return profile == BlowupProfile::universal_lf ? lvl + 1 : 2 * lvl + 1;
  }
  const char* name() const {
    return profile == BlowupProfile::universal_lf ? "universal_lf"
                                                  : "universal_gl";
  }
};

/// One vertex of the blowup: position index inside the block at addr.
/// Carries the canonical label "b<addr>.<index>".
struct BlowupVertex {
  TreeAddr addr;
  int index = 0;
  Label label() const;
  auto operator<=>(const BlowupVertex&) const = default;
};

// Parses "b<addr>.<index>"; throws std::invalid_argument on anything else.
BlowupVertex parse_blowup_label(const Label& text);

// Adjacency is never materialized globally: same block, or blocks of
// parent/child tree nodes.
bool adjacent(const BlowupParams& p, const BlowupVertex& u,
              const BlowupVertex& v);

// All blowup vertices at a given address-level or below, with the induced
// edges. Subject to vertex_cap().
FiniteMultigraph level_subgraph(const BlowupParams& p, int max_level);

/// A path in the blowup, one entry per step. Monotone paths descend one
/// tree level per step along the tree path between the endpoint addresses.
using BlowupPath = std::vector<BlowupVertex>;
using MonotonePath = BlowupPath;

// Deterministic monotone connector: from.addr must be a strict prefix of
// to.addr. Intermediate vertices take the lowest index in their block that
// is not excluded by avoid. avoid may contain only vertices at levels
// strictly above level(from), at most level(from) many per level, and must
// not contain the endpoints.
MonotonePath monotone_path(const BlowupParams& p, const BlowupVertex& from,
                           const BlowupVertex& to,
                           const std::set<BlowupVertex>& avoid);

bool monotone_path_valid(const BlowupParams& p, const MonotonePath& path);

// Truncation of the blowup with S = all blocks at level <= lvl: one dummy
// "*<t>" per tree node t at level lvl+1, joined in parallel to every
// neighbor of its subtree inside the kept levels.
Truncation blowup_truncation(const BlowupParams& p, int lvl);

// Checks that collapsing blocks is compatible with collapsing tree nodes:
// the component structure of the blowup beyond level lvl corresponds
// one-to-one with the subtrees beyond level lvl (computed on both sides at
// a two-level horizon, then compared).
Report check_star_bijection(const BlowupParams& p, int lvl);

}  // namespace ends
