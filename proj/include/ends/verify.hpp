#pragma once

#include <string>

#include "ends/locally_finite.hpp"
#include "ends/report.hpp"

namespace ends {

// Validates the truncation inverse system of a catalog graph for stages
// 1..max_stage: truncation shape, bonding maps, and oracle-end coherence.
Report suite_inverse_system(const std::string& graph_name, int max_stage);

// Validates the tree-blowup embedding of a catalog graph to the given
// depth: level recurrence, placement properties, disjointness, subtree
// separation, end lifting.
Report suite_thm32(const std::string& graph_name, int depth);

// Same battery for the stacked-clique warm-up embedding.
Report suite_prop31(const std::string& graph_name, int depth);

// Validates an edge-contraction system (by catalog spec, e.g.
// "hawaiian:8") and its blowup embedding through the given horizon:
// system identities, embedding properties, stage maps, commuting squares,
// double-ray prefixes, vertex separation.
Report suite_thm42(const std::string& system_spec, int horizon);

// Direct bonding-map check against independently recomputed truncations;
// exposed separately so tampered maps can be fed in.
Report check_bonding(const LazyGraph& g, int stage, const BondingMap& bm);

}  // namespace ends
