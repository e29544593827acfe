#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace ends {

using Label = std::string;

// Hard cap on materialized vertices, read once from the environment
// variable ENDS_UNIVERSAL_MAX_VERTICES (default 10^6). Expansions that
// would exceed it throw std::runtime_error.
std::size_t vertex_cap();

/// Finite multigraph with labeled vertices and labeled edges. Loops and
/// parallel edges are allowed. Immutable after construction.
///
/// Endpoint pairs are stored sorted by label, so the incidence positions
/// e#0 / e#1 of an edge are deterministic. Vertex labels and edge labels
/// live in disjoint namespaces; the constructor rejects collisions.
class FiniteMultigraph {
 public:
  FiniteMultigraph() = default;
  FiniteMultigraph(std::set<Label> vertices,
                   std::map<Label, std::pair<Label, Label>> edges);

  const std::set<Label>& vertices() const { return vertices_; }
  const std::map<Label, std::pair<Label, Label>>& edges() const {
    return edges_;
  }

  bool has_vertex(const Label& v) const { return vertices_.count(v) > 0; }
  bool has_edge(const Label& e) const { return edges_.count(e) > 0; }

  // Sorted endpoint pair; throws on unknown edge.
  const std::pair<Label, Label>& ends_of(const Label& e) const;
  bool is_loop(const Label& e) const;

  // (edge, other endpoint) incidences at v; a loop at v appears twice.
  const std::vector<std::pair<Label, Label>>& incidences(const Label& v) const;

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  // Label-level equality: same vertex set, same edge labels with the same
  // endpoint pairs.
  bool operator==(const FiniteMultigraph& other) const = default;

 private:
  std::set<Label> vertices_;
  std::map<Label, std::pair<Label, Label>> edges_;
  std::map<Label, std::vector<std::pair<Label, Label>>> incidence_;
};

/// Record of a contraction. For contract_partition with loop dropping,
/// kept_edges and dropped_loops partition the source edge set and an edge
/// is kept iff its endpoints lie in distinct blocks. For contract_edge,
/// dropped_loops holds exactly the contracted edge.
struct QuotientMap {
  std::map<Label, Label> block_of;
  std::set<Label> kept_edges;
  std::set<Label> dropped_loops;
};

// Connected components, sorted by their smallest vertex.
std::vector<std::set<Label>> components(const FiniteMultigraph& g);

// BFS distance classes from root. Throws if root is unknown or some vertex
// is unreachable (the message names one).
std::vector<std::set<Label>> bfs_layers(const FiniteMultigraph& g,
                                        const Label& root);

// Edges with one endpoint in a and the other in b. a and b must be disjoint
// subsets of the vertex set.
std::set<Label> edge_cut(const FiniteMultigraph& g, const std::set<Label>& a,
                         const std::set<Label>& b);

// Quotient by a partition of the vertices, deleting any edge whose
// endpoints fall in one block (recorded in dropped_loops) and keeping
// parallel edges with their original labels. Each block is named by its
// smallest vertex.
std::pair<FiniteMultigraph, QuotientMap> contract_partition(
    const FiniteMultigraph& g, const std::vector<std::set<Label>>& blocks);

// Contraction of one single edge: its endpoints are identified (named by
// the smaller label), the edge vanishes, and every other edge survives,
// including edges that become loops.
std::pair<FiniteMultigraph, QuotientMap> contract_edge(
    const FiniteMultigraph& g, const Label& e);

// Number of edge-endpoint incidences at v; a loop counts 2.
std::size_t degree(const FiniteMultigraph& g, const Label& v);

// {"vertices":[...],"edges":[{"id":...,"ends":[u,v]},...]}; loops repeat
// the endpoint. Vertices and edges sorted by label.
std::string to_json(const FiniteMultigraph& g);
FiniteMultigraph graph_from_json(const std::string& text);

// Undirected DOT; parallel edges become distinct edge statements.
std::string to_dot(const FiniteMultigraph& g, const std::string& name = "G");

}  // namespace ends
