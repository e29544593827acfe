#pragma once

#include <compare>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "ends/multigraph.hpp"
#include "ends/report.hpp"

namespace ends {

/// One endpoint slot of an edge: which is 0 for the first position of the
/// sorted endpoint pair, 1 for the second.
struct Incidence {
  Label edge;
  int which = 0;
  auto operator<=>(const Incidence&) const = default;
};

/// Growing G_n -> G_{n+1} by undoing the contraction of the new edge.
/// A LoopStep adds edge as a loop at an existing vertex. A SplitStep tears
/// vertex at into two: into.first keeps the old label, into.second is
/// fresh; assign must route every incidence at the torn vertex to one of
/// the two sides, and the new edge joins them.
struct LoopStep {
  Label at;
};

struct SplitStep {
  Label at;
  std::pair<Label, Label> into;
  std::map<Incidence, Label> assign;
};

struct UncontractionStep {
  Label edge;
  std::variant<LoopStep, SplitStep> kind;
};

/// A sequence G_0, G_1, ... where G_0 is one vertex, G_{n+1} arises from
/// G_n by an UncontractionStep, and contracting the step's edge undoes it
/// exactly: contract_edge(G_{n+1}, e_{n+1}) == G_n label-for-label.
class EdgeContractionSystem {
 public:
  EdgeContractionSystem(Label root, std::vector<UncontractionStep> steps);

  const Label& root() const;
  const std::vector<UncontractionStep>& steps() const;
  int size() const;  // number of steps

  // G_n, memoized; throws std::invalid_argument past size() or on a
  // malformed step (missing or alien incidence, label collision, ...).
  const FiniteMultigraph& expand(int n) const;

 private:
  struct State;
  std::shared_ptr<State> state_;
};

// Checks the defining identities for stages 0..horizon: the contraction
// round trip, |V(G_n)| <= n + 1, E(G_n) = {e_1..e_n}, degrees <= 2n,
// connectivity, and that removing one edge leaves at most two components.
// Malformed steps become failing sub-checks, not exceptions.
Report validate(const EdgeContractionSystem& sys, int horizon);

/// Rebuilds the system whose stages are the quotients of a finite connected
/// multigraph g by the components of g minus the first k edges of
/// edge_order. expand(|E|) returns g itself, label-identical.
EdgeContractionSystem from_finite_graph(const FiniteMultigraph& g,
                                        const std::vector<Label>& edge_order);

// {"root":...,"steps":[{"edge":..,"kind":"loop","at":..} |
//  {"edge":..,"kind":"split","at":..,"into":[v,w],"assign":{"e#0":v,...}}]}
std::string to_json(const EdgeContractionSystem& sys);
EdgeContractionSystem system_from_json(const std::string& text);

// Builders. hawaiian alternates loop/split at the base point z, one pair
// per circle; sierpinski approximates the gasket by contraction stages of
// its finite depth-d approximation, coarse connector edges first.
EdgeContractionSystem hawaiian(int circles);
EdgeContractionSystem sierpinski_graphlike(int depth);
EdgeContractionSystem cycle_system(int n);
EdgeContractionSystem theta_system();
EdgeContractionSystem dumbbell3_system();
EdgeContractionSystem k4_system();

// Finite corpora used by the contraction-oracle tests.
FiniteMultigraph cycle_graph(int n);
FiniteMultigraph theta_graph();
FiniteMultigraph dumbbell3_graph();
FiniteMultigraph k4_graph();
FiniteMultigraph sierpinski_graph(int depth, std::vector<Label>* order = nullptr);

/// Parses "name" or "name:param" against the system catalog
/// (hawaiian:m, sierpinski:d, cycle:n, theta, dumbbell3, k4).
/// Throws std::invalid_argument with the catalog on unknown names.
EdgeContractionSystem parse_system_spec(const std::string& spec);
std::vector<std::string> system_catalog_names();

}  // namespace ends
