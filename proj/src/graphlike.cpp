#include "ends/graphlike.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

#include "nlohmann/json.hpp"

namespace ends {

namespace {

std::string step_tag(int n) { return "step " + std::to_string(n); }

// incidence positions of v on edge e, given e's sorted endpoint pair
std::vector<int> positions_at(const std::pair<Label, Label>& uv,
                              const Label& v) {
  std::vector<int> out;
  if (uv.first == v) out.push_back(0);
  if (uv.second == v) out.push_back(1);
  return out;
}

FiniteMultigraph apply_step(const FiniteMultigraph& g, int n,
                            const UncontractionStep& step) {
  if (g.has_edge(step.edge) || g.has_vertex(step.edge))
    throw std::invalid_argument(step_tag(n) + ": edge label " + step.edge +
                                " is already taken");
  std::set<Label> vs = g.vertices();
  std::map<Label, std::pair<Label, Label>> es = g.edges();

  if (const auto* loop = std::get_if<LoopStep>(&step.kind)) {
    if (!g.has_vertex(loop->at))
      throw std::invalid_argument(step_tag(n) + ": loop site " + loop->at +
                                  " is not a vertex");
    es.emplace(step.edge, std::make_pair(loop->at, loop->at));
    return FiniteMultigraph(std::move(vs), std::move(es));
  }

  const auto& split = std::get<SplitStep>(step.kind);
  if (!g.has_vertex(split.at))
    throw std::invalid_argument(step_tag(n) + ": split site " + split.at +
                                " is not a vertex");
  if (split.into.first != split.at)
    throw std::invalid_argument(step_tag(n) +
                                ": a split keeps the old label on its first "
                                "side, got " +
                                split.into.first);
  const Label& fresh = split.into.second;
  if (fresh == split.at || g.has_vertex(fresh) || g.has_edge(fresh))
    throw std::invalid_argument(step_tag(n) + ": split label " + fresh +
                                " is already taken");

  // every incidence at the torn vertex must be routed, and nothing else
  std::set<Incidence> expected;
  for (const auto& [e, uv] : es)
    for (int p : positions_at(uv, split.at)) expected.insert(Incidence{e, p});
  for (const auto& [inc, side] : split.assign) {
    if (expected.count(inc) == 0)
      throw std::invalid_argument(step_tag(n) + ": assign routes " + inc.edge +
                                  "#" + std::to_string(inc.which) +
                                  ", which is not an incidence at " + split.at);
    if (side != split.into.first && side != split.into.second)
      throw std::invalid_argument(step_tag(n) + ": assign sends " + inc.edge +
                                  "#" + std::to_string(inc.which) +
                                  " outside the split pair");
  }
  for (const auto& inc : expected)
    if (split.assign.count(inc) == 0)
      throw std::invalid_argument(step_tag(n) + ": assign misses incidence " +
                                  inc.edge + "#" + std::to_string(inc.which));

  vs.insert(fresh);
  for (auto& [e, uv] : es) {
    Label a = uv.first == split.at ? split.assign.at(Incidence{e, 0}) : uv.first;
    Label b =
        uv.second == split.at ? split.assign.at(Incidence{e, 1}) : uv.second;
    uv = std::minmax(a, b);
  }
  es.emplace(step.edge, std::minmax(split.at, fresh));
  return FiniteMultigraph(std::move(vs), std::move(es));
}

}  // namespace

struct EdgeContractionSystem::State {
  Label root;
  std::vector<UncontractionStep> steps;
  mutable std::mutex mu;
  mutable std::vector<FiniteMultigraph> stages;
};

EdgeContractionSystem::EdgeContractionSystem(Label root,
                                             std::vector<UncontractionStep> steps)
    : state_(std::make_shared<State>()) {
  if (root.empty())
    throw std::invalid_argument("contraction system needs a root label");
  state_->root = std::move(root);
  state_->steps = std::move(steps);
  state_->stages.reserve(state_->steps.size() + 1);
  state_->stages.push_back(
      FiniteMultigraph({state_->root}, {}));
}

const Label& EdgeContractionSystem::root() const { return state_->root; }

const std::vector<UncontractionStep>& EdgeContractionSystem::steps() const {
  return state_->steps;
}

int EdgeContractionSystem::size() const {
  return static_cast<int>(state_->steps.size());
}

const FiniteMultigraph& EdgeContractionSystem::expand(int n) const {
  if (n < 0 || n > size())
    throw std::invalid_argument("system has no stage " + std::to_string(n) +
                                " (0.." + std::to_string(size()) + ")");
  std::lock_guard<std::mutex> lock(state_->mu);
  while (static_cast<int>(state_->stages.size()) <= n) {
    int k = static_cast<int>(state_->stages.size());
    if (state_->stages.back().vertex_count() + 1 > vertex_cap())
      throw std::runtime_error("stage " + std::to_string(k) +
                               " would exceed the vertex cap");
    state_->stages.push_back(
        apply_step(state_->stages.back(), k, state_->steps[k - 1]));
  }
  return state_->stages[n];
}

Report validate(const EdgeContractionSystem& sys, int horizon) {
  if (horizon < 0 || horizon > sys.size())
    throw std::invalid_argument("validation horizon out of range");
  Report r;
  r.check = "contraction system stages 0.." + std::to_string(horizon);
  r.stage_lo = 0;
  r.stage_hi = horizon;

  r.require(sys.expand(0).vertices() == std::set<Label>{sys.root()} &&
                sys.expand(0).edge_count() == 0,
            "stage 0 is not the bare root");

  for (int n = 1; n <= horizon; ++n) {
    std::string tag = "stage " + std::to_string(n) + ": ";
    const FiniteMultigraph* g = nullptr;
    try {
      g = &sys.expand(n);
    } catch (const std::exception& ex) {
      r.require(false, tag + ex.what());
      break;
    }
    r.require(g->vertex_count() <= static_cast<std::size_t>(n) + 1,
              tag + std::to_string(g->vertex_count()) + " vertices exceed " +
                  std::to_string(n + 1));
    std::set<Label> want;
    for (int k = 0; k < n; ++k) want.insert(sys.steps()[k].edge);
    std::set<Label> have;
    for (const auto& [e, uv] : g->edges()) {
      (void)uv;
      have.insert(e);
    }
    r.require(have == want, tag + "edge set is not the first " +
                                std::to_string(n) + " step edges");
    for (const auto& v : g->vertices())
      r.require(degree(*g, v) <= 2 * static_cast<std::size_t>(n),
                tag + "degree of " + v + " exceeds " + std::to_string(2 * n));
    r.require(components(*g).size() == 1, tag + "graph is disconnected");
    for (const auto& [e, uv] : g->edges()) {
      (void)uv;
      std::map<Label, std::pair<Label, Label>> rest = g->edges();
      rest.erase(e);
      FiniteMultigraph cut(g->vertices(), std::move(rest));
      r.require(components(cut).size() <= 2,
                tag + "removing " + e + " leaves more than two pieces");
    }
    try {
      auto [back, q] = contract_edge(*g, sys.steps()[n - 1].edge);
      r.require(back == sys.expand(n - 1),
                tag + "contracting " + sys.steps()[n - 1].edge +
                    " does not return stage " + std::to_string(n - 1));
      r.require(q.dropped_loops == std::set<Label>{sys.steps()[n - 1].edge},
                tag + "contraction dropped the wrong edges");
    } catch (const std::exception& ex) {
      r.require(false, tag + ex.what());
    }
  }
  return r;
}

EdgeContractionSystem from_finite_graph(const FiniteMultigraph& g,
                                        const std::vector<Label>& edge_order) {
  if (g.vertex_count() == 0)
    throw std::invalid_argument("cannot rebuild an empty graph");
  if (components(g).size() != 1)
    throw std::invalid_argument("cannot rebuild a disconnected graph");
  {
    std::set<Label> given(edge_order.begin(), edge_order.end());
    std::set<Label> actual;
    for (const auto& [e, uv] : g.edges()) {
      (void)uv;
      actual.insert(e);
    }
    if (given.size() != edge_order.size() || given != actual)
      throw std::invalid_argument(
          "edge order must list every edge exactly once");
  }

  int m = static_cast<int>(edge_order.size());
  // block_at[k]: vertex -> name (smallest member) of its component of
  // g minus the first k edges
  std::vector<std::map<Label, Label>> block_at(m + 1);
  for (int k = 0; k <= m; ++k) {
    std::map<Label, std::pair<Label, Label>> rest = g.edges();
    for (int i = 0; i < k; ++i) rest.erase(edge_order[i]);
    FiniteMultigraph stripped(g.vertices(), std::move(rest));
    for (const auto& comp : components(stripped))
      for (const auto& v : comp) block_at[k][v] = *comp.begin();
  }

  std::vector<UncontractionStep> steps;
  for (int k = 1; k <= m; ++k) {
    const Label& e = edge_order[k - 1];
    const auto& [x, y] = g.ends_of(e);
    Label bx = block_at[k].at(x), by = block_at[k].at(y);
    Label at = block_at[k - 1].at(x);  // == block_at[k-1].at(y)
    if (bx == by) {
      steps.push_back(UncontractionStep{e, LoopStep{at}});
      continue;
    }
    SplitStep split;
    split.at = at;
    split.into = {at, std::max(bx, by)};
    // route every stage-(k-1) incidence at the torn block to the side its
    // underlying endpoint falls in at stage k
    for (int i = 0; i < k - 1; ++i) {
      const Label& f = edge_order[i];
      const auto& [u, v] = g.ends_of(f);
      Label pu = block_at[k - 1].at(u), pv = block_at[k - 1].at(v);
      // stage-(k-1) endpoint pair of f is minmax(pu, pv); position 0 holds
      // the smaller image, with the sorted underlying pair breaking ties
      const Label& first_end = pu <= pv ? u : v;
      const Label& second_end = pu <= pv ? v : u;
      if (block_at[k - 1].at(first_end) == at)
        split.assign[Incidence{f, 0}] = block_at[k].at(first_end);
      if (block_at[k - 1].at(second_end) == at)
        split.assign[Incidence{f, 1}] = block_at[k].at(second_end);
    }
    steps.push_back(UncontractionStep{e, std::move(split)});
  }
  return EdgeContractionSystem(block_at[0].begin()->second, std::move(steps));
}

std::string to_json(const EdgeContractionSystem& sys) {
  nlohmann::ordered_json j;
  j["root"] = sys.root();
  j["steps"] = nlohmann::ordered_json::array();
  for (const auto& step : sys.steps()) {
    nlohmann::ordered_json s;
    s["edge"] = step.edge;
    if (const auto* loop = std::get_if<LoopStep>(&step.kind)) {
      s["kind"] = "loop";
      s["at"] = loop->at;
    } else {
      const auto& split = std::get<SplitStep>(step.kind);
      s["kind"] = "split";
      s["at"] = split.at;
      s["into"] = {split.into.first, split.into.second};
      nlohmann::ordered_json assign = nlohmann::ordered_json::object();
      for (const auto& [inc, side] : split.assign)
        assign[inc.edge + "#" + std::to_string(inc.which)] = side;
      s["assign"] = std::move(assign);
    }
    j["steps"].push_back(std::move(s));
  }
  return j.dump(2);
}

EdgeContractionSystem system_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& ex) {
    throw std::invalid_argument(std::string("system JSON parse error: ") +
                                ex.what());
  }
  if (!j.is_object() || !j.contains("root") || !j.contains("steps") ||
      !j["root"].is_string() || !j["steps"].is_array())
    throw std::invalid_argument(
        "system JSON needs a root string and a steps array");
  std::vector<UncontractionStep> steps;
  for (const auto& s : j["steps"]) {
    if (!s.is_object() || !s.contains("edge") || !s.contains("kind") ||
        !s.contains("at") || !s["edge"].is_string() || !s["at"].is_string())
      throw std::invalid_argument("system JSON step needs edge, kind and at");
    UncontractionStep step;
    step.edge = s["edge"].get<Label>();
    std::string kind = s["kind"].is_string() ? s["kind"].get<std::string>() : "";
    if (kind == "loop") {
      step.kind = LoopStep{s["at"].get<Label>()};
    } else if (kind == "split") {
      SplitStep split;
      split.at = s["at"].get<Label>();
      if (!s.contains("into") || !s["into"].is_array() ||
          s["into"].size() != 2 || !s.contains("assign") ||
          !s["assign"].is_object())
        throw std::invalid_argument(
            "system JSON split step needs into [v,w] and an assign object");
      split.into = {s["into"][0].get<Label>(), s["into"][1].get<Label>()};
      for (const auto& [key, side] : s["assign"].items()) {
        auto hash = key.rfind('#');
        if (hash == std::string::npos || hash + 2 != key.size() ||
            (key[hash + 1] != '0' && key[hash + 1] != '1') || !side.is_string())
          throw std::invalid_argument("system JSON assign key " + key +
                                      " is not edge#0 or edge#1");
        split.assign[Incidence{key.substr(0, hash), key[hash + 1] - '0'}] =
            side.get<Label>();
      }
      step.kind = std::move(split);
    } else {
      throw std::invalid_argument("system JSON step kind must be loop or split");
    }
    steps.push_back(std::move(step));
  }
  return EdgeContractionSystem(j["root"].get<Label>(), std::move(steps));
}

EdgeContractionSystem hawaiian(int circles) {
  if (circles < 1)
    throw std::invalid_argument("hawaiian needs at least one circle");
  std::vector<UncontractionStep> steps;
  for (int k = 1; k <= circles; ++k) {
    Label loop_edge = "e" + std::to_string(2 * k - 1);
    Label join_edge = "e" + std::to_string(2 * k);
    Label partner = "z" + std::to_string(k);
    steps.push_back(UncontractionStep{loop_edge, LoopStep{"z"}});
    SplitStep split;
    split.at = "z";
    split.into = {"z", partner};
    split.assign[Incidence{loop_edge, 0}] = "z";
    split.assign[Incidence{loop_edge, 1}] = partner;
    for (int j = 1; j < k; ++j) {
      // earlier circles hang between z and z<j>; z is the smaller label
      split.assign[Incidence{"e" + std::to_string(2 * j - 1), 0}] = "z";
      split.assign[Incidence{"e" + std::to_string(2 * j), 0}] = "z";
    }
    steps.push_back(UncontractionStep{join_edge, std::move(split)});
  }
  return EdgeContractionSystem("z", std::move(steps));
}

namespace {

// corner x of the depth-remaining subtriangle at address sigma
Label gasket_corner(const std::string& sigma, int remaining, int x) {
  std::string s = sigma;
  for (int i = 0; i < remaining; ++i) s.push_back(static_cast<char>('0' + x));
  return "s" + s + "." + std::to_string(x);
}

}  // namespace

FiniteMultigraph sierpinski_graph(int depth, std::vector<Label>* order) {
  if (depth < 0) throw std::invalid_argument("gasket depth must be >= 0");
  std::set<Label> vs;
  std::map<Label, std::pair<Label, Label>> es;
  std::vector<Label> connectors;

  std::vector<std::string> frontier{""};
  for (int d = 0; d < depth; ++d) {
    std::vector<std::string> next;
    for (const auto& tau : frontier) {
      int remaining = depth - d - 1;
      for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
          Label c = "c" + tau + "." + std::to_string(i) + std::to_string(j);
          es.emplace(c, std::minmax(
                            gasket_corner(tau + char('0' + i), remaining, j),
                            gasket_corner(tau + char('0' + j), remaining, i)));
          connectors.push_back(c);
        }
      for (int i = 0; i < 3; ++i) next.push_back(tau + char('0' + i));
    }
    frontier = std::move(next);
  }
  std::vector<Label> base;
  for (const auto& sigma : frontier) {
    for (int i = 0; i < 3; ++i) vs.insert(gasket_corner(sigma, 0, i));
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) {
        Label t = "t" + sigma + "." + std::to_string(i) + std::to_string(j);
        es.emplace(t, std::minmax(gasket_corner(sigma, 0, i),
                                  gasket_corner(sigma, 0, j)));
        base.push_back(t);
      }
  }
  if (order) {
    order->clear();
    order->insert(order->end(), connectors.begin(), connectors.end());
    std::sort(base.begin(), base.end());
    order->insert(order->end(), base.begin(), base.end());
  }
  return FiniteMultigraph(std::move(vs), std::move(es));
}

EdgeContractionSystem sierpinski_graphlike(int depth) {
  std::vector<Label> order;
  FiniteMultigraph g = sierpinski_graph(depth, &order);
  return from_finite_graph(g, order);
}

FiniteMultigraph cycle_graph(int n) {
  if (n < 1) throw std::invalid_argument("cycle needs at least one edge");
  std::set<Label> vs;
  std::map<Label, std::pair<Label, Label>> es;
  for (int i = 0; i < n; ++i) vs.insert("v" + std::to_string(i));
  for (int k = 1; k <= n; ++k)
    es.emplace("e" + std::to_string(k),
               std::minmax(Label("v" + std::to_string(k - 1)),
                           Label("v" + std::to_string(k % n))));
  return FiniteMultigraph(std::move(vs), std::move(es));
}

FiniteMultigraph theta_graph() {
  return FiniteMultigraph({"u", "v"},
                          {{"e1", {"u", "v"}},
                           {"e2", {"u", "v"}},
                           {"e3", {"u", "v"}}});
}

FiniteMultigraph dumbbell3_graph() {
  return FiniteMultigraph(
      {"a0", "a1", "a2", "b0", "b1", "b2"},
      {{"a01", {"a0", "a1"}},
       {"a02", {"a0", "a2"}},
       {"a12", {"a1", "a2"}},
       {"b01", {"b0", "b1"}},
       {"b02", {"b0", "b2"}},
       {"b12", {"b1", "b2"}},
       {"br", {"a0", "b0"}}});
}

FiniteMultigraph k4_graph() {
  return FiniteMultigraph({"p", "q", "r", "s"},
                          {{"pq", {"p", "q"}},
                           {"pr", {"p", "r"}},
                           {"ps", {"p", "s"}},
                           {"qr", {"q", "r"}},
                           {"qs", {"q", "s"}},
                           {"rs", {"r", "s"}}});
}

namespace {

std::vector<Label> sorted_edges(const FiniteMultigraph& g) {
  std::vector<Label> order;
  for (const auto& [e, uv] : g.edges()) {
    (void)uv;
    order.push_back(e);
  }
  return order;  // map iteration is already sorted
}

}  // namespace

EdgeContractionSystem cycle_system(int n) {
  FiniteMultigraph g = cycle_graph(n);
  std::vector<Label> order;
  for (int k = 1; k <= n; ++k) order.push_back("e" + std::to_string(k));
  return from_finite_graph(g, order);
}

EdgeContractionSystem theta_system() {
  return from_finite_graph(theta_graph(), {"e1", "e2", "e3"});
}

EdgeContractionSystem dumbbell3_system() {
  FiniteMultigraph g = dumbbell3_graph();
  return from_finite_graph(g, sorted_edges(g));
}

EdgeContractionSystem k4_system() {
  FiniteMultigraph g = k4_graph();
  return from_finite_graph(g, sorted_edges(g));
}

std::vector<std::string> system_catalog_names() {
  return {"cycle:n", "dumbbell3", "hawaiian:m", "k4", "sierpinski:d", "theta"};
}

EdgeContractionSystem parse_system_spec(const std::string& spec) {
  auto colon = spec.find(':');
  std::string name = spec.substr(0, colon);
  bool has_param = colon != std::string::npos;
  int param = 0;
  if (has_param) {
    try {
      std::size_t used = 0;
      param = std::stoi(spec.substr(colon + 1), &used);
      if (used != spec.size() - colon - 1) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw std::invalid_argument("system parameter in '" + spec +
                                  "' is not an integer");
    }
  }
  if (name == "hawaiian") return hawaiian(has_param ? param : 4);
  if (name == "sierpinski") return sierpinski_graphlike(has_param ? param : 1);
  if (name == "cycle") return cycle_system(has_param ? param : 3);
  if (!has_param) {
    if (name == "theta") return theta_system();
    if (name == "dumbbell3") return dumbbell3_system();
    if (name == "k4") return k4_system();
  }
  std::string known;
  for (const auto& n : system_catalog_names()) {
    if (!known.empty()) known += ", ";
    known += n;
  }
  throw std::invalid_argument("unknown system '" + spec +
                              "'; available: " + known);
}

}  // namespace ends
