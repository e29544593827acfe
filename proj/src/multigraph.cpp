#include "ends/multigraph.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace ends {

std::size_t vertex_cap() {
  static const std::size_t cap = [] {
    const char* raw = std::getenv("ENDS_UNIVERSAL_MAX_VERTICES");
    if (raw == nullptr || *raw == '\0') return std::size_t{1000000};
    char* end = nullptr;
    unsigned long long parsed = std::strtoull(raw, &end, 10);
    if (end == raw || *end != '\0' || parsed == 0)
      return std::size_t{1000000};
    return static_cast<std::size_t>(parsed);
  }();
  return cap;
}

FiniteMultigraph::FiniteMultigraph(
    std::set<Label> vertices, std::map<Label, std::pair<Label, Label>> edges)
    : vertices_(std::move(vertices)) {
  for (auto& [e, uv] : edges) {
    if (vertices_.count(e) > 0)
      throw std::invalid_argument("edge label collides with vertex label: " +
                                  e);
    Label u = uv.first;
    Label v = uv.second;
    if (u > v) std::swap(u, v);
    if (vertices_.count(u) == 0 || vertices_.count(v) == 0)
      throw std::invalid_argument("edge " + e +
                                  " has an endpoint outside the vertex set");
    edges_.emplace(e, std::make_pair(std::move(u), std::move(v)));
  }
  for (const auto& v : vertices_) incidence_[v];
  for (const auto& [e, uv] : edges_) {
    incidence_[uv.first].emplace_back(e, uv.second);
    incidence_[uv.second].emplace_back(e, uv.first);
  }
}

const std::pair<Label, Label>& FiniteMultigraph::ends_of(
    const Label& e) const {
  auto it = edges_.find(e);
  if (it == edges_.end()) throw std::invalid_argument("unknown edge: " + e);
  return it->second;
}

bool FiniteMultigraph::is_loop(const Label& e) const {
  const auto& uv = ends_of(e);
  return uv.first == uv.second;
}

const std::vector<std::pair<Label, Label>>& FiniteMultigraph::incidences(
    const Label& v) const {
  auto it = incidence_.find(v);
  if (it == incidence_.end())
    throw std::invalid_argument("unknown vertex: " + v);
  return it->second;
}

std::vector<std::set<Label>> components(const FiniteMultigraph& g) {
  std::set<Label> seen;
  std::vector<std::set<Label>> out;
  for (const auto& start : g.vertices()) {
    if (seen.count(start) > 0) continue;
    std::set<Label> comp;
    std::deque<Label> queue{start};
    seen.insert(start);
    while (!queue.empty()) {
      Label v = queue.front();
      queue.pop_front();
      comp.insert(v);
      for (const auto& [e, w] : g.incidences(v)) {
        (void)e;
        if (seen.insert(w).second) queue.push_back(w);
      }
    }
    out.push_back(std::move(comp));
  }
  // vertices() iterates in label order, so components come out sorted by
  // their smallest member already; keep the guarantee explicit.
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return *a.begin() < *b.begin(); });
  return out;
}

std::vector<std::set<Label>> bfs_layers(const FiniteMultigraph& g,
                                        const Label& root) {
  if (!g.has_vertex(root))
    throw std::invalid_argument("unknown BFS root: " + root);
  std::map<Label, std::size_t> dist{{root, 0}};
  std::deque<Label> queue{root};
  std::vector<std::set<Label>> layers{{root}};
  while (!queue.empty()) {
    Label v = queue.front();
    queue.pop_front();
    std::size_t d = dist.at(v);
    for (const auto& [e, w] : g.incidences(v)) {
      (void)e;
      if (dist.emplace(w, d + 1).second) {
        if (layers.size() <= d + 1) layers.resize(d + 2);
        layers[d + 1].insert(w);
        queue.push_back(w);
      }
    }
  }
  for (const auto& v : g.vertices())
    if (dist.count(v) == 0)
      throw std::invalid_argument("graph is not connected: vertex " + v +
                                  " is unreachable from " + root);
  return layers;
}

std::set<Label> edge_cut(const FiniteMultigraph& g, const std::set<Label>& a,
                         const std::set<Label>& b) {
  for (const auto& v : a) {
    if (!g.has_vertex(v))
      throw std::invalid_argument("edge_cut: unknown vertex " + v);
    if (b.count(v) > 0)
      throw std::invalid_argument("edge_cut: sides overlap at " + v);
  }
  for (const auto& v : b)
    if (!g.has_vertex(v))
      throw std::invalid_argument("edge_cut: unknown vertex " + v);
  std::set<Label> cut;
  for (const auto& [e, uv] : g.edges()) {
    bool ua = a.count(uv.first) > 0, ub = b.count(uv.first) > 0;
    bool va = a.count(uv.second) > 0, vb = b.count(uv.second) > 0;
    if ((ua && vb) || (ub && va)) cut.insert(e);
  }
  return cut;
}

std::pair<FiniteMultigraph, QuotientMap> contract_partition(
    const FiniteMultigraph& g, const std::vector<std::set<Label>>& blocks) {
  QuotientMap q;
  for (const auto& block : blocks) {
    if (block.empty())
      throw std::invalid_argument("contract_partition: empty block");
    const Label& name = *block.begin();
    for (const auto& v : block) {
      if (!g.has_vertex(v))
        throw std::invalid_argument("contract_partition: unknown vertex " + v);
      if (!q.block_of.emplace(v, name).second)
        throw std::invalid_argument(
            "contract_partition: vertex in two blocks: " + v);
    }
  }
  if (q.block_of.size() != g.vertex_count())
    throw std::invalid_argument(
        "contract_partition: blocks do not cover the vertex set");

  std::set<Label> verts;
  for (const auto& block : blocks) verts.insert(*block.begin());
  std::map<Label, std::pair<Label, Label>> edges;
  for (const auto& [e, uv] : g.edges()) {
    const Label& bu = q.block_of.at(uv.first);
    const Label& bv = q.block_of.at(uv.second);
    if (bu == bv) {
      q.dropped_loops.insert(e);
    } else {
      q.kept_edges.insert(e);
      edges.emplace(e, std::make_pair(bu, bv));
    }
  }
  return {FiniteMultigraph(std::move(verts), std::move(edges)), std::move(q)};
}

std::pair<FiniteMultigraph, QuotientMap> contract_edge(const FiniteMultigraph& g,
                                                       const Label& e) {
  const auto& uv = g.ends_of(e);
  const Label keep = std::min(uv.first, uv.second);
  const Label gone = std::max(uv.first, uv.second);

  QuotientMap q;
  q.dropped_loops.insert(e);
  std::set<Label> verts;
  for (const auto& v : g.vertices()) {
    Label image = (v == gone) ? keep : v;
    q.block_of.emplace(v, image);
    verts.insert(std::move(image));
  }
  std::map<Label, std::pair<Label, Label>> edges;
  for (const auto& [f, xy] : g.edges()) {
    if (f == e) continue;
    q.kept_edges.insert(f);
    edges.emplace(f, std::make_pair(q.block_of.at(xy.first),
                                    q.block_of.at(xy.second)));
  }
  return {FiniteMultigraph(std::move(verts), std::move(edges)), std::move(q)};
}

std::size_t degree(const FiniteMultigraph& g, const Label& v) {
  return g.incidences(v).size();
}

std::string to_json(const FiniteMultigraph& g) {
  nlohmann::ordered_json j;
  j["vertices"] = nlohmann::ordered_json::array();
  for (const auto& v : g.vertices()) j["vertices"].push_back(v);
  j["edges"] = nlohmann::ordered_json::array();
  for (const auto& [e, uv] : g.edges())
    j["edges"].push_back({{"id", e}, {"ends", {uv.first, uv.second}}});
  return j.dump(2);
}

FiniteMultigraph graph_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& ex) {
    throw std::invalid_argument(std::string("graph JSON parse error: ") +
                                ex.what());
  }
  if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
    throw std::invalid_argument(
        "graph JSON must be an object with vertices and edges");
  std::set<Label> verts;
  for (const auto& v : j.at("vertices")) verts.insert(v.get<Label>());
  std::map<Label, std::pair<Label, Label>> edges;
  for (const auto& rec : j.at("edges")) {
    if (!rec.contains("id") || !rec.contains("ends") ||
        rec.at("ends").size() != 2)
      throw std::invalid_argument(
          "graph JSON edge records need an id and two ends");
    auto id = rec.at("id").get<Label>();
    auto u = rec.at("ends").at(0).get<Label>();
    auto v = rec.at("ends").at(1).get<Label>();
    if (!edges.emplace(id, std::make_pair(u, v)).second)
      throw std::invalid_argument("graph JSON repeats edge id " + id);
  }
  return FiniteMultigraph(std::move(verts), std::move(edges));
}

namespace {
std::string dot_quote(const Label& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}
}  // namespace

std::string to_dot(const FiniteMultigraph& g, const std::string& name) {
  std::ostringstream out;
  out << "graph " << name << " {\n";
  for (const auto& v : g.vertices()) out << "  " << dot_quote(v) << ";\n";
  for (const auto& [e, uv] : g.edges())
    out << "  " << dot_quote(uv.first) << " -- " << dot_quote(uv.second)
        << " [label=" << dot_quote(e) << "];\n";
  out << "}\n";
  return out.str();
}

}  // namespace ends
