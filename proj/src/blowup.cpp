#include "ends/blowup.hpp"

#include <algorithm>
#include <stdexcept>

namespace ends {

bool is_tree_addr(const TreeAddr& t) {
  return std::all_of(t.begin(), t.end(),
                     [](char c) { return c == '0' || c == '1'; });
}

bool addr_prefix(const TreeAddr& ancestor, const TreeAddr& descendant) {
  return ancestor.size() <= descendant.size() &&
         descendant.compare(0, ancestor.size(), ancestor) == 0;
}

Label BlowupVertex::label() const {
  return "b" + addr + "." + std::to_string(index);
}

BlowupVertex parse_blowup_label(const Label& text) {
  auto dot = text.find('.');
  if (text.empty() || text[0] != 'b' || dot == std::string::npos ||
      dot + 1 >= text.size())
    throw std::invalid_argument("not a blowup vertex label: " + text);
  BlowupVertex v;
  v.addr = text.substr(1, dot - 1);
  if (!is_tree_addr(v.addr))
    throw std::invalid_argument("not a blowup vertex label: " + text);
  const std::string digits = text.substr(dot + 1);
  if (digits.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument("not a blowup vertex label: " + text);
  v.index = std::stoi(digits);
  return v;
}

namespace {

void check_vertex(const BlowupParams& p, const BlowupVertex& v) {
  if (!is_tree_addr(v.addr))
    throw std::invalid_argument("bad tree address: " + v.addr);
  if (v.index < 0 || v.index >= p.block_size(level(v.addr)))
    throw std::invalid_argument("block index out of range: " + v.label());
}

Label edge_label(const Label& u, const Label& v) {
  return std::min(u, v) + "--" + std::max(u, v);
}

}  // namespace

bool adjacent(const BlowupParams& p, const BlowupVertex& u,
              const BlowupVertex& v) {
  check_vertex(p, u);
  check_vertex(p, v);
  if (u.addr == v.addr) return u.index != v.index;
  const auto& [shorter, longer] =
      u.addr.size() < v.addr.size() ? std::tie(u.addr, v.addr)
                                    : std::tie(v.addr, u.addr);
  return longer.size() == shorter.size() + 1 && addr_prefix(shorter, longer);
}

FiniteMultigraph level_subgraph(const BlowupParams& p, int max_level) {
  if (max_level < 0)
    throw std::invalid_argument("level_subgraph needs max_level >= 0");
  std::size_t count = 0;
  for (int k = 0; k <= max_level; ++k)
    count += (std::size_t{1} << k) * p.block_size(k);
  if (count > vertex_cap())
    throw std::runtime_error(
        "level_subgraph exceeds the vertex cap "
        "(ENDS_UNIVERSAL_MAX_VERTICES)");

  std::vector<TreeAddr> addrs{""};
  for (std::size_t i = 0; i < addrs.size(); ++i)
    if (level(addrs[i]) < max_level) {
      addrs.push_back(addrs[i] + "0");
      addrs.push_back(addrs[i] + "1");
    }

  std::set<Label> verts;
  std::map<Label, std::pair<Label, Label>> edges;
  for (const auto& t : addrs) {
    int s = p.block_size(level(t));
    for (int i = 0; i < s; ++i) {
      Label vi = BlowupVertex{t, i}.label();
      verts.insert(vi);
      for (int j = i + 1; j < s; ++j) {
        Label vj = BlowupVertex{t, j}.label();
        edges.emplace(edge_label(vi, vj), std::minmax(vi, vj));
      }
      if (level(t) < max_level) {
        int sc = p.block_size(level(t) + 1);
        for (const char* bit : {"0", "1"})
          for (int j = 0; j < sc; ++j) {
            Label cj = BlowupVertex{t + bit, j}.label();
            edges.emplace(edge_label(vi, cj), std::minmax(vi, cj));
          }
      }
    }
  }
  return FiniteMultigraph(std::move(verts), std::move(edges));
}

MonotonePath monotone_path(const BlowupParams& p, const BlowupVertex& from,
                           const BlowupVertex& to,
                           const std::set<BlowupVertex>& avoid) {
  check_vertex(p, from);
  check_vertex(p, to);
  if (from.addr == to.addr)
    throw std::invalid_argument("monotone_path endpoints share the block " +
                                (from.addr.empty() ? Label("<root>")
                                                   : Label(from.addr)));
  if (!addr_prefix(from.addr, to.addr))
    throw std::invalid_argument("monotone_path endpoints are incomparable: " +
                                from.label() + " / " + to.label());
  std::map<int, int> per_level;
  for (const auto& a : avoid) {
    check_vertex(p, a);
    if (level(a.addr) < level(from.addr))
      throw std::invalid_argument(
          "avoid vertex " + a.label() + " lies above the path's start level");
    if (++per_level[level(a.addr)] > std::max(level(from.addr), 1))
      throw std::invalid_argument(
          "avoid set too crowded at level " + std::to_string(level(a.addr)));
    if (a == from || a == to)
      throw std::invalid_argument("avoid set contains the endpoint " +
                                  a.label());
  }

  MonotonePath path{from};
  for (int l = level(from.addr) + 1; l < level(to.addr); ++l) {
    TreeAddr t = to.addr.substr(0, l);
    int picked = -1;
    for (int i = 0; i < p.block_size(l); ++i)
      if (avoid.count(BlowupVertex{t, i}) == 0) {
        picked = i;
        break;
      }
    if (picked < 0)
      throw std::runtime_error("no free vertex in block " + t +
                               " for a monotone path");
    path.push_back(BlowupVertex{t, picked});
  }
  path.push_back(to);
  return path;
}

bool monotone_path_valid(const BlowupParams& p, const MonotonePath& path) {
  if (path.empty()) return false;
  for (const auto& v : path) {
    if (!is_tree_addr(v.addr) || v.index < 0 ||
        v.index >= p.block_size(level(v.addr)))
      return false;
  }
  for (std::size_t i = 1; i < path.size(); ++i) {
    if (level(path[i].addr) != level(path[i - 1].addr) + 1) return false;
    if (!addr_prefix(path[i - 1].addr, path[i].addr)) return false;
    if (!adjacent(p, path[i - 1], path[i])) return false;
  }
  return true;
}

Truncation blowup_truncation(const BlowupParams& p, int lvl) {
  if (lvl < 0) throw std::invalid_argument("blowup_truncation needs lvl >= 0");
  Truncation out;
  out.stage = lvl + 1;  // kept levels <= lvl are exactly D^{< lvl+1}
  FiniteMultigraph kept = level_subgraph(p, lvl);

  std::set<Label> verts = kept.vertices();
  std::map<Label, std::pair<Label, Label>> edges;
  for (const auto& [e, uv] : kept.edges()) edges.emplace(e, uv);

  std::vector<TreeAddr> frontier{""};
  for (int k = 0; k < lvl + 1; ++k) {
    std::vector<TreeAddr> next;
    for (const auto& t : frontier) {
      next.push_back(t + "0");
      next.push_back(t + "1");
    }
    frontier = std::move(next);
  }
  for (const auto& t : frontier) {
    Label dummy = "*" + t;
    verts.insert(dummy);
    out.dummies.emplace(dummy, t);
    TreeAddr parent = t.substr(0, t.size() - 1);
    int sp = p.block_size(lvl);
    int sc = p.block_size(lvl + 1);
    for (int i = 0; i < sp; ++i) {
      Label vi = BlowupVertex{parent, i}.label();
      for (int j = 0; j < sc; ++j) {
        Label cj = BlowupVertex{t, j}.label();
        edges.emplace(edge_label(vi, cj), std::minmax(vi, dummy));
      }
    }
  }
  out.graph = FiniteMultigraph(std::move(verts), std::move(edges));
  for (const auto& v : kept.vertices()) out.projection.emplace(v, v);
  for (const auto& t : frontier) {
    int sc = p.block_size(lvl + 1);
    for (int j = 0; j < sc; ++j)
      out.projection.emplace(BlowupVertex{t, j}.label(), "*" + t);
  }
  return out;
}

namespace {

FiniteMultigraph induced_subgraph(const FiniteMultigraph& g,
                                  const std::set<Label>& keep) {
  std::map<Label, std::pair<Label, Label>> edges;
  for (const auto& [e, uv] : g.edges())
    if (keep.count(uv.first) > 0 && keep.count(uv.second) > 0)
      edges.emplace(e, uv);
  return FiniteMultigraph(keep, std::move(edges));
}

}  // namespace

Report check_star_bijection(const BlowupParams& p, int lvl) {
  Report r;
  r.check = std::string("star-bijection ") + p.name() + " level " +
            std::to_string(lvl);
  r.stage_lo = r.stage_hi = lvl;
  const int horizon = lvl + 2;

  FiniteMultigraph blown = level_subgraph(p, horizon);
  std::set<Label> deep_blowup;
  for (const auto& v : blown.vertices())
    if (level(parse_blowup_label(v).addr) > lvl) deep_blowup.insert(v);
  auto blowup_comps = components(induced_subgraph(blown, deep_blowup));

  // the bare tree over the same horizon, nodes labeled "t" + address
  std::set<Label> tree_verts{"t"};
  std::map<Label, std::pair<Label, Label>> tree_edges;
  std::vector<TreeAddr> addrs{""};
  for (std::size_t i = 0; i < addrs.size(); ++i)
    if (level(addrs[i]) < horizon)
      for (const char* bit : {"0", "1"}) {
        TreeAddr child = addrs[i] + bit;
        addrs.push_back(child);
        tree_verts.insert("t" + child);
        tree_edges.emplace(edge_label("t" + addrs[i], "t" + child),
                           std::minmax("t" + addrs[i], "t" + child));
      }
  FiniteMultigraph tree(tree_verts, std::move(tree_edges));
  std::set<Label> deep_tree;
  for (const auto& v : tree_verts)
    if (static_cast<int>(v.size()) - 1 > lvl) deep_tree.insert(v);
  auto tree_comps = components(induced_subgraph(tree, deep_tree));

  r.require(blowup_comps.size() == (std::size_t{1} << (lvl + 1)),
            "expected " + std::to_string(std::size_t{1} << (lvl + 1)) +
                " components beyond level " + std::to_string(lvl) + ", found " +
                std::to_string(blowup_comps.size()));
  r.require(blowup_comps.size() == tree_comps.size(),
            "component counts differ between blowup and tree");

  std::map<Label, std::size_t> tree_comp_of;
  for (std::size_t i = 0; i < tree_comps.size(); ++i)
    for (const auto& v : tree_comps[i]) tree_comp_of[v] = i;

  // collapsing blocks must send every blowup component into exactly one
  // tree component, and distinct components into distinct ones
  std::set<std::size_t> images;
  for (const auto& comp : blowup_comps) {
    std::set<std::size_t> hit;
    for (const auto& v : comp)
      hit.insert(tree_comp_of.at("t" + parse_blowup_label(v).addr));
    r.require(hit.size() == 1, "component containing " + *comp.begin() +
                                   " maps into several subtrees");
    if (hit.size() == 1) {
      r.require(images.insert(*hit.begin()).second,
                "two components collapse onto one subtree (near " +
                    *comp.begin() + ")");
    }
  }
  r.require(images.size() == tree_comps.size() || !r.pass,
            "collapse misses a subtree");

  // block collapse is a graph map on the full horizon
  for (const auto& [e, uv] : blown.edges()) {
    (void)e;
    TreeAddr a = parse_blowup_label(uv.first).addr;
    TreeAddr b = parse_blowup_label(uv.second).addr;
    bool ok = a == b || (addr_prefix(a, b) && b.size() == a.size() + 1) ||
              (addr_prefix(b, a) && a.size() == b.size() + 1);
    r.require(ok, "edge " + uv.first + " -- " + uv.second +
                      " joins non-adjacent blocks");
  }
  return r;
}

}  // namespace ends
