#include <stdexcept>
#include <string>

#include "ends/blowup.hpp"
#include "ends/locally_finite.hpp"

namespace ends {
namespace {

long long to_ll(const std::string& s) { return std::stoll(s); }

std::vector<Label> ray_neighbors(const Label& v) {
  long long k = to_ll(v);
  if (k == 0) return {"1"};
  return {std::to_string(k - 1), std::to_string(k + 1)};
}

std::vector<Label> double_ray_neighbors(const Label& v) {
  long long k = to_ll(v);
  return {std::to_string(k - 1), std::to_string(k + 1)};
}

std::vector<Label> binary_tree_neighbors(const Label& v) {
  // vertices are "r" plus a binary address
  std::vector<Label> ns{v + "0", v + "1"};
  if (v.size() > 1) ns.push_back(v.substr(0, v.size() - 1));
  return ns;
}

std::pair<long long, long long> split2(const Label& v, char sep) {
  auto pos = v.find(sep);
  if (pos == std::string::npos)
    throw std::invalid_argument("bad coordinate label: " + v);
  return {to_ll(v.substr(0, pos)), to_ll(v.substr(pos + 1))};
}

std::vector<Label> grid_neighbors(const Label& v) {
  auto [x, y] = split2(v, ',');
  std::vector<Label> ns;
  auto add = [&ns](long long a, long long b) {
    ns.push_back(std::to_string(a) + "," + std::to_string(b));
  };
  if (x > 0) add(x - 1, y);
  if (y > 0) add(x, y - 1);
  add(x + 1, y);
  add(x, y + 1);
  return ns;
}

std::vector<Label> ladder_neighbors(const Label& v) {
  auto [k, side] = split2(v, ':');
  std::vector<Label> ns;
  auto add = [&ns](long long a, long long s) {
    ns.push_back(std::to_string(a) + ":" + std::to_string(s));
  };
  if (k > 0) add(k - 1, side);
  add(k + 1, side);
  add(k, 1 - side);
  return ns;
}

// stacked cliques K_1, K_2, ...: vertex i of the m-clique is "c<m>.<i>";
// consecutive cliques are completely joined
std::vector<Label> stacked_neighbors(const Label& v) {
  if (v.size() < 4 || v[0] != 'c')
    throw std::invalid_argument("bad stacked-clique label: " + v);
  auto [m, i] = split2(v.substr(1), '.');
  if (m < 1 || i < 0 || i >= m)
    throw std::invalid_argument("bad stacked-clique label: " + v);
  std::vector<Label> ns;
  auto add = [&ns](long long mm, long long ii) {
    ns.push_back("c" + std::to_string(mm) + "." + std::to_string(ii));
  };
  for (long long j = 0; j < m; ++j)
    if (j != i) add(m, j);
  if (m > 1)
    for (long long j = 0; j < m - 1; ++j) add(m - 1, j);
  for (long long j = 0; j < m + 1; ++j) add(m + 1, j);
  return ns;
}

std::vector<Label> blowup_neighbors(const BlowupParams& p, const Label& v) {
  BlowupVertex u = parse_blowup_label(v);
  int lvl = level(u.addr);
  if (u.index >= p.block_size(lvl))
    throw std::invalid_argument("bad blowup label: " + v);
  std::vector<Label> ns;
  for (int j = 0; j < p.block_size(lvl); ++j)
    if (j != u.index) ns.push_back(BlowupVertex{u.addr, j}.label());
  if (lvl > 0) {
    TreeAddr parent = u.addr.substr(0, u.addr.size() - 1);
    for (int j = 0; j < p.block_size(lvl - 1); ++j)
      ns.push_back(BlowupVertex{parent, j}.label());
  }
  for (const char* bit : {"0", "1"})
    for (int j = 0; j < p.block_size(lvl + 1); ++j)
      ns.push_back(BlowupVertex{u.addr + bit, j}.label());
  return ns;
}

// follows a binary seed and then keeps repeating its last turn
std::string seeded_addr(const std::string& seed, int depth) {
  std::string addr;
  for (int i = 0; i < depth; ++i)
    addr.push_back(i < static_cast<int>(seed.size()) ? seed[i] : seed.back());
  return addr;
}

std::vector<OracleEnd> tree_like_ends(const std::string& prefix,
                                      const std::string& suffix) {
  std::vector<OracleEnd> ends;
  for (const std::string seed : {"00", "01", "10", "11"})
    ends.push_back(OracleEnd{seed, [=](int d) {
                               return prefix + seeded_addr(seed, d) + suffix;
                             }});
  return ends;
}

}  // namespace

const std::vector<GraphBuilder>& builder_catalog() {
  static const std::vector<GraphBuilder> catalog = [] {
    std::vector<GraphBuilder> c;
    c.push_back({"ray", [] { return LazyGraph("0", ray_neighbors); },
                 {OracleEnd{"fwd", [](int d) { return std::to_string(d); }}}});
    c.push_back(
        {"double_ray", [] { return LazyGraph("0", double_ray_neighbors); },
         {OracleEnd{"pos", [](int d) { return std::to_string(d); }},
          OracleEnd{"neg", [](int d) { return std::to_string(-d); }}}});
    c.push_back({"binary_tree",
                 [] { return LazyGraph("r", binary_tree_neighbors); },
                 tree_like_ends("r", "")});
    c.push_back({"quadrant_grid", [] { return LazyGraph("0,0", grid_neighbors); },
                 {OracleEnd{"axis", [](int d) {
                              return std::to_string(d) + ",0";
                            }}}});
    c.push_back({"ladder", [] { return LazyGraph("0:0", ladder_neighbors); },
                 {OracleEnd{"fwd", [](int d) {
                              return std::to_string(d) + ":0";
                            }}}});
    c.push_back(
        {"stacked_cliques", [] { return LazyGraph("c1.0", stacked_neighbors); },
         {OracleEnd{"fwd", [](int d) {
                      return "c" + std::to_string(d + 1) + ".0";
                    }}}});
    c.push_back({"single",
                 [] {
                   return LazyGraph(
                       "0", [](const Label&) { return std::vector<Label>{}; });
                 },
                 {}});
    c.push_back({"blowup_lf",
                 [] {
                   BlowupParams p{BlowupProfile::universal_lf};
                   return LazyGraph("b.0", [p](const Label& v) {
                     return blowup_neighbors(p, v);
                   });
                 },
                 tree_like_ends("b", ".0")});
    c.push_back({"blowup_gl",
                 [] {
                   BlowupParams p{BlowupProfile::universal_gl};
                   return LazyGraph("b.0", [p](const Label& v) {
                     return blowup_neighbors(p, v);
                   });
                 },
                 tree_like_ends("b", ".0")});
    return c;
  }();
  return catalog;
}

const GraphBuilder& find_builder(const std::string& name) {
  for (const auto& b : builder_catalog())
    if (b.name == name) return b;
  std::string known;
  for (const auto& b : builder_catalog()) {
    if (!known.empty()) known += ", ";
    known += b.name;
  }
  throw std::invalid_argument("unknown graph '" + name +
                              "'; available: " + known);
}

}  // namespace ends
