// Command-line front door: generation, truncation, embedding,
// verification, and export of the catalog objects.
//
// Exit codes: 0 success, 1 verification or computation failure, 2 usage
// error (bad flags, unknown catalog names, out-of-range parameters).
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ends/blowup.hpp"
#include "ends/embed_gl.hpp"
#include "ends/embed_lf.hpp"
#include "ends/graphlike.hpp"
#include "ends/locally_finite.hpp"
#include "ends/multigraph.hpp"
#include "ends/verify.hpp"
#include "json.hpp"

namespace {

using nlohmann::ordered_json;

const char* const kPalette[] = {"#e6194b", "#3cb44b", "#4363d8", "#f58231",
                                "#911eb4", "#46f0f0", "#f032e6", "#9a6324",
                                "#008080", "#800000"};
constexpr std::size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

void emit(const std::string& text, const std::string& out_path) {
  std::string body = text;
  if (body.empty() || body.back() != '\n') body += '\n';
  if (out_path.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + out_path + " for writing");
  f << body;
}

// Paths drawn as colored edge chains over annotated nodes; one color per
// path, one DOT statement per segment, so parallels stay distinct.
std::string paths_dot(const std::string& name,
                      const std::map<std::string, std::string>& node_notes,
                      const std::map<std::string, std::vector<std::string>>&
                          paths,
                      const std::string& graph_note) {
  std::set<std::string> nodes;
  for (const auto& [e, path] : paths) {
    (void)e;
    nodes.insert(path.begin(), path.end());
  }
  for (const auto& [node, note] : node_notes) {
    (void)note;
    nodes.insert(node);
  }
  std::string out = "graph " + name + " {\n";
  if (!graph_note.empty())
    out += "  label=" + dot_quote(graph_note) + ";\n";
  for (const auto& node : nodes) {
    auto it = node_notes.find(node);
    out += "  " + dot_quote(node);
    if (it != node_notes.end())
      out += " [label=" + dot_quote(node + "\n" + it->second) + "]";
    out += ";\n";
  }
  std::size_t idx = 0;
  for (const auto& [e, path] : paths) {
    const char* color = kPalette[idx++ % kPaletteSize];
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      out += "  " + dot_quote(path[i]) + " -- " + dot_quote(path[i + 1]) +
             " [color=" + dot_quote(color);
      if (i == 0) out += ", label=" + dot_quote(e);
      out += "];\n";
    }
  }
  out += "}\n";
  return out;
}

ends::BlowupParams parse_profile(const std::string& profile) {
  ends::BlowupParams params;
  params.profile = profile == "gl" ? ends::BlowupProfile::universal_gl
                                   : ends::BlowupProfile::universal_lf;
  return params;
}

std::string graph_text(const ends::FiniteMultigraph& g,
                       const std::string& format, const std::string& name) {
  return format == "dot" ? ends::to_dot(g, name) : ends::to_json(g);
}

int run_embed_lf(const std::string& graph, int depth, const std::string& fmt,
                 const std::string& out) {
  ends::LazyGraph g = ends::find_builder(graph).make();
  ends::EmbeddingState st = ends::embed(g, depth);
  ends::Report rep = ends::verify_embedding(g, st);
  std::map<std::string, std::string> placed;
  std::map<std::string, std::vector<std::string>> paths;
  for (const auto& [v, pos] : st.vertex_map) placed.emplace(pos.label(), v);
  for (const auto& [e, path] : st.edge_map) {
    std::vector<std::string>& labels = paths[e];
    for (const auto& p : path) labels.push_back(p.label());
  }
  if (fmt == "dot") {
    emit(paths_dot("embedding", placed, paths, ""), out);
  } else {
    ordered_json j;
    j["graph"] = graph;
    j["depth"] = depth;
    j["target"] = "lf-blowup";
    j["h"] = st.h.values;
    j["vertex_map"] = ordered_json::object();
    for (const auto& [v, pos] : st.vertex_map) j["vertex_map"][v] = pos.label();
    j["edge_map"] = ordered_json::object();
    for (const auto& [e, labels] : paths) j["edge_map"][e] = labels;
    j["block_assignment"] = ordered_json::array();
    for (const auto& stage : st.block_assignment) {
      ordered_json m = ordered_json::object();
      for (const auto& [piece, addr] : stage) m[piece] = addr;
      j["block_assignment"].push_back(m);
    }
    j["report"] = ordered_json::parse(ends::to_json(rep));
    emit(j.dump(2), out);
  }
  return rep.pass ? 0 : 1;
}

int run_embed_stacked(const std::string& graph, int depth,
                      const std::string& fmt, const std::string& out) {
  ends::LazyGraph g = ends::find_builder(graph).make();
  ends::WarmupEmbedding st = ends::warmup_embed(g, depth);
  ends::Report rep = ends::verify_warmup(g, st);
  auto node_name = [](const std::pair<int, int>& pos) {
    return "K" + std::to_string(pos.first) + "." + std::to_string(pos.second);
  };
  std::map<std::string, std::string> placed;
  std::map<std::string, std::vector<std::string>> paths;
  for (const auto& [v, pos] : st.vertex_map) placed.emplace(node_name(pos), v);
  for (const auto& [e, path] : st.edge_map) {
    std::vector<std::string>& labels = paths[e];
    for (const auto& p : path) labels.push_back(node_name(p));
  }
  if (fmt == "dot") {
    emit(paths_dot("embedding", placed, paths, ""), out);
  } else {
    ordered_json j;
    j["graph"] = graph;
    j["depth"] = depth;
    j["target"] = "stacked";
    j["h"] = st.h.values;
    j["vertex_map"] = ordered_json::object();
    for (const auto& [v, pos] : st.vertex_map)
      j["vertex_map"][v] = ordered_json::array({pos.first, pos.second});
    j["edge_map"] = ordered_json::object();
    for (const auto& [e, path] : st.edge_map) {
      ordered_json arr = ordered_json::array();
      for (const auto& p : path)
        arr.push_back(ordered_json::array({p.first, p.second}));
      j["edge_map"][e] = arr;
    }
    j["report"] = ordered_json::parse(ends::to_json(rep));
    emit(j.dump(2), out);
  }
  return rep.pass ? 0 : 1;
}

int run_embed_gl(const std::string& spec, int horizon, const std::string& fmt,
                 const std::string& out) {
  ends::EdgeContractionSystem sys = ends::parse_system_spec(spec);
  if (horizon < 0) horizon = sys.size();
  ends::GLEmbedding emb = ends::run(sys, horizon);
  ends::Report rep = ends::verify_gl(emb);
  if (fmt == "dot") {
    const ends::GLStage& last = emb.stages.back();
    std::map<std::string, std::vector<std::string>> paths;
    for (const auto& [e, path] : last.p_map) {
      std::vector<std::string>& labels = paths[e];
      for (const auto& p : path) labels.push_back(p.label());
    }
    std::string note = "stage " + std::to_string(horizon) + " of " + spec;
    for (const auto& [v, addr] : last.g_map)
      note += "\n" + v + " -> block " + (addr.empty() ? "(root)" : addr);
    emit(paths_dot("blowup_embedding", {}, paths, note), out);
  } else {
    ordered_json j;
    j["system"] = spec;
    j["horizon"] = horizon;
    j["profile"] = emb.params.name();
    j["stages"] = ordered_json::array();
    for (std::size_t n = 0; n < emb.stages.size(); ++n) {
      ordered_json s;
      s["stage"] = n;
      s["g"] = ordered_json::object();
      for (const auto& [v, addr] : emb.stages[n].g_map) s["g"][v] = addr;
      s["p"] = ordered_json::object();
      for (const auto& [e, path] : emb.stages[n].p_map) {
        ordered_json arr = ordered_json::array();
        for (const auto& p : path) arr.push_back(p.label());
        s["p"][e] = arr;
      }
      j["stages"].push_back(s);
    }
    j["report"] = ordered_json::parse(ends::to_json(rep));
    emit(j.dump(2), out);
  }
  return rep.pass ? 0 : 1;
}

int run_verify(const std::string& suite, const std::string& graph,
               const std::string& system, int stages, int depth, int horizon,
               const std::string& out) {
  ends::Report rep;
  if (suite == "inverse") {
    if (graph.empty())
      throw std::invalid_argument("suite inverse needs --graph");
    rep = ends::suite_inverse_system(graph, stages);
  } else if (suite == "thm32") {
    if (graph.empty()) throw std::invalid_argument("suite thm32 needs --graph");
    rep = ends::suite_thm32(graph, depth);
  } else if (suite == "prop31") {
    if (graph.empty())
      throw std::invalid_argument("suite prop31 needs --graph");
    rep = ends::suite_prop31(graph, depth);
  } else {
    if (system.empty())
      throw std::invalid_argument("suite thm42 needs --system");
    if (horizon < 0) horizon = ends::parse_system_spec(system).size();
    rep = ends::suite_thm42(system, horizon);
  }
  emit(ends::to_json(rep), out);
  return rep.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite truncations, universal blowups, and their embeddings"};
  app.require_subcommand(1);

  std::string profile = "lf", graph, system, format = "json", fmt = "json";
  std::string target = "lf-blowup", suite, out;
  int depth = 0, stage = 1, stages = 6, vdepth = 4, horizon = -1;

  CLI::App* gen = app.add_subcommand("gen", "emit a graph as DOT or JSON");
  gen->require_subcommand(1);
  CLI::App* gen_blowup =
      gen->add_subcommand("blowup", "levels 0..N of a universal blowup");
  gen_blowup->add_option("--profile", profile, "lf or gl")
      ->check(CLI::IsMember({"lf", "gl"}));
  gen_blowup->add_option("--depth", depth, "deepest tree level")->required();
  gen_blowup->add_option("--format", format)->check(CLI::IsMember({"dot", "json"}));
  gen_blowup->add_option("--out", out, "output file (default stdout)");
  CLI::App* gen_graph =
      gen->add_subcommand("graph", "depth-N prefix of a catalog graph");
  gen_graph->add_option("--graph", graph, "catalog name")->required();
  gen_graph->add_option("--depth", depth, "exploration depth")->required();
  gen_graph->add_option("--format", format)->check(CLI::IsMember({"dot", "json"}));
  gen_graph->add_option("--out", out);

  CLI::App* truncate =
      app.add_subcommand("truncate", "finite truncation of a catalog graph");
  truncate->add_option("--graph", graph)->required();
  truncate->add_option("--stage", stage, "truncation stage")->required();
  truncate->add_option("--format", format)->check(CLI::IsMember({"dot", "json"}));
  truncate->add_option("--out", out);

  CLI::App* embed = app.add_subcommand(
      "embed", "embed a catalog graph into a universal target");
  embed->add_option("--graph", graph)->required();
  embed->add_option("--depth", depth, "prefix depth")->required();
  embed->add_option("--target", target)
      ->check(CLI::IsMember({"lf-blowup", "stacked"}));
  embed->add_option("--emit", fmt)->check(CLI::IsMember({"dot", "json"}));
  embed->add_option("--out", out);

  CLI::App* embed_gl = app.add_subcommand(
      "embed-gl", "embed an edge-contraction system into the gl blowup");
  embed_gl->add_option("--system", system, "e.g. hawaiian:8")->required();
  embed_gl->add_option("--horizon", horizon,
                       "stages to run (default: all steps)");
  embed_gl->add_option("--emit", fmt)->check(CLI::IsMember({"dot", "json"}));
  embed_gl->add_option("--out", out);

  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", suite)
      ->required()
      ->check(CLI::IsMember({"inverse", "thm32", "prop31", "thm42"}));
  verify->add_option("--graph", graph);
  verify->add_option("--system", system);
  verify->add_option("--stages", stages, "inverse: last stage (default 6)");
  verify->add_option("--depth", vdepth, "thm32/prop31 depth (default 4)");
  verify->add_option("--horizon", horizon,
                     "thm42 stages (default: all steps)");
  verify->add_option("--out", out, "write the JSON report here");

  CLI::App* exp = app.add_subcommand(
      "export", "dump an edge-contraction system as JSON steps");
  exp->add_option("--system", system)->required();
  exp->add_option("--out", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen_blowup->parsed()) {
      ends::FiniteMultigraph g =
          ends::level_subgraph(parse_profile(profile), depth);
      emit(graph_text(g, format, "blowup"), out);
      return 0;
    }
    if (gen_graph->parsed()) {
      ends::GraphPrefix pre =
          ends::prefix(ends::find_builder(graph).make(), depth);
      emit(graph_text(pre.graph, format, "prefix"), out);
      return 0;
    }
    if (truncate->parsed()) {
      ends::Truncation t =
          ends::truncation(ends::find_builder(graph).make(), stage);
      emit(format == "dot" ? ends::to_dot(t.graph, "truncation")
                           : ends::to_json(t),
           out);
      return 0;
    }
    if (embed->parsed())
      return target == "stacked" ? run_embed_stacked(graph, depth, fmt, out)
                                 : run_embed_lf(graph, depth, fmt, out);
    if (embed_gl->parsed()) return run_embed_gl(system, horizon, fmt, out);
    if (verify->parsed())
      return run_verify(suite, graph, system, stages, vdepth, horizon, out);
    if (exp->parsed()) {
      emit(ends::to_json(ends::parse_system_spec(system)), out);
      return 0;
    }
  } catch (const std::invalid_argument& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 0;
}
