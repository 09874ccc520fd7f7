// Command-line front end: homology, verify, span, surface-check and export.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "confsink/cycles.hpp"
#include "confsink/homology.hpp"
#include "confsink/io.hpp"
#include "confsink/verify.hpp"

namespace {

using namespace confsink;

enum Exit { kOk = 0, kCheckFailed = 1, kUsage = 2, kCap = 3 };

struct RunConfig {
  std::string graph;
  std::size_t particles = 2;
  std::string sinks;  // empty keeps the graph's own sinks; "none" clears them
  std::optional<std::size_t> degree;
  std::string caps;
  std::string format = "human";
  std::vector<std::string> only;
  std::string out;
  std::uint64_t seed = VerifyOptions{}.seed;
  std::size_t cases = VerifyOptions{}.property_cases;
};

struct Caps {
  Limits limits;
  ClassCaps classes;
};

Caps parse_caps(const std::string& text) {
  Caps caps;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw InvalidArgument("--caps: expected key=value, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    std::size_t value = 0;
    try {
      value = std::stoull(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw InvalidArgument("--caps: bad number in '" + item + "'");
    }
    if (value == 0) throw InvalidArgument("--caps: " + key + " must be positive");
    if (key == "cells") caps.limits.max_cells = value;
    else if (key == "nonzeros") caps.limits.max_nonzeros = value;
    else if (key == "classes") caps.classes.max_classes = value;
    else if (key == "parkings") caps.classes.max_parkings = value;
    else if (key == "path") caps.classes.max_path_length = value;
    else if (key == "local") caps.classes.max_local_particles = value;
    else throw InvalidArgument("--caps: unknown key '" + key + "' (cells, nonzeros, classes, parkings, path, local)");
  }
  return caps;
}

Graph resolve_graph(const RunConfig& cfg) {
  if (cfg.graph.empty()) throw InvalidArgument("--graph is required");
  Graph g = load_graph(cfg.graph);
  if (cfg.sinks.empty()) return g;
  std::vector<VertexId> sinks;
  if (cfg.sinks != "none") {
    std::istringstream in(cfg.sinks);
    std::string item;
    while (std::getline(in, item, ',')) {
      try {
        sinks.push_back(static_cast<VertexId>(std::stoul(item)));
      } catch (const std::exception&) {
        throw InvalidArgument("--sinks: bad vertex id '" + item + "'");
      }
    }
  }
  return g.with_sinks(sinks);
}

bool machine(const RunConfig& cfg) { return cfg.format == "machine"; }

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream file(cfg.out);
  if (!file) throw InvalidArgument("cannot write " + cfg.out);
  file << text;
  if (!text.empty() && text.back() != '\n') file << '\n';
}

int cmd_homology(const RunConfig& cfg) {
  const Caps caps = parse_caps(cfg.caps);
  const auto cx = CubeComplex::enumerate(resolve_graph(cfg), cfg.particles, caps.limits);
  const auto h = homology(cx);
  emit(cfg, machine(cfg) ? to_document(h, cx) : to_table(h));
  return kOk;
}

int cmd_verify(const RunConfig& cfg) {
  VerifyOptions options;
  options.only = cfg.only;
  options.seed = cfg.seed;
  options.property_cases = cfg.cases;
  const auto results = run_verify(options);
  emit(cfg, machine(cfg) ? verify_document(results) : verify_table(results));
  return all_passed(results) ? kOk : kCheckFailed;
}

int cmd_span(const RunConfig& cfg) {
  Caps caps = parse_caps(cfg.caps);
  const Graph g = resolve_graph(cfg);
  const auto cx = CubeComplex::enumerate(g, cfg.particles, caps.limits);
  const auto h = homology(cx, {true, true});
  std::vector<std::size_t> degrees;
  if (cfg.degree) {
    degrees.push_back(*cfg.degree);
  } else {
    degrees = {1, 2};
  }
  caps.classes.products = std::find(degrees.begin(), degrees.end(), 2) != degrees.end();
  const auto list = enumerate_basic_classes(g, cfg.particles, caps.classes);

  nlohmann::json rows = nlohmann::json::array();
  std::ostringstream table;
  table << "degree  betti  classes  span  status\n";
  for (std::size_t k : degrees) {
    if (k == 0 || k > 2) throw InvalidArgument("--degree must be 1 or 2");
    const std::size_t betti = k < h.degrees.size() ? h.degrees[k].betti : 0;
    const auto chains = list.chains(k);
    const std::size_t span = class_span_rank(chains, cx, k);
    const std::string status = span == betti ? "GENERATED" : (list.truncated ? "INCOMPLETE (truncated)" : "NOT GENERATED");
    rows.push_back({{"degree", k}, {"betti", betti}, {"classes", chains.size()}, {"span_rank", span}, {"status", status}});
    table << k << '\t' << betti << '\t' << chains.size() << '\t' << span << '\t' << status << '\n';
  }
  nlohmann::json doc;
  doc["graph"] = nlohmann::json::parse(to_document(g));
  doc["particles"] = cfg.particles;
  doc["truncated"] = list.truncated;
  doc["degrees"] = std::move(rows);
  if (list.truncated) table << "class enumeration truncated by caps\n";
  emit(cfg, machine(cfg) ? doc.dump(2) : table.str());
  return kOk;
}

int cmd_surface_check(const RunConfig& cfg) {
  const Caps caps = parse_caps(cfg.caps);
  const Graph g = resolve_graph(cfg);
  const auto cx = CubeComplex::enumerate(g, cfg.particles, caps.limits);
  const auto h = homology(cx);
  const auto p = surface_profile(h);
  if (machine(cfg)) {
    nlohmann::json doc;
    doc["graph"] = nlohmann::json::parse(to_document(g));
    doc["particles"] = cfg.particles;
    doc["betti"] = h.betti();
    doc["status"] = p.is_surface ? "homology-surface" : "not-a-homology-surface";
    if (p.is_surface) doc["genus"] = p.genus;
    else doc["reason"] = p.reason;
    emit(cfg, doc.dump(2));
  } else {
    std::ostringstream out;
    if (p.is_surface) out << "homology surface of genus " << p.genus << '\n';
    else out << "not a homology surface: " << p.reason << '\n';
    emit(cfg, out.str());
  }
  return kOk;
}

int cmd_export(const RunConfig& cfg) {
  const Caps caps = parse_caps(cfg.caps);
  const Graph g = resolve_graph(cfg);
  const auto cx = CubeComplex::enumerate(g, cfg.particles, caps.limits);
  std::string text = export_complex(cx);
  const std::size_t degree = cfg.degree.value_or(1);
  ClassCaps classes = caps.classes;
  classes.products = degree == 2;
  const auto chains = enumerate_basic_classes(g, cfg.particles, classes).chains(degree);
  text += "classes " + std::to_string(chains.size()) + '\n' + export_chains(chains);
  emit(cfg, text);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Homology of configuration spaces of graphs with sinks"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto graph_options = [&](CLI::App* sub) {
    sub->add_option("--graph", cfg.graph, "family (star:3, banana:4, k:5, k33, circle, interval, h) or graph file")->required();
    sub->add_option("-n,--particles", cfg.particles, "number of particles");
    sub->add_option("--sinks", cfg.sinks, "comma-separated sink vertices, or 'none'");
    sub->add_option("--caps", cfg.caps, "cells=N,nonzeros=N,classes=N,parkings=N,path=N,local=N");
  };
  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "human or machine")->check(CLI::IsMember({"human", "machine"}));
    sub->add_option("--out", cfg.out, "write the report here instead of stdout");
  };

  auto* homology_cmd = app.add_subcommand("homology", "Betti numbers, torsion and Euler characteristic");
  graph_options(homology_cmd);
  common(homology_cmd);

  auto* verify_cmd = app.add_subcommand("verify", "run the built-in check suite");
  verify_cmd->add_option("--only", cfg.only, "group or check id (repeatable)");
  verify_cmd->add_option("--seed", cfg.seed, "seed for the randomized suites");
  verify_cmd->add_option("--cases", cfg.cases, "cases per property suite");
  common(verify_cmd);

  auto* span_cmd = app.add_subcommand("span", "rank of the enumerated basic classes against the Betti numbers");
  graph_options(span_cmd);
  span_cmd->add_option("--degree", cfg.degree, "1 or 2 (default both)");
  common(span_cmd);

  auto* surface_cmd = app.add_subcommand("surface-check", "is the homology that of a closed orientable surface");
  graph_options(surface_cmd);
  common(surface_cmd);

  auto* export_cmd = app.add_subcommand("export", "cells, boundary matrices and basic-class chains as text");
  graph_options(export_cmd);
  export_cmd->add_option("--degree", cfg.degree, "degree of the exported classes (default 1)");
  common(export_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*homology_cmd) return cmd_homology(cfg);
    if (*verify_cmd) return cmd_verify(cfg);
    if (*span_cmd) return cmd_span(cfg);
    if (*surface_cmd) return cmd_surface_check(cfg);
    if (*export_cmd) return cmd_export(cfg);
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << '\n';
    return kCap;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
