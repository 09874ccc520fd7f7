#include "confsink/graph.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace confsink {

namespace {

std::vector<VertexId> normalized_sinks(std::vector<VertexId> sinks) {
  std::sort(sinks.begin(), sinks.end());
  sinks.erase(std::unique(sinks.begin(), sinks.end()), sinks.end());
  return sinks;
}

bool is_connected(std::size_t vertex_count, const Graph::EdgeList& edges) {
  std::vector<std::size_t> parent(vertex_count);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  std::size_t components = vertex_count;
  for (const auto& [u, v] : edges) {
    auto ru = find(u), rv = find(v);
    if (ru != rv) {
      parent[ru] = rv;
      --components;
    }
  }
  return components == 1;
}

int parse_int(std::string_view text, const std::string& context) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw InvalidArgument("cannot parse integer '" + std::string(text) + "' in graph spec '" + context + "'");
  }
  return value;
}

std::vector<int> parse_params(std::string_view text, const std::string& context) {
  std::vector<int> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    out.push_back(parse_int(text.substr(start, comma - start), context));
    start = comma + 1;
  }
  return out;
}

void require(bool condition, const std::string& message) {
  if (!condition) throw InvalidArgument(message);
}

}  // namespace

Graph::Graph(std::size_t vertex_count, EdgeList edges, std::vector<VertexId> sinks)
    : vertex_count_(vertex_count), edges_(std::move(edges)), sinks_(normalized_sinks(std::move(sinks))) {
  require(vertex_count_ > 0, "graph must have at least one vertex");
  half_edges_at_.resize(vertex_count_);
  for (EdgeId e = 0; e < edges_.size(); ++e) {
    const auto [u, v] = edges_[e];
    require(u < vertex_count_ && v < vertex_count_,
            "edge " + std::to_string(e) + " references a vertex outside 0.." + std::to_string(vertex_count_ - 1));
    half_edges_at_[u].push_back({e, End::Initial});
    half_edges_at_[v].push_back({e, End::Terminal});
  }
  for (auto& list : half_edges_at_) std::sort(list.begin(), list.end());
  is_sink_.assign(vertex_count_, false);
  for (VertexId s : sinks_) {
    require(s < vertex_count_, "sink " + std::to_string(s) + " is not a vertex");
    is_sink_[s] = true;
  }
  require(is_connected(vertex_count_, edges_), "graph is not connected");
}

Graph Graph::with_sinks(std::vector<VertexId> sinks) const { return Graph(vertex_count_, edges_, std::move(sinks)); }

Graph build_graph(const GraphSpec& spec) {
  using F = GraphSpec::Family;
  auto param = [&](std::size_t i) {
    require(i < spec.params.size(), "missing family parameter");
    return spec.params[i];
  };
  std::size_t vertices = 0;
  Graph::EdgeList edges;
  switch (spec.family) {
    case F::Explicit:
      vertices = spec.vertex_count;
      edges = spec.edges;
      break;
    case F::Interval:
      vertices = 2;
      edges = {{0, 1}};
      break;
    case F::Circle:
      vertices = 1;
      edges = {{0, 0}};
      break;
    case F::Star: {
      const int k = param(0);
      require(k >= 3, "star(k) needs k >= 3");
      vertices = static_cast<std::size_t>(k) + 1;
      for (int i = 1; i <= k; ++i) edges.emplace_back(0, static_cast<VertexId>(i));
      break;
    }
    case F::HGraph:
      vertices = 6;
      edges = {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {1, 5}};
      break;
    case F::Banana: {
      const int k = param(0);
      require(k >= 2, "banana(k) needs k >= 2");
      vertices = 2;
      edges.assign(static_cast<std::size_t>(k), {0, 1});
      break;
    }
    case F::Complete: {
      const int m = param(0);
      require(m >= 2, "complete(m) needs m >= 2");
      vertices = static_cast<std::size_t>(m);
      for (VertexId i = 0; i < vertices; ++i)
        for (VertexId j = i + 1; j < vertices; ++j) edges.emplace_back(i, j);
      break;
    }
    case F::CompleteBipartite: {
      const int a = param(0), b = param(1);
      require(a >= 1 && b >= 1, "complete_bipartite(a,b) needs a,b >= 1");
      vertices = static_cast<std::size_t>(a + b);
      for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) edges.emplace_back(static_cast<VertexId>(i), static_cast<VertexId>(a + j));
      break;
    }
  }
  return Graph(vertices, std::move(edges), spec.sinks);
}

GraphSpec parse_family(const std::string& text) {
  const auto colon = text.find(':');
  const std::string name = text.substr(0, colon);
  const std::string_view rest = colon == std::string::npos ? std::string_view{} : std::string_view(text).substr(colon + 1);
  auto params = [&]() {
    require(!rest.empty(), "graph family '" + name + "' needs parameters");
    return parse_params(rest, text);
  };
  auto no_params = [&]() { require(colon == std::string::npos, "graph family '" + name + "' takes no parameters"); };

  if (name == "interval") {
    no_params();
    return GraphSpec::interval();
  }
  if (name == "circle") {
    no_params();
    return GraphSpec::circle();
  }
  if (name == "h") {
    no_params();
    return GraphSpec::h_graph();
  }
  if (name == "star") {
    auto p = params();
    require(p.size() == 1, "star takes one parameter");
    return GraphSpec::star(p[0]);
  }
  if (name == "banana") {
    auto p = params();
    require(p.size() == 1, "banana takes one parameter");
    return GraphSpec::banana(p[0]);
  }
  if (name == "k") {
    auto p = params();
    if (p.size() == 1) return GraphSpec::complete(p[0]);
    require(p.size() == 2, "k takes one (complete) or two (bipartite) parameters");
    return GraphSpec::complete_bipartite(p[0], p[1]);
  }
  if (name.size() >= 2 && name[0] == 'k' && colon == std::string::npos &&
      std::all_of(name.begin() + 1, name.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    if (name.size() == 2) return GraphSpec::complete(name[1] - '0');
    require(name.size() == 3, "shorthand kAB takes exactly two digits");
    return GraphSpec::complete_bipartite(name[1] - '0', name[2] - '0');
  }
  throw InvalidArgument("unknown graph family '" + name + "'");
}

Graph wedge(const Graph& g1, VertexId v1, const Graph& g2, VertexId v2) {
  require(v1 < g1.vertex_count(), "wedge: vertex " + std::to_string(v1) + " not in first graph");
  require(v2 < g2.vertex_count(), "wedge: vertex " + std::to_string(v2) + " not in second graph");
  std::vector<VertexId> relabel(g2.vertex_count());
  VertexId next = static_cast<VertexId>(g1.vertex_count());
  for (VertexId v = 0; v < g2.vertex_count(); ++v) relabel[v] = v == v2 ? v1 : next++;

  Graph::EdgeList edges = g1.edges();
  for (const auto& [a, b] : g2.edges()) edges.emplace_back(relabel[a], relabel[b]);
  std::vector<VertexId> sinks = g1.sinks();
  for (VertexId s : g2.sinks()) sinks.push_back(relabel[s]);
  return Graph(next, std::move(edges), std::move(sinks));
}

Graph subdivide_edge(const Graph& g, EdgeId e) {
  require(e < g.edge_count(), "subdivide_edge: no edge " + std::to_string(e));
  Graph::EdgeList edges = g.edges();
  const auto mid = static_cast<VertexId>(g.vertex_count());
  const VertexId tail = edges[e].second;
  edges[e].second = mid;
  edges.emplace_back(mid, tail);
  return Graph(g.vertex_count() + 1, std::move(edges), g.sinks());
}

std::vector<VertexId> essential_vertices(const Graph& g) {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (g.valence(v) >= 3) out.push_back(v);
  return out;
}

std::size_t dimension_bound(const Graph& g, std::size_t particles) {
  std::size_t slots = 0;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (!g.is_sink(v) && g.valence(v) >= 2) ++slots;
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (g.sink_endpoints(e) == 2) ++slots;
  return std::min(particles, slots);
}

std::string to_document(const Graph& g) {
  nlohmann::json doc;
  doc["vertices"] = g.vertex_count();
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [u, v] : g.edges()) edges.push_back({u, v});
  doc["edges"] = std::move(edges);
  doc["sinks"] = g.sinks();
  return doc.dump();
}

Graph graph_from_document(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
    Graph::EdgeList edges;
    for (const auto& pair : doc.at("edges")) {
      require(pair.is_array() && pair.size() == 2, "graph document: each edge must be a pair [u, v]");
      edges.emplace_back(pair[0].get<VertexId>(), pair[1].get<VertexId>());
    }
    std::vector<VertexId> sinks;
    if (doc.contains("sinks")) sinks = doc.at("sinks").get<std::vector<VertexId>>();
    return Graph(doc.at("vertices").get<std::size_t>(), std::move(edges), std::move(sinks));
  } catch (const nlohmann::json::exception& ex) {
    throw InvalidArgument(std::string("graph document: ") + ex.what());
  }
}

Graph load_graph(const std::string& family_or_path) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(family_or_path, ec)) {
    std::ifstream in(family_or_path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return graph_from_document(buffer.str());
  }
  return build_graph(parse_family(family_or_path));
}

}  // namespace confsink
