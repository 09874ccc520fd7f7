#include "confsink/verify.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "confsink/cycles.hpp"
#include "confsink/homology.hpp"
#include "confsink/random_instances.hpp"

namespace confsink {

namespace {

using Results = std::vector<CheckResult>;

std::string join(const std::vector<std::size_t>& xs) {
  std::string out = "(";
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + std::to_string(xs[i]);
  return out + ")";
}

std::string torsion_text(const HomologySummary& h) {
  std::string out;
  for (const auto& d : h.degrees)
    for (const auto& t : d.torsion) out += (out.empty() ? "" : " ") + std::string("Z/") + t.get_str() + " in degree " + std::to_string(d.degree);
  return out.empty() ? "none" : out;
}

std::size_t factorial(std::size_t n) { return n <= 1 ? 1 : n * factorial(n - 1); }

bool same_chain(const Chain& a, const Chain& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  return a.degree() == b.degree() && a.terms() == b.terms();
}

CheckResult homology_check(std::string id, std::string reference, const Graph& g, std::size_t n,
                           const std::vector<std::size_t>& expected_betti, std::optional<std::int64_t> expected_chi = {}) {
  CheckResult r{std::move(id), std::move(reference), false, true, {}};
  const auto cx = CubeComplex::enumerate(g, n);
  const auto h = homology(cx);
  r.passed = h.betti() == expected_betti && h.torsion_free() && (!expected_chi || *expected_chi == h.euler_characteristic);
  r.detail = "betti " + join(h.betti()) + " expected " + join(expected_betti) + "; torsion " + torsion_text(h) +
             "; chi " + std::to_string(h.euler_characteristic);
  if (expected_chi) r.detail += " expected " + std::to_string(*expected_chi);
  return r;
}

// --- closed-formula table --------------------------------------------------------------------

struct Family {
  std::string name;
  GraphSpec spec;
  std::string reference;
  std::function<std::vector<std::size_t>(std::size_t)> betti;
};

std::vector<Family> table_families() {
  return {
      {"interval", GraphSpec::interval(), "n! points: the orders of n particles on a segment",
       [](std::size_t n) { return std::vector<std::size_t>{factorial(n)}; }},
      {"circle", GraphSpec::circle(), "(n-1)! circles: cyclic orders on a circle",
       [](std::size_t n) { return std::vector<std::size_t>{factorial(n - 1), factorial(n - 1)}; }},
      {"interval-sink0", GraphSpec::interval().with_sinks({0}), "contractible: everything slides into the sink",
       [](std::size_t) { return std::vector<std::size_t>{1}; }},
      {"interval-sinks01", GraphSpec::interval().with_sinks({0, 1}),
       "1-skeleton of the n-cube: b1 = (n-2)2^(n-1)+1",
       [](std::size_t n) {
         const auto b1 = static_cast<std::int64_t>(n - 2) * (std::int64_t{1} << (n - 1)) + 1;
         return std::vector<std::size_t>{1, static_cast<std::size_t>(b1)};
       }},
      {"circle-sink0", GraphSpec::circle().with_sinks({0}), "bouquet of n circles",
       [](std::size_t n) { return std::vector<std::size_t>{1, n}; }},
  };
}

Results table_group(const std::string& group, std::size_t from, std::size_t to) {
  Results out;
  for (const auto& f : table_families())
    for (std::size_t n = from; n <= to; ++n) {
      out.push_back(homology_check(group + "/" + f.name + "/n=" + std::to_string(n), f.reference, build_graph(f.spec), n,
                                   f.betti(n)));
    }
  return out;
}

Results cell_count_group() {
  Results out;
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto cube = CubeComplex::enumerate(build_graph(GraphSpec::interval().with_sinks({0, 1})), n);
    const std::size_t c0 = std::size_t{1} << n, c1 = n << (n - 1);
    const auto chi = (2 - static_cast<std::int64_t>(n)) * (std::int64_t{1} << (n - 1));
    CheckResult r{"cell-counts/interval-sinks01/n=" + std::to_string(n), "vertices and edges of the n-cube", false, true, {}};
    const auto counts = cube.cell_counts();
    r.passed = counts == std::vector<std::size_t>{c0, c1} && euler_characteristic(cube) == chi;
    r.detail = "cells " + join(counts) + " expected " + join({c0, c1}) + "; chi " + std::to_string(euler_characteristic(cube)) +
               " expected " + std::to_string(chi);
    out.push_back(std::move(r));

    const auto rose = CubeComplex::enumerate(build_graph(GraphSpec::circle().with_sinks({0})), n);
    CheckResult s{"cell-counts/circle-sink0/n=" + std::to_string(n), "one vertex and n petals", false, true, {}};
    s.passed = rose.cell_counts() == std::vector<std::size_t>{1, n} &&
               euler_characteristic(rose) == 1 - static_cast<std::int64_t>(n);
    s.detail = "cells " + join(rose.cell_counts()) + " expected " + join({1, n}) + "; chi " +
               std::to_string(euler_characteristic(rose)) + " expected " + std::to_string(1 - static_cast<std::int64_t>(n));
    out.push_back(std::move(s));
  }
  return out;
}

Results surface_group() {
  Results out;
  out.push_back(homology_check("surfaces/k5-n2", "genus 6 homology surface (chi = 2 - 2g)", build_graph(GraphSpec::complete(5)), 2,
                               {1, 12, 1}, -10));
  out.push_back(homology_check("surfaces/k33-n2", "genus 4 homology surface (chi = 2 - 2g)",
                               build_graph(GraphSpec::complete_bipartite(3, 3)), 2, {1, 8, 1}, -6));
  out.push_back(homology_check("surfaces/banana4-n3", "genus 13 homology surface (chi = 2 - 2g)",
                               build_graph(GraphSpec::banana(4)), 3, {1, 26, 1}, -24));
  const auto cx = CubeComplex::enumerate(build_graph(GraphSpec::banana(4)), 3);
  CheckResult r{"surfaces/banana4-n3-dimension", "two vertices of valence >= 2 and no sinks bound the dimension by 2", false, true, {}};
  r.passed = cx.dimension() == 2;
  r.detail = "top dimension " + std::to_string(cx.dimension()) + " expected 2";
  out.push_back(std::move(r));
  return out;
}

Results nonproduct_group() {
  Results out;
  const Graph g = build_graph(GraphSpec::banana(4));
  const auto cx = CubeComplex::enumerate(g, 3);
  const Chain z = b3_nonproduct_cycle(g, 3);
  const std::string ref = "three star cycles times a third particle crossing each omitted edge";
  auto add = [&](const std::string& name, bool ok, std::string detail) {
    out.push_back({"nonproduct/" + name, ref, ok, true, std::move(detail)});
  };
  add("support", z.support_size() == 144, "support " + std::to_string(z.support_size()) + " expected 144");
  add("cycle", is_cycle(g, z), "boundary is zero: " + std::string(is_cycle(g, z) ? "yes" : "no"));
  const bool bnd = is_boundary(z, cx);
  add("not-boundary", !bnd, std::string("is_boundary ") + (bnd ? "true" : "false") + " expected false (no 3-cells)");
  const auto span = class_span_rank({z}, cx, 2);
  add("spans-h2", span == 1, "span rank " + std::to_string(span) + " expected 1 = b2");

  ClassCaps caps;
  caps.products = true;
  const auto list = enumerate_basic_classes(g, 3, caps);
  const auto products = list.chains(2);
  const auto pspan = class_span_rank(products, cx, 2);
  add("no-products", pspan == 0,
      std::to_string(products.size()) + " degree-2 products, span rank " + std::to_string(pspan) + " expected 0");

  const auto la = loop_augmented_nonproduct(1);
  const auto lcx = CubeComplex::enumerate(la.graph, la.particles);
  const bool lcycle = is_cycle(la.graph, la.cycle);
  const bool lbnd = is_boundary(la.cycle, lcx);
  out.push_back({"nonproduct/loop-augmented-k1", "the 2-cycle times one particle circling a lollipop loop", lcycle && !lbnd, true,
                 "degree " + std::to_string(la.cycle.degree()) + ", support " + std::to_string(la.cycle.support_size()) +
                     ", cycle " + (lcycle ? "yes" : "no") + ", boundary " + (lbnd ? "yes" : "no") + " (expected cycle, not boundary)"});
  return out;
}

Results star4_group() {
  Results out;
  const std::string ref = "alternating sum of the four three-ended star cycles vanishes cell by cell";
  const StarSpec spec{0, {{0, End::Initial}, {1, End::Initial}, {2, End::Initial}, {3, End::Initial}}};
  for (const auto& [name, gs] : std::vector<std::pair<std::string, GraphSpec>>{{"star4-n2", GraphSpec::star(4)},
                                                                             {"banana4-n2", GraphSpec::banana(4)}}) {
    const Chain rel = star4_relation(build_graph(gs), spec, 0, 1, empty_parking(2));
    out.push_back({"star4/" + name, ref, rel.is_zero(), true, "support " + std::to_string(rel.support_size()) + " expected 0"});
  }
  const Graph g = build_graph(GraphSpec::star(4));
  std::vector<std::size_t> order{0, 1, 2, 3};
  std::size_t nonzero = 0, tried = 0;
  do {
    StarSpec p{0, {}};
    for (auto i : order) p.ends.push_back(spec.ends[i]);
    ++tried;
    if (!star4_relation(g, p, 0, 1, empty_parking(2)).is_zero()) ++nonzero;
  } while (std::next_permutation(order.begin(), order.end()));
  out.push_back({"star4/end-permutations", ref, nonzero == 0, true,
                 std::to_string(nonzero) + " of " + std::to_string(tried) + " orderings nonzero"});
  return out;
}

CheckResult span_check(const std::string& id, const std::string& reference, const Graph& g, std::size_t n) {
  CheckResult r{id, reference, false, true, {}};
  const auto cx = CubeComplex::enumerate(g, n);
  const auto h = homology(cx);
  const std::size_t b1 = h.degrees.size() > 1 ? h.degrees[1].betti : 0;
  const auto list = enumerate_basic_classes(g, n);
  const std::size_t span = class_span_rank(list.chains(1), cx, 1);
  r.passed = h.torsion_free() && span == b1;
  r.detail = "betti " + join(h.betti()) + "; torsion " + torsion_text(h) + "; " + std::to_string(list.classes.size()) +
             " classes" + (list.truncated ? " (truncated)" : "") + ", span rank " + std::to_string(span) + " expected b1 = " +
             std::to_string(b1);
  return r;
}

Results tree_span_group() {
  Results out;
  for (const auto& ng : tree_corpus())
    for (std::size_t n = 1; n <= 3; ++n)
      out.push_back(span_check("tree-span/" + ng.name + "/n=" + std::to_string(n),
                               "torsion-free, first homology generated by basic classes", ng.graph, n));
  return out;
}

Results general_span_group() {
  const std::string ref = "first homology generated by basic classes";
  return {span_check("general-span/k5-n2", ref, build_graph(GraphSpec::complete(5)), 2),
          span_check("general-span/k33-n2", ref, build_graph(GraphSpec::complete_bipartite(3, 3)), 2),
          span_check("general-span/banana4-n2", ref, build_graph(GraphSpec::banana(4)), 2)};
}

// --- properties -------------------------------------------------------------------------------

/// Random complex on a small random graph; resamples until it has a cell of dimension >= min_dim
/// (when asked) and stays under `max_cells`.
struct Instance {
  Graph graph;
  std::size_t particles;
  CubeComplex cx;
};

Instance random_instance(Rng& rng, const RandomGraphOptions& shape, std::size_t max_particles, std::size_t max_cells,
                         std::size_t min_dim = 0) {
  for (;;) {
    Graph g = random_connected_graph(rng, shape);
    const std::size_t n = 1 + rng.below(max_particles);
    try {
      auto cx = CubeComplex::enumerate(g, n, Limits{max_cells, 50'000'000});
      if (cx.dimension() < min_dim) continue;
      return {std::move(g), n, std::move(cx)};
    } catch (const CapExceeded&) {
    }
  }
}

CheckResult property(const std::string& name, const std::string& reference, std::size_t cases,
                     const std::function<std::string(std::size_t)>& one_case) {
  CheckResult r{"properties/" + name, reference, false, true, {}};
  std::size_t failures = 0;
  std::string first;
  for (std::size_t i = 0; i < cases; ++i) {
    std::string why;
    try {
      why = one_case(i);
    } catch (const std::exception& ex) {
      why = std::string("exception: ") + ex.what();
    }
    if (!why.empty() && failures++ == 0) first = "case " + std::to_string(i) + ": " + why;
  }
  r.passed = failures == 0 && cases > 0;
  r.detail = std::to_string(cases) + " cases, " + std::to_string(failures) + " failures" + (first.empty() ? "" : "; first " + first);
  return r;
}

std::uint64_t case_seed(std::uint64_t seed, const std::string& name) {
  return seed ^ std::hash<std::string>{}(name);
}

Chain apply_boundary(const BoundaryFn& fn, const Graph& g, const Chain& z) {
  Chain out;
  for (const auto& [cell, coef] : z.terms()) {
    Chain part = fn(g, cell);
    part *= coef;
    out += part;
  }
  return out;
}

bool selects(const std::string& filter, const std::string& id) {
  return id == filter || id.rfind(filter + "/", 0) == 0;
}

bool wanted(const VerifyOptions& o, const std::string& id) {
  return o.only.empty() ||
         std::any_of(o.only.begin(), o.only.end(), [&](const std::string& f) { return selects(f, id) || selects(id, f); });
}

Results property_group(const VerifyOptions& o) {
  const std::size_t cases = o.property_cases;
  const BoundaryFn bd = o.boundary ? o.boundary : BoundaryFn([](const Graph& g, const CubeCell& c) { return boundary(g, c); });
  Results out;

  if (wanted(o, "properties/boundary-squared")) {
    Rng rng(case_seed(o.seed, "boundary-squared"));
    out.push_back(property("boundary-squared", "cubical boundary composed with itself is zero", cases, [&](std::size_t) {
      const auto inst = random_instance(rng, {4, 5, 15, 20}, 3, 20'000, 2);
      const std::size_t k = 2 + rng.below(inst.cx.dimension() - 1);
      for (int t = 0; t < 8; ++t) {
        const CubeCell& c = inst.cx.cells(k)[rng.below(inst.cx.cell_count(k))];
        const Chain dd = apply_boundary(bd, inst.graph, bd(inst.graph, c));
        if (!dd.is_zero()) return "nonzero boundary of boundary of " + to_record(c);
      }
      return std::string();
    }));
  }
  if (wanted(o, "properties/corner-validity")) {
    Rng rng(case_seed(o.seed, "corner-validity"));
    std::size_t valid = 0;
    out.push_back(property("corner-validity", "cell_is_valid agrees with the corner-configuration oracle", cases, [&](std::size_t) {
      const auto inst = random_instance(rng, {4, 5, 15, 20}, 3, 20'000);
      for (int t = 0; t < 8; ++t) {
        const CubeCell c = random_candidate_cell(rng, inst.cx);
        const bool lib = cell_is_valid(inst.graph, c);
        if (lib != corner_oracle_valid(inst.graph, c)) return "disagreement on " + to_record(c);
        if (lib && !inst.cx.contains(c)) return "valid cell missing from the enumeration: " + to_record(c);
        valid += lib;
      }
      return std::string();
    }));
    out.back().detail += "; " + std::to_string(valid) + " valid candidates";
  }
  if (wanted(o, "properties/equivariance")) {
    Rng rng(case_seed(o.seed, "equivariance"));
    out.push_back(property("equivariance", "relabelling particles commutes with faces and boundary and preserves homology", cases,
                           [&](std::size_t) {
                             const auto inst = random_instance(rng, {3, 4, 15, 20}, 3, 2'000);
                             const auto perm = random_permutation(rng, inst.particles);
                             const auto inv = inverse_permutation(perm);
                             std::vector<std::vector<CubeCell>> relabelled(inst.cx.dimension() + 1);
                             for (std::size_t k = 0; k <= inst.cx.dimension(); ++k)
                               for (const auto& c : inst.cx.cells(k)) relabelled[k].push_back(relabel(c, perm));
                             for (std::size_t k = 1; k <= inst.cx.dimension(); ++k) {
                               const CubeCell& c = inst.cx.cells(k)[rng.below(inst.cx.cell_count(k))];
                               const CubeCell rc = relabel(c, perm);
                               const auto movers = c.movers();
                               const auto new_movers = rc.movers();
                               for (std::size_t slot = 0; slot < movers.size(); ++slot) {
                                 const auto it = std::find(new_movers.begin(), new_movers.end(), inv[movers[slot]]);
                                 const auto new_slot = static_cast<std::size_t>(it - new_movers.begin());
                                 for (int side : {0, 1})
                                   if (relabel(face(inst.graph, c, slot, side), perm) != face(inst.graph, rc, new_slot, side))
                                     return "face mismatch on " + to_record(c);
                               }
                               if (!same_chain(relabel(boundary(inst.graph, c), perm), boundary(inst.graph, relabel(Chain::of(c), perm))))
                                 return "boundary mismatch on " + to_record(c);
                             }
                             const auto a = homology(inst.cx, {true, false});
                             const auto b = homology(CubeComplex::from_cells(inst.graph, inst.particles, std::move(relabelled)), {true, false});
                             if (a.betti() != b.betti() || torsion_text(a) != torsion_text(b))
                               return "homology " + join(a.betti()) + " vs relabelled " + join(b.betti());
                             return std::string();
                           }));
  }
  if (wanted(o, "properties/push-in")) {
    Rng rng(case_seed(o.seed, "push-in"));
    out.push_back(property("push-in", "push-in is a chain map and forgetting the new particle undoes it", cases, [&](std::size_t) {
      // A random graph with a pendant edge to a new leaf (a sink with some chance).
      Graph base = random_connected_graph(rng, {3, 4, 15, 15});
      auto edges = base.edges();
      const auto leaf = static_cast<VertexId>(base.vertex_count());
      const auto anchor = static_cast<VertexId>(rng.below(base.vertex_count()));
      edges.push_back(rng.chance(50) ? std::pair{anchor, leaf} : std::pair{leaf, anchor});
      auto sinks = base.sinks();
      // An anchor sink leaves the pendant edge without interior slots, so the leaf must be a sink too.
      if (base.is_sink(anchor) || rng.chance(30)) sinks.push_back(leaf);
      const Graph g(base.vertex_count() + 1, edges, sinks);
      const auto e = static_cast<EdgeId>(edges.size() - 1);
      const std::size_t n = 1 + rng.below(2);
      const auto cx = CubeComplex::enumerate(g, n, Limits{20'000, 50'000'000});
      const std::size_t k = rng.below(cx.dimension() + 1);
      const Chain z = random_chain(rng, cx, k, 1 + rng.below(6));
      const auto s = static_cast<ParticleId>(rng.below(n + 1));
      const Chain pz = push_in(g, z, e, s);
      for (const auto& [cell, coef] : pz.terms())
        if (!cell_is_valid(g, cell)) return "invalid pushed cell " + to_record(cell);
      if (!same_chain(boundary(g, pz), push_in(g, boundary(g, z), e, s))) return std::string("boundary does not commute");
      if (!same_chain(drop_particle(pz, s), z)) return std::string("forgetting the new particle does not recover the chain");
      return std::string();
    }));
  }
  if (wanted(o, "properties/leibniz")) {
    Rng rng(case_seed(o.seed, "leibniz"));
    out.push_back(property("leibniz", "boundary of a product follows the graded Leibniz rule", cases, [&](std::size_t) {
      const Graph g1 = random_connected_graph(rng, {3, 3, 15, 20});
      const Graph g2 = random_connected_graph(rng, {3, 3, 15, 20});
      const auto v1 = static_cast<VertexId>(g1.vertex_count()), e1 = static_cast<EdgeId>(g1.edge_count());
      const auto bridge = static_cast<VertexId>(v1 + g2.vertex_count());
      Graph::EdgeList edges = g1.edges();
      for (const auto& [a, b] : g2.edges()) edges.emplace_back(a + v1, b + v1);
      edges.emplace_back(static_cast<VertexId>(rng.below(v1)), bridge);
      edges.emplace_back(bridge, static_cast<VertexId>(v1 + rng.below(g2.vertex_count())));
      std::vector<VertexId> sinks = g1.sinks();
      for (VertexId s : g2.sinks()) sinks.push_back(s + v1);
      const Graph g(bridge + 1, edges, sinks);

      const std::size_t na = 1 + rng.below(2), nb = 1 + rng.below(2), n = na + nb;
      auto ids = random_permutation(rng, n);
      const std::vector<ParticleId> a_ids(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(na));
      const std::vector<ParticleId> b_ids(ids.begin() + static_cast<std::ptrdiff_t>(na), ids.end());
      const auto cx1 = CubeComplex::enumerate(g1, na), cx2 = CubeComplex::enumerate(g2, nb);
      // Embed a factor chain into partial n-particle cells.
      auto embed = [&](const Chain& z, const std::vector<ParticleId>& to, VertexId dv, EdgeId de) {
        Chain out(z.degree());
        for (const auto& [cell, coef] : z.terms()) {
          CubeCell big = empty_parking(n);
          for (std::size_t i = 0; i < to.size(); ++i) {
            ParticleState s = cell.states[i];
            if (s.kind == StateKind::AtVertex) s.id += dv;
            else if (s.present()) s.id += de;
            big.states[to[i]] = s;
          }
          out.add(big, coef);
        }
        return out;
      };
      const Chain a = embed(random_chain(rng, cx1, rng.below(cx1.dimension() + 1), 1 + rng.below(4)), a_ids, 0, 0);
      const Chain b = embed(random_chain(rng, cx2, rng.below(cx2.dimension() + 1), 1 + rng.below(4)), b_ids, v1, e1);
      const Chain lhs = boundary(g, product_chain(g, a, b));
      Chain rhs;
      if (!a.is_zero() && a.degree() > 0) rhs += product_chain(g, boundary(g, a), b);
      if (!b.is_zero() && b.degree() > 0) {
        Chain second = product_chain(g, a, boundary(g, b));
        if (a.degree() % 2 == 1) second *= -1;
        rhs += second;
      }
      if (!same_chain(lhs, rhs)) return std::string("Leibniz rule fails");
      return std::string();
    }));
  }
  if (wanted(o, "properties/subdivision")) {
    Rng rng(case_seed(o.seed, "subdivision"));
    out.push_back(property("subdivision", "homology is unchanged by subdividing an edge", cases, [&](std::size_t) {
      const auto inst = random_instance(rng, {3, 4, 15, 20}, 3, 1'500);
      const auto e = static_cast<EdgeId>(rng.below(inst.graph.edge_count()));
      const Graph sub = subdivide_edge(inst.graph, e);
      const auto a = homology(inst.cx, {true, false});
      const auto b = homology(CubeComplex::enumerate(sub, inst.particles), {true, false});
      auto trimmed = [](std::vector<std::size_t> xs) {
        while (!xs.empty() && xs.back() == 0) xs.pop_back();
        return xs;
      };
      if (trimmed(a.betti()) != trimmed(b.betti()) || torsion_text(a) != torsion_text(b))
        return "betti " + join(a.betti()) + " vs subdivided " + join(b.betti());
      return std::string();
    }));
  }
  if (wanted(o, "properties/dimension-bound")) {
    Rng rng(case_seed(o.seed, "dimension-bound"));
    out.push_back(property("dimension-bound", "no cell exceeds min{n, usable non-sink vertices + sink-sink edges}", cases,
                           [&](std::size_t) {
                             const auto inst = random_instance(rng, {5, 6, 15, 30}, 4, 30'000);
                             const auto bound = dimension_bound(inst.graph, inst.particles);
                             if (inst.cx.dimension() > bound)
                               return "dimension " + std::to_string(inst.cx.dimension()) + " above bound " + std::to_string(bound);
                             return std::string();
                           }));
  }
  if (wanted(o, "properties/snf-oracle")) {
    Rng rng(case_seed(o.seed, "snf-oracle"));
    out.push_back(property("snf-oracle", "sparse rank and Smith form agree with dense elimination and are unimodular invariants", cases,
                           [&](std::size_t) {
                             const std::size_t rows = 1 + rng.below(40), cols = 1 + rng.below(40);
                             const auto m = random_matrix(rng, rows, cols, static_cast<unsigned>(3 + rng.below(40)),
                                                          static_cast<int>(1 + rng.below(4)));
                             const auto snf = smith_normal_form(m);
                             if (rank_over_rationals(m) != dense_rank(m)) return std::string("rank disagrees");
                             if (snf != dense_smith_normal_form(m)) return std::string("invariant factors disagree");
                             const auto u = random_unimodular(rng, rows, 3 * rows), v = random_unimodular(rng, cols, 3 * cols);
                             if (smith_normal_form(u.multiply(m).multiply(v)) != snf)
                               return std::string("invariant factors change under unimodular operations");
                             return std::string();
                           }));
  }
  return out;
}

// --- fuzz report ------------------------------------------------------------------------------

Results fuzz_group(const VerifyOptions& o) {
  Rng rng(case_seed(o.seed, "fuzz"));
  std::size_t tested = 0, skipped = 0;
  std::vector<std::string> findings;
  for (std::size_t i = 0; i < o.fuzz_graphs; ++i) {
    const Graph g = random_connected_graph(rng, {5, 6, 15, 20});
    const std::size_t n = 1 + rng.below(3);
    try {
      const auto cx = CubeComplex::enumerate(g, n, Limits{40'000, 50'000'000});
      const auto h = homology(cx, {true, false});
      ++tested;
      if (!h.torsion_free()) findings.push_back(to_document(g) + " n=" + std::to_string(n) + ": " + torsion_text(h));
    } catch (const CapExceeded&) {
      ++skipped;
    }
  }
  CheckResult r{"fuzz/torsion", "random connected graphs, at most 6 edges and 3 particles; torsion would be a noteworthy finding", false, true, {}};
  r.blocking = false;
  r.passed = findings.empty();
  r.detail = std::to_string(tested) + " instances tested, " + std::to_string(skipped) + " over the cell cap; torsion found: ";
  if (findings.empty()) {
    r.detail += "none";
  } else {
    for (const auto& f : findings) r.detail += "[" + f + "] ";
  }
  return {r};
}

struct Group {
  std::string id;
  std::function<Results(const VerifyOptions&)> run;
};

std::vector<Group> groups() {
  return {
      {"base-table", [](const VerifyOptions&) { return table_group("base-table", 1, 4); }},
      {"base-table-n5", [](const VerifyOptions&) { return table_group("base-table-n5", 5, 5); }},
      {"cell-counts", [](const VerifyOptions&) { return cell_count_group(); }},
      {"surfaces", [](const VerifyOptions&) { return surface_group(); }},
      {"nonproduct", [](const VerifyOptions&) { return nonproduct_group(); }},
      {"star4", [](const VerifyOptions&) { return star4_group(); }},
      {"tree-span", [](const VerifyOptions&) { return tree_span_group(); }},
      {"general-span", [](const VerifyOptions&) { return general_span_group(); }},
      {"properties", property_group},
      {"fuzz", fuzz_group},
  };
}

}  // namespace

std::vector<std::string> check_groups() {
  std::vector<std::string> out;
  for (const auto& g : groups()) out.push_back(g.id);
  return out;
}

std::vector<CheckResult> run_verify(const VerifyOptions& options) {
  std::vector<Group> chosen;
  for (const auto& g : groups()) {
    if (wanted(options, g.id)) chosen.push_back(g);
  }
  std::vector<std::future<Results>> jobs;
  for (const auto& g : chosen)
    jobs.push_back(std::async(options.parallel ? std::launch::async : std::launch::deferred, g.run, std::cref(options)));
  Results all;
  for (auto& j : jobs)
    for (auto& r : j.get())
      if (options.only.empty() ||
          std::any_of(options.only.begin(), options.only.end(), [&](const std::string& f) { return selects(f, r.id); }))
        all.push_back(std::move(r));
  for (const auto& f : options.only)
    if (std::none_of(all.begin(), all.end(), [&](const CheckResult& r) { return selects(f, r.id); }))
      throw InvalidArgument("--only " + f + " selects no check");
  std::sort(all.begin(), all.end(), [](const CheckResult& a, const CheckResult& b) { return a.id < b.id; });
  return all;
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.passed || !r.blocking; });
}

std::string verify_table(const std::vector<CheckResult>& results) {
  std::ostringstream out;
  std::size_t failed = 0;
  for (const auto& r : results) {
    const char* status = r.passed ? "PASS" : (r.blocking ? "FAIL" : "NOTE");
    if (!r.passed && r.blocking) ++failed;
    out << status << "  " << r.id << "  " << r.detail << "  [" << r.reference << "]\n";
  }
  out << results.size() << " checks, " << failed << " failed\n";
  return out.str();
}

std::string verify_document(const std::vector<CheckResult>& results) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& r : results)
    checks.push_back({{"id", r.id}, {"passed", r.passed}, {"blocking", r.blocking}, {"reference", r.reference}, {"detail", r.detail}});
  nlohmann::json doc;
  doc["checks"] = std::move(checks);
  doc["passed"] = all_passed(results);
  return doc.dump(2);
}

std::vector<NamedGraph> tree_corpus() {
  struct Factor {
    std::string name;
    Graph graph;
    std::vector<std::pair<std::string, VertexId>> points;
  };
  const std::vector<Factor> factors{
      {"star3", build_graph(GraphSpec::star(3)), {{"c", 0}, {"l", 1}}},
      {"star4", build_graph(GraphSpec::star(4)), {{"c", 0}, {"l", 1}}},
      {"circle", build_graph(GraphSpec::circle()), {{"v", 0}}},
  };
  std::vector<NamedGraph> base;
  for (const auto& f : factors) base.push_back({f.name, f.graph});
  for (std::size_t i = 0; i < factors.size(); ++i)
    for (std::size_t j = i; j < factors.size(); ++j)
      for (const auto& [pa, va] : factors[i].points)
        for (const auto& [pb, vb] : factors[j].points)
          base.push_back({factors[i].name + "." + pa + "+" + factors[j].name + "." + pb,
                          wedge(factors[i].graph, va, factors[j].graph, vb)});
  base.push_back({"h", build_graph(GraphSpec::h_graph())});

  std::vector<NamedGraph> out = base;
  for (const auto& ng : base)
    for (VertexId v = 0; v < ng.graph.vertex_count(); ++v)
      if (ng.graph.valence(v) == 1) {
        out.push_back({ng.name + "+sink" + std::to_string(v), ng.graph.with_sinks({v})});
        break;
      }
  return out;
}

// --- oracles ----------------------------------------------------------------------------------

std::size_t dense_rank(const SparseIntMatrix& m) {
  auto a = m.to_dense();
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t rank = 0;
  mpz_class previous = 1;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[rank]);
    // Bareiss step: the division by the previous pivot is exact.
    for (std::size_t r = rank + 1; r < rows; ++r) {
      for (std::size_t k = c + 1; k < cols; ++k) a[r][k] = (a[r][k] * a[rank][c] - a[rank][k] * a[r][c]) / previous;
      a[r][c] = 0;
    }
    previous = a[rank][c];
    ++rank;
  }
  return rank;
}

std::vector<mpz_class> dense_smith_normal_form(const SparseIntMatrix& m) {
  auto a = m.to_dense();
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<mpz_class> diag;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    for (;;) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::size_t pr = rows, pc = cols;
      for (std::size_t r = t; r < rows; ++r)
        for (std::size_t c = t; c < cols; ++c)
          if (a[r][c] != 0 && (pr == rows || abs(a[r][c]) < abs(a[pr][pc]))) pr = r, pc = c;
      if (pr == rows) return diag;
      std::swap(a[t], a[pr]);
      for (auto& row : a) std::swap(row[t], row[pc]);
      bool clean = true;
      for (std::size_t r = t + 1; r < rows; ++r) {
        const mpz_class q = a[r][t] / a[t][t];
        for (std::size_t c = t; c < cols; ++c) a[r][c] -= q * a[t][c];
        clean = clean && a[r][t] == 0;
      }
      for (std::size_t c = t + 1; c < cols; ++c) {
        const mpz_class q = a[t][c] / a[t][t];
        for (std::size_t r = t; r < rows; ++r) a[r][c] -= q * a[r][t];
        clean = clean && a[t][c] == 0;
      }
      if (!clean) continue;
      // The pivot must divide the rest of the block; otherwise fold an offending row in.
      std::size_t bad = rows;
      for (std::size_t r = t + 1; r < rows && bad == rows; ++r)
        for (std::size_t c = t + 1; c < cols; ++c)
          if (a[r][c] % a[t][t] != 0) {
            bad = r;
            break;
          }
      if (bad == rows) break;
      for (std::size_t c = t; c < cols; ++c) a[t][c] += a[bad][c];
    }
    diag.push_back(abs(a[t][t]));
  }
  return diag;
}

bool corner_oracle_valid(const Graph& g, const CubeCell& cell) {
  const std::size_t V = g.vertex_count(), E = g.edge_count();
  std::vector<int> half(2 * E, 0);
  for (const auto& s : cell.states) {
    switch (s.kind) {
      case StateKind::Absent: return false;
      case StateKind::AtVertex:
        if (s.id >= V || (!g.is_sink(s.id) && g.valence(s.id) < 2)) return false;
        break;
      case StateKind::OnEdge:
        if (s.id >= E || g.touches_sink(s.id)) return false;
        break;
      case StateKind::MoveEnd:
        if (s.id >= E || g.touches_sink(s.id) || s.slot > 1 || g.valence(g.endpoint(s.id, s.end())) < 2) return false;
        ++half[2 * s.id + s.slot];
        break;
      case StateKind::MoveFull:
        if (s.id >= E || !g.touches_sink(s.id)) return false;
        for (End end : {End::Initial, End::Terminal}) {
          const VertexId v = g.endpoint(s.id, end);
          if (!g.is_sink(v) && g.valence(v) < 2) return false;
        }
        ++half[2 * s.id];
        ++half[2 * s.id + 1];
        break;
    }
  }
  if (std::any_of(half.begin(), half.end(), [](int k) { return k > 1; })) return false;
  for (const auto& corner : corner_configurations(g, cell)) {
    std::vector<int> load(V, 0);
    std::vector<std::vector<std::uint32_t>> ranks(E);
    for (const auto& s : corner.states) {
      if (s.kind == StateKind::AtVertex && !g.is_sink(s.id) && ++load[s.id] > 1) return false;
      if (s.kind == StateKind::OnEdge) ranks[s.id].push_back(s.slot);
    }
    for (auto& r : ranks) {
      std::sort(r.begin(), r.end());
      for (std::size_t i = 0; i < r.size(); ++i)
        if (r[i] != i) return false;
    }
  }
  return true;
}

Chain drop_particle(const Chain& z, ParticleId s) {
  Chain out(z.degree());
  for (const auto& [cell, coef] : z.terms()) {
    CubeCell c = cell;
    const ParticleState gone = c.states.at(s);
    c.states.erase(c.states.begin() + s);
    if (gone.kind == StateKind::OnEdge)
      for (auto& st : c.states)
        if (st.kind == StateKind::OnEdge && st.id == gone.id && st.slot > gone.slot) --st.slot;
    out.add(c, coef);
  }
  return out;
}

}  // namespace confsink
