#pragma once

// Local simulation of the pullback fibration over one critical value: totally ramified cyclic
// base change of order e, normalization, minimal resolution of the A_n points above the nodes,
// and contraction of (-1)-curves down to the relatively minimal semistable fiber.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "fibra/cyclic_quotient.hpp"
#include "fibra/error.hpp"
#include "fibra/fiber.hpp"
#include "fibra/lattice.hpp"
#include "fibra/resolution.hpp"

namespace fibra {

/// Smallest e divisible by every component multiplicity of the total transform of F.
inline int choose_e(const ResolutionLog& log) {
  std::int64_t e = 1;
  for (const auto& c : log.final_graph.components) e = std::lcm(e, std::int64_t{c.multiplicity});
  return static_cast<int>(e);
}

/// Accepts any positive multiple of the minimal admissible order.
inline int admissible_e(const ResolutionLog& log, std::optional<int> requested) {
  const int minimal = choose_e(log);
  if (!requested) return minimal;
  if (*requested < 1 || *requested % minimal != 0)
    throw InputError("base change order " + std::to_string(*requested) + " is not a positive multiple of " +
                     std::to_string(minimal));
  return *requested;
}

struct ComponentCover {
  int count = 1;   // connected components over the curve
  int genus = 0;   // genus of each
  int degree = 1;  // degree of each over the curve
  bool assumed_connected = false;
};

/// Connected components of the cyclic cover induced over one SNC component.
///
/// `incident` lists, for every node-branch point on the component, the multiplicity of the
/// other branch (a self-node contributes two entries equal to the component's multiplicity).
/// Over a genus-0 curve the cover is determined by its local monodromies; over a positive-genus
/// curve the splitting must be supplied unless it is forced, otherwise the connected cover is
/// assumed (or UnsupportedError when `require_explicit_split`).
inline ComponentCover component_cover(const FiberComponent& c, int e, const std::vector<int>& incident,
                                      bool require_explicit_split = false) {
  const int n = c.multiplicity;
  if (e < 1 || e % n != 0)
    throw InputError("base change order " + std::to_string(e) + " not divisible by multiplicity of '" + c.id + "'");
  std::int64_t monodromy_sum = 0;
  int forced = n;
  for (int b : incident) {
    if (b < 1 || e % b != 0) throw InputError("base change order not divisible by incident multiplicity");
    forced = std::gcd(forced, b);
    monodromy_sum += b;
  }
  if (monodromy_sum % n != 0)
    throw StructuralError("local monodromies around '" + c.id + "' do not multiply to the identity");

  ComponentCover out;
  if (c.genus == 0) {
    out.count = forced;
    if (c.cover_components && *c.cover_components != forced)
      throw InputError("component '" + c.id + "': cover_components contradicts the forced splitting " +
                       std::to_string(forced));
  } else if (forced == 1) {
    out.count = 1;
    if (c.cover_components && *c.cover_components != 1)
      throw InputError("component '" + c.id + "': cover over it is necessarily connected");
  } else if (c.cover_components) {
    if (forced % *c.cover_components != 0)
      throw InputError("component '" + c.id + "': cover_components must divide " + std::to_string(forced));
    out.count = *c.cover_components;
  } else {
    if (require_explicit_split)
      throw UnsupportedError("component '" + c.id + "' has positive genus and its cover splitting is not determined");
    out.count = 1;
    out.assumed_connected = true;
  }
  out.degree = n / out.count;
  std::int64_t twice_genus_minus_two = std::int64_t{out.degree} * (2 * c.genus - 2);
  for (int b : incident) twice_genus_minus_two += out.degree - std::gcd(n, b) / out.count;
  if (twice_genus_minus_two % 2 != 0 || twice_genus_minus_two < -2)
    throw EngineBugError("Riemann-Hurwitz gives an impossible genus over '" + c.id + "'");
  out.genus = static_cast<int>(twice_genus_minus_two / 2 + 1);
  return out;
}

/// What the base surface knows about each curve of the SNC fiber.
struct BaseCurveData {
  bool exceptional = false;           // contracted to a point on the relatively minimal surface
  std::int64_t canonical_degree = 0;  // K.C on that surface, for non-exceptional curves
};
using PullbackContext = std::map<std::string, BaseCurveData>;

/// Context for an SNC fiber taken as-is: every curve lives on the base surface.
inline PullbackContext context_from_snc(const FiberGraph& f) {
  PullbackContext ctx;
  auto k = canonical_degrees(f);
  for (std::size_t i = 0; i < f.components.size(); ++i) ctx[f.components[i].id] = {false, k[i]};
  return ctx;
}

/// Context for the SNC model produced by resolve: exceptional curves map to points.
inline PullbackContext context_from_log(const ResolutionLog& log) {
  PullbackContext ctx;
  auto k = canonical_degrees(log.original);
  for (std::size_t i = 0; i < log.original.components.size(); ++i)
    ctx[log.original.components[i].id] = {false, k[i]};
  for (const auto& s : log.steps) ctx[s.exceptional] = {true, 0};
  return ctx;
}

struct NodeTraceRow {
  std::string a_id, b_id;
  LocalNodeCover cover;
  int twist = 0;
  bool tree_edge = true;
};

struct CoverTraceRow {
  std::string id;
  ComponentCover cover;
};

struct PullbackResult {
  std::vector<FiberGraph> fibers_above;  // relatively minimal semistable fiber over the preimage point
  FiberGraph resolved_fiber;             // fiber of the resolved pullback before contraction
  int contracted_per_point = 0;
  Rational c_minus_1 = 0;
  /// 2 Pi^*K.Z + Z^2 + contracted, where Z = K_{S2/C~} - Pi^*K_{S/C} on the resolved pullback;
  /// the local drop of K^2 per preimage point is minus this.
  Rational ksq_ledger = 0;
  Rational pullback_k_dot_z = 0;
  Rational z_square = 0;
  int e_used = 1;
  std::int64_t chi_top_resolved = 0;
  std::int64_t chi_top_predicted = 0;
  std::vector<NodeTraceRow> nodes;
  std::vector<CoverTraceRow> covers;
  std::vector<std::string> contraction_order;
  std::vector<std::string> warnings;
};

namespace detail {

/// Working state of a reduced nodal fiber for the contraction loop.
struct ReducedFiberState {
  std::vector<std::string> ids;
  std::vector<int> genus;
  std::vector<int> loops;  // self-nodes
  IntMatrix pairing;
  std::vector<bool> alive;

  std::vector<std::size_t> minus_one_curves() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < ids.size(); ++i)
      if (alive[i] && genus[i] == 0 && loops[i] == 0 && pairing[i][i] == -1) out.push_back(i);
    return out;
  }

  void contract(std::size_t e) {
    std::int64_t incidences = 0;
    for (std::size_t i = 0; i < ids.size(); ++i)
      if (alive[i] && i != e) incidences += pairing[e][i];
    if (incidences > 2) throw EngineBugError("contracting '" + ids[e] + "' would create a non-nodal point");
    alive[e] = false;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (!alive[i]) continue;
      for (std::size_t j = 0; j < ids.size(); ++j) {
        if (!alive[j]) continue;
        pairing[i][j] += pairing[i][e] * pairing[j][e];
      }
      const std::int64_t m = pairing[i][e];
      loops[i] += static_cast<int>(m * (m - 1) / 2);
    }
  }
};

}  // namespace detail

/// Contract smooth rational (-1)-curves until none remain. Self-intersections are always re-read
/// from the updated pairing. With a seed, candidates are taken in random order.
inline std::vector<std::string> contract_minus_one_curves(detail::ReducedFiberState& st,
                                                          std::optional<std::uint64_t> seed = std::nullopt) {
  std::vector<std::string> order;
  std::mt19937_64 rng(seed.value_or(0));
  while (true) {
    auto cands = st.minus_one_curves();
    if (cands.empty()) break;
    std::size_t pick = cands.front();
    if (seed) pick = cands[std::uniform_int_distribution<std::size_t>(0, cands.size() - 1)(rng)];
    order.push_back(st.ids[pick]);
    st.contract(pick);
  }
  return order;
}

struct PullbackOptions {
  bool require_explicit_split = false;
  std::optional<std::uint64_t> contraction_seed;
};

/// Pullback of an SNC fiber under a totally ramified base change of order e.
inline PullbackResult pullback_fiber(const FiberGraph& input, int e, const PullbackContext& ctx,
                                     const PullbackOptions& opts = {}) {
  validate_structure(input);
  const FiberGraph f = with_nodes_as_edges(input);
  if (!f.point_singularities.empty())
    throw InputError("pullback needs an SNC fiber (resolve the non-nodal singular points first)");
  for (const auto& c : f.components)
    if (e < 1 || e % c.multiplicity != 0)
      throw InputError("base change order " + std::to_string(e) + " is not admissible for component '" + c.id + "'");

  PullbackResult res;
  res.e_used = e;
  const std::size_t nc = f.components.size();

  // local models and incidence data
  std::vector<std::vector<int>> incident(nc);
  for (const auto& [a, b] : f.edges) {
    auto i = f.require(a), j = f.require(b);
    NodeTraceRow row{a, b, local_model(f.components[i].multiplicity, f.components[j].multiplicity, e)};
    incident[i].push_back(f.components[j].multiplicity);
    incident[j].push_back(f.components[i].multiplicity);
    res.nodes.push_back(row);
  }
  std::set<int> chain_lengths;
  for (const auto& row : res.nodes) chain_lengths.insert(row.cover.chain_length_per_point);
  for (int k : chain_lengths)
    if (!rational_canonical(ExceptionalConfig::a_chain(static_cast<std::size_t>(k))).is_zero())
      throw EngineBugError("A_n chain with non-zero rational canonical divisor");

  std::vector<ComponentCover> covers(nc);
  for (std::size_t i = 0; i < nc; ++i) {
    covers[i] = component_cover(f.components[i], e, incident[i], opts.require_explicit_split);
    if (covers[i].assumed_connected)
      res.warnings.push_back("cover over positive-genus component '" + f.components[i].id +
                             "' is not determined by the dual graph; assuming it is connected");
    res.covers.push_back({f.components[i].id, covers[i]});
  }

  // spanning tree of the SNC dual graph; non-tree edges carry a twist
  {
    detail::UnionFind uf(nc);
    for (auto& row : res.nodes) {
      auto i = f.require(row.a_id), j = f.require(row.b_id);
      row.tree_edge = i != j && uf.find(i) != uf.find(j);
      if (row.tree_edge) uf.unite(i, j);
    }
  }
  std::vector<std::size_t> twisted;
  std::vector<int> radix;
  for (std::size_t r = 0; r < res.nodes.size(); ++r) {
    if (res.nodes[r].tree_edge) continue;
    auto i = f.require(res.nodes[r].a_id), j = f.require(res.nodes[r].b_id);
    int m = std::gcd(covers[i].count, covers[j].count);
    if (m > 1) {
      twisted.push_back(r);
      radix.push_back(m);
    }
  }

  // vertex layout: copies of each component, then chain curves
  std::vector<std::size_t> first_copy(nc);
  std::vector<std::string> ids;
  std::vector<int> genus;
  std::vector<int> origin;  // SNC component index, or -1 for chain curves
  for (std::size_t i = 0; i < nc; ++i) {
    first_copy[i] = ids.size();
    for (int c = 0; c < covers[i].count; ++c) {
      ids.push_back(covers[i].count == 1 ? f.components[i].id : f.components[i].id + "#" + std::to_string(c));
      genus.push_back(covers[i].genus);
      origin.push_back(static_cast<int>(i));
    }
  }
  const std::size_t n_copies = ids.size();
  std::size_t n_total = n_copies;
  for (const auto& row : res.nodes)
    n_total += static_cast<std::size_t>(row.cover.points_above) * row.cover.chain_length_per_point;
  for (std::size_t r = 0, next = n_copies; r < res.nodes.size(); ++r) {
    const auto& row = res.nodes[r];
    for (int p = 0; p < row.cover.points_above; ++p)
      for (int k = 0; k < row.cover.chain_length_per_point; ++k, ++next) {
        ids.push_back("G" + std::to_string(r + 1) + "." + std::to_string(p) + "." + std::to_string(k + 1));
        genus.push_back(0);
        origin.push_back(-1);
      }
  }

  auto build_edges = [&](const std::vector<int>& twist) {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::size_t next = n_copies;
    for (std::size_t r = 0; r < res.nodes.size(); ++r) {
      const auto& row = res.nodes[r];
      auto i = f.require(row.a_id), j = f.require(row.b_id);
      int t = 0;
      for (std::size_t w = 0; w < twisted.size(); ++w)
        if (twisted[w] == r) t = twist[w];
      for (int p = 0; p < row.cover.points_above; ++p) {
        std::size_t from = first_copy[i] + static_cast<std::size_t>(p % covers[i].count);
        std::size_t to = first_copy[j] + static_cast<std::size_t>((p + t) % covers[j].count);
        std::size_t prev = from;
        for (int k = 0; k < row.cover.chain_length_per_point; ++k, ++next) {
          edges.emplace_back(prev, next);
          prev = next;
        }
        edges.emplace_back(prev, to);
      }
    }
    return edges;
  };
  auto connected = [&](const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    detail::UnionFind uf(n_total);
    for (auto [x, y] : edges) uf.unite(x, y);
    for (std::size_t v = 1; v < n_total; ++v)
      if (uf.find(v) != uf.find(0)) return false;
    return true;
  };

  std::int64_t options = 1;
  for (int m : radix) {
    options *= m;
    if (options > 4096) throw UnsupportedError("too many undetermined cycle monodromies in the dual graph");
  }
  std::optional<std::vector<int>> chosen;
  int connected_options = 0;
  for (std::int64_t code = 0; code < options; ++code) {
    std::vector<int> twist(radix.size());
    std::int64_t rest = code;
    for (std::size_t w = radix.size(); w-- > 0;) {
      twist[w] = static_cast<int>(rest % radix[w]);
      rest /= radix[w];
    }
    if (connected(build_edges(twist))) {
      ++connected_options;
      if (!chosen) chosen = twist;
    }
  }
  if (!chosen) throw InputError("no monodromy choice yields a connected pulled-back fiber; check cover_components");
  if (connected_options > 1)
    res.warnings.push_back("monodromy around cycles of the dual graph is not determined; chose the first of " +
                           std::to_string(connected_options) + " connected options");
  for (std::size_t w = 0; w < twisted.size(); ++w) res.nodes[twisted[w]].twist = (*chosen)[w];
  const auto edges = build_edges(*chosen);

  // reduced fiber on the resolved pullback
  detail::ReducedFiberState st;
  st.ids = ids;
  st.genus = genus;
  st.loops.assign(n_total, 0);
  st.pairing.assign(n_total, std::vector<std::int64_t>(n_total, 0));
  st.alive.assign(n_total, true);
  for (auto [x, y] : edges) {
    if (x == y) {
      ++st.loops[x];
    } else {
      ++st.pairing[x][y];
      ++st.pairing[y][x];
    }
  }
  for (std::size_t v = 0; v < n_total; ++v) {
    std::int64_t s = 0;
    for (std::size_t w = 0; w < n_total; ++w)
      if (w != v) s += st.pairing[v][w];
    st.pairing[v][v] = -s;
  }

  auto as_graph = [&](const detail::ReducedFiberState& s, const std::string& name) {
    FiberGraph g;
    g.name = name;
    for (std::size_t v = 0; v < s.ids.size(); ++v)
      if (s.alive[v]) g.components.push_back({s.ids[v], s.genus[v], 1, {}});
    for (std::size_t v = 0; v < s.ids.size(); ++v) {
      if (!s.alive[v]) continue;
      for (int l = 0; l < s.loops[v]; ++l) g.edges.emplace_back(s.ids[v], s.ids[v]);
      for (std::size_t w = v + 1; w < s.ids.size(); ++w)
        if (s.alive[w])
          for (std::int64_t k = 0; k < s.pairing[v][w]; ++k) g.edges.emplace_back(s.ids[v], s.ids[w]);
    }
    return g;
  };
  res.resolved_fiber = as_graph(st, f.name + "~resolved");

  // Euler number two ways: from the assembled graph, and from the branched-cover count
  res.chi_top_resolved = chi_top(res.resolved_fiber);
  std::int64_t predicted = 0;
  for (std::size_t i = 0; i < nc; ++i)
    predicted += std::int64_t{f.components[i].multiplicity} *
                 (2 - 2 * std::int64_t{f.components[i].genus} - static_cast<std::int64_t>(incident[i].size()));
  for (const auto& row : res.nodes)
    predicted += std::int64_t{row.cover.points_above} * (row.cover.chain_length_per_point + 1);
  res.chi_top_predicted = predicted;
  if (predicted != res.chi_top_resolved) throw EngineBugError("Euler number of the resolved pullback fiber disagrees");

  // Z = K_{S2/C~} - Pi^*K_{S/C}: fixed coefficients over curves of the base surface, solved
  // coefficients over curves mapping to points
  std::vector<Rational> z(n_total, Rational(0));
  std::vector<Rational> pull_k(n_total, Rational(0));  // Pi^*K.D
  std::vector<bool> exceptional(n_total, true);
  for (std::size_t v = 0; v < n_copies; ++v) {
    const auto& comp = f.components[static_cast<std::size_t>(origin[v])];
    auto it = ctx.find(comp.id);
    if (it == ctx.end()) throw InputError("pullback context lacks component '" + comp.id + "'");
    if (it->second.exceptional) continue;
    exceptional[v] = false;
    z[v] = Rational(-std::int64_t{e} * (comp.multiplicity - 1), comp.multiplicity);
    pull_k[v] = Rational(covers[static_cast<std::size_t>(origin[v])].degree) * it->second.canonical_degree;
  }
  auto k_dot = [&](std::size_t v) {  // K_{S2}.D by adjunction
    return Rational(2 * (std::int64_t{genus[v]} + st.loops[v]) - 2 - st.pairing[v][v]);
  };
  std::vector<std::size_t> exc;
  for (std::size_t v = 0; v < n_total; ++v)
    if (exceptional[v]) exc.push_back(v);
  if (!exc.empty()) {
    IntMatrix sub(exc.size(), std::vector<std::int64_t>(exc.size()));
    std::vector<std::vector<Rational>> a(exc.size(), std::vector<Rational>(exc.size()));
    std::vector<Rational> rhs(exc.size());
    for (std::size_t r = 0; r < exc.size(); ++r) {
      rhs[r] = k_dot(exc[r]);
      for (std::size_t v = 0; v < n_total; ++v)
        if (!exceptional[v]) rhs[r] -= z[v] * st.pairing[exc[r]][v];
      for (std::size_t c = 0; c < exc.size(); ++c) {
        sub[r][c] = st.pairing[exc[r]][exc[c]];
        a[r][c] = sub[r][c];
      }
    }
    if (!is_negative_definite(sub)) throw EngineBugError("curves over points of the base are not negative definite");
    auto sol = solve_linear(std::move(a), std::move(rhs));
    for (std::size_t r = 0; r < exc.size(); ++r) z[exc[r]] = sol[r];
  }
  for (std::size_t v = 0; v < n_total; ++v) {
    if (exceptional[v]) continue;
    Rational zd = 0;
    for (std::size_t w = 0; w < n_total; ++w) zd += z[w] * st.pairing[v][w];
    if (zd != k_dot(v) - pull_k[v])
      throw EngineBugError("canonical class ledger inconsistent on '" + ids[v] + "'");
  }
  for (std::size_t v = 0; v < n_total; ++v) {
    res.pullback_k_dot_z += z[v] * pull_k[v];
    for (std::size_t w = 0; w < n_total; ++w) res.z_square += z[v] * z[w] * st.pairing[v][w];
  }

  res.contraction_order = contract_minus_one_curves(st, opts.contraction_seed);
  res.contracted_per_point = static_cast<int>(res.contraction_order.size());
  res.c_minus_1 = Rational(res.contracted_per_point, e);
  if (!is_integer(res.c_minus_1))
    res.warnings.push_back("c_-1 = " + to_string(res.c_minus_1) + " is not an integer");
  res.ksq_ledger = 2 * res.pullback_k_dot_z + res.z_square + res.contracted_per_point;

  FiberGraph minimal = as_graph(st, f.name + "~pullback");
  auto cls = classify(minimal);
  if (cls.kind == FiberClass::NonSemistable || !cls.relatively_minimal)
    throw EngineBugError("pullback fiber is not relatively minimal semistable");
  if (fiber_genus(minimal) != fiber_genus(f)) throw EngineBugError("pullback fiber has the wrong genus");
  res.fibers_above.push_back(std::move(minimal));
  return res;
}

/// Pullback of an SNC fiber taken as a fiber of its own surface.
inline PullbackResult pullback_fiber(const FiberGraph& f, int e, const PullbackOptions& opts = {}) {
  return pullback_fiber(f, e, context_from_snc(with_nodes_as_edges(f)), opts);
}

/// Pullback of any fiber: resolve, then base change the SNC model.
inline PullbackResult pullback_resolved(const ResolutionLog& log, std::optional<int> e = std::nullopt,
                                        const PullbackOptions& opts = {}) {
  return pullback_fiber(log.final_graph, admissible_e(log, e), context_from_log(log), opts);
}

}  // namespace fibra
