#pragma once

// Weighted dual graphs of (possibly non-reduced, possibly non-nodal) fibers and their
// elementary numerical data.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fibra/error.hpp"
#include "fibra/lattice.hpp"
#include "fibra/rational.hpp"

namespace fibra {

struct FiberComponent {
  std::string id;
  int genus = 0;         // geometric genus of the normalization
  int multiplicity = 1;  // coefficient in the fiber divisor
  /// Number of connected components of the cyclic cover over this curve under base change.
  /// Only consulted for positive-genus components whose splitting is not forced.
  std::optional<int> cover_components;

  friend bool operator==(const FiberComponent&, const FiberComponent&) = default;
};

enum class SingularityKind { Node, Cusp, Tacnode, Ordinary, Custom };

inline std::string to_string(SingularityKind k) {
  switch (k) {
    case SingularityKind::Node: return "node";
    case SingularityKind::Cusp: return "cusp";
    case SingularityKind::Tacnode: return "tacnode";
    case SingularityKind::Ordinary: return "ordinary";
    case SingularityKind::Custom: return "custom";
  }
  return "?";
}

/// One infinitely near point of a plane curve germ.
///
/// `parent` is the point whose blow-up this point lies on (-1 for the singular point itself);
/// `satellite`, when set, is the second earlier point whose exceptional curve passes through
/// this one. It must be a point the parent is itself proximate to. `branch_multiplicity[b]` is
/// the multiplicity of the strict transform of local branch b here.
struct ProximityPoint {
  int parent = -1;
  int satellite = -1;
  std::vector<int> branch_multiplicity;

  friend bool operator==(const ProximityPoint&, const ProximityPoint&) = default;
};

using ProximityTree = std::vector<ProximityPoint>;

struct SingularityDescriptor {
  SingularityKind kind = SingularityKind::Node;
  int order = 0;                 // m, for ordinary m-fold points
  ProximityTree proximity_tree;  // custom only; built-in kinds expand via canonical_tree

  friend bool operator==(const SingularityDescriptor&, const SingularityDescriptor&) = default;
};

/// A non-nodal singular point of F_red, with the component carrying each local branch.
struct PointSingularity {
  std::string id;
  std::vector<std::string> branches;
  SingularityDescriptor descriptor;

  friend bool operator==(const PointSingularity&, const PointSingularity&) = default;
};

struct FiberGraph {
  std::string name;
  std::vector<FiberComponent> components;
  /// Each edge is a node; a pair (c, c) is a node of c with itself.
  std::vector<std::pair<std::string, std::string>> edges;
  std::vector<PointSingularity> point_singularities;

  std::optional<std::size_t> index_of(const std::string& id) const {
    for (std::size_t i = 0; i < components.size(); ++i)
      if (components[i].id == id) return i;
    return std::nullopt;
  }
  std::size_t require(const std::string& id) const {
    auto i = index_of(id);
    if (!i) throw InputError("unknown component id '" + id + "'");
    return *i;
  }

  friend bool operator==(const FiberGraph&, const FiberGraph&) = default;
};

// ---------------------------------------------------------------------------------------------
// Proximity trees

inline std::size_t branch_count(const SingularityDescriptor& d) {
  switch (d.kind) {
    case SingularityKind::Node: return 2;
    case SingularityKind::Cusp: return 1;
    case SingularityKind::Tacnode: return 2;
    case SingularityKind::Ordinary: return static_cast<std::size_t>(std::max(d.order, 0));
    case SingularityKind::Custom:
      return d.proximity_tree.empty() ? 0 : d.proximity_tree.front().branch_multiplicity.size();
  }
  return 0;
}

/// Infinitely near points of the germ. Built-in kinds expand to their standard trees:
/// cusp blows up as (2, 2, 3), tacnode as (2, 3), an ordinary m-fold point once.
inline ProximityTree canonical_tree(const SingularityDescriptor& d) {
  switch (d.kind) {
    case SingularityKind::Node: return {{-1, -1, {1, 1}}};
    case SingularityKind::Cusp: return {{-1, -1, {2}}, {0, -1, {1}}, {1, 0, {1}}};
    case SingularityKind::Tacnode: return {{-1, -1, {1, 1}}, {0, -1, {1, 1}}};
    case SingularityKind::Ordinary: return {{-1, -1, std::vector<int>(branch_count(d), 1)}};
    case SingularityKind::Custom: return d.proximity_tree;
  }
  return {};
}

/// Points the given point is proximate to: its parent and, for satellites, one more.
inline std::vector<int> proximate_to(const ProximityTree& tree, int p) {
  std::vector<int> out;
  if (tree[p].parent >= 0) out.push_back(tree[p].parent);
  if (tree[p].satellite >= 0) out.push_back(tree[p].satellite);
  return out;
}

inline int tree_multiplicity(const ProximityTree& tree, int p, const std::vector<std::size_t>& branches) {
  int m = 0;
  for (auto b : branches) m += tree[p].branch_multiplicity[b];
  return m;
}

inline std::vector<std::size_t> all_branches(const ProximityTree& tree) {
  std::vector<std::size_t> v(tree.empty() ? 0 : tree.front().branch_multiplicity.size());
  std::iota(v.begin(), v.end(), std::size_t{0});
  return v;
}

/// delta invariant of the sub-germ formed by the given branches.
inline std::int64_t germ_delta(const ProximityTree& tree, const std::vector<std::size_t>& branches) {
  std::int64_t delta = 0;
  for (int p = 0; p < static_cast<int>(tree.size()); ++p) {
    std::int64_t e = tree_multiplicity(tree, p, branches);
    delta += e * (e - 1) / 2;
  }
  return delta;
}

/// Local intersection multiplicity of two distinct branches (Noether's formula).
inline std::int64_t branch_intersection(const ProximityTree& tree, std::size_t b1, std::size_t b2) {
  std::int64_t total = 0;
  for (const auto& p : tree) total += std::int64_t{p.branch_multiplicity[b1]} * p.branch_multiplicity[b2];
  return total;
}

/// Checks a tree for well-formedness: topological order, branch paths, proximity equalities
/// (every branch leaves the tree through exactly one free transverse point), and that no
/// listed point is an ordinary double point of the reduced total transform.
inline void validate_tree(const ProximityTree& tree, std::size_t nbranches, const std::string& where,
                          bool allow_ordinary_double = false) {
  auto fail = [&](const std::string& msg) { throw InputError("singularity '" + where + "': " + msg); };
  if (tree.empty()) fail("empty proximity tree");
  const int n = static_cast<int>(tree.size());
  for (int p = 0; p < n; ++p) {
    const auto& pt = tree[p];
    if (pt.branch_multiplicity.size() != nbranches) fail("branch multiplicity list has wrong length");
    for (int e : pt.branch_multiplicity)
      if (e < 0) fail("negative branch multiplicity");
    if (p == 0) {
      if (pt.parent != -1 || pt.satellite != -1) fail("first point must be the root");
      continue;
    }
    if (pt.parent < 0 || pt.parent >= p) fail("parent must precede its child");
    if (pt.satellite >= 0) {
      auto prox = proximate_to(tree, pt.parent);
      if (pt.satellite == pt.parent || std::find(prox.begin(), prox.end(), pt.satellite) == prox.end())
        fail("satellite must be a point the parent is proximate to");
    } else if (pt.satellite != -1) {
      fail("bad satellite index");
    }
  }
  for (std::size_t b = 0; b < nbranches; ++b) {
    if (tree[0].branch_multiplicity[b] < 1) fail("every branch must pass through the singular point");
    int last = -1;
    for (int p = 0; p < n; ++p) {
      if (tree[p].branch_multiplicity[b] == 0) continue;
      if (p > 0 && tree[tree[p].parent].branch_multiplicity[b] == 0) fail("branch path is not connected");
      int children_on_branch = 0;
      for (int q = p + 1; q < n; ++q)
        if (tree[q].parent == p && tree[q].branch_multiplicity[b] > 0) ++children_on_branch;
      if (children_on_branch > 1) fail("a branch passes through two points of one exceptional curve");
      if (children_on_branch == 0) last = p;
    }
    for (int p = 0; p < n; ++p) {
      int excess = tree[p].branch_multiplicity[b];
      for (int q = p + 1; q < n; ++q) {
        auto prox = proximate_to(tree, q);
        if (std::find(prox.begin(), prox.end(), p) != prox.end()) excess -= tree[q].branch_multiplicity[b];
      }
      int expected = (p == last) ? 1 : 0;
      if (excess < 0) fail("child multiplicity exceeds proximity constraint at point " + std::to_string(p));
      if (excess != expected) {
        fail("proximity equality fails at point " + std::to_string(p) +
             " (branch does not leave the tree through one free transverse point)");
      }
    }
  }
  if (allow_ordinary_double) return;
  // every point must be a non-ordinary-double point of the reduced total transform
  for (int p = 0; p < n; ++p) {
    const auto& pt = tree[p];
    int exc = (pt.parent >= 0 ? 1 : 0) + (pt.satellite >= 0 ? 1 : 0);
    int m = exc;
    for (int e : pt.branch_multiplicity) m += e;
    if (m < 2) fail("point " + std::to_string(p) + " is not singular on the total transform");
    if (m > 2) continue;
    bool singular_branch = false;
    std::vector<std::size_t> smooth_branches;
    for (std::size_t b = 0; b < nbranches; ++b) {
      if (pt.branch_multiplicity[b] >= 2) singular_branch = true;
      if (pt.branch_multiplicity[b] == 1) smooth_branches.push_back(b);
    }
    if (singular_branch) continue;
    bool tangent = false;
    for (int q = p + 1; q < n; ++q) {
      if (tree[q].parent != p) continue;
      int through = 0;
      for (auto b : smooth_branches)
        if (tree[q].branch_multiplicity[b] > 0) ++through;
      if (tree[q].satellite >= 0) ++through;  // exceptional curve other than E_p
      if (through >= 2) tangent = true;
    }
    if (!tangent) fail("point " + std::to_string(p) + " is an ordinary double point and must not be blown up");
  }
}

// ---------------------------------------------------------------------------------------------
// Graph data

namespace detail {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace detail

/// Validates ids, ranges, descriptors and connectivity. Self-intersection integrality is
/// checked by self_intersections.
inline void validate_structure(const FiberGraph& f) {
  if (f.components.empty()) throw InputError("fiber has no components");
  std::set<std::string> ids;
  for (const auto& c : f.components) {
    if (c.id.empty()) throw InputError("component with empty id");
    if (!ids.insert(c.id).second) throw InputError("duplicate component id '" + c.id + "'");
    if (c.genus < 0) throw InputError("component '" + c.id + "': genus must be >= 0");
    if (c.multiplicity < 1) throw InputError("component '" + c.id + "': multiplicity must be >= 1");
    if (c.cover_components && *c.cover_components < 1)
      throw InputError("component '" + c.id + "': cover_components must be >= 1");
  }
  detail::UnionFind uf(f.components.size());
  for (const auto& [a, b] : f.edges) uf.unite(f.require(a), f.require(b));
  std::set<std::string> point_ids;
  for (const auto& s : f.point_singularities) {
    if (!point_ids.insert(s.id).second) throw InputError("duplicate singularity id '" + s.id + "'");
    const auto& d = s.descriptor;
    if (d.kind == SingularityKind::Ordinary && d.order < 3)
      throw InputError("singularity '" + s.id + "': ordinary m-fold point needs m >= 3");
    if (d.kind == SingularityKind::Custom && d.proximity_tree.empty())
      throw InputError("singularity '" + s.id + "': custom descriptor without proximity tree");
    if (s.branches.size() != branch_count(d))
      throw InputError("singularity '" + s.id + "': expected " + std::to_string(branch_count(d)) +
                       " branches, got " + std::to_string(s.branches.size()));
    validate_tree(canonical_tree(d), s.branches.size(), s.id, d.kind == SingularityKind::Node);
    for (const auto& b : s.branches) uf.unite(f.require(b), f.require(s.branches.front()));
  }
  for (std::size_t i = 1; i < f.components.size(); ++i)
    if (uf.find(i) != uf.find(0)) throw InputError("dual graph is not connected");
}

/// Intersection numbers between distinct components (nodes plus local multiplicities).
/// Diagonal entries are left zero.
inline IntMatrix mutual_intersections(const FiberGraph& f) {
  const std::size_t n = f.components.size();
  IntMatrix m(n, std::vector<std::int64_t>(n, 0));
  for (const auto& [a, b] : f.edges) {
    auto i = f.require(a), j = f.require(b);
    if (i == j) continue;
    ++m[i][j];
    ++m[j][i];
  }
  for (const auto& s : f.point_singularities) {
    auto tree = canonical_tree(s.descriptor);
    for (std::size_t b1 = 0; b1 < s.branches.size(); ++b1)
      for (std::size_t b2 = b1 + 1; b2 < s.branches.size(); ++b2) {
        auto i = f.require(s.branches[b1]), j = f.require(s.branches[b2]);
        if (i == j) continue;
        auto k = branch_intersection(tree, b1, b2);
        m[i][j] += k;
        m[j][i] += k;
      }
  }
  return m;
}

/// C_i^2 from F.C_i = 0.
inline std::vector<std::int64_t> self_intersection_vector(const FiberGraph& f) {
  validate_structure(f);
  auto m = mutual_intersections(f);
  std::vector<std::int64_t> out(f.components.size());
  for (std::size_t i = 0; i < f.components.size(); ++i) {
    std::int64_t rhs = 0;
    for (std::size_t j = 0; j < f.components.size(); ++j)
      if (j != i) rhs -= std::int64_t{f.components[j].multiplicity} * m[i][j];
    const std::int64_t n = f.components[i].multiplicity;
    if (rhs % n != 0)
      throw StructuralError("inconsistent configuration: self-intersection of '" + f.components[i].id +
                            "' is not an integer");
    out[i] = rhs / n;
  }
  return out;
}

inline std::map<std::string, std::int64_t> self_intersections(const FiberGraph& f) {
  auto v = self_intersection_vector(f);
  std::map<std::string, std::int64_t> out;
  for (std::size_t i = 0; i < v.size(); ++i) out[f.components[i].id] = v[i];
  return out;
}

/// Full intersection matrix of the fiber components (negative semidefinite, kernel spanned by F).
inline IntersectionLattice fiber_lattice(const FiberGraph& f) {
  auto m = mutual_intersections(f);
  auto d = self_intersection_vector(f);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < f.components.size(); ++i) {
    m[i][i] = d[i];
    labels.push_back(f.components[i].id);
  }
  return IntersectionLattice(std::move(labels), std::move(m));
}

/// Arithmetic genus of one component: geometric genus plus the delta of its own singular points.
inline std::int64_t component_pa(const FiberGraph& f, std::size_t i) {
  const auto& id = f.components[i].id;
  std::int64_t pa = f.components[i].genus;
  for (const auto& [a, b] : f.edges)
    if (a == id && b == id) ++pa;
  for (const auto& s : f.point_singularities) {
    std::vector<std::size_t> mine;
    for (std::size_t b = 0; b < s.branches.size(); ++b)
      if (s.branches[b] == id) mine.push_back(b);
    if (!mine.empty()) pa += germ_delta(canonical_tree(s.descriptor), mine);
  }
  return pa;
}

/// K.C_i = 2 p_a(C_i) - 2 - C_i^2.
inline std::vector<std::int64_t> canonical_degrees(const FiberGraph& f) {
  auto sq = self_intersection_vector(f);
  std::vector<std::int64_t> out(sq.size());
  for (std::size_t i = 0; i < sq.size(); ++i) out[i] = 2 * component_pa(f, i) - 2 - sq[i];
  return out;
}

/// p_a(F_red) = 1 - #components + sum g_i + sum over singular points of delta.
inline std::int64_t pa_red(const FiberGraph& f) {
  validate_structure(f);
  std::int64_t pa = 1 - static_cast<std::int64_t>(f.components.size());
  for (const auto& c : f.components) pa += c.genus;
  pa += static_cast<std::int64_t>(f.edges.size());
  for (const auto& s : f.point_singularities) {
    auto tree = canonical_tree(s.descriptor);
    pa += germ_delta(tree, all_branches(tree));
  }
  return pa;
}

/// (sum C_i)^2.
inline std::int64_t fred_square(const FiberGraph& f) {
  auto m = mutual_intersections(f);
  auto d = self_intersection_vector(f);
  std::int64_t total = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    total += d[i];
    for (std::size_t j = i + 1; j < d.size(); ++j) total += 2 * m[i][j];
  }
  return total;
}

/// Genus of the general fiber from K.F = 2g - 2.
inline int fiber_genus(const FiberGraph& f) {
  auto k = canonical_degrees(f);
  std::int64_t kf = 0;
  for (std::size_t i = 0; i < k.size(); ++i) kf += std::int64_t{f.components[i].multiplicity} * k[i];
  if (kf % 2 != 0 || kf < -2) throw StructuralError("inconsistent configuration: K.F = " + std::to_string(kf));
  return static_cast<int>(kf / 2 + 1);
}

/// Topological Euler number of the support.
inline std::int64_t chi_top(const FiberGraph& f) {
  validate_structure(f);
  std::int64_t chi = 0;
  for (const auto& c : f.components) chi += 2 - 2 * std::int64_t{c.genus};
  chi -= static_cast<std::int64_t>(f.edges.size());
  for (const auto& s : f.point_singularities) chi -= static_cast<std::int64_t>(s.branches.size()) - 1;
  return chi;
}

enum class FiberClass { Smooth, SemistableSingular, NonSemistable };

inline std::string to_string(FiberClass c) {
  switch (c) {
    case FiberClass::Smooth: return "smooth";
    case FiberClass::SemistableSingular: return "semistable-singular";
    case FiberClass::NonSemistable: return "non-semistable";
  }
  return "?";
}

struct Classification {
  FiberClass kind = FiberClass::Smooth;
  bool relatively_minimal = true;
  std::vector<std::string> minus_one_curves;  // smooth rational components with C^2 = -1
};

inline bool is_reduced(const FiberGraph& f) {
  return std::all_of(f.components.begin(), f.components.end(), [](const auto& c) { return c.multiplicity == 1; });
}

inline bool is_nodal(const FiberGraph& f) {
  return std::all_of(f.point_singularities.begin(), f.point_singularities.end(),
                     [](const auto& s) { return s.descriptor.kind == SingularityKind::Node; });
}

inline Classification classify(const FiberGraph& f) {
  Classification c;
  auto sq = self_intersection_vector(f);
  for (std::size_t i = 0; i < sq.size(); ++i)
    if (f.components[i].genus == 0 && sq[i] == -1 && component_pa(f, i) == 0)
      c.minus_one_curves.push_back(f.components[i].id);
  c.relatively_minimal = c.minus_one_curves.empty();
  if (!is_reduced(f) || !is_nodal(f)) {
    c.kind = FiberClass::NonSemistable;
  } else if (f.components.size() == 1 && f.edges.empty() && f.point_singularities.empty()) {
    c.kind = FiberClass::Smooth;
  } else {
    c.kind = FiberClass::SemistableSingular;
  }
  return c;
}

inline bool is_semistable(const FiberGraph& f) { return classify(f).kind != FiberClass::NonSemistable; }

/// Same fiber with every node descriptor turned into an edge.
inline FiberGraph with_nodes_as_edges(const FiberGraph& f) {
  FiberGraph out = f;
  out.point_singularities.clear();
  for (const auto& s : f.point_singularities) {
    if (s.descriptor.kind == SingularityKind::Node)
      out.edges.emplace_back(s.branches[0], s.branches[1]);
    else
      out.point_singularities.push_back(s);
  }
  return out;
}

}  // namespace fibra
