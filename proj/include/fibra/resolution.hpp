#pragma once

// Embedded resolution of the non-nodal singular points of F_red: blow up every point of the
// reduced total transform that is not an ordinary double point, recording the multiplicities
// of the reduced total transform (m), of the strict transform of the original F_red (m_bar),
// and the coefficient of each new exceptional curve in the total transform of F.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fibra/checks.hpp"
#include "fibra/error.hpp"
#include "fibra/fiber.hpp"
#include "fibra/lattice.hpp"

namespace fibra {

struct ResolutionStep {
  std::string point;        // id of the singular point of F_red this step belongs to
  int tree_index = 0;       // infinitely near point within that singularity's tree
  std::string exceptional;  // label of the new exceptional curve
  int m = 0;
  int m_bar = 0;
  std::int64_t exc_mult_in_total = 0;
  std::int64_t measure_before = 0;  // sum of m over points still to be blown up
  std::int64_t measure_after = 0;
};

struct ResolutionLog {
  std::vector<ResolutionStep> steps;
  FiberGraph original;
  /// SNC fiber: originals' strict transforms plus exceptional curves; nodes only.
  FiberGraph final_graph;
  /// Lattice after all blow-ups, with the class of every curve of final_graph.
  IntersectionLattice lattice;
  std::map<std::string, DivisorClass> curve_classes;
  std::vector<std::string> point_ids;

  bool is_exceptional(const std::string& id) const {
    for (const auto& s : steps)
      if (s.exceptional == id) return true;
    return false;
  }
};

namespace detail {

inline void dfs_order(const ProximityTree& tree, int p, std::vector<int>& out) {
  out.push_back(p);
  for (int q = p + 1; q < static_cast<int>(tree.size()); ++q)
    if (tree[q].parent == p) dfs_order(tree, q, out);
}

}  // namespace detail

inline ResolutionLog resolve(const FiberGraph& input) {
  validate_structure(input);
  ResolutionLog log;
  log.original = input;
  const FiberGraph f = with_nodes_as_edges(input);
  for (const auto& s : input.point_singularities) log.point_ids.push_back(s.id);

  IntersectionLattice lattice = fiber_lattice(f);
  std::vector<std::string> order;  // curves in final_graph order
  for (std::size_t i = 0; i < f.components.size(); ++i) {
    log.curve_classes[f.components[i].id] = lattice.basis_class(i);
    order.push_back(f.components[i].id);
  }
  std::map<std::string, std::int64_t> exc_coef;

  std::int64_t remaining = 0;
  std::vector<std::vector<int>> dfs(f.point_singularities.size());
  for (std::size_t k = 0; k < f.point_singularities.size(); ++k) {
    auto tree = canonical_tree(f.point_singularities[k].descriptor);
    detail::dfs_order(tree, 0, dfs[k]);
    for (std::size_t p = 0; p < tree.size(); ++p) {
      remaining += tree_multiplicity(tree, static_cast<int>(p), all_branches(tree));
      remaining += (tree[p].parent >= 0) + (tree[p].satellite >= 0);
    }
  }

  int counter = 0;
  for (std::size_t k = 0; k < f.point_singularities.size(); ++k) {
    const auto& sing = f.point_singularities[k];
    auto tree = canonical_tree(sing.descriptor);
    std::map<int, std::string> label_of;
    for (int p : dfs[k]) {
      const auto& pt = tree[p];
      ResolutionStep step;
      step.point = sing.id;
      step.tree_index = p;
      step.exceptional = "E" + std::to_string(++counter);
      if (lattice.index_of(step.exceptional) || f.index_of(step.exceptional))
        throw InputError("component id '" + step.exceptional + "' clashes with an exceptional label");

      std::map<std::string, std::int64_t> through;  // curve -> multiplicity at p
      for (std::size_t b = 0; b < sing.branches.size(); ++b) {
        const int e = pt.branch_multiplicity[b];
        if (e == 0) continue;
        through[sing.branches[b]] += e;
        step.m_bar += e;
        step.exc_mult_in_total += std::int64_t{f.components[f.require(sing.branches[b])].multiplicity} * e;
      }
      for (int q : proximate_to(tree, p)) {
        through[label_of.at(q)] += 1;
        step.exc_mult_in_total += exc_coef.at(label_of.at(q));
      }
      step.m = step.m_bar + static_cast<int>(proximate_to(tree, p).size());

      std::vector<std::pair<DivisorClass, std::int64_t>> centre;
      std::vector<std::string> centre_ids;
      for (const auto& [id, mult] : through) {
        centre.emplace_back(log.curve_classes.at(id), mult);
        centre_ids.push_back(id);
      }
      auto blown = blow_up(lattice, centre, step.exceptional);
      for (auto& [id, cls] : log.curve_classes) cls = pullback(cls, blown.lattice.rank());
      for (std::size_t i = 0; i < centre_ids.size(); ++i) log.curve_classes[centre_ids[i]] = blown.strict_transforms[i];
      log.curve_classes[step.exceptional] = blown.exceptional;
      lattice = std::move(blown.lattice);

      exc_coef[step.exceptional] = step.exc_mult_in_total;
      label_of[p] = step.exceptional;
      order.push_back(step.exceptional);

      step.measure_before = remaining;
      remaining -= step.m;
      step.measure_after = remaining;
      if (step.measure_after >= step.measure_before) throw EngineBugError("resolution measure did not decrease");
      log.steps.push_back(std::move(step));
    }
  }

  // Final SNC graph read off the lattice.
  FiberGraph g;
  g.name = input.name;
  for (const auto& c : f.components) g.components.push_back(c);
  for (const auto& s : log.steps) g.components.push_back({s.exceptional, 0, static_cast<int>(s.exc_mult_in_total), {}});
  for (const auto& [a, b] : f.edges)
    if (a == b) g.edges.emplace_back(a, b);
  const std::size_t n = order.size();
  const std::size_t n_orig = f.components.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      auto k = to_int64(pair(lattice, log.curve_classes.at(order[i]), log.curve_classes.at(order[j])));
      if (k < 0) throw EngineBugError("negative intersection between distinct curves after resolution");
      if (j < n_orig) {
        std::int64_t nodes = 0;
        for (const auto& [a, b] : f.edges)
          if ((a == order[i] && b == order[j]) || (a == order[j] && b == order[i])) ++nodes;
        if (nodes != k) throw EngineBugError("strict transforms of components do not meet only at nodes");
      }
      for (std::int64_t t = 0; t < k; ++t) g.edges.emplace_back(order[i], order[j]);
    }
  }
  log.final_graph = std::move(g);
  log.lattice = std::move(lattice);

  // Replaying through the lattice must reproduce the fiber relation on the final graph.
  auto sq = self_intersection_vector(log.final_graph);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& cls = log.curve_classes.at(order[i]);
    if (pair(log.lattice, cls, cls) != sq[i])
      throw EngineBugError("lattice self-intersection of '" + order[i] + "' disagrees with the final graph");
  }
  DivisorClass total(log.lattice.rank()), pulled(log.lattice.rank());
  for (std::size_t i = 0; i < n_orig; ++i)
    pulled += Rational(f.components[i].multiplicity) * pullback(DivisorClass::unit(n_orig, i), log.lattice.rank());
  for (const auto& c : log.final_graph.components) total += Rational(c.multiplicity) * log.curve_classes.at(c.id);
  if (!(total == pulled)) throw EngineBugError("total transform of F disagrees with exceptional multiplicities");
  return log;
}

/// sum of (m_i - 2)^2 over the blow-ups belonging to one singular point.
inline std::int64_t alpha(const ResolutionLog& log, const std::string& point) {
  bool known = false;
  for (const auto& id : log.point_ids) known = known || id == point;
  if (!known) throw InputError("unknown singular point '" + point + "'");
  std::int64_t a = 0;
  for (const auto& s : log.steps)
    if (s.point == point) a += std::int64_t{s.m - 2} * (s.m - 2);
  return a;
}

inline std::int64_t alpha_total(const ResolutionLog& log) {
  std::int64_t a = 0;
  for (const auto& s : log.steps) a += std::int64_t{s.m - 2} * (s.m - 2);
  return a;
}

struct ResolutionBoundsReport {
  std::vector<InequalityCheck> step_checks;  // m - 2 <= m_bar at each step
  InequalityCheck alpha_check;               // sum alpha <= 2 p_a(F_red)
  std::int64_t pa_red = 0;
  bool equality_rule_consistent = true;      // equality iff p_a(F_red) = 0

  bool ok() const { return all_hold(step_checks) && alpha_check.holds() && equality_rule_consistent; }
};

inline ResolutionBoundsReport check_resolution_bounds(const ResolutionLog& log, const FiberGraph& f) {
  ResolutionBoundsReport r;
  for (const auto& s : log.steps)
    r.step_checks.push_back(make_check("m-2<=m_bar@" + s.exceptional, Rational(s.m - 2), Rational(s.m_bar)));
  r.pa_red = pa_red(f);
  r.alpha_check = make_check("sum_alpha<=2pa_red", Rational(alpha_total(log)), Rational(2 * r.pa_red));
  r.equality_rule_consistent = r.alpha_check.equality() == (r.pa_red == 0);
  return r;
}

}  // namespace fibra
