#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fibra/basechange.hpp"
#include "fibra/checks.hpp"
#include "fibra/error.hpp"
#include "fibra/fiber.hpp"
#include "fibra/rational.hpp"
#include "fibra/resolution.hpp"

namespace fibra {

struct FiberInvariants {
  Rational c1_sq = 0;
  Rational c2 = 0;
  Rational chi = 0;
  Rational c_minus_1 = 0;
  std::int64_t alpha_total = 0;
  int e_used = 1;

  // both routes to c1^2
  Rational c1_sq_closed = 0;
  Rational c1_sq_simulated = 0;

  int genus = 0;
  std::int64_t pa_red = 0;
  std::int64_t fred_sq = 0;
  std::int64_t chi_top = 0;
  std::int64_t chi_top_semistable = 0;
  bool semistable = false;
  std::vector<std::string> warnings;
};

struct FiberEvaluation {
  FiberInvariants invariants;
  ResolutionLog log;
  PullbackResult pullback;
};

inline FiberEvaluation evaluate_fiber(const FiberGraph& f, std::optional<int> e = std::nullopt,
                                      const PullbackOptions& opts = {}) {
  FiberEvaluation ev;
  ev.log = resolve(f);
  ev.pullback = pullback_resolved(ev.log, e, opts);
  auto& inv = ev.invariants;
  const auto& pb = ev.pullback;
  inv.e_used = pb.e_used;
  inv.genus = fiber_genus(f);
  inv.pa_red = pa_red(f);
  inv.fred_sq = fred_square(f);
  inv.alpha_total = alpha_total(ev.log);
  inv.c_minus_1 = pb.c_minus_1;
  inv.chi_top = chi_top(f);
  inv.chi_top_semistable = chi_top(pb.fibers_above.front());
  inv.semistable = is_semistable(f);
  inv.warnings = pb.warnings;

  inv.c1_sq_closed = Rational(4 * (inv.genus - inv.pa_red) + inv.fred_sq + inv.alpha_total) - inv.c_minus_1;
  inv.c1_sq_simulated = -pb.ksq_ledger / pb.e_used;
  if (inv.c1_sq_closed != inv.c1_sq_simulated)
    throw EngineBugError("fiber '" + f.name + "': closed formula gives c1^2 = " + to_string(inv.c1_sq_closed) +
                         " but the simulated pullback gives " + to_string(inv.c1_sq_simulated) + " (e = " +
                         std::to_string(pb.e_used) + ", contracted " + std::to_string(pb.contracted_per_point) +
                         ", ledger " + to_string(pb.ksq_ledger) + ")");
  inv.c1_sq = inv.c1_sq_closed;

  const std::int64_t smooth_chi = 2 - 2 * std::int64_t{inv.genus};
  inv.c2 = Rational(inv.chi_top - smooth_chi) - Rational(inv.chi_top_semistable - smooth_chi, pb.e_used);
  inv.chi = (inv.c1_sq + inv.c2) / 12;

  if (inv.c1_sq < 0 || inv.c2 < 0 || inv.c_minus_1 < 0)
    throw EngineBugError("fiber '" + f.name + "' has a negative local invariant");
  const bool all_zero = inv.c1_sq == 0 && inv.c2 == 0 && inv.chi == 0;
  // elliptic multiple fibers mI_n are non-semistable with all invariants zero
  if (inv.semistable ? !all_zero : (all_zero && inv.genus >= 2))
    throw EngineBugError("fiber '" + f.name + "': vanishing of the local invariants disagrees with semistability");
  if (inv.semistable && inv.c_minus_1 != 0) throw EngineBugError("semistable fiber with contracted curves");
  return ev;
}

inline FiberInvariants fiber_invariants(const FiberGraph& f, std::optional<int> e = std::nullopt) {
  return evaluate_fiber(f, e).invariants;
}

/// c1^2 + c_-1 <= 4g - 3, sharpened to 4g - 4 when p_a(F_red) > 0. Only asserted for g >= 2;
/// for elliptic fibers the margins are reported for information.
struct FiberBoundReport {
  std::vector<InequalityCheck> checks;
  bool asserted = true;

  bool ok() const { return !asserted || all_hold(checks); }
};

inline FiberBoundReport check_fiber_bound(const FiberInvariants& inv) {
  FiberBoundReport r;
  r.asserted = inv.genus >= 2;
  const std::string note = r.asserted ? "" : "informational for g < 2";
  const Rational lhs = inv.c1_sq + inv.c_minus_1;
  r.checks.push_back(make_check("c1^2+c_-1<=4g-3", lhs, Rational(4 * inv.genus - 3), false, note));
  if (inv.pa_red > 0) r.checks.push_back(make_check("c1^2+c_-1<=4g-4", lhs, Rational(4 * inv.genus - 4), false, note));
  return r;
}

struct FibrationFiber {
  FiberGraph fiber;
  int count = 1;
};

struct FibrationSummary {
  std::string name;
  int g = 2;
  int b = 0;
  int s = 0;
  Rational ksq = 0;  // K^2_{S/C}
  Rational chi = 0;  // chi_f
  Rational e = 0;    // e_f
  std::vector<FibrationFiber> fibers;
  bool semistable = true;
  bool non_trivial = true;
};

inline void validate_summary(const FibrationSummary& fs) {
  if (fs.g < 1) throw InputError("fibration genus must be at least 1");
  if (fs.b < 0) throw InputError("base genus must be nonnegative");
  if (fs.s < 0) throw InputError("number of singular fibers must be nonnegative");
  if (fs.fibers.empty()) return;
  int listed = 0;
  bool all_semistable = true;
  for (const auto& ff : fs.fibers) {
    if (ff.count < 1) throw InputError("fiber count must be positive");
    validate_structure(ff.fiber);
    if (fiber_genus(ff.fiber) != fs.g)
      throw InputError("fiber '" + ff.fiber.name + "' has arithmetic genus " + std::to_string(fiber_genus(ff.fiber)) +
                       ", fibration has g = " + std::to_string(fs.g));
    auto cls = classify(ff.fiber);
    if (cls.kind == FiberClass::Smooth) throw InputError("fiber '" + ff.fiber.name + "' is smooth; list singular fibers only");
    all_semistable = all_semistable && cls.kind != FiberClass::NonSemistable;
    listed += ff.count;
  }
  if (listed != fs.s)
    throw InputError("s = " + std::to_string(fs.s) + " but " + std::to_string(listed) + " singular fibers are listed");
  if (all_semistable != fs.semistable) throw InputError("semistable flag contradicts the listed fibers");
}

struct GlobalInvariants {
  Rational i_k = 0, i_chi = 0, i_e = 0;
  Rational sum_c1_sq = 0, sum_chi = 0, sum_c2 = 0;
  std::vector<std::pair<std::string, FiberInvariants>> per_fiber;
  std::vector<InequalityCheck> nonnegativity;
  bool isotriviality_indicated = false;  // I_K or I_chi vanishes (meaningful for g >= 2)
  std::vector<std::string> skipped;

  bool ok() const { return all_hold(nonnegativity); }
};

inline GlobalInvariants global_invariants(const FibrationSummary& fs) {
  validate_summary(fs);
  GlobalInvariants gi;
  for (const auto& ff : fs.fibers) {
    try {
      auto inv = fiber_invariants(ff.fiber);
      gi.sum_c1_sq += ff.count * inv.c1_sq;
      gi.sum_c2 += ff.count * inv.c2;
      gi.sum_chi += ff.count * inv.chi;
      gi.per_fiber.emplace_back(ff.fiber.name, std::move(inv));
    } catch (const UnsupportedError& err) {
      gi.skipped.push_back(ff.fiber.name + ": " + err.what());
    }
  }
  gi.i_k = fs.ksq - gi.sum_c1_sq;
  gi.i_chi = fs.chi - gi.sum_chi;
  gi.i_e = fs.e - gi.sum_c2;
  gi.nonnegativity = {make_check("I_K>=0", 0, gi.i_k), make_check("I_chi>=0", 0, gi.i_chi),
                      make_check("I_e>=0", 0, gi.i_e)};
  gi.isotriviality_indicated = fs.g >= 2 && (gi.i_k == 0 || gi.i_chi == 0);
  return gi;
}

/// Base change of degree d totally ramified over each listed critical value with index
/// profile[i] (a multiple of the minimal admissible order dividing d), unramified or
/// harmlessly ramified elsewhere. Recomputes the pulled-back fibration's invariants from the
/// local simulations and compares with d times the original ones.
struct ScalingReport {
  int d = 1;
  std::vector<int> profile;
  Rational ksq_tilde = 0, e_tilde = 0, chi_tilde = 0;
  Rational i_k_tilde = 0, i_chi_tilde = 0, i_e_tilde = 0;
  GlobalInvariants original;
  std::vector<std::string> skipped;

  bool k_scales() const { return i_k_tilde == d * original.i_k; }
  bool chi_scales() const { return i_chi_tilde == d * original.i_chi; }
  bool e_scales() const { return i_e_tilde == d * original.i_e; }
  bool ok() const { return skipped.empty() && k_scales() && chi_scales() && e_scales(); }
};

inline ScalingReport check_base_change_scaling(const FibrationSummary& fs, int d,
                                               std::optional<std::vector<int>> profile = std::nullopt) {
  if (d < 1) throw InputError("base change degree must be positive");
  if (fs.fibers.size() == 0 && fs.s > 0) throw InputError("scaling check needs the singular fibers listed");
  if (profile && profile->size() != fs.fibers.size())
    throw InputError("ramification profile must give one index per listed fiber");
  ScalingReport r;
  r.d = d;
  r.original = global_invariants(fs);
  r.skipped = r.original.skipped;

  const std::int64_t smooth_chi = 2 - 2 * std::int64_t{fs.g};
  Rational ksq = d * fs.ksq;
  Rational euler = d * fs.e;
  for (std::size_t i = 0; i < fs.fibers.size(); ++i) {
    const auto& ff = fs.fibers[i];
    const int e_f = profile ? (*profile)[i] : d;
    r.profile.push_back(e_f);
    if (e_f < 1 || d % e_f != 0)
      throw InputError("ramification index " + std::to_string(e_f) + " does not divide d = " + std::to_string(d));
    try {
      auto ev = evaluate_fiber(ff.fiber, e_f, {true, std::nullopt});
      const Rational copies(d / e_f);
      ksq += ff.count * copies * ev.pullback.ksq_ledger;
      euler -= ff.count * d * Rational(ev.invariants.chi_top - smooth_chi);
      for (const auto& above : ev.pullback.fibers_above) {
        if (!is_semistable(above)) throw EngineBugError("pulled-back fiber is not semistable");
        euler += ff.count * copies * Rational(chi_top(above) - smooth_chi);
      }
    } catch (const UnsupportedError& err) {
      r.skipped.push_back(ff.fiber.name + ": " + err.what());
    } catch (const InputError& err) {
      r.skipped.push_back(ff.fiber.name + " (index " + std::to_string(e_f) + "): " + err.what());
    }
  }
  r.ksq_tilde = ksq;
  r.e_tilde = euler;
  r.chi_tilde = (ksq + euler) / 12;
  // every fiber of the pulled-back fibration is semistable, so its invariants are the relative ones
  r.i_k_tilde = r.ksq_tilde;
  r.i_chi_tilde = r.chi_tilde;
  r.i_e_tilde = r.e_tilde;
  return r;
}

}  // namespace fibra
