#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "fibra/checks.hpp"
#include "fibra/error.hpp"
#include "fibra/invariants.hpp"
#include "fibra/rational.hpp"

namespace fibra {

enum class VerdictStatus { SatisfiedStrict, SatisfiedEquality, Violated };

inline std::string to_string(VerdictStatus v) {
  switch (v) {
    case VerdictStatus::SatisfiedStrict: return "satisfied-strict";
    case VerdictStatus::SatisfiedEquality: return "satisfied-equality";
    case VerdictStatus::Violated: return "violated";
  }
  return "?";
}

struct Verdict {
  InequalityCheck check;
  bool inconsistent = false;  // equality reached where it forces s = 0
  std::vector<std::string> notes;

  VerdictStatus status() const {
    if (!check.holds()) return VerdictStatus::Violated;
    return check.equality() ? VerdictStatus::SatisfiedEquality : VerdictStatus::SatisfiedStrict;
  }
  bool failed() const { return status() == VerdictStatus::Violated || inconsistent; }
};

struct AlgebraicPoint {
  int degree = 1;             // [k(P):k] = F.E_P
  Rational k_dot_e = 0;       // K_{S/C}.E_P
  int genus_tilde = 0;        // genus of the normalization of E_P
  std::optional<Rational> e_self;  // E^2, sections only
};

struct PointInvariants {
  Rational h_k = 0;
  Rational d_disc = 0;
  std::optional<bool> section_identity;  // h_K = -E^2
};

inline void validate_point(const AlgebraicPoint& p) {
  if (p.degree < 1) throw InputError("point degree must be at least 1");
  if (p.genus_tilde < 0) throw InputError("genus_tilde must be nonnegative");
  if (p.e_self && p.degree != 1) throw InputError("e_self is only meaningful for sections (degree 1)");
}

inline PointInvariants point_invariants(const AlgebraicPoint& p) {
  validate_point(p);
  PointInvariants out;
  out.h_k = p.k_dot_e / p.degree;
  out.d_disc = Rational(2 * std::int64_t{p.genus_tilde} - 2, p.degree);
  if (p.e_self) out.section_identity = out.h_k == -*p.e_self;
  return out;
}

inline void require_height_hypotheses(const FibrationSummary& fs) {
  if (fs.g < 2) throw UnsupportedError("height and canonical class inequalities need g >= 2 (got g = " +
                                       std::to_string(fs.g) + ")");
}

/// h_K(P) <= (2g-1)(d(P)+s) - K^2 for semistable f, equality only when f is smooth;
/// h_K(P) < (2g-1)(d(P)+3s) - K^2 otherwise.
inline Verdict check_height_inequality(const FibrationSummary& fs, const AlgebraicPoint& p) {
  require_height_hypotheses(fs);
  if (!fs.non_trivial) throw UnsupportedError("height inequality needs a non-trivial fibration");
  auto pi = point_invariants(p);
  Verdict v;
  const int s_weight = fs.semistable ? 1 : 3;
  const Rational rhs = (2 * fs.g - 1) * (pi.d_disc + s_weight * fs.s) - fs.ksq;
  v.check = make_check(fs.semistable ? "height:semistable" : "height:general", pi.h_k, rhs, !fs.semistable);
  if (fs.semistable && v.check.equality() && fs.s > 0) {
    v.inconsistent = true;
    v.notes.push_back("equality holds but s = " + std::to_string(fs.s) + " > 0; equality forces a smooth fibration");
  }
  return v;
}

/// K^2 <= (2g-2)(2b-2+s) for semistable f, equality only when smooth; strict with 3s otherwise.
inline Verdict check_canonical_class(const FibrationSummary& fs) {
  require_height_hypotheses(fs);
  Verdict v;
  const int s_weight = fs.semistable ? 1 : 3;
  const Rational rhs = Rational((2 * std::int64_t{fs.g} - 2) * (2 * std::int64_t{fs.b} - 2 + s_weight * fs.s));
  v.check = make_check(fs.semistable ? "canonical:semistable" : "canonical:general", fs.ksq, rhs, !fs.semistable);
  if (fs.semistable && v.check.equality() && fs.s > 0) {
    v.inconsistent = true;
    v.notes.push_back("equality holds but s = " + std::to_string(fs.s) + " > 0; equality forces a smooth fibration");
  }
  return v;
}

enum class AdeKind { A, D, E };

inline AdeKind parse_ade_kind(const std::string& s) {
  if (s == "A" || s == "a") return AdeKind::A;
  if (s == "D" || s == "d") return AdeKind::D;
  if (s == "E" || s == "e") return AdeKind::E;
  throw InputError("unknown ADE kind '" + s + "'");
}

inline std::string to_string(AdeKind k) { return k == AdeKind::A ? "A" : k == AdeKind::D ? "D" : "E"; }

/// Miyaoka's m-value of a configuration of (-2)-curves of the given type; m(A_0) = 0.
inline Rational miyaoka_m(AdeKind kind, int r) {
  switch (kind) {
    case AdeKind::A:
      if (r < 0) throw InputError("A_r needs r >= 0");
      if (r == 0) return 0;
      return Rational(3 * (r + 1)) - Rational(3, r + 1);
    case AdeKind::D:
      if (r < 4) throw InputError("D_r needs r >= 4");
      return Rational(3 * (r + 1)) - Rational(3, 4 * (r - 2));
    case AdeKind::E:
      if (r == 6) return Rational(21) - Rational(1, 8);
      if (r == 7) return Rational(24) - Rational(1, 16);
      if (r == 8) return Rational(27) - Rational(1, 40);
      throw InputError("E_r needs r in {6, 7, 8}");
  }
  throw InputError("unknown ADE kind");
}

/// Change of m when an A_mu configuration loses the curve the section passes through and
/// splits into A_mu1 and A_mu2.
inline Rational epsilon_q(int mu, int mu1, int mu2) {
  if (mu1 < 0 || mu2 < 0 || mu != mu1 + mu2 + 1)
    throw InputError("epsilon needs mu = mu1 + mu2 + 1 with mu1, mu2 >= 0");
  const Rational closed = Rational(3, mu1 + 1) + Rational(3, mu2 + 1) - Rational(3, mu + 1);
  const Rational via_m = miyaoka_m(AdeKind::A, mu) - miyaoka_m(AdeKind::A, mu1) - miyaoka_m(AdeKind::A, mu2);
  if (closed != via_m) throw EngineBugError("epsilon closed form disagrees with the m-value table");
  return closed;
}

struct AdeConfig {
  AdeKind kind = AdeKind::A;
  int r = 1;
};

/// sum m(E_i) + 3 chi_top(D) <= 3 c2(S) - (K_S + D)^2.
inline Verdict miyaoka_check(const Rational& c2_s, const Rational& ksq_plus_d, const std::vector<AdeConfig>& ade,
                             std::int64_t chi_top_d) {
  Rational lhs = Rational(3 * chi_top_d);
  for (const auto& c : ade) lhs += miyaoka_m(c.kind, c.r);
  Verdict v;
  v.check = make_check("miyaoka", lhs, 3 * c2_s - ksq_plus_d);
  return v;
}

struct SectionLocalData {
  std::vector<int> mu_list;  // one entry per singular point of the stable model, before splitting
  std::vector<std::tuple<int, int, int>> epsilon_terms;
};

struct SectionBoundReport {
  Rational bound = 0;        // sum 3/(mu+1) + (2g-1)(2b-2) - K^2 + eps
  Rational epsilon = 0;
  Rational via_miyaoka = 0;  // same bound read off Miyaoka's inequality for D = E_P
  bool routes_agree = true;
  std::vector<std::string> notes;
};

inline SectionBoundReport section_height_bound(const FibrationSummary& fs, const SectionLocalData& sd) {
  if (!fs.semistable) throw UnsupportedError("section height bound needs a semistable fibration");
  if (fs.b < 1) throw UnsupportedError("section height bound needs base genus b >= 1 (K_S nef)");
  SectionBoundReport r;
  Rational sum_m = 0;
  std::int64_t nodes = 0;
  for (int mu : sd.mu_list) {
    if (mu < 0) throw InputError("Milnor numbers must be nonnegative");
    r.bound += Rational(3, mu + 1);
    sum_m += miyaoka_m(AdeKind::A, mu);
    nodes += mu + 1;
  }
  for (const auto& [mu, mu1, mu2] : sd.epsilon_terms) r.epsilon += epsilon_q(mu, mu1, mu2);
  r.bound += Rational((2 * std::int64_t{fs.g} - 1) * (2 * std::int64_t{fs.b} - 2)) - fs.ksq + r.epsilon;

  // Miyaoka for D = E_P with c2(S) = e_f + 4(g-1)(b-1), (K_S+E)^2 = K^2 + 8(g-1)(b-1) + h + 4(b-1),
  // chi_top(E) = 2 - 2b, solved for h.
  const std::int64_t gb = std::int64_t{fs.g - 1} * (fs.b - 1);
  r.via_miyaoka = 3 * (fs.e + 4 * gb) - (fs.ksq + 8 * gb + 4 * (fs.b - 1)) - 3 * (2 - 2 * std::int64_t{fs.b}) - sum_m +
                  r.epsilon;
  r.routes_agree = r.via_miyaoka == r.bound;
  if (!r.routes_agree)
    r.notes.push_back("mu_list accounts for " + std::to_string(nodes) + " nodes but e_f = " + to_string(fs.e));
  return r;
}

inline std::vector<std::string> validate_fibration(const FibrationSummary& fs) {
  std::vector<std::string> w;
  const Rational defect = 12 * fs.chi - fs.ksq - fs.e;
  if (defect != 0) w.push_back("relative Noether fails: 12 chi_f - K^2 - e_f = " + to_string(defect));
  if (fs.b == 0 && fs.non_trivial && fs.s < 2)
    w.push_back("non-trivial fibration over P^1 should have s >= 2 (s = " + std::to_string(fs.s) + ")");
  if (fs.g >= 2 && fs.b == 0 && fs.semistable && fs.non_trivial && fs.s < 5)
    w.push_back("non-trivial semistable fibration over P^1 should have s >= 5 (s = " + std::to_string(fs.s) + ")");
  if (!fs.fibers.empty()) {
    Rational euler = 0;
    for (const auto& ff : fs.fibers) euler += ff.count * (chi_top(ff.fiber) - (2 - 2 * std::int64_t{fs.g}));
    if (euler != fs.e)
      w.push_back("listed fibers contribute " + to_string(euler) + " to e_f but e_f = " + to_string(fs.e));
  }
  return w;
}

}  // namespace fibra
