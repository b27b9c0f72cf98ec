#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "fibra/fibra.hpp"

using namespace fibra;
namespace fs = std::filesystem;

namespace {

const fs::path kCorpus = FIBRA_DEFAULT_CORPUS;
const fs::path kFixtures = FIBRA_FIXTURES;

std::vector<FiberGraph> corpus_fibers() {
  std::vector<FiberGraph> out;
  for (const auto& e : load_corpus(kCorpus))
    if (e.doc.kind == DocumentKind::Fiber) out.push_back(e.doc.fiber);
  return out;
}

FiberGraph fiber(const std::string& name) { return load_document((kCorpus / "fibers" / (name + ".json")).string()).fiber; }

Document fixture(const std::string& name) { return load_document((kFixtures / (name + ".json")).string()); }

struct Outcome {
  bool ok = true;
  std::string detail;
};

void require(Outcome& o, bool cond, const std::string& what) {
  if (!cond && o.ok) {
    o.ok = false;
    o.detail = what;
  }
}

Outcome miyaoka_table() {
  Outcome o;
  require(o, miyaoka_m(AdeKind::A, 1) == rat(9, 2), "m(A1)");
  require(o, miyaoka_m(AdeKind::A, 2) == 8, "m(A2)");
  require(o, miyaoka_m(AdeKind::E, 6) == 21 - rat(1, 8), "m(E6)");
  require(o, miyaoka_m(AdeKind::E, 7) == 24 - rat(1, 16), "m(E7)");
  require(o, miyaoka_m(AdeKind::E, 8) == 27 - rat(1, 40), "m(E8)");
  return o;
}

Outcome epsilon_identity() {
  Outcome o;
  int cases = 0;
  for (int mu = 1; mu <= 50; ++mu)
    for (int mu1 = 0; mu1 < mu; ++mu1) {
      const int mu2 = mu - 1 - mu1;
      const Rational lhs = miyaoka_m(AdeKind::A, mu) - miyaoka_m(AdeKind::A, mu1) - miyaoka_m(AdeKind::A, mu2);
      require(o, lhs == rat(3, mu1 + 1) + rat(3, mu2 + 1) - rat(3, mu + 1),
              "mu = " + std::to_string(mu) + ", mu1 = " + std::to_string(mu1));
      ++cases;
    }
  o.detail = o.ok ? std::to_string(cases) + " splittings" : o.detail;
  return o;
}

Outcome semistable_nullity() {
  Outcome o;
  for (auto n : {"kodaira-I1", "kodaira-I2", "theta", "genus2-chain"}) {
    auto inv = fiber_invariants(fiber(n));
    require(o, inv.c1_sq == 0 && inv.c2 == 0 && inv.chi == 0 && inv.c_minus_1 == 0, n);
  }
  return o;
}

Outcome dual_pipeline() {
  Outcome o;
  int runs = 0;
  for (const auto& f : corpus_fibers()) {
    const int e0 = fiber_invariants(f).e_used;
    for (int k : {1, 2, 3}) {
      auto inv = fiber_invariants(f, k * e0);
      require(o, inv.c1_sq_closed == inv.c1_sq_simulated, f.name + " at e = " + std::to_string(k * e0));
      ++runs;
    }
  }
  if (o.ok) o.detail = std::to_string(runs) + " runs";
  return o;
}

Outcome noether() {
  Outcome o;
  for (const auto& f : corpus_fibers()) {
    auto inv = fiber_invariants(f);
    require(o, 12 * inv.chi == inv.c1_sq + inv.c2, f.name);
  }
  return o;
}

Outcome kodaira_oracles() {
  Outcome o;
  auto ii = fiber_invariants(fiber("kodaira-II"));
  require(o, ii.c1_sq == 0 && ii.c2 == 2 && ii.chi == rat(1, 6) && ii.c_minus_1 == 1, "II");
  auto star = fiber_invariants(fiber("kodaira-I0star"));
  require(o, star.c1_sq == 0 && star.c2 == 6 && star.chi == rat(1, 2) && star.c_minus_1 == 2, "I0*");
  auto pb = pullback_fiber(fiber("kodaira-I1"), 2);
  const auto& g = pb.fibers_above.front();
  bool i2 = g.components.size() == 2 && g.edges.size() == 2;
  for (const auto& c : g.components) i2 = i2 && c.genus == 0 && c.multiplicity == 1;
  for (const auto& [a, b] : g.edges) i2 = i2 && a != b;
  require(o, i2 && classify(g).kind == FiberClass::SemistableSingular, "I1 under e = 2 is not I2");
  return o;
}

Outcome elliptic_regression() {
  Outcome o;
  int n = 0;
  for (const auto& f : corpus_fibers())
    if (fiber_genus(f) == 1) {
      require(o, fiber_invariants(f).c1_sq == 0, f.name);
      ++n;
    }
  if (o.ok) o.detail = std::to_string(n) + " elliptic fibers";
  return o;
}

Outcome resolution_bounds() {
  Outcome o;
  for (const auto& f : corpus_fibers()) {
    auto log = resolve(f);
    auto rb = check_resolution_bounds(log, f);
    require(o, all_hold(rb.step_checks), f.name + ": step multiplicity bound");
    require(o, rb.alpha_check.holds(), f.name + ": alpha bound");
    require(o, rb.equality_rule_consistent, f.name + ": equality rule");
  }
  return o;
}

Outcome fiber_bound_margins() {
  Outcome o;
  int n = 0;
  for (const auto& f : corpus_fibers()) {
    auto r = check_fiber_bound(fiber_invariants(f));
    if (!r.asserted) continue;
    for (const auto& c : r.checks) require(o, c.margin() >= 0, f.name + ": " + c.name);
    ++n;
  }
  if (o.ok) o.detail = std::to_string(n) + " fibers with g >= 2";
  return o;
}

Outcome scaling() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  int passed = 0;
  struct Case {
    const char* name;
    int d;
  };
  for (auto c : {Case{"elliptic-two-I0star", 2}, Case{"elliptic-twelve-I1", 3}, Case{"genus2-semistable-five", 2},
                 Case{"genus2-mixed", 6}}) {
    auto fs = load_document((kCorpus / "fibrations" / (std::string(c.name) + ".json")).string()).fibration;
    auto r = check_base_change_scaling(fs, c.d);
    require(o, r.ok(), std::string(c.name) + " at d = " + std::to_string(c.d));
    passed += r.ok();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  require(o, passed >= 2, "fewer than two fibrations scale");
  require(o, secs < 10, "took " + std::to_string(secs) + " s");
  if (o.ok) o.detail = std::to_string(passed) + " fibrations";
  return o;
}

Outcome verdict_logic() {
  Outcome o;
  auto eq = fixture("height-equality-s-positive");
  auto v = check_height_inequality(eq.point_check.fibration, eq.point_check.point);
  require(o, v.check.equality() && v.inconsistent, "equality with s > 0 not flagged");
  auto b3 = fixture("height-3s-boundary");
  auto vb = check_height_inequality(b3.point_check.fibration, b3.point_check.point);
  require(o, vb.check.strict && vb.check.equality() && vb.failed(), "3s branch not strict");
  auto kc = check_canonical_class(fixture("canonical-3s-boundary").fibration);
  require(o, kc.check.strict && kc.check.equality() && kc.failed(), "canonical 3s branch not strict");
  for (auto n : {"height-violation", "height-3s-boundary", "canonical-3s-boundary", "height-equality-s-positive",
                 "canonical-equality-s-positive", "negative-ik"})
    require(o, report_check(fixture(n)).exit_code == 1, std::string(n) + " does not exit 1");
  require(o, report_check(fixture("height-equality-smooth")).exit_code == 0, "smooth equality rejected");
  return o;
}

Outcome section_identity() {
  Outcome o;
  int n = 0;
  for (const auto& e : load_corpus(kCorpus)) {
    if (e.doc.kind != DocumentKind::PointCheck || !e.doc.point_check.point.e_self) continue;
    const auto& p = e.doc.point_check.point;
    auto pi = point_invariants(p);
    require(o, pi.h_k == -*p.e_self, e.name);
    ++n;
  }
  require(o, n > 0, "no section fixtures with E^2");
  if (o.ok) o.detail = std::to_string(n) + " sections";
  return o;
}

bool warns(const FibrationSummary& fs, const std::string& needle) {
  for (const auto& w : validate_fibration(fs))
    if (w.find(needle) != std::string::npos) return true;
  return false;
}

Outcome validation_warnings() {
  Outcome o;
  require(o, warns(fixture("warn-s4").fibration, "s >= 5"), "s = 4 semistable over P^1 does not warn");
  require(o, warns(fixture("warn-s1").fibration, "s >= 2"), "s = 1 over P^1 does not warn");
  return o;
}

Outcome determinism() {
  Outcome o;
  auto a = report_corpus_run(kCorpus);
  auto b = report_corpus_run(kCorpus);
  require(o, a.exit_code == 0, "corpus run fails");
  require(o, a.machine() == b.machine(), "machine output differs between runs");
  if (o.ok) o.detail = std::to_string(a.machine().size()) + " bytes";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"miyaoka m-value table", miyaoka_table},
      {"epsilon identity up to mu = 50", epsilon_identity},
      {"semistable nullity", semistable_nullity},
      {"closed formula equals simulated pullback at e, 2e, 3e", dual_pipeline},
      {"12 chi_F = c1^2 + c2", noether},
      {"Kodaira oracles II, I0*, I1 -> I2", kodaira_oracles},
      {"elliptic fibers have c1^2 = 0", elliptic_regression},
      {"resolution step and alpha bounds", resolution_bounds},
      {"c1^2 + c_-1 fiber bound margins", fiber_bound_margins},
      {"invariants scale by d under base change", scaling},
      {"inequality verdict logic", verdict_logic},
      {"section identity h_K = -E^2", section_identity},
      {"validation warnings over P^1", validation_warnings},
      {"deterministic machine output", determinism},
  };
  int failed = 0;
  int i = 0;
  for (const auto& [name, run] : criteria) {
    ++i;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.ok ? "PASS" : "FAIL") << "  [" << (i < 10 ? " " : "") << i << "] " << name;
    if (!o.detail.empty()) std::cout << "  (" << o.detail << ")";
    std::cout << "\n";
    failed += !o.ok;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria pass\n";
  return failed ? 1 : 0;
}
