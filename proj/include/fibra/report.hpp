#pragma once

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fibra/basechange.hpp"
#include "fibra/heights.hpp"
#include "fibra/invariants.hpp"
#include "fibra/io.hpp"
#include "fibra/resolution.hpp"

namespace fibra {

struct Report {
  Json data = Json::object();
  std::vector<std::string> lines;
  int exit_code = 0;

  void line(std::string s) { lines.push_back(std::move(s)); }
  void fail() { exit_code = std::max(exit_code, 1); }
  std::string text() const {
    std::string out;
    for (const auto& l : lines) out += l + "\n";
    return out;
  }
  std::string machine() const { return data.dump(2) + "\n"; }
};

inline Json check_to_json(const InequalityCheck& c) {
  Json j{{"name", c.name},
         {"lhs", rational_to_json(c.lhs)},
         {"rhs", rational_to_json(c.rhs)},
         {"strict", c.strict},
         {"margin", rational_to_json(c.margin())},
         {"margin_decimal", to_decimal(c.margin())},
         {"holds", c.holds()}};
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

inline std::string check_line(const InequalityCheck& c) {
  std::string s = c.name + ": " + to_string(c.lhs) + (c.strict ? " < " : " <= ") + to_string(c.rhs) + "  margin " +
                  to_string(c.margin()) + " (" + to_decimal(c.margin()) + ")  " + (c.holds() ? "holds" : "FAILS");
  if (!c.note.empty()) s += "  [" + c.note + "]";
  return s;
}

inline Json verdict_to_json(const Verdict& v) {
  Json j = check_to_json(v.check);
  j["verdict"] = to_string(v.status());
  j["inconsistent"] = v.inconsistent;
  j["notes"] = v.notes;
  return j;
}

inline void verdict_lines(Report& r, const Verdict& v) {
  r.line(check_line(v.check) + "  -> " + to_string(v.status()) + (v.inconsistent ? "  INCONSISTENT" : ""));
  for (const auto& n : v.notes) r.line("  note: " + n);
}

inline Json invariants_to_json(const FiberInvariants& inv) {
  return Json{{"c1_sq", rational_to_json(inv.c1_sq)},
              {"c2", rational_to_json(inv.c2)},
              {"chi", rational_to_json(inv.chi)},
              {"c_minus_1", rational_to_json(inv.c_minus_1)},
              {"alpha_total", inv.alpha_total},
              {"e_used", inv.e_used}};
}

inline Json node_cover_to_json(const NodeTraceRow& row) {
  return Json{{"a", row.a_id},
              {"b", row.b_id},
              {"mult_a", row.cover.a},
              {"mult_b", row.cover.b},
              {"points_above", row.cover.points_above},
              {"chain_length", row.cover.chain_length_per_point},
              {"quotient", std::to_string(row.cover.quotient_order) + "/" + std::to_string(row.cover.quotient_q)},
              {"twist", row.twist}};
}

inline void pullback_trace(Report& r, Json& j, const PullbackResult& pb) {
  j["trace"]["nodes"] = Json::array();
  r.line("normalization over nodes (a, b -> points x chain):");
  for (const auto& row : pb.nodes) {
    j["trace"]["nodes"].push_back(node_cover_to_json(row));
    r.line("  " + row.a_id + "-" + row.b_id + "  " + std::to_string(row.cover.a) + ", " + std::to_string(row.cover.b) +
           " -> " + std::to_string(row.cover.points_above) + " x A" + std::to_string(row.cover.chain_length_per_point) +
           (row.twist ? "  twist " + std::to_string(row.twist) : ""));
  }
  j["trace"]["covers"] = Json::array();
  r.line("covers of components (count x genus, degree):");
  for (const auto& c : pb.covers) {
    j["trace"]["covers"].push_back(
        {{"id", c.id}, {"count", c.cover.count}, {"genus", c.cover.genus}, {"degree", c.cover.degree}});
    r.line("  " + c.id + "  " + std::to_string(c.cover.count) + " x g" + std::to_string(c.cover.genus) + ", degree " +
           std::to_string(c.cover.degree));
  }
  j["trace"]["contracted"] = pb.contraction_order;
  std::string list;
  for (const auto& id : pb.contraction_order) list += (list.empty() ? "" : " ") + id;
  r.line("contracted: " + (list.empty() ? std::string("none") : list));
  j["trace"]["ksq_ledger"] = rational_to_json(pb.ksq_ledger);
  j["trace"]["chi_top_resolved"] = pb.chi_top_resolved;
}

inline void resolution_trace(Report& r, Json& j, const ResolutionLog& log) {
  j["steps"] = Json::array();
  for (const auto& s : log.steps) {
    j["steps"].push_back({{"point", s.point},
                          {"exceptional", s.exceptional},
                          {"m", s.m},
                          {"m_bar", s.m_bar},
                          {"exc_mult", s.exc_mult_in_total},
                          {"measure_before", s.measure_before},
                          {"measure_after", s.measure_after}});
    r.line("  blow up " + s.point + " -> " + s.exceptional + "  m " + std::to_string(s.m) + "  m_bar " +
           std::to_string(s.m_bar) + "  mult " + std::to_string(s.exc_mult_in_total));
  }
}

inline Report report_invariants(const FiberGraph& f, std::optional<int> e = std::nullopt, bool trace = false) {
  Report r;
  auto ev = evaluate_fiber(f, e);
  const auto& inv = ev.invariants;
  auto& j = r.data;
  j["command"] = "invariants";
  j["fiber"] = f.name;
  j["genus"] = inv.genus;
  j["class"] = to_string(classify(f).kind);
  j["invariants"] = invariants_to_json(inv);
  j["routes"] = {{"c1_sq_closed", rational_to_json(inv.c1_sq_closed)},
                 {"c1_sq_simulated", rational_to_json(inv.c1_sq_simulated)},
                 {"pa_red", inv.pa_red},
                 {"fred_sq", inv.fred_sq},
                 {"chi_top", inv.chi_top},
                 {"chi_top_semistable", inv.chi_top_semistable}};
  r.line("fiber " + f.name + "  g = " + std::to_string(inv.genus) + "  " + to_string(classify(f).kind));
  r.line("c1^2  = " + to_string(inv.c1_sq) + "   closed " + to_string(inv.c1_sq_closed) + " | simulated " +
         to_string(inv.c1_sq_simulated));
  r.line("c2    = " + to_string(inv.c2));
  r.line("chi_F = " + to_string(inv.chi));
  r.line("c_-1  = " + to_string(inv.c_minus_1));
  r.line("e     = " + std::to_string(inv.e_used));

  j["alpha"] = Json::object();
  for (const auto& p : ev.log.point_ids) {
    j["alpha"][p] = alpha(ev.log, p);
    r.line("alpha " + p + " = " + std::to_string(alpha(ev.log, p)));
  }

  auto bound = check_fiber_bound(inv);
  j["fiber_bound"] = {{"asserted", bound.asserted}, {"checks", Json::array()}};
  for (const auto& c : bound.checks) {
    j["fiber_bound"]["checks"].push_back(check_to_json(c));
    r.line(check_line(c));
  }
  if (!bound.ok()) r.fail();

  auto rb = check_resolution_bounds(ev.log, f);
  j["resolution_bounds"] = {{"alpha", check_to_json(rb.alpha_check)},
                            {"steps_hold", all_hold(rb.step_checks)},
                            {"equality_rule", rb.equality_rule_consistent}};
  r.line(check_line(rb.alpha_check));
  if (!rb.ok()) {
    r.line("resolution bounds FAIL");
    r.fail();
  }
  j["warnings"] = inv.warnings;
  for (const auto& w : inv.warnings) r.line("warning: " + w);
  if (trace) {
    r.line("resolution:");
    resolution_trace(r, j, ev.log);
    pullback_trace(r, j, ev.pullback);
  }
  j["status"] = r.exit_code == 0 ? "ok" : "violation";
  return r;
}

inline Report report_basechange(const FiberGraph& f, std::optional<int> order = std::nullopt, bool trace = false) {
  Report r;
  auto log = resolve(f);
  auto pb = pullback_resolved(log, order);
  auto& j = r.data;
  j["command"] = "basechange";
  j["fiber"] = f.name;
  j["e_used"] = pb.e_used;
  j["e_chosen"] = !order.has_value();
  j["contracted_per_point"] = pb.contracted_per_point;
  j["c_minus_1"] = rational_to_json(pb.c_minus_1);
  Json out = fiber_to_json(pb.fibers_above.front());
  out["kind"] = "fiber";
  j["result"] = out;
  j["warnings"] = pb.warnings;
  r.line("fiber " + f.name + "  e = " + std::to_string(pb.e_used) + (order ? "" : " (chosen)"));
  r.line("contracted per point: " + std::to_string(pb.contracted_per_point) + "  c_-1 = " + to_string(pb.c_minus_1));
  pullback_trace(r, j, pb);
  if (trace) {
    r.line("resolution:");
    resolution_trace(r, j, log);
  }
  const auto& g = pb.fibers_above.front();
  r.line("result: " + std::to_string(g.components.size()) + " components, " + std::to_string(g.edges.size()) +
         " nodes, " + to_string(classify(g).kind));
  r.line(out.dump());
  for (const auto& w : pb.warnings) r.line("warning: " + w);
  j["status"] = "ok";
  return r;
}

inline Report report_resolve(const FiberGraph& f, bool trace = false) {
  Report r;
  auto log = resolve(f);
  auto& j = r.data;
  j["command"] = "resolve";
  j["fiber"] = f.name;
  r.line("fiber " + f.name + "  " + std::to_string(log.steps.size()) + " blow-ups");
  resolution_trace(r, j, log);
  j["alpha"] = Json::object();
  for (const auto& p : log.point_ids) j["alpha"][p] = alpha(log, p);
  j["alpha_total"] = alpha_total(log);
  auto rb = check_resolution_bounds(log, f);
  j["bounds"] = {{"steps", Json::array()},
                 {"alpha", check_to_json(rb.alpha_check)},
                 {"equality_rule", rb.equality_rule_consistent}};
  for (const auto& c : rb.step_checks) {
    j["bounds"]["steps"].push_back(check_to_json(c));
    if (trace) r.line(check_line(c));
  }
  r.line(check_line(rb.alpha_check));
  if (!rb.ok()) r.fail();
  Json out = fiber_to_json(log.final_graph);
  out["kind"] = "fiber";
  j["snc"] = out;
  r.line(out.dump());
  j["status"] = r.exit_code == 0 ? "ok" : "violation";
  return r;
}

inline void fibration_section(Report& r, Json& j, const FibrationSummary& fs, bool inequality_checks) {
  auto warnings = validate_fibration(fs);
  j["warnings"] = warnings;
  r.line("fibration " + fs.name + "  g = " + std::to_string(fs.g) + "  b = " + std::to_string(fs.b) +
         "  s = " + std::to_string(fs.s) + (fs.semistable ? "  semistable" : "  non-semistable"));
  for (const auto& w : warnings) r.line("warning: " + w);

  auto gi = global_invariants(fs);
  j["global"] = {{"I_K", rational_to_json(gi.i_k)},
                 {"I_chi", rational_to_json(gi.i_chi)},
                 {"I_e", rational_to_json(gi.i_e)},
                 {"isotriviality_indicated", gi.isotriviality_indicated},
                 {"skipped", gi.skipped}};
  r.line("I_K = " + to_string(gi.i_k) + "  I_chi = " + to_string(gi.i_chi) + "  I_e = " + to_string(gi.i_e));
  for (const auto& c : gi.nonnegativity)
    if (!c.holds()) {
      r.line("violation: " + check_line(c));
      r.fail();
    }
  for (const auto& s : gi.skipped) r.line("skipped: " + s);
  if (inequality_checks) {
    auto v = check_canonical_class(fs);
    j["canonical_class"] = verdict_to_json(v);
    verdict_lines(r, v);
    if (v.failed()) r.fail();
  }
}

inline Report report_check(const Document& d) {
  Report r;
  auto& j = r.data;
  j["command"] = "check";
  j["document"] = to_string(d.kind);
  switch (d.kind) {
    case DocumentKind::Fiber:
      throw InputError("check needs a fibration, point-check or miyaoka-check document");
    case DocumentKind::Fibration:
      require_height_hypotheses(d.fibration);
      fibration_section(r, j, d.fibration, true);
      break;
    case DocumentKind::PointCheck: {
      const auto& pc = d.point_check;
      require_height_hypotheses(pc.fibration);
      fibration_section(r, j, pc.fibration, true);
      auto pi = point_invariants(pc.point);
      j["point"] = {{"h_K", rational_to_json(pi.h_k)}, {"d", rational_to_json(pi.d_disc)}};
      r.line("h_K = " + to_string(pi.h_k) + "  d(P) = " + to_string(pi.d_disc));
      if (pi.section_identity) {
        j["point"]["section_identity"] = *pi.section_identity;
        r.line(std::string("section identity h_K = -E^2: ") + (*pi.section_identity ? "holds" : "FAILS"));
        if (!*pi.section_identity) r.fail();
      }
      auto v = check_height_inequality(pc.fibration, pc.point);
      j["height"] = verdict_to_json(v);
      verdict_lines(r, v);
      if (v.failed()) r.fail();
      if (pc.section) {
        if (pc.point.degree != 1) throw InputError("section data given for a point of degree > 1");
        try {
          auto sb = section_height_bound(pc.fibration, *pc.section);
          auto c = make_check("section-bound", pi.h_k, sb.bound);
          j["section_bound"] = check_to_json(c);
          j["section_bound"]["epsilon"] = rational_to_json(sb.epsilon);
          j["section_bound"]["via_miyaoka"] = rational_to_json(sb.via_miyaoka);
          j["section_bound"]["routes_agree"] = sb.routes_agree;
          r.line(check_line(c));
          for (const auto& n : sb.notes) r.line("note: " + n);
          if (!c.holds()) r.fail();
        } catch (const UnsupportedError& e) {
          j["section_bound"] = {{"skipped", e.what()}};
          r.line(std::string("section bound skipped: ") + e.what());
        }
      }
      break;
    }
    case DocumentKind::MiyaokaCheck: {
      const auto& m = d.miyaoka;
      auto v = miyaoka_check(m.c2, m.ksq_plus_d, m.ade, m.chi_top_d);
      j["miyaoka"] = verdict_to_json(v);
      verdict_lines(r, v);
      if (v.failed()) r.fail();
      break;
    }
  }
  j["status"] = r.exit_code == 0 ? "ok" : "violation";
  return r;
}

inline Report report_miyaoka(AdeKind kind, int r_value) {
  Report r;
  auto m = miyaoka_m(kind, r_value);
  r.data = {{"command", "miyaoka"},
            {"kind", to_string(kind)},
            {"r", r_value},
            {"m", rational_to_json(m)},
            {"m_decimal", to_decimal(m)}};
  r.line("m(" + to_string(kind) + std::to_string(r_value) + ") = " + to_string(m) + " (" + to_decimal(m) + ")");
  return r;
}

// ---------------------------------------------------------------------------------------------
// corpus

struct CorpusEntry {
  std::string name;
  std::filesystem::path path;
  Document doc;
};

inline std::filesystem::path default_corpus_dir() {
  if (const char* env = std::getenv("FIBRA_CORPUS_DIR"); env && *env) return env;
#ifdef FIBRA_DEFAULT_CORPUS
  return FIBRA_DEFAULT_CORPUS;
#else
  return "data/corpus";
#endif
}

inline std::vector<CorpusEntry> load_corpus(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw InputError("corpus directory '" + dir.string() + "' not found");
  std::vector<CorpusEntry> out;
  for (const char* sub : {"fibers", "fibrations", "points"}) {
    if (!fs::is_directory(dir / sub)) continue;
    for (const auto& de : fs::directory_iterator(dir / sub)) {
      if (de.path().extension() != ".json") continue;
      out.push_back({de.path().stem().string(), de.path(), load_document(de.path().string())});
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  for (std::size_t i = 1; i < out.size(); ++i)
    if (out[i].name == out[i - 1].name) throw InputError("duplicate corpus entry '" + out[i].name + "'");
  return out;
}

inline std::string entry_type(const CorpusEntry& e) {
  if (e.doc.meta.contains("type") && e.doc.meta["type"].is_string()) return e.doc.meta["type"].get<std::string>();
  if (e.doc.kind == DocumentKind::Fiber) return to_string(classify(e.doc.fiber).kind);
  return to_string(e.doc.kind);
}

inline int entry_genus(const CorpusEntry& e) {
  switch (e.doc.kind) {
    case DocumentKind::Fiber: return fiber_genus(e.doc.fiber);
    case DocumentKind::Fibration: return e.doc.fibration.g;
    case DocumentKind::PointCheck: return e.doc.point_check.fibration.g;
    case DocumentKind::MiyaokaCheck: return 0;
  }
  return 0;
}

struct EntryOutcome {
  Json golden;                   // values compared against the golden file
  std::vector<InequalityCheck> suite;  // property checks, each must hold
  std::vector<std::string> failures;
};

inline void suite_flag(EntryOutcome& o, const std::string& name, bool ok) {
  o.suite.push_back(make_check(name, ok ? 0 : 1, 0));
}

inline EntryOutcome evaluate_fiber_entry(const FiberGraph& f) {
  EntryOutcome o;
  auto ev = evaluate_fiber(f);
  const auto& inv = ev.invariants;
  const auto& pb = ev.pullback;
  Json& g = o.golden;
  g["genus"] = inv.genus;
  g["class"] = to_string(classify(f).kind);
  g["pa_red"] = inv.pa_red;
  g["fred_sq"] = inv.fred_sq;
  g["chi_top"] = inv.chi_top;
  g["invariants"] = invariants_to_json(inv);
  g["contracted_per_point"] = pb.contracted_per_point;
  g["exceptional_multiplicities"] = Json::array();
  for (const auto& s : ev.log.steps) g["exceptional_multiplicities"].push_back(s.exc_mult_in_total);
  Json above = fiber_to_json(pb.fibers_above.front());
  above.erase("name");
  g["semistable_model"] = above;
  g["warnings"] = inv.warnings;

  for (int k : {2, 3}) {
    auto other = fiber_invariants(f, inv.e_used * k);
    suite_flag(o, "independent-of-e(x" + std::to_string(k) + ")",
               other.c1_sq == inv.c1_sq && other.c2 == inv.c2 && other.chi == inv.chi &&
                   other.c_minus_1 == inv.c_minus_1);
  }
  suite_flag(o, "noether", 12 * inv.chi == inv.c1_sq + inv.c2);
  suite_flag(o, "dual-pipeline", inv.c1_sq_closed == inv.c1_sq_simulated);
  if (inv.semistable)
    suite_flag(o, "semistable-nullity", inv.c1_sq == 0 && inv.c2 == 0 && inv.chi == 0 && inv.c_minus_1 == 0);
  if (inv.genus == 1) suite_flag(o, "elliptic-c1-zero", inv.c1_sq == 0);
  auto bound = check_fiber_bound(inv);
  g["fiber_bound"] = Json::array();
  for (const auto& c : bound.checks) g["fiber_bound"].push_back(check_to_json(c));
  if (bound.asserted)
    for (const auto& c : bound.checks) o.suite.push_back(c);
  auto rb = check_resolution_bounds(ev.log, f);
  for (const auto& c : rb.step_checks) o.suite.push_back(c);
  o.suite.push_back(rb.alpha_check);
  suite_flag(o, "alpha-equality-rule", rb.equality_rule_consistent);
  return o;
}

inline EntryOutcome evaluate_fibration_entry(const FibrationSummary& fs, const Json& meta) {
  EntryOutcome o;
  auto gi = global_invariants(fs);
  o.golden["global"] = {{"I_K", rational_to_json(gi.i_k)},
                        {"I_chi", rational_to_json(gi.i_chi)},
                        {"I_e", rational_to_json(gi.i_e)},
                        {"isotriviality_indicated", gi.isotriviality_indicated}};
  o.golden["warnings"] = validate_fibration(fs);
  for (const auto& c : gi.nonnegativity) o.suite.push_back(c);
  suite_flag(o, "no-skipped-fibers", gi.skipped.empty());
  if (fs.g >= 2) {
    auto v = check_canonical_class(fs);
    o.golden["canonical_class"] = verdict_to_json(v);
    suite_flag(o, "canonical-class", !v.failed());
  }
  if (meta.contains("scaling")) {
    o.golden["scaling"] = Json::array();
    for (const auto& sc : meta["scaling"]) {
      const int d = sc.at("d").get<int>();
      std::optional<std::vector<int>> profile;
      if (sc.contains("profile")) profile = sc["profile"].get<std::vector<int>>();
      auto rep = check_base_change_scaling(fs, d, profile);
      o.golden["scaling"].push_back({{"d", d},
                                     {"ksq", rational_to_json(rep.ksq_tilde)},
                                     {"chi", rational_to_json(rep.chi_tilde)},
                                     {"e", rational_to_json(rep.e_tilde)}});
      suite_flag(o, "scaling-d" + std::to_string(d), rep.ok());
    }
  }
  return o;
}

inline EntryOutcome evaluate_point_entry(const Document& d) {
  EntryOutcome o;
  Report r = report_check(d);
  o.golden = r.data;
  o.golden.erase("command");
  suite_flag(o, "verdicts", r.exit_code == 0);
  return o;
}

inline EntryOutcome evaluate_entry(const CorpusEntry& e) {
  EntryOutcome o;
  switch (e.doc.kind) {
    case DocumentKind::Fiber: o = evaluate_fiber_entry(e.doc.fiber); break;
    case DocumentKind::Fibration: o = evaluate_fibration_entry(e.doc.fibration, e.doc.meta); break;
    case DocumentKind::PointCheck:
    case DocumentKind::MiyaokaCheck: o = evaluate_point_entry(e.doc); break;
  }
  const auto once = serialize_document(e.doc);
  const auto twice = serialize_document(parse_document(once, e.name));
  suite_flag(o, "round-trip", once == twice);
  for (const auto& c : o.suite)
    if (!c.holds()) o.failures.push_back("property " + c.name + " fails");
  return o;
}

inline Report report_corpus_list(const std::filesystem::path& dir) {
  Report r;
  auto entries = load_corpus(dir);
  r.data["command"] = "corpus-list";
  r.data["entries"] = Json::array();
  for (const auto& e : entries) {
    r.data["entries"].push_back(
        {{"name", e.name}, {"g", entry_genus(e)}, {"type", entry_type(e)}, {"kind", to_string(e.doc.kind)}});
    r.line(e.name + "  g=" + std::to_string(entry_genus(e)) + "  " + entry_type(e));
  }
  return r;
}

inline Report report_corpus_run(const std::filesystem::path& dir, bool write_golden = false) {
  namespace fs = std::filesystem;
  Report r;
  auto entries = load_corpus(dir);
  r.data["command"] = "corpus-run";
  r.data["entries"] = Json::array();
  int failed = 0;
  for (const auto& e : entries) {
    Json ej{{"name", e.name}, {"kind", to_string(e.doc.kind)}};
    EntryOutcome o;
    try {
      o = evaluate_entry(e);
    } catch (const Error& err) {
      o.failures.push_back(std::string("error: ") + err.what());
    }
    const auto golden_path = dir / "golden" / (e.name + ".json");
    if (o.failures.empty()) {
      if (write_golden) {
        fs::create_directories(dir / "golden");
        std::ofstream(golden_path) << o.golden.dump(2) << "\n";
      } else if (!fs::exists(golden_path)) {
        o.failures.push_back("golden file missing");
      } else {
        Json expected;
        try {
          expected = parse_json_text(read_file(golden_path.string()), golden_path.string());
        } catch (const InputError& err) {
          o.failures.push_back(err.what());
        }
        if (o.failures.empty() && expected != o.golden) {
          auto diff = Json::diff(expected, o.golden);
          for (const auto& op : diff) o.failures.push_back("golden mismatch at " + op.value("path", std::string("?")));
        }
      }
    }
    ej["properties"] = o.suite.size();
    ej["values"] = o.golden;
    ej["failures"] = o.failures;
    ej["status"] = o.failures.empty() ? "pass" : "fail";
    r.data["entries"].push_back(ej);
    r.line((o.failures.empty() ? "PASS " : "FAIL ") + e.name + "  (" + std::to_string(o.suite.size()) + " properties)");
    for (const auto& f : o.failures) r.line("  " + f);
    if (!o.failures.empty()) ++failed;
  }
  r.data["failed"] = failed;
  r.data["total"] = entries.size();
  r.line(std::to_string(entries.size() - failed) + "/" + std::to_string(entries.size()) + " corpus entries pass");
  if (failed) r.fail();
  return r;
}

}  // namespace fibra
