#pragma once

// JSON documents: fiber, fibration, point-check, miyaoka-check. Rationals are written as JSON
// integers when integral, otherwise as "p/q" strings; both forms are accepted on input.

#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "fibra/error.hpp"
#include "fibra/fiber.hpp"
#include "fibra/heights.hpp"
#include "fibra/invariants.hpp"
#include "fibra/rational.hpp"

namespace fibra {

using Json = nlohmann::json;

enum class DocumentKind { Fiber, Fibration, PointCheck, MiyaokaCheck };

inline std::string to_string(DocumentKind k) {
  switch (k) {
    case DocumentKind::Fiber: return "fiber";
    case DocumentKind::Fibration: return "fibration";
    case DocumentKind::PointCheck: return "point-check";
    case DocumentKind::MiyaokaCheck: return "miyaoka-check";
  }
  return "?";
}

struct PointCheckInput {
  FibrationSummary fibration;
  AlgebraicPoint point;
  std::optional<SectionLocalData> section;
};

struct MiyaokaCheckInput {
  Rational c2 = 0;
  Rational ksq_plus_d = 0;
  std::vector<AdeConfig> ade;
  std::int64_t chi_top_d = 0;
};

struct Document {
  DocumentKind kind = DocumentKind::Fiber;
  FiberGraph fiber;
  FibrationSummary fibration;
  PointCheckInput point_check;
  MiyaokaCheckInput miyaoka;
  Json meta = Json::object();  // free-form, carried through untouched
};

namespace io_detail {

inline std::string join(const std::string& at, const std::string& key) { return at.empty() ? key : at + "." + key; }

inline void only_keys(const Json& j, const std::string& at, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw InputError(at + ": expected an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!ok.count(it.key())) throw InputError(join(at, it.key()) + ": unknown field");
}

inline const Json& need(const Json& j, const std::string& at, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw InputError(join(at, key) + ": missing field");
  return *it;
}

inline std::int64_t get_int(const Json& v, const std::string& at) {
  if (!v.is_number_integer()) throw InputError(at + ": expected an integer");
  return v.get<std::int64_t>();
}

inline int get_small(const Json& v, const std::string& at) {
  auto x = get_int(v, at);
  if (x < -1000000 || x > 1000000) throw InputError(at + ": integer out of range");
  return static_cast<int>(x);
}

inline std::string get_string(const Json& v, const std::string& at) {
  if (!v.is_string()) throw InputError(at + ": expected a string");
  return v.get<std::string>();
}

inline bool get_bool(const Json& v, const std::string& at) {
  if (!v.is_boolean()) throw InputError(at + ": expected true or false");
  return v.get<bool>();
}

inline Rational get_rational(const Json& v, const std::string& at) {
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const InputError& e) {
      throw InputError(at + ": " + e.what());
    }
  }
  throw InputError(at + ": expected an integer or a \"p/q\" string");
}

inline const Json& get_array(const Json& v, const std::string& at) {
  if (!v.is_array()) throw InputError(at + ": expected an array");
  return v;
}

inline std::string idx(const std::string& at, std::size_t i) { return at + "[" + std::to_string(i) + "]"; }

}  // namespace io_detail

inline Json rational_to_json(const Rational& r) {
  if (is_integer(r) && abs(r) < Rational(std::int64_t{1} << 53)) return Json(to_int64(r));
  return Json(to_string(r));
}

inline SingularityKind parse_singularity_kind(const std::string& s, const std::string& at) {
  if (s == "node") return SingularityKind::Node;
  if (s == "cusp") return SingularityKind::Cusp;
  if (s == "tacnode") return SingularityKind::Tacnode;
  if (s == "ordinary") return SingularityKind::Ordinary;
  if (s == "custom") return SingularityKind::Custom;
  throw InputError(at + ": unknown singularity kind '" + s + "'");
}

inline FiberGraph fiber_from_json(const Json& j, const std::string& at = "") {
  using namespace io_detail;
  only_keys(j, at, {"kind", "name", "components", "edges", "singularities", "meta"});
  FiberGraph f;
  if (j.contains("name")) f.name = get_string(j["name"], join(at, "name"));
  const auto& comps = get_array(need(j, at, "components"), join(at, "components"));
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const auto here = idx(join(at, "components"), i);
    only_keys(comps[i], here, {"id", "genus", "multiplicity", "cover_components"});
    FiberComponent c;
    c.id = get_string(need(comps[i], here, "id"), join(here, "id"));
    c.genus = get_small(need(comps[i], here, "genus"), join(here, "genus"));
    c.multiplicity = comps[i].contains("multiplicity") ? get_small(comps[i]["multiplicity"], join(here, "multiplicity")) : 1;
    if (comps[i].contains("cover_components"))
      c.cover_components = get_small(comps[i]["cover_components"], join(here, "cover_components"));
    f.components.push_back(std::move(c));
  }
  if (j.contains("edges")) {
    const auto& edges = get_array(j["edges"], join(at, "edges"));
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const auto here = idx(join(at, "edges"), i);
      if (!edges[i].is_array() || edges[i].size() != 2) throw InputError(here + ": expected a pair of component ids");
      f.edges.emplace_back(get_string(edges[i][0], here), get_string(edges[i][1], here));
    }
  }
  if (j.contains("singularities")) {
    const auto& sings = get_array(j["singularities"], join(at, "singularities"));
    for (std::size_t i = 0; i < sings.size(); ++i) {
      const auto here = idx(join(at, "singularities"), i);
      only_keys(sings[i], here, {"id", "branches", "kind", "order", "proximity_tree"});
      PointSingularity s;
      s.id = get_string(need(sings[i], here, "id"), join(here, "id"));
      const auto& br = get_array(need(sings[i], here, "branches"), join(here, "branches"));
      for (std::size_t b = 0; b < br.size(); ++b) s.branches.push_back(get_string(br[b], idx(join(here, "branches"), b)));
      s.descriptor.kind = parse_singularity_kind(get_string(need(sings[i], here, "kind"), join(here, "kind")), join(here, "kind"));
      if (sings[i].contains("order")) s.descriptor.order = get_small(sings[i]["order"], join(here, "order"));
      if (sings[i].contains("proximity_tree")) {
        const auto tat = join(here, "proximity_tree");
        const auto& tree = get_array(sings[i]["proximity_tree"], tat);
        for (std::size_t p = 0; p < tree.size(); ++p) {
          const auto pat = idx(tat, p);
          only_keys(tree[p], pat, {"parent", "satellite", "branches"});
          ProximityPoint pt;
          pt.parent = get_small(need(tree[p], pat, "parent"), join(pat, "parent"));
          if (tree[p].contains("satellite")) pt.satellite = get_small(tree[p]["satellite"], join(pat, "satellite"));
          const auto& bm = get_array(need(tree[p], pat, "branches"), join(pat, "branches"));
          for (std::size_t b = 0; b < bm.size(); ++b) pt.branch_multiplicity.push_back(get_small(bm[b], idx(join(pat, "branches"), b)));
          s.descriptor.proximity_tree.push_back(std::move(pt));
        }
      }
      f.point_singularities.push_back(std::move(s));
    }
  }
  validate_structure(f);
  return f;
}

inline Json fiber_to_json(const FiberGraph& f) {
  Json j;
  j["name"] = f.name;
  j["components"] = Json::array();
  for (const auto& c : f.components) {
    Json cj{{"id", c.id}, {"genus", c.genus}, {"multiplicity", c.multiplicity}};
    if (c.cover_components) cj["cover_components"] = *c.cover_components;
    j["components"].push_back(cj);
  }
  j["edges"] = Json::array();
  for (const auto& [a, b] : f.edges) j["edges"].push_back({a, b});
  if (!f.point_singularities.empty()) {
    j["singularities"] = Json::array();
    for (const auto& s : f.point_singularities) {
      Json sj{{"id", s.id}, {"branches", s.branches}, {"kind", to_string(s.descriptor.kind)}};
      if (s.descriptor.kind == SingularityKind::Ordinary) sj["order"] = s.descriptor.order;
      if (s.descriptor.kind == SingularityKind::Custom) {
        sj["proximity_tree"] = Json::array();
        for (const auto& p : s.descriptor.proximity_tree) {
          Json pj{{"parent", p.parent}, {"branches", p.branch_multiplicity}};
          if (p.satellite >= 0) pj["satellite"] = p.satellite;
          sj["proximity_tree"].push_back(pj);
        }
      }
      j["singularities"].push_back(sj);
    }
  }
  return j;
}

inline FibrationSummary fibration_from_json(const Json& j, const std::string& at = "") {
  using namespace io_detail;
  only_keys(j, at, {"kind", "name", "g", "b", "s", "ksq", "chi", "e", "semistable", "non_trivial", "fibers", "meta"});
  FibrationSummary fs;
  if (j.contains("name")) fs.name = get_string(j["name"], join(at, "name"));
  fs.g = get_small(need(j, at, "g"), join(at, "g"));
  fs.b = get_small(need(j, at, "b"), join(at, "b"));
  fs.ksq = get_rational(need(j, at, "ksq"), join(at, "ksq"));
  fs.chi = get_rational(need(j, at, "chi"), join(at, "chi"));
  fs.e = get_rational(need(j, at, "e"), join(at, "e"));
  if (j.contains("non_trivial")) fs.non_trivial = get_bool(j["non_trivial"], join(at, "non_trivial"));
  if (j.contains("fibers")) {
    const auto fat = join(at, "fibers");
    const auto& fibers = get_array(j["fibers"], fat);
    for (std::size_t i = 0; i < fibers.size(); ++i) {
      const auto here = idx(fat, i);
      only_keys(fibers[i], here, {"count", "fiber"});
      FibrationFiber ff;
      if (fibers[i].contains("count")) ff.count = get_small(fibers[i]["count"], join(here, "count"));
      ff.fiber = fiber_from_json(need(fibers[i], here, "fiber"), join(here, "fiber"));
      fs.fibers.push_back(std::move(ff));
    }
  }
  if (j.contains("s")) {
    fs.s = get_small(j["s"], join(at, "s"));
  } else {
    if (fs.fibers.empty()) throw InputError(join(at, "s") + ": missing field");
    for (const auto& ff : fs.fibers) fs.s += ff.count;
  }
  if (j.contains("semistable")) {
    fs.semistable = get_bool(j["semistable"], join(at, "semistable"));
  } else {
    if (fs.fibers.empty() && fs.s > 0) throw InputError(join(at, "semistable") + ": missing field");
    fs.semistable = true;
    for (const auto& ff : fs.fibers) fs.semistable = fs.semistable && is_semistable(ff.fiber);
  }
  validate_summary(fs);
  return fs;
}

inline Json fibration_to_json(const FibrationSummary& fs) {
  Json j{{"name", fs.name},          {"g", fs.g},
         {"b", fs.b},                {"s", fs.s},
         {"ksq", rational_to_json(fs.ksq)}, {"chi", rational_to_json(fs.chi)},
         {"e", rational_to_json(fs.e)},     {"semistable", fs.semistable},
         {"non_trivial", fs.non_trivial}};
  j["fibers"] = Json::array();
  for (const auto& ff : fs.fibers) j["fibers"].push_back({{"count", ff.count}, {"fiber", fiber_to_json(ff.fiber)}});
  return j;
}

inline AlgebraicPoint point_from_json(const Json& j, const std::string& at) {
  using namespace io_detail;
  only_keys(j, at, {"degree", "k_dot_e", "genus_tilde", "e_self"});
  AlgebraicPoint p;
  p.degree = get_small(need(j, at, "degree"), join(at, "degree"));
  p.k_dot_e = get_rational(need(j, at, "k_dot_e"), join(at, "k_dot_e"));
  p.genus_tilde = get_small(need(j, at, "genus_tilde"), join(at, "genus_tilde"));
  if (j.contains("e_self")) p.e_self = get_rational(j["e_self"], join(at, "e_self"));
  validate_point(p);
  return p;
}

inline Json point_to_json(const AlgebraicPoint& p) {
  Json j{{"degree", p.degree}, {"k_dot_e", rational_to_json(p.k_dot_e)}, {"genus_tilde", p.genus_tilde}};
  if (p.e_self) j["e_self"] = rational_to_json(*p.e_self);
  return j;
}

inline SectionLocalData section_from_json(const Json& j, const std::string& at) {
  using namespace io_detail;
  only_keys(j, at, {"mu_list", "epsilon_terms"});
  SectionLocalData sd;
  if (j.contains("mu_list")) {
    const auto& mu = get_array(j["mu_list"], join(at, "mu_list"));
    for (std::size_t i = 0; i < mu.size(); ++i) sd.mu_list.push_back(get_small(mu[i], idx(join(at, "mu_list"), i)));
  }
  if (j.contains("epsilon_terms")) {
    const auto& et = get_array(j["epsilon_terms"], join(at, "epsilon_terms"));
    for (std::size_t i = 0; i < et.size(); ++i) {
      const auto here = idx(join(at, "epsilon_terms"), i);
      if (!et[i].is_array() || et[i].size() != 3) throw InputError(here + ": expected [mu, mu1, mu2]");
      sd.epsilon_terms.emplace_back(get_small(et[i][0], here), get_small(et[i][1], here), get_small(et[i][2], here));
    }
  }
  return sd;
}

inline Json section_to_json(const SectionLocalData& sd) {
  Json j{{"mu_list", sd.mu_list}, {"epsilon_terms", Json::array()}};
  for (const auto& [a, b, c] : sd.epsilon_terms) j["epsilon_terms"].push_back({a, b, c});
  return j;
}

inline MiyaokaCheckInput miyaoka_from_json(const Json& j) {
  using namespace io_detail;
  only_keys(j, "", {"kind", "name", "c2", "ksq_plus_d", "ade", "chi_top_d", "meta"});
  MiyaokaCheckInput m;
  m.c2 = get_rational(need(j, "", "c2"), "c2");
  m.ksq_plus_d = get_rational(need(j, "", "ksq_plus_d"), "ksq_plus_d");
  m.chi_top_d = j.contains("chi_top_d") ? get_int(j["chi_top_d"], "chi_top_d") : 0;
  if (j.contains("ade")) {
    const auto& ade = get_array(j["ade"], "ade");
    for (std::size_t i = 0; i < ade.size(); ++i) {
      const auto here = idx("ade", i);
      only_keys(ade[i], here, {"kind", "r"});
      AdeConfig c;
      try {
        c.kind = parse_ade_kind(get_string(need(ade[i], here, "kind"), join(here, "kind")));
      } catch (const InputError& e) {
        throw InputError(join(here, "kind") + ": " + e.what());
      }
      c.r = get_small(need(ade[i], here, "r"), join(here, "r"));
      miyaoka_m(c.kind, c.r);
      m.ade.push_back(c);
    }
  }
  return m;
}

inline Json miyaoka_to_json(const MiyaokaCheckInput& m) {
  Json j{{"c2", rational_to_json(m.c2)}, {"ksq_plus_d", rational_to_json(m.ksq_plus_d)}, {"chi_top_d", m.chi_top_d}};
  j["ade"] = Json::array();
  for (const auto& c : m.ade) j["ade"].push_back({{"kind", to_string(c.kind)}, {"r", c.r}});
  return j;
}

inline Document document_from_json(const Json& j) {
  using namespace io_detail;
  if (!j.is_object()) throw InputError("document: expected a JSON object");
  Document d;
  const auto kind = get_string(need(j, "", "kind"), "kind");
  if (j.contains("meta")) {
    if (!j["meta"].is_object()) throw InputError("meta: expected an object");
    d.meta = j["meta"];
  }
  if (kind == "fiber") {
    d.kind = DocumentKind::Fiber;
    d.fiber = fiber_from_json(j);
  } else if (kind == "fibration") {
    d.kind = DocumentKind::Fibration;
    d.fibration = fibration_from_json(j);
  } else if (kind == "point-check") {
    d.kind = DocumentKind::PointCheck;
    only_keys(j, "", {"kind", "name", "fibration", "point", "section", "meta"});
    d.point_check.fibration = fibration_from_json(need(j, "", "fibration"), "fibration");
    d.point_check.point = point_from_json(need(j, "", "point"), "point");
    if (j.contains("section")) d.point_check.section = section_from_json(j["section"], "section");
    if (j.contains("name")) d.point_check.fibration.name = get_string(j["name"], "name");
  } else if (kind == "miyaoka-check") {
    d.kind = DocumentKind::MiyaokaCheck;
    d.miyaoka = miyaoka_from_json(j);
  } else {
    throw InputError("kind: unknown document kind '" + kind + "'");
  }
  return d;
}

inline Json document_to_json(const Document& d) {
  Json j;
  switch (d.kind) {
    case DocumentKind::Fiber: j = fiber_to_json(d.fiber); break;
    case DocumentKind::Fibration: j = fibration_to_json(d.fibration); break;
    case DocumentKind::PointCheck:
      j["name"] = d.point_check.fibration.name;
      j["fibration"] = fibration_to_json(d.point_check.fibration);
      j["point"] = point_to_json(d.point_check.point);
      if (d.point_check.section) j["section"] = section_to_json(*d.point_check.section);
      break;
    case DocumentKind::MiyaokaCheck: j = miyaoka_to_json(d.miyaoka); break;
  }
  j["kind"] = to_string(d.kind);
  if (!d.meta.empty()) j["meta"] = d.meta;
  return j;
}

inline Json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(source + ": " + e.what());
  }
}

inline Document parse_document(const std::string& text, const std::string& source = "<input>") {
  try {
    return document_from_json(parse_json_text(text, source));
  } catch (const InputError& e) {
    const std::string msg = e.what();
    if (msg.rfind(source, 0) == 0) throw;
    throw InputError(source + ": " + msg);
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Document load_document(const std::string& path) { return parse_document(read_file(path), path); }

inline std::string serialize_document(const Document& d) { return document_to_json(d).dump(2) + "\n"; }

}  // namespace fibra
