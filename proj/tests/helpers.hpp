#pragma once

#include <string>

#include "fibra/fibra.hpp"

namespace testing_support {

inline std::string corpus_path(const std::string& rel) { return std::string(FIBRA_DEFAULT_CORPUS) + "/" + rel; }

inline fibra::FiberGraph corpus_fiber(const std::string& name) {
  return fibra::load_document(corpus_path("fibers/" + name + ".json")).fiber;
}

inline fibra::Document fixture(const std::string& name) {
  return fibra::load_document(std::string(FIBRA_FIXTURES) + "/" + name + ".json");
}

inline fibra::FiberGraph make_fiber(std::vector<fibra::FiberComponent> comps,
                                    std::vector<std::pair<std::string, std::string>> edges,
                                    std::vector<fibra::PointSingularity> sings = {}) {
  fibra::FiberGraph f;
  f.name = "test";
  f.components = std::move(comps);
  f.edges = std::move(edges);
  f.point_singularities = std::move(sings);
  return f;
}

inline fibra::PointSingularity sing(std::string id, std::vector<std::string> branches, fibra::SingularityKind kind,
                                    int order = 0, fibra::ProximityTree tree = {}) {
  fibra::PointSingularity s;
  s.id = std::move(id);
  s.branches = std::move(branches);
  s.descriptor.kind = kind;
  s.descriptor.order = order;
  s.descriptor.proximity_tree = std::move(tree);
  return s;
}

}  // namespace testing_support
