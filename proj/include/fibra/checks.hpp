#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fibra/rational.hpp"

namespace fibra {

/// One evaluated inequality lhs <= rhs (or lhs < rhs when strict), with its exact margin rhs - lhs.
struct InequalityCheck {
  std::string name;
  Rational lhs;
  Rational rhs;
  bool strict = false;
  std::string note;

  Rational margin() const { return rhs - lhs; }
  bool equality() const { return lhs == rhs; }
  bool holds() const { return strict ? lhs < rhs : lhs <= rhs; }
};

inline InequalityCheck make_check(std::string name, Rational lhs, Rational rhs, bool strict = false,
                                  std::string note = {}) {
  return InequalityCheck{std::move(name), std::move(lhs), std::move(rhs), strict, std::move(note)};
}

inline bool all_hold(const std::vector<InequalityCheck>& checks) {
  for (const auto& c : checks)
    if (!c.holds()) return false;
  return true;
}

}  // namespace fibra
