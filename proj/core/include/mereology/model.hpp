#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mereology/behavior.hpp"
#include "mereology/part.hpp"
#include "mereology/rational.hpp"

namespace mereology {

struct NamedPart {
  std::string name;
  Part part;
};

/// A behavior type together with the parts of interest, in declaration
/// order, and the parameters it was built from.
struct SystemModel {
  BehaviorTypePtr system;
  std::vector<NamedPart> parts;
  std::vector<std::pair<std::string, Rational>> params;

  const Part* find_part(std::string_view name) const {
    for (const auto& np : parts) {
      if (np.name == name) return &np.part;
    }
    return nullptr;
  }
  /// Throws std::out_of_range.
  const Part& part(std::string_view name) const {
    if (const Part* p = find_part(name)) return *p;
    throw std::out_of_range("no part named '" + std::string(name) + "'");
  }
  void add_part(std::string name, Part part) { parts.push_back({std::move(name), std::move(part)}); }
};

using ModelBundle = SystemModel;

}  // namespace mereology
