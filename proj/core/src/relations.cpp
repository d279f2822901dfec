#include "mereology/relations.hpp"

#include "mereology/errors.hpp"

namespace mereology {

namespace {

void check_index(const Part& p, std::size_t a) {
  if (a >= p.size()) {
    throw IndexOutOfRange("part '" + p.name() + "': behavior index " + std::to_string(a) + " out of range");
  }
}

}  // namespace

CompatibilityMatrix::CompatibilityMatrix(const Part& p, const Part& q)
    : rows_(p.size(), Bitset(q.size())), cols_(q.size(), Bitset(p.size())) {
  require_same_system(p, q);
  for (std::size_t s = 0; s < p.system().size(); ++s) {
    const std::size_t a = p.restrict(s);
    const std::size_t b = q.restrict(s);
    rows_[a].set(b);
    cols_[b].set(a);
  }
}

bool compatible(const Part& p, std::size_t a, const Part& q, std::size_t b) {
  require_same_system(p, q);
  check_index(q, b);
  for (std::size_t s : p.fiber(a)) {
    if (q.restrict(s) == b) return true;
  }
  return false;
}

bool compatible_family(std::span<const std::pair<Part, std::size_t>> assignments) {
  if (assignments.empty()) return true;
  const Part& first = assignments.front().first;
  for (const auto& [part, a] : assignments) {
    require_same_system(first, part);
    check_index(part, a);
  }
  // Scan the smallest fiber.
  const auto* pivot = &assignments.front();
  for (const auto& asg : assignments) {
    if (asg.first.fiber(asg.second).size() < pivot->first.fiber(pivot->second).size()) pivot = &asg;
  }
  for (std::size_t s : pivot->first.fiber(pivot->second)) {
    bool ok = true;
    for (const auto& [part, a] : assignments) {
      if (part.restrict(s) != a) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

bool determines(const Part& p, std::size_t a, const Part& q, std::size_t b) {
  require_same_system(p, q);
  check_index(q, b);
  for (std::size_t s : p.fiber(a)) {
    if (q.restrict(s) != b) return false;
  }
  return true;
}

bool part_determines(const Part& p, const Part& q) {
  require_same_system(p, q);
  for (std::size_t a = 0; a < p.size(); ++a) {
    const auto fiber = p.fiber(a);
    const std::size_t b = q.restrict(fiber.front());
    if (!determines(p, a, q, b)) return false;
  }
  return true;
}

DeterminationConditions determination_conditions(const Part& p, const Part& q) {
  DeterminationConditions out;
  out.part_of = part_leq(q, p).has_value();

  const CompatibilityMatrix c(p, q);
  out.compatibility_determines = true;
  for (std::size_t a = 0; a < p.size(); ++a) {
    if (c.row(a).count() != 1) {
      out.compatibility_determines = false;
      break;
    }
  }

  out.determination_determines = true;
  for (std::size_t a = 0; a < p.size() && out.determination_determines; ++a) {
    bool some = false;
    for (std::size_t b = 0; b < q.size() && !some; ++b) some = determines(p, a, q, b);
    out.determination_determines = some;
  }

  out.compatible_implies_determines = true;
  for (std::size_t a = 0; a < p.size() && out.compatible_implies_determines; ++a) {
    for (std::size_t b = 0; b < q.size(); ++b) {
      if (c(a, b) && !determines(p, a, q, b)) {
        out.compatible_implies_determines = false;
        break;
      }
    }
  }
  return out;
}

}  // namespace mereology
