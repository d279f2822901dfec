#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "mereology/bitset.hpp"
#include "mereology/part.hpp"

namespace mereology {

/// The compatibility relation between two parts as a |P| x |Q| bit matrix,
/// stored both row-major and column-major.
class CompatibilityMatrix {
 public:
  CompatibilityMatrix(const Part& p, const Part& q);

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_.size(); }
  bool operator()(std::size_t a, std::size_t b) const { return rows_.at(a).test(b); }
  /// Q-behaviors compatible with p-behavior a.
  const Bitset& row(std::size_t a) const { return rows_.at(a); }
  /// P-behaviors compatible with q-behavior b.
  const Bitset& col(std::size_t b) const { return cols_.at(b); }

 private:
  std::vector<Bitset> rows_;
  std::vector<Bitset> cols_;
};

/// Some system behavior restricts to a on p and to b on q.
bool compatible(const Part& p, std::size_t a, const Part& q, std::size_t b);

/// Some system behavior restricts to every assigned behavior at once.
/// An empty family is compatible.
bool compatible_family(std::span<const std::pair<Part, std::size_t>> assignments);

/// Every system behavior restricting to a on p restricts to b on q.
bool determines(const Part& p, std::size_t a, const Part& q, std::size_t b);

/// Every behavior of p determines some behavior of q.
bool part_determines(const Part& p, const Part& q);

/// Four characterizations of "q is a part of p"; they always agree.
struct DeterminationConditions {
  bool part_of = false;                        ///< part_leq(q, p) holds
  bool compatibility_determines = false;       ///< ∀a ∃! b. c(a, b)
  bool determination_determines = false;       ///< ∀a ∃b. d(a, b)
  bool compatible_implies_determines = false;  ///< ∀a, b. c(a, b) ⇒ d(a, b)

  bool agree() const {
    return part_of == compatibility_determines && part_of == determination_determines &&
           part_of == compatible_implies_determines;
  }
};

DeterminationConditions determination_conditions(const Part& p, const Part& q);

}  // namespace mereology
