#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <utility>

#include "mereology/constraint.hpp"
#include "mereology/part.hpp"
#include "mereology/relations.hpp"

namespace mereology {

/// Passes constraints on `source` to constraints on `target` through their
/// compatibility matrix, which is built once.
class InterModality {
 public:
  InterModality(Part source, Part target);

  const Part& source() const { return source_; }
  const Part& target() const { return target_; }
  const CompatibilityMatrix& compatibility() const { return *matrix_; }

  /// Target behavior b holds iff some compatible source behavior satisfies phi.
  Constraint allows(const Constraint& phi) const;
  /// Target behavior b holds iff every compatible source behavior satisfies phi.
  Constraint ensures(const Constraint& phi) const;

 private:
  Part source_;
  Part target_;
  std::shared_ptr<const CompatibilityMatrix> matrix_;
};

/// Thread-safe memo of compatibility matrices keyed by part identity.
class CompatibilityCache {
 public:
  std::shared_ptr<const CompatibilityMatrix> get(const Part& p, const Part& q);

 private:
  std::mutex mutex_;
  std::map<std::pair<const void*, const void*>, std::shared_ptr<const CompatibilityMatrix>> entries_;
};

/// ◇ from p to q: constraint on q allowed by phi on p.
Constraint allows(const Part& p, const Part& q, const Constraint& phi);
/// □ from p to q: constraint on q ensuring phi on p.
Constraint ensures(const Part& p, const Part& q, const Constraint& phi);

/// The same operators written as quantifiers along the whole system:
/// ∃_q Δ^p phi and ∀_q Δ^p phi.
Constraint allows_via_quantifiers(const Part& p, const Part& q, const Constraint& phi);
Constraint ensures_via_quantifiers(const Part& p, const Part& q, const Constraint& phi);

/// Out to q and back: allows(q, p, allows(p, q, phi)). Identity iff p ≤ q.
Constraint roundtrip_allows(const Part& p, const Part& q, const Constraint& phi);
Constraint roundtrip_ensures(const Part& p, const Part& q, const Constraint& phi);

/// Round trips through the bottom part: constant true iff phi is
/// satisfiable (possibility) or valid (necessity).
Constraint possibility(const Part& p, const Constraint& phi);
Constraint necessity(const Part& p, const Constraint& phi);

}  // namespace mereology
