#pragma once

#include <vector>

#include "mereology/bitset.hpp"
#include "mereology/constraint.hpp"
#include "mereology/part.hpp"

namespace mereology {

/// accessibility[w] is the set of worlds reachable from w.
using Accessibility = std::vector<Bitset>;

struct KripkeModalities {
  Constraint diamond;
  Constraint box;
};

/// Throws NotAnEquivalence naming the first violated axiom.
void require_equivalence(const Accessibility& relation);

/// The quotient part W -> W/A of an equivalence relation.
Part quotient_part(const BehaviorTypePtr& worlds, const Accessibility& relation);

/// Possibility and necessity on an equivalence frame, computed as the round
/// trips of the inter-modalities through the quotient part. phi must be
/// carried by `worlds`.
KripkeModalities kripke_modalities(const BehaviorTypePtr& worlds, const Accessibility& relation, const Constraint& phi);

/// Textbook Kripke semantics for an arbitrary relation: a double loop over
/// worlds.
KripkeModalities classical_modalities(const Accessibility& relation, const Constraint& phi);

}  // namespace mereology
