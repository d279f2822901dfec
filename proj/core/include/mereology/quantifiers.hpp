#pragma once

#include "mereology/constraint.hpp"
#include "mereology/part.hpp"

namespace mereology {

// Quantification along a part map P -> Q (Q a part of P). Constraints on
// the source are carried by w.from's codomain, constraints on the target by
// w.to's codomain. Throws CarrierMismatch.

/// ∃: q holds iff some p over q satisfies phi.
Constraint exists_along(const PartOrderWitness& w, const Constraint& phi);

/// Δ: precompose with the factor map.
Constraint pullback_along(const PartOrderWitness& w, const Constraint& psi);

/// ∀: q holds iff every p over q satisfies phi.
Constraint forall_along(const PartOrderWitness& w, const Constraint& phi);

/// The witness for "p is a part of the whole system".
PartOrderWitness from_top(const Part& p);

}  // namespace mereology
