#pragma once

#include "mereology/part.hpp"

namespace mereology {

/// Largest common part: the disjoint union of both codomains glued along
/// every compatible pair, closed under transitivity. A meet behavior is
/// labelled by the tuple of the p-behaviors in its class.
Part meet(const Part& p, const Part& q);

/// Smallest part containing both: pairs of compatible behaviors.
Part join(const Part& p, const Part& q);

/// Every behavior of p is compatible with every behavior of q.
bool strongly_disjoint(const Part& p, const Part& q);

/// The meet of p and q is the bottom part.
bool disjoint(const Part& p, const Part& q);

}  // namespace mereology
