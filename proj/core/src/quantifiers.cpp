#include "mereology/quantifiers.hpp"

namespace mereology {

Constraint exists_along(const PartOrderWitness& w, const Constraint& phi) {
  require_carrier(phi, w.from.codomain_ptr());
  Bitset out(w.to.size());
  for (std::size_t a = 0; a < w.factor.size(); ++a) {
    if (phi[a]) out.set(w.factor[a]);
  }
  return Constraint(w.to.codomain_ptr(), std::move(out));
}

Constraint pullback_along(const PartOrderWitness& w, const Constraint& psi) {
  require_carrier(psi, w.to.codomain_ptr());
  Bitset out(w.from.size());
  for (std::size_t a = 0; a < w.factor.size(); ++a) out.set(a, psi[w.factor[a]]);
  return Constraint(w.from.codomain_ptr(), std::move(out));
}

Constraint forall_along(const PartOrderWitness& w, const Constraint& phi) {
  require_carrier(phi, w.from.codomain_ptr());
  Bitset out(w.to.size(), true);
  for (std::size_t a = 0; a < w.factor.size(); ++a) {
    if (!phi[a]) out.set(w.factor[a], false);
  }
  return Constraint(w.to.codomain_ptr(), std::move(out));
}

PartOrderWitness from_top(const Part& p) {
  const Part whole = top(p.system_ptr());
  return PartOrderWitness{whole, p, std::vector<std::size_t>(p.map().begin(), p.map().end())};
}

}  // namespace mereology
