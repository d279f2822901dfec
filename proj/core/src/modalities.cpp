#include "mereology/modalities.hpp"

#include "mereology/quantifiers.hpp"

namespace mereology {

InterModality::InterModality(Part source, Part target)
    : source_(std::move(source)),
      target_(std::move(target)),
      matrix_(std::make_shared<const CompatibilityMatrix>(source_, target_)) {}

Constraint InterModality::allows(const Constraint& phi) const {
  require_carrier(phi, source_.codomain_ptr());
  Bitset out(target_.size());
  for (std::size_t a = 0; a < source_.size(); ++a) {
    if (phi[a]) out |= matrix_->row(a);
  }
  return Constraint(target_.codomain_ptr(), std::move(out));
}

Constraint InterModality::ensures(const Constraint& phi) const {
  require_carrier(phi, source_.codomain_ptr());
  Bitset out(target_.size());
  for (std::size_t b = 0; b < target_.size(); ++b) out.set(b, matrix_->col(b).is_subset_of(phi.bits()));
  return Constraint(target_.codomain_ptr(), std::move(out));
}

std::shared_ptr<const CompatibilityMatrix> CompatibilityCache::get(const Part& p, const Part& q) {
  const std::pair<const void*, const void*> key{p.codomain_ptr().get(), q.codomain_ptr().get()};
  std::lock_guard lock(mutex_);
  auto& slot = entries_[key];
  if (!slot) slot = std::make_shared<const CompatibilityMatrix>(p, q);
  return slot;
}

Constraint allows(const Part& p, const Part& q, const Constraint& phi) { return InterModality(p, q).allows(phi); }

Constraint ensures(const Part& p, const Part& q, const Constraint& phi) { return InterModality(p, q).ensures(phi); }

Constraint allows_via_quantifiers(const Part& p, const Part& q, const Constraint& phi) {
  require_same_system(p, q);
  return exists_along(from_top(q), pullback_along(from_top(p), phi));
}

Constraint ensures_via_quantifiers(const Part& p, const Part& q, const Constraint& phi) {
  require_same_system(p, q);
  return forall_along(from_top(q), pullback_along(from_top(p), phi));
}

Constraint roundtrip_allows(const Part& p, const Part& q, const Constraint& phi) {
  return allows(q, p, allows(p, q, phi));
}

Constraint roundtrip_ensures(const Part& p, const Part& q, const Constraint& phi) {
  return ensures(q, p, ensures(p, q, phi));
}

Constraint possibility(const Part& p, const Constraint& phi) { return roundtrip_allows(p, bottom(p.system_ptr()), phi); }

Constraint necessity(const Part& p, const Constraint& phi) { return roundtrip_ensures(p, bottom(p.system_ptr()), phi); }

}  // namespace mereology
