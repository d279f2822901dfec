#include "mereology/constraint.hpp"

#include "mereology/errors.hpp"

namespace mereology {

Constraint::Constraint(BehaviorTypePtr carrier, Bitset bits) : carrier_(std::move(carrier)), bits_(std::move(bits)) {
  if (!carrier_) throw CarrierMismatch("constraint without a carrier");
  if (bits_.size() != carrier_->size()) {
    throw CarrierMismatch("constraint has " + std::to_string(bits_.size()) + " bits for carrier '" + carrier_->id() +
                          "' of size " + std::to_string(carrier_->size()));
  }
}

Constraint Constraint::constant(BehaviorTypePtr carrier, bool value) {
  const std::size_t n = carrier->size();
  return Constraint(std::move(carrier), Bitset(n, value));
}

Constraint Constraint::from_predicate(BehaviorTypePtr carrier, const std::function<bool(std::size_t)>& pred) {
  Bitset bits(carrier->size());
  for (std::size_t i = 0; i < bits.size(); ++i) bits.set(i, pred(i));
  return Constraint(std::move(carrier), std::move(bits));
}

bool Constraint::holds(std::size_t i) const {
  if (i >= bits_.size()) throw IndexOutOfRange("constraint on '" + carrier_->id() + "': index out of range");
  return bits_.test(i);
}

std::vector<std::size_t> Constraint::satisfying() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_.test(i)) out.push_back(i);
  }
  return out;
}

Constraint Constraint::operator&&(const Constraint& o) const {
  require_carrier(o, carrier_);
  return Constraint(carrier_, bits_ & o.bits_);
}

Constraint Constraint::operator||(const Constraint& o) const {
  require_carrier(o, carrier_);
  return Constraint(carrier_, bits_ | o.bits_);
}

void require_carrier(const Constraint& c, const BehaviorTypePtr& carrier) {
  if (c.carrier_ptr() != carrier) {
    throw CarrierMismatch("constraint on '" + c.carrier().id() + "' used where a constraint on '" + carrier->id() +
                          "' is required");
  }
}

bool entails(const Constraint& phi, const Constraint& psi) {
  require_carrier(psi, phi.carrier_ptr());
  return phi.bits().is_subset_of(psi.bits());
}

Constraint point_constraint(const Part& p, std::size_t a) {
  if (a >= p.size()) throw IndexOutOfRange("part '" + p.name() + "': behavior index " + std::to_string(a) + " out of range");
  Bitset bits(p.size());
  bits.set(a);
  return Constraint(p.codomain_ptr(), std::move(bits));
}

}  // namespace mereology
