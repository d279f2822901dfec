#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "mereology/behavior.hpp"
#include "mereology/bitset.hpp"
#include "mereology/part.hpp"

namespace mereology {

/// A two-valued predicate on a behavior type, stored extensionally.
class Constraint {
 public:
  /// Throws CarrierMismatch if bits.size() != carrier->size().
  Constraint(BehaviorTypePtr carrier, Bitset bits);

  static Constraint constant(BehaviorTypePtr carrier, bool value);
  static Constraint from_predicate(BehaviorTypePtr carrier, const std::function<bool(std::size_t)>& pred);

  const BehaviorType& carrier() const { return *carrier_; }
  const BehaviorTypePtr& carrier_ptr() const { return carrier_; }
  const Bitset& bits() const { return bits_; }
  std::size_t size() const { return bits_.size(); }
  bool operator[](std::size_t i) const { return bits_.test(i); }
  bool holds(std::size_t i) const;

  std::vector<std::size_t> satisfying() const;

  Constraint operator!() const { return Constraint(carrier_, ~bits_); }
  /// Both operands must share a carrier.
  Constraint operator&&(const Constraint& o) const;
  Constraint operator||(const Constraint& o) const;

  /// Same carrier and same bits.
  friend bool operator==(const Constraint& a, const Constraint& b) {
    return a.carrier_ == b.carrier_ && a.bits_ == b.bits_;
  }

 private:
  BehaviorTypePtr carrier_;
  Bitset bits_;
};

void require_carrier(const Constraint& c, const BehaviorTypePtr& carrier);

/// phi ⊢ psi: wherever phi holds, psi holds.
bool entails(const Constraint& phi, const Constraint& psi);

/// (= a): holds only at part behavior a.
Constraint point_constraint(const Part& p, std::size_t a);

}  // namespace mereology
