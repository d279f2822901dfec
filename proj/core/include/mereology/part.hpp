#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mereology/behavior.hpp"

namespace mereology {

/// A part of a system: a surjection from the system's behaviors onto the
/// part's behaviors. Two system behaviors are observationally equivalent
/// relative to the part when they land on the same part behavior.
///
/// Codomain indices are canonical: part behavior 0 is the image of system
/// behavior 0, and each new class is numbered in order of first occurrence.
/// Two parts with the same partition of the system therefore have identical
/// maps. Fibers are computed once at construction.
class Part {
 public:
  /// `map[s]` is the index into `codomain_labels` that system behavior s
  /// restricts to. Labels are reordered into first-occurrence order.
  /// Throws NotSurjective, IndexOutOfRange, or std::invalid_argument.
  Part(BehaviorTypePtr system, std::string name, std::vector<Behavior> codomain_labels, std::vector<std::size_t> map);

  /// Uses an existing codomain type as-is; the map must already be canonical
  /// with respect to it.
  Part(BehaviorTypePtr system, BehaviorTypePtr codomain, std::vector<std::size_t> map);

  const BehaviorType& system() const { return *impl_->system; }
  const BehaviorTypePtr& system_ptr() const { return impl_->system; }
  const BehaviorType& codomain() const { return *impl_->codomain; }
  const BehaviorTypePtr& codomain_ptr() const { return impl_->codomain; }
  const std::string& name() const { return impl_->codomain->id(); }

  std::size_t size() const { return impl_->codomain->size(); }
  std::span<const std::size_t> map() const { return impl_->map; }
  std::span<const std::size_t> fiber(std::size_t a) const;
  std::size_t restrict(std::size_t s) const;

  /// Same ambient system and same kernel pair.
  bool same_partition(const Part& other) const;
  bool same_system(const Part& other) const { return impl_->system == other.impl_->system; }

  /// Returns a copy carrying a new codomain id; the partition is unchanged.
  Part renamed(std::string name) const;

 private:
  struct Impl {
    BehaviorTypePtr system;
    BehaviorTypePtr codomain;
    std::vector<std::size_t> map;
    std::vector<std::vector<std::size_t>> fibers;
  };
  void build_fibers(Impl& impl);
  std::shared_ptr<const Impl> impl_;
};

/// Evidence that `to` is a part of `from`: factor ∘ from.map = to.map.
struct PartOrderWitness {
  Part from;
  Part to;
  std::vector<std::size_t> factor;
};

std::size_t restrict(const Part& part, std::size_t s);
bool observationally_equivalent(const Part& part, std::size_t s, std::size_t s2);

/// Codomain labels are the distinct observed values in first-occurrence order.
Part part_from_observation(const BehaviorTypePtr& system, std::string name,
                           const std::function<Behavior(const Behavior&)>& observe);

/// The identity quotient; its codomain is the system type itself.
Part top(const BehaviorTypePtr& system);
/// The one-behavior quotient.
Part bottom(const BehaviorTypePtr& system);

/// A witness exists iff q is a part of p (p's partition refines q's).
/// Throws SystemMismatch.
std::optional<PartOrderWitness> part_leq(const Part& q, const Part& p);

void require_same_system(const Part& p, const Part& q);

}  // namespace mereology
