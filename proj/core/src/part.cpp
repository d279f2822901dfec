#include "mereology/part.hpp"

#include <unordered_map>

#include "mereology/errors.hpp"

namespace mereology {

Part::Part(BehaviorTypePtr system, std::string name, std::vector<Behavior> codomain_labels, std::vector<std::size_t> map) {
  if (!system) throw std::invalid_argument("part without a system");
  if (map.size() != system->size()) {
    throw std::invalid_argument("part '" + name + "': map has " + std::to_string(map.size()) + " entries for a system of " +
                                std::to_string(system->size()));
  }
  const std::size_t n = codomain_labels.size();
  constexpr std::size_t unassigned = static_cast<std::size_t>(-1);
  std::vector<std::size_t> relabel(n, unassigned);
  std::vector<Behavior> ordered;
  ordered.reserve(n);
  for (auto& a : map) {
    if (a >= n) throw IndexOutOfRange("part '" + name + "': map target " + std::to_string(a) + " out of range");
    if (relabel[a] == unassigned) {
      relabel[a] = ordered.size();
      ordered.push_back(codomain_labels[a]);
    }
    a = relabel[a];
  }
  if (ordered.size() != n) {
    for (std::size_t a = 0; a < n; ++a) {
      if (relabel[a] == unassigned) {
        throw NotSurjective("part '" + name + "': behavior " + codomain_labels[a].to_string() + " has no preimage");
      }
    }
  }
  auto impl = std::make_shared<Impl>();
  impl->system = std::move(system);
  impl->codomain = make_behavior_type(std::move(name), std::move(ordered));
  impl->map = std::move(map);
  build_fibers(*impl);
  impl_ = std::move(impl);
}

Part::Part(BehaviorTypePtr system, BehaviorTypePtr codomain, std::vector<std::size_t> map) {
  if (!system || !codomain) throw std::invalid_argument("part without a system or codomain");
  if (map.size() != system->size()) throw std::invalid_argument("part '" + codomain->id() + "': map length mismatch");
  std::size_t next = 0;
  for (auto a : map) {
    if (a >= codomain->size()) throw IndexOutOfRange("part '" + codomain->id() + "': map target out of range");
    if (a > next) throw std::invalid_argument("part '" + codomain->id() + "': map is not in first-occurrence order");
    if (a == next) ++next;
  }
  if (next != codomain->size()) throw NotSurjective("part '" + codomain->id() + "': map is not surjective");
  auto impl = std::make_shared<Impl>();
  impl->system = std::move(system);
  impl->codomain = std::move(codomain);
  impl->map = std::move(map);
  build_fibers(*impl);
  impl_ = std::move(impl);
}

void Part::build_fibers(Impl& impl) {
  impl.fibers.assign(impl.codomain->size(), {});
  for (std::size_t s = 0; s < impl.map.size(); ++s) impl.fibers[impl.map[s]].push_back(s);
}

std::span<const std::size_t> Part::fiber(std::size_t a) const {
  if (a >= size()) throw IndexOutOfRange("part '" + name() + "': behavior index " + std::to_string(a) + " out of range");
  return impl_->fibers[a];
}

std::size_t Part::restrict(std::size_t s) const {
  if (s >= impl_->map.size()) {
    throw IndexOutOfRange("system '" + system().id() + "': behavior index " + std::to_string(s) + " out of range");
  }
  return impl_->map[s];
}

bool Part::same_partition(const Part& other) const { return same_system(other) && impl_->map == other.impl_->map; }

Part Part::renamed(std::string name) const {
  return Part(impl_->system, make_behavior_type(std::move(name), impl_->codomain->labels()), impl_->map);
}

std::size_t restrict(const Part& part, std::size_t s) { return part.restrict(s); }

bool observationally_equivalent(const Part& part, std::size_t s, std::size_t s2) {
  return part.restrict(s) == part.restrict(s2);
}

Part part_from_observation(const BehaviorTypePtr& system, std::string name,
                           const std::function<Behavior(const Behavior&)>& observe) {
  std::vector<Behavior> labels;
  std::unordered_map<Behavior, std::size_t, BehaviorHash> index;
  std::vector<std::size_t> map;
  map.reserve(system->size());
  for (const auto& b : system->labels()) {
    Behavior value = observe(b);
    auto [it, inserted] = index.try_emplace(value, labels.size());
    if (inserted) labels.push_back(std::move(value));
    map.push_back(it->second);
  }
  return Part(system, std::move(name), std::move(labels), std::move(map));
}

Part top(const BehaviorTypePtr& system) {
  std::vector<std::size_t> map(system->size());
  for (std::size_t s = 0; s < map.size(); ++s) map[s] = s;
  return Part(system, system, std::move(map));
}

Part bottom(const BehaviorTypePtr& system) {
  return Part(system, "Bottom", {Behavior::token("*")}, std::vector<std::size_t>(system->size(), 0));
}

void require_same_system(const Part& p, const Part& q) {
  if (!p.same_system(q)) {
    throw SystemMismatch("parts '" + p.name() + "' and '" + q.name() + "' belong to different systems");
  }
}

std::optional<PartOrderWitness> part_leq(const Part& q, const Part& p) {
  require_same_system(p, q);
  std::vector<std::size_t> factor(p.size());
  for (std::size_t a = 0; a < p.size(); ++a) factor[a] = q.restrict(p.fiber(a).front());
  const auto pm = p.map();
  const auto qm = q.map();
  for (std::size_t s = 0; s < pm.size(); ++s) {
    if (factor[pm[s]] != qm[s]) return std::nullopt;
  }
  return PartOrderWitness{p, q, std::move(factor)};
}

}  // namespace mereology
