#include "mereology/kripke.hpp"

#include "mereology/errors.hpp"
#include "mereology/modalities.hpp"

namespace mereology {

void require_equivalence(const Accessibility& relation) {
  const std::size_t n = relation.size();
  for (std::size_t w = 0; w < n; ++w) {
    if (relation[w].size() != n) throw NotAnEquivalence("accessibility relation is not square");
  }
  for (std::size_t w = 0; w < n; ++w) {
    if (!relation[w][w]) throw NotAnEquivalence("not reflexive at world " + std::to_string(w));
    for (std::size_t v = 0; v < n; ++v) {
      if (relation[w][v] != relation[v][w]) {
        throw NotAnEquivalence("not symmetric at worlds " + std::to_string(w) + ", " + std::to_string(v));
      }
      if (relation[w][v] && !relation[v].is_subset_of(relation[w])) {
        throw NotAnEquivalence("not transitive through worlds " + std::to_string(w) + ", " + std::to_string(v));
      }
    }
  }
}

Part quotient_part(const BehaviorTypePtr& worlds, const Accessibility& relation) {
  if (relation.size() != worlds->size()) throw NotAnEquivalence("relation size does not match the worlds");
  require_equivalence(relation);
  constexpr std::size_t unassigned = static_cast<std::size_t>(-1);
  std::vector<std::size_t> map(worlds->size(), unassigned);
  std::vector<Behavior> labels;
  for (std::size_t w = 0; w < map.size(); ++w) {
    if (map[w] != unassigned) continue;
    Behavior::Tuple members;
    for (std::size_t v = w; v < map.size(); ++v) {
      if (relation[w][v]) {
        map[v] = labels.size();
        members.push_back((*worlds)[v]);
      }
    }
    labels.push_back(Behavior::tuple(std::move(members)));
  }
  return Part(worlds, worlds->id() + "/A", std::move(labels), std::move(map));
}

KripkeModalities kripke_modalities(const BehaviorTypePtr& worlds, const Accessibility& relation, const Constraint& phi) {
  require_carrier(phi, worlds);
  const Part whole = top(worlds);
  const Part classes = quotient_part(worlds, relation);
  return {roundtrip_allows(whole, classes, phi), roundtrip_ensures(whole, classes, phi)};
}

KripkeModalities classical_modalities(const Accessibility& relation, const Constraint& phi) {
  const std::size_t n = relation.size();
  if (phi.size() != n) throw CarrierMismatch("predicate size does not match the frame");
  Bitset diamond(n);
  Bitset box(n);
  for (std::size_t w = 0; w < n; ++w) {
    bool some = false;
    bool every = true;
    for (std::size_t v = 0; v < n; ++v) {
      if (!relation[w][v]) continue;
      some = some || phi[v];
      every = every && phi[v];
    }
    diamond.set(w, some);
    box.set(w, every);
  }
  return {Constraint(phi.carrier_ptr(), std::move(diamond)), Constraint(phi.carrier_ptr(), std::move(box))};
}

}  // namespace mereology
