#include "mereology/laws.hpp"

#include <map>
#include <memory>
#include <random>

#include "mereology/constraint.hpp"
#include "mereology/kripke.hpp"
#include "mereology/lattice.hpp"
#include "mereology/modalities.hpp"
#include "mereology/quantifiers.hpp"
#include "mereology/relations.hpp"

namespace mereology {

namespace {

enum Law : std::size_t {
  kCompatibilitySymmetric,
  kDeterminationUnique,
  kDeterminationEquivalentConditions,
  kDisjointnessStrongImpliesDisjoint,
  kOrderPreorder,
  kOrderWitnessUnique,
  kLatticeMeetJoinUniversal,
  kQuantifiersExistsPullbackAdjoint,
  kQuantifiersPullbackForallAdjoint,
  kQuantifiersIdentity,
  kQuantifiersComposition,
  kSaturationExists,
  kSaturationForall,
  kSaturationUnitCounit,
  kModalitiesQuantifierForm,
  kModalitiesDeMorgan,
  kModalitiesMonotone,
  kModalitiesEnsuresEntailsAllows,
  kModalitiesAdjunction,
  kModalitiesPreserveJoinsMeets,
  kModalitiesPointwiseRecovery,
  kRoundtripAdjunction,
  kRoundtripIdentityIffPart,
  kAlethicPossibilityNecessity,
  kKripkeEquivalenceFrames,
  kLawCount,
};

/// The constraints a law is checked against on one carrier. In exhaustive
/// mode item i has bit pattern i, so unions and intersections are index
/// arithmetic.
struct Family {
  std::vector<Constraint> items;
  bool exhaustive = false;
};

Family make_family(const BehaviorTypePtr& carrier, std::uint64_t seed, const LawSuiteOptions& options) {
  Family f;
  const std::size_t n = carrier->size();
  if (n <= options.exhaustive_limit) {
    f.exhaustive = true;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      f.items.emplace_back(carrier, Bitset::from_mask(n, mask));
    }
    return f;
  }
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < options.samples; ++i) {
    Bitset bits(n);
    for (std::size_t b = 0; b < n; ++b) bits.set(b, (rng() & 1U) != 0);
    f.items.emplace_back(carrier, std::move(bits));
  }
  for (std::size_t b = 0; b < n; ++b) {
    Bitset bits(n);
    bits.set(b);
    f.items.emplace_back(carrier, std::move(bits));
  }
  return f;
}

class Suite {
 public:
  Suite(const SystemModel& model, std::uint64_t seed, const LawSuiteOptions& options)
      : seed_(seed), options_(options), whole_(top(model.system)) {
    for (const auto& np : model.parts) add(np.name, np.part);
    if (!has("Top")) add("Top", whole_);
    if (!has("Bottom")) add("Bottom", bottom(model.system));
    for (const auto& name : law_names()) reports_.push_back(LawReport{name, model.system->id(), true, 0, std::nullopt});
  }

  std::vector<LawReport> run() {
    const std::size_t n = parts_.size();
    for (std::size_t i = 0; i < n; ++i) {
      single_part_laws(i);
      for (std::size_t j = 0; j < n; ++j) pair_laws(i, j);
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) triple_laws(i, j, k);
      }
    }
    return std::move(reports_);
  }

 private:
  struct Entry {
    std::string name;
    Part part;
  };

  bool has(const std::string& name) const {
    for (const auto& e : parts_) {
      if (e.name == name) return true;
    }
    return false;
  }
  void add(std::string name, Part part) { parts_.push_back({std::move(name), std::move(part)}); }

  const Family& family(std::size_t i) {
    auto& slot = families_[i];
    if (!slot) slot = std::make_unique<Family>(make_family(parts_[i].part.codomain_ptr(), seed_ * 1000003ULL + i, options_));
    return *slot;
  }
  const Family& system_family() {
    if (!system_family_) system_family_ = std::make_unique<Family>(make_family(whole_.codomain_ptr(), seed_ * 1000003ULL + 999, options_));
    return *system_family_;
  }
  const InterModality& modality(std::size_t i, std::size_t j) {
    auto& slot = modalities_[{i, j}];
    if (!slot) slot = std::make_unique<InterModality>(parts_[i].part, parts_[j].part);
    return *slot;
  }
  const std::optional<PartOrderWitness>& witness(std::size_t below, std::size_t above) {
    auto it = witnesses_.find({below, above});
    if (it == witnesses_.end()) it = witnesses_.emplace(std::pair{below, above}, part_leq(parts_[below].part, parts_[above].part)).first;
    return it->second;
  }

  /// Records one check; `explain` runs only on the first failure.
  template <class F>
  void check(Law law, bool ok, F&& explain) {
    auto& r = reports_[law];
    ++r.checks;
    if (!ok && r.passed) {
      r.passed = false;
      r.counterexample = explain();
    }
  }

  Counterexample cx(std::vector<std::size_t> part_ids, std::vector<std::size_t> behaviors,
                    std::vector<const Constraint*> constraints, std::string detail) const {
    Counterexample c;
    for (auto id : part_ids) c.parts.push_back(parts_[id].name);
    c.behaviors = std::move(behaviors);
    for (const auto* k : constraints) c.constraints.push_back(k->bits().to_string());
    c.detail = std::move(detail);
    return c;
  }

  void single_part_laws(std::size_t i) {
    const Part& p = parts_[i].part;
    const Family& fam = family(i);

    check(kOrderPreorder, part_leq(p, p).has_value(), [&] { return cx({i}, {}, {}, "part is not below itself"); });

    // Quantifiers along the identity are identities.
    if (const auto& id = witness(i, i)) {
      for (const auto& phi : fam.items) {
        const bool ok = exists_along(*id, phi) == phi && pullback_along(*id, phi) == phi && forall_along(*id, phi) == phi;
        check(kQuantifiersIdentity, ok, [&] { return cx({i}, {}, {&phi}, "quantifier along identity changed phi"); });
      }
    }

    // Saturation along the restriction to p, for constraints on the system.
    const PartOrderWitness to_p = from_top(p);
    const std::size_t ns = whole_.size();
    for (const auto& phi : system_family().items) {
      const Constraint sat_exists = pullback_along(to_p, exists_along(to_p, phi));
      const Constraint sat_forall = pullback_along(to_p, forall_along(to_p, phi));
      for (std::size_t s = 0; s < ns; ++s) {
        bool some = false;
        bool every = true;
        for (std::size_t s2 = 0; s2 < ns; ++s2) {
          if (!observationally_equivalent(p, s, s2)) continue;
          some = some || phi[s2];
          every = every && phi[s2];
        }
        check(kSaturationExists, sat_exists[s] == some,
              [&] { return cx({i}, {s}, {&phi}, "pullback of exists differs from the observational closure"); });
        check(kSaturationForall, sat_forall[s] == every,
              [&] { return cx({i}, {s}, {&phi}, "pullback of forall differs from the observational interior"); });
      }
      check(kSaturationUnitCounit, entails(phi, sat_exists) && entails(sat_forall, phi),
            [&] { return cx({i}, {}, {&phi}, "phi does not sit between its interior and closure"); });
    }

    // Possibility and necessity through the bottom part.
    for (const auto& phi : fam.items) {
      const bool ok = possibility(p, phi) == Constraint::constant(p.codomain_ptr(), phi.bits().any()) &&
                      necessity(p, phi) == Constraint::constant(p.codomain_ptr(), phi.bits().all());
      check(kAlethicPossibilityNecessity, ok, [&] { return cx({i}, {}, {&phi}, "round trip through bottom"); });
    }

    // The observational equivalence of p as a Kripke frame on the system.
    Accessibility frame(ns, Bitset(ns));
    for (std::size_t s = 0; s < ns; ++s) {
      for (std::size_t s2 : p.fiber(p.restrict(s))) frame[s].set(s2);
    }
    for (const auto& phi : system_family().items) {
      const auto via_parts = kripke_modalities(whole_.system_ptr(), frame, phi);
      const auto direct = classical_modalities(frame, phi);
      check(kKripkeEquivalenceFrames, via_parts.diamond == direct.diamond && via_parts.box == direct.box,
            [&] { return cx({i}, {}, {&phi}, "composite modalities differ from Kripke semantics"); });
    }
  }

  void pair_laws(std::size_t i, std::size_t j) {
    const Part& p = parts_[i].part;
    const Part& q = parts_[j].part;
    const Family& fp = family(i);
    const Family& fq = family(j);
    const InterModality& pq = modality(i, j);
    const InterModality& qp = modality(j, i);

    // Relations.
    for (std::size_t a = 0; a < p.size(); ++a) {
      std::size_t determined = 0;
      for (std::size_t b = 0; b < q.size(); ++b) {
        const bool c = compatible(p, a, q, b);
        check(kCompatibilitySymmetric, c == compatible(q, b, p, a),
              [&] { return cx({i, j}, {a, b}, {}, "c(a,b) != c(b,a)"); });
        const bool d = determines(p, a, q, b);
        if (d) ++determined;

        const Constraint at_a = point_constraint(p, a);
        const Constraint at_b = point_constraint(q, b);
        const bool ok = pq.allows(at_a)[b] == c && qp.allows(at_b)[a] == c && qp.ensures(at_b)[a] == d;
        check(kModalitiesPointwiseRecovery, ok,
              [&] { return cx({i, j}, {a, b}, {}, "point constraints do not recover c and d"); });
      }
      check(kDeterminationUnique, determined <= 1,
            [&] { return cx({i, j}, {a}, {}, std::to_string(determined) + " behaviors determined"); });
    }
    check(kDeterminationEquivalentConditions, determination_conditions(p, q).agree(),
          [&] { return cx({i, j}, {}, {}, "the four characterizations of q <= p disagree"); });
    check(kDisjointnessStrongImpliesDisjoint, !strongly_disjoint(p, q) || disjoint(p, q),
          [&] { return cx({i, j}, {}, {}, "strongly disjoint but the meet is not bottom"); });

    // Order and lattice.
    if (const auto& w = witness(j, i)) {
      std::vector<std::size_t> again(p.size());
      for (std::size_t a = 0; a < p.size(); ++a) again[a] = q.restrict(p.fiber(a).back());
      check(kOrderWitnessUnique, again == w->factor,
            [&] { return cx({i, j}, {}, {}, "factor map depends on the representative"); });
    }
    const Part m = meet(p, q);
    const Part jn = join(p, q);
    bool bounds = part_leq(m, p) && part_leq(m, q) && part_leq(p, jn) && part_leq(q, jn);
    for (std::size_t k = 0; k < parts_.size() && bounds; ++k) {
      const Part& r = parts_[k].part;
      if (witness(k, i) && witness(k, j) && !part_leq(r, m)) bounds = false;
      if (witness(i, k) && witness(j, k) && !part_leq(jn, r)) bounds = false;
    }
    check(kLatticeMeetJoinUniversal, bounds, [&] { return cx({i, j}, {}, {}, "meet or join is not universal"); });

    // Inter-modalities.
    std::vector<Constraint> allowed;
    std::vector<Constraint> ensured;
    allowed.reserve(fp.items.size());
    ensured.reserve(fp.items.size());
    for (const auto& phi : fp.items) {
      allowed.push_back(pq.allows(phi));
      ensured.push_back(pq.ensures(phi));
    }
    std::vector<Constraint> ensured_back;  // □ from q to p of each psi on q
    ensured_back.reserve(fq.items.size());
    for (const auto& psi : fq.items) ensured_back.push_back(qp.ensures(psi));

    for (std::size_t x = 0; x < fp.items.size(); ++x) {
      const Constraint& phi = fp.items[x];
      check(kModalitiesQuantifierForm,
            allowed[x] == allows_via_quantifiers(p, q, phi) && ensured[x] == ensures_via_quantifiers(p, q, phi),
            [&] { return cx({i, j}, {}, {&phi}, "matrix form differs from quantifier form"); });
      check(kModalitiesDeMorgan, (!pq.allows(!phi)) == ensured[x],
            [&] { return cx({i, j}, {}, {&phi}, "not allows not phi != ensures phi"); });
      check(kModalitiesEnsuresEntailsAllows, entails(ensured[x], allowed[x]),
            [&] { return cx({i, j}, {}, {&phi}, "ensures phi does not entail allows phi"); });
      for (std::size_t y = 0; y < fq.items.size(); ++y) {
        const Constraint& psi = fq.items[y];
        check(kModalitiesAdjunction, entails(allowed[x], psi) == entails(phi, ensured_back[y]),
              [&] { return cx({i, j}, {}, {&phi, &psi}, "allows from p to q is not left adjoint to ensures from q to p"); });
      }
      for (std::size_t y = 0; y < fp.items.size(); ++y) {
        const Constraint& phi2 = fp.items[y];
        if (entails(phi, phi2)) {
          check(kModalitiesMonotone, entails(allowed[x], allowed[y]) && entails(ensured[x], ensured[y]),
                [&] { return cx({i, j}, {}, {&phi, &phi2}, "not monotone"); });
        }
        const bool ok = fp.exhaustive ? allowed[x | y].bits().is_union_of(allowed[x].bits(), allowed[y].bits()) &&
                                            ensured[x & y].bits().is_intersection_of(ensured[x].bits(), ensured[y].bits())
                                      : pq.allows(phi || phi2).bits().is_union_of(allowed[x].bits(), allowed[y].bits()) &&
                                            pq.ensures(phi && phi2).bits().is_intersection_of(ensured[x].bits(), ensured[y].bits());
        check(kModalitiesPreserveJoinsMeets, ok,
              [&] { return cx({i, j}, {}, {&phi, &phi2}, "allows does not preserve or / ensures does not preserve and"); });
      }
    }
    check(kModalitiesPreserveJoinsMeets,
          pq.allows(Constraint::constant(p.codomain_ptr(), false)).bits().none() &&
              pq.ensures(Constraint::constant(p.codomain_ptr(), true)).bits().all(),
          [&] { return cx({i, j}, {}, {}, "empty join or meet not preserved"); });

    // Round trips through q.
    std::vector<Constraint> there_and_back_allows;
    std::vector<Constraint> there_and_back_ensures;
    bool identity = true;
    for (std::size_t x = 0; x < fp.items.size(); ++x) {
      there_and_back_allows.push_back(qp.allows(allowed[x]));
      there_and_back_ensures.push_back(qp.ensures(ensured[x]));
      identity = identity && there_and_back_allows[x] == fp.items[x] && there_and_back_ensures[x] == fp.items[x];
    }
    for (std::size_t x = 0; x < fp.items.size(); ++x) {
      for (std::size_t y = 0; y < fp.items.size(); ++y) {
        const bool ok = entails(there_and_back_allows[x], fp.items[y]) == entails(fp.items[x], there_and_back_ensures[y]);
        check(kRoundtripAdjunction, ok, [&] {
          return cx({i, j}, {}, {&fp.items[x], &fp.items[y]}, "round-trip allows is not left adjoint to round-trip ensures");
        });
      }
    }
    const bool below = witness(i, j).has_value();
    check(kRoundtripIdentityIffPart, identity == below, [&] {
      return cx({i, j}, {}, {}, std::string("round trips ") + (identity ? "are" : "are not") + " identities but p " +
                                    (below ? "is" : "is not") + " a part of q");
    });
  }

  void triple_laws(std::size_t i, std::size_t j, std::size_t k) {
    // Chain r <= q <= p with p = i, q = j, r = k.
    const auto& pq = witness(j, i);
    const auto& qr = witness(k, j);
    if (!pq || !qr) return;
    const auto& pr = witness(k, i);
    check(kOrderPreorder, pr.has_value(), [&] { return cx({i, j, k}, {}, {}, "part order is not transitive"); });
    if (!pr) return;
    for (const auto& phi : family(i).items) {
      check(kQuantifiersComposition,
            exists_along(*qr, exists_along(*pq, phi)) == exists_along(*pr, phi) &&
                forall_along(*qr, forall_along(*pq, phi)) == forall_along(*pr, phi),
            [&] { return cx({i, j, k}, {}, {&phi}, "quantifiers do not compose along the chain"); });
    }
    for (const auto& xi : family(k).items) {
      check(kQuantifiersComposition, pullback_along(*pq, pullback_along(*qr, xi)) == pullback_along(*pr, xi),
            [&] { return cx({i, j, k}, {}, {&xi}, "pullbacks do not compose along the chain"); });
    }
    if (i == j) return;
    // Adjoint triple along p -> q (only once per comparable pair).
    if (k != j) return;
    for (const auto& phi : family(i).items) {
      const Constraint ex = exists_along(*pq, phi);
      for (const auto& psi : family(j).items) {
        check(kQuantifiersExistsPullbackAdjoint, entails(ex, psi) == entails(phi, pullback_along(*pq, psi)),
              [&] { return cx({i, j}, {}, {&phi, &psi}, "exists is not left adjoint to pullback"); });
      }
    }
    for (const auto& psi : family(j).items) {
      const Constraint back = pullback_along(*pq, psi);
      for (const auto& xi : family(i).items) {
        check(kQuantifiersPullbackForallAdjoint, entails(back, xi) == entails(psi, forall_along(*pq, xi)),
              [&] { return cx({i, j}, {}, {&psi, &xi}, "pullback is not left adjoint to forall"); });
      }
    }
  }

  std::uint64_t seed_;
  LawSuiteOptions options_;
  Part whole_;
  std::vector<Entry> parts_;
  std::map<std::size_t, std::unique_ptr<Family>> families_;
  std::unique_ptr<Family> system_family_;
  std::map<std::pair<std::size_t, std::size_t>, std::unique_ptr<InterModality>> modalities_;
  std::map<std::pair<std::size_t, std::size_t>, std::optional<PartOrderWitness>> witnesses_;
  std::vector<LawReport> reports_;  ///< indexed by Law
};

}  // namespace

const std::vector<std::string>& law_names() {
  static const std::vector<std::string> names{
      "compatibility.symmetric",
      "determination.unique",
      "determination.equivalent_conditions",
      "disjointness.strong_implies_disjoint",
      "order.preorder",
      "order.witness_unique",
      "lattice.meet_join_universal",
      "quantifiers.exists_pullback_adjoint",
      "quantifiers.pullback_forall_adjoint",
      "quantifiers.identity",
      "quantifiers.composition",
      "saturation.exists",
      "saturation.forall",
      "saturation.unit_counit",
      "modalities.quantifier_form",
      "modalities.de_morgan",
      "modalities.monotone",
      "modalities.ensures_entails_allows",
      "modalities.adjunction",
      "modalities.preserve_joins_meets",
      "modalities.pointwise_recovery",
      "roundtrip.adjunction",
      "roundtrip.identity_iff_part",
      "alethic.possibility_necessity",
      "kripke.equivalence_frames",
  };
  return names;
}

std::vector<LawReport> law_suite(const SystemModel& model, std::uint64_t seed, const LawSuiteOptions& options) {
  return Suite(model, seed, options).run();
}

}  // namespace mereology
