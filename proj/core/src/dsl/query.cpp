#include "mereology/dsl/query.hpp"

#include "mereology/dsl/parser.hpp"
#include "mereology/lattice.hpp"
#include "mereology/modalities.hpp"
#include "mereology/relations.hpp"

namespace mereology::dsl {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string label(const Part& p, std::size_t a) { return p.codomain()[a].to_string(); }

}  // namespace

bool QueryResult::failed() const {
  if (kind == "laws") {
    for (const auto& r : laws) {
      if (!r.passed) return true;
    }
    return false;
  }
  const bool* truth = std::get_if<bool>(&value);
  return is_assert && truth && !*truth;
}

PartSummary summarize(const Part& part, const std::string& name, const std::vector<NamedPart>& declared) {
  PartSummary out;
  out.name = name;
  out.size = part.size();
  const auto& system = part.system();
  for (std::size_t a = 0; a < part.size() && a < kMaxListed; ++a) {
    Block b;
    const auto fiber = part.fiber(a);
    b.size = fiber.size();
    for (std::size_t i = 0; i < fiber.size() && i < kMaxListed; ++i) b.labels.push_back(system[fiber[i]].to_string());
    out.blocks.push_back(std::move(b));
  }
  for (const auto& np : declared) {
    if (np.part.same_partition(part)) out.equivalent_to.push_back(np.name);
  }
  return out;
}

QueryResult eval_query(const Program& program, const ElaboratedQuery& query) {
  QueryResult out;
  out.query = print(query.ast);
  out.kind = query.ast.kind_name();
  out.is_assert = query.ast.is_assert;
  out.notes = query.notes;
  const std::string& system_name = program.system_name();
  const auto& system = *program.model().system;

  std::visit(
      overloaded{
          [&](const ResolvedModal& m) {
            const Constraint r = m.ensures ? ensures(m.from, m.to, m.phi) : allows(m.from, m.to, m.phi);
            ConstraintValue v{m.to_name, m.to.size(), {}};
            for (std::size_t b : r.satisfying()) v.satisfying.push_back(label(m.to, b));
            out.value = std::move(v);
          },
          [&](const ResolvedBehaviorPair& q) {
            if (!q.determines) {
              const bool truth = compatible(q.lhs, q.a, q.rhs, q.b);
              out.value = truth;
              if (truth) {
                for (std::size_t s : q.lhs.fiber(q.a)) {
                  if (q.rhs.restrict(s) == q.b) {
                    out.witnesses.push_back({"witness", system_name, system[s].to_string()});
                    break;
                  }
                }
              }
              return;
            }
            const bool truth = determines(q.lhs, q.a, q.rhs, q.b);
            out.value = truth;
            if (!truth) {
              for (std::size_t s : q.lhs.fiber(q.a)) {
                if (q.rhs.restrict(s) != q.b) {
                  out.witnesses.push_back({"counterexample", system_name, system[s].to_string()});
                  out.witnesses.push_back({"counterexample", q.rhs_name, label(q.rhs, q.rhs.restrict(s))});
                  break;
                }
              }
            }
          },
          [&](const ResolvedEntails& e) {
            const bool truth = entails(e.lhs, e.rhs);
            out.value = truth;
            if (!truth) {
              for (std::size_t a : e.lhs.satisfying()) {
                if (!e.rhs[a]) {
                  out.witnesses.push_back({"counterexample", e.carrier_name, e.lhs.carrier()[a].to_string()});
                  break;
                }
              }
            }
          },
          [&](const ResolvedPartPair& q) {
            const auto declared = program.all_parts();
            if (q.op == ResolvedPartPair::Op::Meet) {
              out.value = summarize(meet(q.lhs, q.rhs), "meet(" + q.lhs_name + ", " + q.rhs_name + ")", declared);
              return;
            }
            if (q.op == ResolvedPartPair::Op::Join) {
              out.value = summarize(join(q.lhs, q.rhs), "join(" + q.lhs_name + ", " + q.rhs_name + ")", declared);
              return;
            }
            // leq(P, Q): P is a part of Q.
            const auto w = part_leq(q.lhs, q.rhs);
            out.value = w.has_value();
            if (w) {
              for (std::size_t a = 0; a < w->factor.size() && a < kMaxListed; ++a) {
                out.witnesses.push_back({"factor", q.rhs_name + " -> " + q.lhs_name,
                                         label(q.rhs, a) + " -> " + label(q.lhs, w->factor[a])});
              }
              if (w->factor.size() > kMaxListed) {
                out.notes.push_back("factor map: " + std::to_string(kMaxListed) + " of " +
                                    std::to_string(w->factor.size()) + " entries shown");
              }
              return;
            }
            for (std::size_t b = 0; b < q.rhs.size(); ++b) {
              const auto fiber = q.rhs.fiber(b);
              for (std::size_t s : fiber) {
                if (q.lhs.restrict(s) != q.lhs.restrict(fiber[0])) {
                  out.witnesses.push_back({"counterexample", system_name, system[fiber[0]].to_string()});
                  out.witnesses.push_back({"counterexample", system_name, system[s].to_string()});
                  return;
                }
              }
            }
          },
          [&](const ResolvedLaws&) {
            out.laws = law_suite(program.model(), 0);
            bool passed = true;
            for (const auto& r : out.laws) {
              if (r.passed) continue;
              passed = false;
              out.witnesses.push_back({"counterexample", r.law, r.counterexample ? r.counterexample->detail : ""});
            }
            out.value = passed;
          },
      },
      query.op);
  return out;
}

}  // namespace mereology::dsl
