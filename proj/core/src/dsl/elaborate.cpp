#include "mereology/dsl/elaborate.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "mereology/dsl/parser.hpp"
#include "mereology/lattice.hpp"
#include "mereology/modalities.hpp"
#include "mereology/models.hpp"

namespace mereology::dsl {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void error(const SourceSpan& span, std::string message) {
  throw DslError(Diagnostic{Diagnostic::Phase::Elaborate, span, std::move(message), {}});
}

constexpr std::int64_t kMaxQuantifierRange = 100000;

using Value = std::variant<Rational, bool>;
enum class Type { Num, Bool };

std::string type_name(Type t) { return t == Type::Num ? "a number" : "a boolean"; }

struct Frame {
  const Behavior* behavior = nullptr;
  std::size_t index = 0;  ///< system behavior index, system context only
  std::vector<std::int64_t> slots;
};

using Fn = std::function<Value(Frame&)>;

struct Compiled {
  Type type;
  Fn fn;
};

/// Where an expression is evaluated, and hence which names it can see.
enum class Context {
  Params,  ///< parameters only
  Record,  ///< one grid point or simulation state
  System,  ///< one behavior of the declared system
};

std::int64_t integer_value(const Rational& v, const SourceSpan& span, const std::string& what) {
  if (!v.is_integer()) error(span, what + " must be an integer, found " + v.to_string());
  try {
    return v.to_int64();
  } catch (const std::exception&) {
    error(span, what + " " + v.to_string() + " is too large");
  }
}

/// The constraint on `part` that a per-system-behavior truth vector
/// describes, or an error if the vector cuts across the part's fibers.
Constraint on_part(const std::vector<bool>& values, const Part& part, const std::string& part_name,
                   const SourceSpan& span, const std::string& what) {
  for (std::size_t a = 0; a < part.size(); ++a) {
    const auto fiber = part.fiber(a);
    for (std::size_t s : fiber) {
      if (values[s] != values[fiber[0]]) {
        const auto& sys = part.system();
        error(span, what + " is not determined by part '" + part_name + "': system behaviors " +
                        sys[fiber[0]].to_string() + " and " + sys[s].to_string() + " look the same to '" + part_name +
                        "' but disagree");
      }
    }
  }
  return Constraint::from_predicate(part.codomain_ptr(), [&](std::size_t a) { return values[part.fiber(a)[0]]; });
}

class Compiler {
 public:
  Compiler(Context context, const std::vector<std::pair<std::string, Rational>>& params, const Program* program = nullptr,
           std::vector<std::string> fields = {})
      : context_(context), params_(params), program_(program), fields_(std::move(fields)) {
    if (program_ && context_ == Context::System) fields_ = program_->variables();
  }

  Compiled compile(const ExprPtr& e) {
    return std::visit(overloaded{
                          [&](const NumberLit& n) {
                            Value v = n.value;
                            return Compiled{Type::Num, [v](Frame&) { return v; }};
                          },
                          [&](const BoolLit& b) {
                            Value v = b.value;
                            return Compiled{Type::Bool, [v](Frame&) { return v; }};
                          },
                          [&](const VarRef& v) { return variable(v, e->span); },
                          [&](const Unary& u) { return unary(u); },
                          [&](const Binary& b) { return binary(b); },
                          [&](const AbsCall& a) {
                            Fn arg = expect(a.arg, Type::Num).fn;
                            return Compiled{Type::Num, [arg](Frame& f) { return Value(std::get<Rational>(arg(f)).abs()); }};
                          },
                          [&](const Quantified& q) { return quantified(q); },
                          [&](const Modal& m) { return modal(m, e->span); },
                      },
                      e->node);
  }

  Compiled expect(const ExprPtr& e, Type want) {
    Compiled c = compile(e);
    if (c.type != want) error(e->span, "expected " + type_name(want) + " here, found " + type_name(c.type));
    return c;
  }

  /// Evaluates a boolean expression at every system behavior.
  std::vector<bool> over_system(const ExprPtr& e) {
    Fn fn = expect(e, Type::Bool).fn;
    const auto& labels = program_->model().system->labels();
    std::vector<bool> out(labels.size());
    Frame f;
    for (std::size_t s = 0; s < labels.size(); ++s) {
      f.behavior = &labels[s];
      f.index = s;
      out[s] = std::get<bool>(fn(f));
    }
    return out;
  }

  Value constant(const ExprPtr& e, Type want) {
    Frame f;
    return expect(e, want).fn(f);
  }

  const std::vector<std::string>& notes() const { return notes_; }

 private:
  void note(const std::string& text) {
    if (std::find(notes_.begin(), notes_.end(), text) == notes_.end()) notes_.push_back(text);
  }

  bool is_field(const std::string& name) const {
    return std::find(fields_.begin(), fields_.end(), name) != fields_.end();
  }

  Compiled variable(const VarRef& v, const SourceSpan& span) {
    const std::string& name = v.name;
    for (std::size_t i = quantified_.size(); i-- > 0;) {
      if (quantified_[i] != name) continue;
      if (v.index) error(span, "'" + name + "' is a quantified index and takes no time index");
      return Compiled{Type::Num, [i](Frame& f) { return Value(Rational(f.slots[i])); }};
    }
    for (const auto& [pname, value] : params_) {
      if (pname != name) continue;
      if (v.index) error(span, "parameter '" + name + "' takes no time index");
      Value val = value;
      return Compiled{Type::Num, [val](Frame&) { return val; }};
    }
    const bool trajectories = context_ == Context::System && program_->shape() == BehaviorShape::Trajectories;
    if (context_ != Context::Params && is_field(name)) {
      if (!trajectories) {
        if (v.index) error(span, "variable '" + name + "' takes no time index");
        return Compiled{Type::Num, [name](Frame& f) { return Value(*f.behavior->lookup(name)); }};
      }
      if (!v.index) error(span, "variable '" + name + "' needs a time index, as in " + name + "[0]");
      Fn index = expect(v.index, Type::Num).fn;
      const std::size_t horizon = program_->horizon();
      const SourceSpan index_span = v.index->span;
      return Compiled{Type::Num, [name, index, horizon, index_span](Frame& f) {
                        const std::int64_t t = integer_value(std::get<Rational>(index(f)), index_span, "a time index");
                        if (t < 0 || static_cast<std::size_t>(t) > horizon) {
                          error(index_span,
                                "time index " + std::to_string(t) + " is outside 0.." + std::to_string(horizon));
                        }
                        return Value(*f.behavior->lookup(name, static_cast<std::size_t>(t)));
                      }};
    }
    if (context_ == Context::System) {
      for (const auto& c : program_->constraints()) {
        if (c.name != name) continue;
        if (v.index) error(span, "constraint '" + name + "' takes no time index");
        for (const auto& n : c.notes) note(n);
        const Part part = *program_->find_part(c.part);
        const Constraint value = c.value;
        return Compiled{Type::Bool, [part, value](Frame& f) { return Value(value[part.restrict(f.index)]); }};
      }
      if (program_->find_part(name)) error(span, "'" + name + "' is a part, not a value");
    }
    error(span, "unknown name '" + name + "'");
  }

  Compiled unary(const Unary& u) {
    if (u.op == UnaryOp::Not) {
      Fn x = expect(u.operand, Type::Bool).fn;
      return Compiled{Type::Bool, [x](Frame& f) { return Value(!std::get<bool>(x(f))); }};
    }
    Fn x = expect(u.operand, Type::Num).fn;
    return Compiled{Type::Num, [x](Frame& f) { return Value(-std::get<Rational>(x(f))); }};
  }

  Compiled binary(const Binary& b) {
    switch (b.op) {
      case BinaryOp::And:
      case BinaryOp::Or:
      case BinaryOp::Implies: {
        Fn l = expect(b.lhs, Type::Bool).fn;
        Fn r = expect(b.rhs, Type::Bool).fn;
        const BinaryOp op = b.op;
        return Compiled{Type::Bool, [l, r, op](Frame& f) {
                          const bool x = std::get<bool>(l(f));
                          if (op == BinaryOp::And) return Value(x && std::get<bool>(r(f)));
                          if (op == BinaryOp::Or) return Value(x || std::get<bool>(r(f)));
                          return Value(!x || std::get<bool>(r(f)));
                        }};
      }
      case BinaryOp::Eq:
      case BinaryOp::Ne: {
        Compiled l = compile(b.lhs);
        Compiled r = compile(b.rhs);
        if (l.type != r.type) {
          error(b.rhs->span, "cannot compare " + type_name(l.type) + " with " + type_name(r.type));
        }
        const bool eq = b.op == BinaryOp::Eq;
        return Compiled{Type::Bool, [l = l.fn, r = r.fn, eq](Frame& f) { return Value((l(f) == r(f)) == eq); }};
      }
      case BinaryOp::Lt:
      case BinaryOp::Le:
      case BinaryOp::Gt:
      case BinaryOp::Ge: {
        Fn l = expect(b.lhs, Type::Num).fn;
        Fn r = expect(b.rhs, Type::Num).fn;
        const BinaryOp op = b.op;
        return Compiled{Type::Bool, [l, r, op](Frame& f) {
                          const auto x = std::get<Rational>(l(f));
                          const auto y = std::get<Rational>(r(f));
                          switch (op) {
                            case BinaryOp::Lt:
                              return Value(x < y);
                            case BinaryOp::Le:
                              return Value(x <= y);
                            case BinaryOp::Gt:
                              return Value(x > y);
                            default:
                              return Value(x >= y);
                          }
                        }};
      }
      default:
        break;
    }
    Fn l = expect(b.lhs, Type::Num).fn;
    Fn r = expect(b.rhs, Type::Num).fn;
    const BinaryOp op = b.op;
    const SourceSpan rhs_span = b.rhs->span;
    return Compiled{Type::Num, [l, r, op, rhs_span](Frame& f) {
                      const auto x = std::get<Rational>(l(f));
                      const auto y = std::get<Rational>(r(f));
                      switch (op) {
                        case BinaryOp::Add:
                          return Value(x + y);
                        case BinaryOp::Sub:
                          return Value(x - y);
                        case BinaryOp::Mul:
                          return Value(x * y);
                        default:
                          if (y.is_zero()) error(rhs_span, "division by zero");
                          return Value(x / y);
                      }
                    }};
  }

  Compiled quantified(const Quantified& q) {
    Fn lo = expect(q.lo, Type::Num).fn;
    Fn hi = expect(q.hi, Type::Num).fn;
    const SourceSpan lo_span = q.lo->span;
    const SourceSpan hi_span = q.hi->span;
    std::string text = "'" + q.var.name + "' ranges over " + print(*q.lo) + ".." + print(*q.hi) + " only";
    if (context_ == Context::System && program_->shape() == BehaviorShape::Trajectories) {
      text += "; the model stops at time " + std::to_string(program_->horizon()) + ", so later times are not checked";
    }
    note(text);
    quantified_.push_back(q.var.name);
    const std::size_t slot = quantified_.size() - 1;
    Fn body = expect(q.body, Type::Bool).fn;
    quantified_.pop_back();
    const bool universal = q.universal;
    return Compiled{Type::Bool, [=](Frame& f) {
                      const std::int64_t a = integer_value(std::get<Rational>(lo(f)), lo_span, "a quantifier bound");
                      const std::int64_t b = integer_value(std::get<Rational>(hi(f)), hi_span, "a quantifier bound");
                      if (b - a > kMaxQuantifierRange) error(hi_span, "quantifier range is too large");
                      if (f.slots.size() <= slot) f.slots.resize(slot + 1);
                      for (std::int64_t t = a; t <= b; ++t) {
                        f.slots[slot] = t;
                        if (std::get<bool>(body(f)) != universal) return Value(!universal);
                      }
                      return Value(universal);
                    }};
  }

  Compiled modal(const Modal& m, const SourceSpan& span) {
    if (context_ != Context::System) error(span, "allows and ensures need the system's parts and cannot appear here");
    const Part* from = program_->find_part(m.from.name);
    if (!from) error(m.from.span, "unknown part '" + m.from.name + "'");
    const Part* to = program_->find_part(m.to.name);
    if (!to) error(m.to.span, "unknown part '" + m.to.name + "'");
    Fn body = expect(m.body, Type::Bool).fn;
    const std::size_t depth = quantified_.size();
    auto modality = std::make_shared<const InterModality>(*from, *to);
    auto cache = std::make_shared<std::map<std::vector<std::int64_t>, Constraint>>();
    const BehaviorTypePtr system = program_->model().system;
    const std::string from_name = m.from.name;
    const bool is_ensures = m.ensures;
    const SourceSpan body_span = m.body->span;
    return Compiled{Type::Bool, [=](Frame& f) {
                      std::vector<std::int64_t> key(f.slots.begin(),
                                                    f.slots.begin() + static_cast<std::ptrdiff_t>(std::min(depth, f.slots.size())));
                      auto it = cache->find(key);
                      if (it == cache->end()) {
                        Frame inner;
                        inner.slots = key;
                        std::vector<bool> values(system->size());
                        for (std::size_t s = 0; s < system->size(); ++s) {
                          inner.behavior = &(*system)[s];
                          inner.index = s;
                          values[s] = std::get<bool>(body(inner));
                        }
                        const Constraint phi =
                            on_part(values, modality->source(), from_name, body_span, "the argument of this modality");
                        it = cache->emplace(key, is_ensures ? modality->ensures(phi) : modality->allows(phi)).first;
                      }
                      return Value(it->second[modality->target().restrict(f.index)]);
                    }};
  }

  Context context_;
  const std::vector<std::pair<std::string, Rational>>& params_;
  const Program* program_;
  std::vector<std::string> fields_;
  std::vector<std::string> quantified_;
  std::vector<std::string> notes_;
};

// Behavior references ---------------------------------------------------------

std::string describe_fields(const BehaviorRef& ref) {
  std::string s = "{";
  for (std::size_t i = 0; i < ref.fields.size(); ++i) {
    s += (i ? ", " : "") + ref.fields[i].first.name + " = " + print(*ref.fields[i].second);
  }
  return s + "}";
}

std::size_t resolve_behavior(const Program& program, const BehaviorRef& ref, const Part& part) {
  if (ref.index) {
    if (*ref.index >= part.size()) {
      error(ref.span, "part '" + ref.part.name + "' has " + std::to_string(part.size()) + " behaviors; index " +
                          std::to_string(*ref.index) + " is out of range");
    }
    return *ref.index;
  }
  std::vector<std::pair<std::string, std::optional<std::size_t>>> keys;
  std::vector<Rational> wanted;
  for (const auto& [key, value] : ref.fields) {
    Compiler c(Context::Params, program.model().params);
    wanted.push_back(std::get<Rational>(c.constant(value, Type::Num)));
    const auto open = key.name.find('[');
    if (open == std::string::npos) {
      keys.emplace_back(key.name, std::nullopt);
    } else {
      keys.emplace_back(key.name.substr(0, open),
                        static_cast<std::size_t>(std::stoull(key.name.substr(open + 1, key.name.size() - open - 2))));
    }
  }
  std::vector<std::size_t> matches;
  for (std::size_t a = 0; a < part.size(); ++a) {
    const Behavior& label = part.codomain()[a];
    bool ok = true;
    for (std::size_t i = 0; i < keys.size() && ok; ++i) {
      const auto v = label.lookup(keys[i].first, keys[i].second);
      ok = v && *v == wanted[i];
    }
    if (ok) matches.push_back(a);
  }
  if (matches.empty()) error(ref.span, "no behavior of part '" + ref.part.name + "' matches " + describe_fields(ref));
  if (matches.size() > 1) {
    error(ref.span, std::to_string(matches.size()) + " behaviors of part '" + ref.part.name + "' match " +
                        describe_fields(ref) + "; give more fields");
  }
  return matches.front();
}

const Part& resolve_part(const Program& program, const Ident& name) {
  const Part* p = program.find_part(name.name);
  if (!p) error(name.span, "unknown part '" + name.name + "'");
  return *p;
}

/// The part a constraint expression evidently lives on, if any.
std::optional<Ident> natural_carrier(const Program& program, const Expr& e) {
  return std::visit(overloaded{
                        [&](const VarRef& v) -> std::optional<Ident> {
                          if (v.index) return std::nullopt;
                          for (const auto& c : program.constraints()) {
                            if (c.name == v.name) return Ident{c.part, e.span};
                          }
                          return std::nullopt;
                        },
                        [&](const Modal& m) -> std::optional<Ident> { return m.to; },
                        [&](const Unary& u) -> std::optional<Ident> {
                          if (u.op != UnaryOp::Not) return std::nullopt;
                          return natural_carrier(program, *u.operand);
                        },
                        [&](const Binary& b) -> std::optional<Ident> {
                          if (b.op != BinaryOp::And && b.op != BinaryOp::Or && b.op != BinaryOp::Implies) return std::nullopt;
                          if (auto l = natural_carrier(program, *b.lhs)) return l;
                          return natural_carrier(program, *b.rhs);
                        },
                        [](const auto&) -> std::optional<Ident> { return std::nullopt; },
                    },
                    e.node);
}

}  // namespace

// Program ---------------------------------------------------------------------

const Part* Program::find_part(std::string_view name) const {
  if (const Part* p = model_.find_part(name)) return p;
  if (name == "Top" && top_) return &*top_;
  if (name == "Bottom" && bottom_) return &*bottom_;
  return nullptr;
}

std::vector<NamedPart> Program::all_parts() const {
  std::vector<NamedPart> out = model_.parts;
  if (top_ && !model_.find_part("Top")) out.push_back({"Top", *top_});
  if (bottom_ && !model_.find_part("Bottom")) out.push_back({"Bottom", *bottom_});
  return out;
}

ElaboratedQuery Program::elaborate_query(const QueryAst& query) const {
  ElaboratedQuery out{query, ResolvedLaws{}, {}};
  Compiler compiler(Context::System, model_.params, this);

  auto constraint_on = [&](const ConstraintArg& arg, const Ident& carrier) {
    const Part& part = resolve_part(*this, carrier);
    return on_part(compiler.over_system(arg.expr), part, carrier.name, arg.expr->span, "this constraint");
  };

  auto modal = [&](bool is_ensures, const Ident& from, const Ident& to, const ConstraintArg& phi) {
    const Part& p = resolve_part(*this, from);
    const Part& q = resolve_part(*this, to);
    if (phi.on && phi.on->name != from.name) {
      error(phi.on->span, "the constraint of " + std::string(is_ensures ? "ensures" : "allows") + "(" + from.name + " -> " +
                              to.name + ", ...) lives on '" + from.name + "', not '" + phi.on->name + "'");
    }
    return ResolvedModal{is_ensures, from.name, to.name, p, q, constraint_on(phi, from)};
  };

  out.op = std::visit(
      overloaded{
          [&](const AllowsQuery& q) -> decltype(out.op) { return modal(false, q.from, q.to, q.phi); },
          [&](const EnsuresQuery& q) -> decltype(out.op) { return modal(true, q.from, q.to, q.phi); },
          [&](const CompatibleQuery& q) -> decltype(out.op) {
            const Part& p = resolve_part(*this, q.lhs.part);
            const Part& r = resolve_part(*this, q.rhs.part);
            return ResolvedBehaviorPair{false, q.lhs.part.name, q.rhs.part.name, p, resolve_behavior(*this, q.lhs, p),
                                        r, resolve_behavior(*this, q.rhs, r)};
          },
          [&](const DeterminesQuery& q) -> decltype(out.op) {
            const Part& p = resolve_part(*this, q.lhs.part);
            const Part& r = resolve_part(*this, q.rhs.part);
            return ResolvedBehaviorPair{true, q.lhs.part.name, q.rhs.part.name, p, resolve_behavior(*this, q.lhs, p),
                                        r, resolve_behavior(*this, q.rhs, r)};
          },
          [&](const EntailsQuery& q) -> decltype(out.op) {
            auto pick = [&](const ConstraintArg& self, const ConstraintArg& other) -> std::optional<Ident> {
              if (self.on) return self.on;
              if (other.on) return other.on;
              if (auto c = natural_carrier(*this, *self.expr)) return c;
              return natural_carrier(*this, *other.expr);
            };
            const auto lhs = pick(q.lhs, q.rhs);
            const auto rhs = pick(q.rhs, q.lhs);
            if (!lhs || !rhs) error(query.span, "cannot tell which part these constraints live on; add 'on <part>'");
            if (lhs->name != rhs->name) {
              error(q.rhs.span, "entails compares constraints on one part; found '" + lhs->name + "' and '" + rhs->name + "'");
            }
            return ResolvedEntails{lhs->name, constraint_on(q.lhs, *lhs), constraint_on(q.rhs, *rhs)};
          },
          [&](const LeqQuery& q) -> decltype(out.op) {
            return ResolvedPartPair{ResolvedPartPair::Op::Leq, q.lhs.name, q.rhs.name, resolve_part(*this, q.lhs),
                                    resolve_part(*this, q.rhs)};
          },
          [&](const MeetQuery& q) -> decltype(out.op) {
            return ResolvedPartPair{ResolvedPartPair::Op::Meet, q.lhs.name, q.rhs.name, resolve_part(*this, q.lhs),
                                    resolve_part(*this, q.rhs)};
          },
          [&](const JoinQuery& q) -> decltype(out.op) {
            return ResolvedPartPair{ResolvedPartPair::Op::Join, q.lhs.name, q.rhs.name, resolve_part(*this, q.lhs),
                                    resolve_part(*this, q.rhs)};
          },
          [&](const LawsQuery&) -> decltype(out.op) { return ResolvedLaws{}; },
      },
      query.kind);

  const bool boolean_kind = !std::holds_alternative<ResolvedModal>(out.op) &&
                            !(std::holds_alternative<ResolvedPartPair>(out.op) &&
                              std::get<ResolvedPartPair>(out.op).op != ResolvedPartPair::Op::Leq);
  if (query.is_assert && !boolean_kind) {
    error(query.span, "only true/false queries can be asserted; '" + query.kind_name() + "' does not give one");
  }
  out.notes = compiler.notes();
  return out;
}

// Elaboration -------------------------------------------------------------------

class Elaborator {
 public:
  std::shared_ptr<Program> run(const SpecAst& spec) {
    program_ = std::make_shared<Program>();
    for (const auto& d : spec.decls) {
      std::visit(overloaded{
                     [&](const SystemDecl& s) { guarded(s.span, [&] { system(s); }); },
                     [&](const PartDecl& p) { guarded(p.span, [&] { part(p); }); },
                     [&](const ConstraintDecl& c) { guarded(c.span, [&] { constraint(c); }); },
                 },
                 d);
    }
    if (!declared_) error(SourceSpan{}, "no system declared");
    for (const auto& q : spec.queries) {
      guarded(q.span, [&] { program_->queries_.push_back(program_->elaborate_query(q)); });
    }
    return program_;
  }

 private:
  // Library errors surface at the enclosing declaration.
  template <class F>
  void guarded(const SourceSpan& span, F&& body) {
    try {
      body();
    } catch (const DslError&) {
      throw;
    } catch (const std::exception& e) {
      error(span, e.what());
    }
  }

  std::vector<std::pair<std::string, Rational>>& params() { return program_->model_.params; }

  GridAxis axis(const GridBinding& b) {
    Compiler c(Context::Params, params());
    return std::visit(overloaded{
                          [&](const RangeValues& r) {
                            const auto lo = std::get<Rational>(c.constant(r.lo, Type::Num));
                            const auto hi = std::get<Rational>(c.constant(r.hi, Type::Num));
                            const Rational step = r.step ? std::get<Rational>(c.constant(r.step, Type::Num)) : Rational(1);
                            try {
                              return GridAxis::range(b.var.name, lo, hi, step);
                            } catch (const std::invalid_argument& e) {
                              error(b.span, e.what());
                            }
                          },
                          [&](const ListValues& l) {
                            std::vector<Rational> values;
                            for (const auto& v : l.values) values.push_back(std::get<Rational>(c.constant(v, Type::Num)));
                            try {
                              return GridAxis::list(b.var.name, std::move(values));
                            } catch (const std::invalid_argument& e) {
                              error(b.span, e.what());
                            }
                          },
                      },
                      b.values);
  }

  GridSpec grid(const GridClause& g) {
    GridSpec spec;
    std::vector<std::string> names;
    for (const auto& b : g.bindings) {
      if (std::find(names.begin(), names.end(), b.var.name) != names.end()) {
        error(b.var.span, "variable '" + b.var.name + "' is bound twice");
      }
      names.push_back(b.var.name);
      spec.axes.push_back(axis(b));
    }
    if (g.where) {
      Compiler c(Context::Record, params(), nullptr, names);
      Fn where = c.expect(g.where, Type::Bool).fn;
      spec.filter = [where](const Behavior::Record& point) {
        const Behavior b = Behavior::record(point);
        Frame f;
        f.behavior = &b;
        return std::get<bool>(where(f));
      };
    }
    return spec;
  }

  void system(const SystemDecl& s) {
    if (declared_) error(s.name.span, "only one system per file is supported; '" + program_->system_name_ + "' came first");
    declared_ = true;
    program_->system_name_ = s.name.name;
    for (const auto& p : s.params) {
      for (const auto& [name, _] : params()) {
        if (name == p.name.name) error(p.name.span, "parameter '" + name + "' is declared twice");
      }
      Compiler c(Context::Params, params());
      const Rational v = std::get<Rational>(c.constant(p.value, Type::Num));
      params().emplace_back(p.name.name, v);
    }
    SystemModel& model = program_->model_;
    std::visit(overloaded{
                   [&](const ExplicitList& l) { model.system = explicit_system(s.name.name, l); },
                   [&](const GridClause& g) {
                     try {
                       model.system = build_grid_system(s.name.name, grid(g));
                     } catch (const std::invalid_argument&) {
                       error(g.span, "system '" + s.name.name + "' has no behaviors: no grid point passes the filter");
                     }
                   },
                   [&](const SimulateClause& sim) { model.system = simulated_system(s.name.name, sim); },
                   [&](const GeneratorCall& g) { generated_system(g); },
               },
               s.behaviors);
    derive_shape(s);
    for (const auto& p : s.params) {
      if (std::find(program_->variables_.begin(), program_->variables_.end(), p.name.name) != program_->variables_.end()) {
        error(p.name.span, "parameter '" + p.name.name + "' has the same name as a behavior variable");
      }
    }
    program_->top_ = top(model.system);
    program_->bottom_ = bottom(model.system);
  }

  BehaviorTypePtr explicit_system(const std::string& name, const ExplicitList& l) {
    std::vector<Behavior> labels;
    const bool tokens = l.items.front().token.has_value();
    std::vector<std::string> fields;
    for (const auto& item : l.items) {
      if (item.token.has_value() != tokens) error(item.span, "behaviors must be all names or all records");
      Behavior b;
      if (tokens) {
        b = Behavior::token(item.token->name);
      } else {
        Behavior::Record r;
        std::vector<std::string> names;
        Compiler c(Context::Params, params());
        for (const auto& [key, value] : item.fields) {
          if (std::find(names.begin(), names.end(), key.name) != names.end()) {
            error(key.span, "field '" + key.name + "' appears twice");
          }
          names.push_back(key.name);
          r.push_back({key.name, std::get<Rational>(c.constant(value, Type::Num))});
        }
        if (labels.empty()) {
          fields = names;
        } else if (names != fields) {
          error(item.span, "every behavior needs the fields of the first one, in the same order");
        }
        b = Behavior::record(std::move(r));
      }
      if (std::find(labels.begin(), labels.end(), b) != labels.end()) {
        error(item.span, "behavior " + b.to_string() + " is listed twice");
      }
      labels.push_back(std::move(b));
    }
    return make_behavior_type(name, std::move(labels));
  }

  BehaviorTypePtr simulated_system(const std::string& name, const SimulateClause& sim) {
    SimSpec spec;
    spec.initial = grid(sim.init);
    for (const auto& axis : spec.initial.axes) spec.state.push_back(axis.name);
    spec.update.resize(spec.state.size());
    std::vector<bool> seen(spec.state.size(), false);
    for (const auto& u : sim.updates) {
      const auto it = std::find(spec.state.begin(), spec.state.end(), u.var.name);
      if (it == spec.state.end()) error(u.var.span, "'" + u.var.name + "' is not a state variable");
      const auto i = static_cast<std::size_t>(it - spec.state.begin());
      if (seen[i]) error(u.var.span, "state variable '" + u.var.name + "' is updated twice");
      seen[i] = true;
      Compiler c(Context::Record, params(), nullptr, spec.state);
      Fn fn = c.expect(u.value, Type::Num).fn;
      spec.update[i] = [fn, state = spec.state](std::span<const Rational> current) {
        Behavior::Record r;
        for (std::size_t k = 0; k < state.size(); ++k) r.push_back({state[k], current[k]});
        const Behavior b = Behavior::record(std::move(r));
        Frame f;
        f.behavior = &b;
        return std::get<Rational>(fn(f));
      };
    }
    for (std::size_t i = 0; i < seen.size(); ++i) {
      if (!seen[i]) error(sim.span, "state variable '" + spec.state[i] + "' has no update");
    }
    if (sim.horizon < 1) error(sim.horizon_span, "horizon must be at least 1");
    spec.horizon = sim.horizon;
    return build_trajectory_system(name, spec);
  }

  void generated_system(const GeneratorCall& g) {
    const std::string& kind = g.name.name;
    std::map<std::string, std::vector<std::string>> known{
        {"bicycle", {"r", "p", "w"}},
        {"water", {"k", "R", "init", "horizon"}},
        {"ecosystem", {"d_f", "b_r", "c_f", "c_r", "f0", "r0", "horizon"}},
        {"random", {"seed", "size", "parts"}},
    };
    const auto spec = known.find(kind);
    if (spec == known.end()) {
      error(g.name.span, "unknown generator '" + kind + "'; known generators are bicycle, water, ecosystem, random");
    }
    std::map<std::string, const GeneratorArg*> args;
    for (const auto& a : g.args) {
      const auto& names = spec->second;
      if (std::find(names.begin(), names.end(), a.name.name) == names.end()) {
        std::string list;
        for (std::size_t i = 0; i < names.size(); ++i) list += (i ? ", " : "") + names[i];
        error(a.name.span, "generator '" + kind + "' has no argument '" + a.name.name + "'; it takes " + list);
      }
      if (!args.emplace(a.name.name, &a).second) error(a.name.span, "argument '" + a.name.name + "' is given twice");
    }
    Compiler c(Context::Params, params());
    auto number = [&](const std::string& name, Rational fallback) {
      const auto it = args.find(name);
      if (it == args.end()) return fallback;
      const auto* e = std::get_if<ExprPtr>(&it->second->value);
      if (!e) error(it->second->span, "argument '" + name + "' takes a single number");
      return std::get<Rational>(c.constant(*e, Type::Num));
    };
    auto natural = [&](const std::string& name, std::size_t fallback) {
      const auto it = args.find(name);
      if (it == args.end()) return fallback;
      const std::int64_t v = integer_value(number(name, Rational(0)), it->second->span, "argument '" + name + "'");
      if (v < 0) error(it->second->span, "argument '" + name + "' must not be negative");
      return static_cast<std::size_t>(v);
    };
    auto values = [&](const std::string& name, const std::string& axis_name, GridAxis fallback) {
      const auto it = args.find(name);
      if (it == args.end()) {
        fallback.name = axis_name;
        return fallback;
      }
      GridBinding b{Ident{axis_name, it->second->name.span}, RangeValues{}, it->second->span};
      std::visit(overloaded{
                     [&](const ExprPtr& e) { b.values = ListValues{{e}}; },
                     [&](const ListValues& l) { b.values = l; },
                     [&](const RangeValues& r) { b.values = r; },
                 },
                 it->second->value);
      return axis(b);
    };
    auto at = [&](const std::string& name) { return args.count(name) ? args.at(name)->span : g.span; };

    SystemModel& model = program_->model_;
    const auto declared = params();
    const std::vector<Rational> pops{Rational(0), Rational(10), Rational(20), Rational(30)};
    if (kind == "bicycle") {
      const auto def = default_bicycle_grid();
      GridSpec grid{{values("p", "p", def.axes[0]), values("w", "w", def.axes[1])}, {}};
      try {
        model = build_bicycle(number("r", Rational(2)), std::move(grid));
      } catch (const std::invalid_argument&) {
        error(g.span, "bicycle has no behaviors on this grid");
      }
    } else if (kind == "water") {
      const GridAxis init = values("init", "T", GridAxis::range("T", Rational(0), Rational(40), Rational(5)));
      const std::size_t horizon = natural("horizon", 6);
      if (horizon < 1) error(at("horizon"), "horizon must be at least 1");
      model = build_water(number("k", Rational(1, 2)), number("R", Rational(20)), init.values, horizon);
    } else if (kind == "ecosystem") {
      const EcosystemParams d = default_ecosystem_params();
      const EcosystemParams p{number("d_f", d.fox_death), number("b_r", d.rabbit_birth), number("c_f", d.fox_gain),
                              number("c_r", d.rabbit_loss)};
      GridSpec grid{{values("f0", "f", GridAxis::list("f", pops)), values("r0", "r", GridAxis::list("r", pops))}, {}};
      const std::size_t horizon = natural("horizon", 5);
      if (horizon < 1) error(at("horizon"), "horizon must be at least 1");
      if (horizon > kMaxEcosystemHorizon) {
        error(at("horizon"), "ecosystem horizon " + std::to_string(horizon) + " exceeds the cap of " +
                                 std::to_string(kMaxEcosystemHorizon));
      }
      model = build_ecosystem(p, grid, horizon);
    } else {
      const std::uint64_t seed = natural("seed", 0);
      if (!args.count("size") && !args.count("parts")) {
        model = random_system(seed);
      } else {
        const std::size_t size = natural("size", 8);
        const std::size_t parts = natural("parts", 2);
        if (size < 1 || size > 8) error(at("size"), "random system size must be in 1..8");
        if (parts < 2 || parts > 4) error(at("parts"), "random system part count must be in 2..4");
        model = random_system(seed, size, parts);
      }
    }
    // Declared parameters stay visible next to the generator's own.
    for (const auto& p : declared) {
      const bool shadowed = std::any_of(model.params.begin(), model.params.end(),
                                        [&](const auto& q) { return q.first == p.first; });
      if (shadowed) error(g.span, "parameter '" + p.first + "' clashes with a parameter of generator '" + kind + "'");
      model.params.push_back(p);
    }
  }

  void derive_shape(const SystemDecl& s) {
    const auto& labels = program_->model_.system->labels();
    const Behavior& first = labels.front();
    std::vector<std::string> variables;
    std::size_t horizon = 0;
    BehaviorShape shape = BehaviorShape::Tokens;
    if (const auto* r = std::get_if<Behavior::Record>(&first.value())) {
      shape = BehaviorShape::Records;
      for (const auto& b : *r) variables.push_back(b.name);
    } else if (const auto* t = std::get_if<Trajectory>(&first.value())) {
      shape = BehaviorShape::Trajectories;
      variables = t->variables;
      horizon = t->horizon();
    } else if (!std::holds_alternative<Behavior::Token>(first.value())) {
      error(s.span, "system '" + s.name.name + "' has behaviors of an unsupported shape");
    }
    for (const auto& b : labels) {
      bool same = false;
      if (shape == BehaviorShape::Tokens) {
        same = std::holds_alternative<Behavior::Token>(b.value());
      } else if (shape == BehaviorShape::Records) {
        same = std::holds_alternative<Behavior::Record>(b.value()) && b.variables() == variables;
      } else if (const auto* t = std::get_if<Trajectory>(&b.value())) {
        same = t->variables == variables && t->horizon() == horizon;
      }
      if (!same) error(s.span, "behaviors of system '" + s.name.name + "' do not all have the same shape");
    }
    program_->shape_ = shape;
    program_->variables_ = std::move(variables);
    program_->horizon_ = horizon;
  }

  void check_fresh(const Ident& name) {
    if (program_->find_part(name.name)) error(name.span, "part '" + name.name + "' is already declared");
    for (const auto& c : program_->constraints_) {
      if (c.name == name.name) error(name.span, "'" + name.name + "' is already declared as a constraint");
    }
    const auto& vars = program_->variables_;
    if (std::find(vars.begin(), vars.end(), name.name) != vars.end()) {
      error(name.span, "'" + name.name + "' is already a behavior variable");
    }
    for (const auto& [p, _] : program_->model_.params) {
      if (p == name.name) error(name.span, "'" + name.name + "' is already a parameter");
    }
  }

  void require_system(const Ident& name) {
    if (!declared_ || name.name != program_->system_name_) error(name.span, "unknown system '" + name.name + "'");
  }

  void part(const PartDecl& d) {
    require_system(d.system);
    check_fresh(d.name);
    const BehaviorTypePtr& system = program_->model_.system;
    Part result = std::visit(
        overloaded{
            [&](const ProjectPart& p) { return projection(d.name.name, p); },
            [&](const ByPart& b) {
              Compiler c(Context::System, program_->model_.params, program_.get());
              Compiled obs = c.compile(b.observe);
              std::vector<Behavior> labels;
              std::vector<std::size_t> map;
              std::unordered_map<Behavior, std::size_t, BehaviorHash> index;
              Frame f;
              for (std::size_t s = 0; s < system->size(); ++s) {
                f.behavior = &(*system)[s];
                f.index = s;
                const Value v = obs.fn(f);
                Behavior label = obs.type == Type::Num ? Behavior::number(std::get<Rational>(v))
                                                       : Behavior::token(std::get<bool>(v) ? "true" : "false");
                const auto [it, fresh] = index.try_emplace(label, labels.size());
                if (fresh) labels.push_back(std::move(label));
                map.push_back(it->second);
              }
              return Part(system, d.name.name, std::move(labels), std::move(map));
            },
            [&](const JoinPart& j) {
              return join(resolve_part(*program_, j.lhs), resolve_part(*program_, j.rhs)).renamed(d.name.name);
            },
            [&](const MeetPart& m) {
              return meet(resolve_part(*program_, m.lhs), resolve_part(*program_, m.rhs)).renamed(d.name.name);
            },
        },
        d.def);
    program_->model_.add_part(d.name.name, std::move(result));
  }

  Part projection(const std::string& name, const ProjectPart& p) {
    const auto shape = program_->shape_;
    const auto& vars = program_->variables_;
    if (shape == BehaviorShape::Tokens) {
      error(p.items.front().span, "system '" + program_->system_name_ + "' has no variables to project");
    }
    // (variable, time) pairs in the order given.
    std::vector<std::pair<std::string, std::optional<std::size_t>>> keys;
    for (const auto& item : p.items) {
      if (std::find(vars.begin(), vars.end(), item.var.name) == vars.end()) {
        error(item.var.span, "unknown variable '" + item.var.name + "'");
      }
      std::vector<std::optional<std::size_t>> times;
      if (shape == BehaviorShape::Records) {
        if (item.from) error(item.span, "variable '" + item.var.name + "' takes no time index");
        times.push_back(std::nullopt);
      } else {
        const std::size_t lo = item.from.value_or(0);
        const std::size_t hi = item.from ? item.to.value_or(lo) : program_->horizon_;
        if (hi < lo) error(item.span, "time window " + std::to_string(lo) + ".." + std::to_string(hi) + " is empty");
        if (hi > program_->horizon_) {
          error(item.span, "time " + std::to_string(hi) + " is past the horizon " + std::to_string(program_->horizon_));
        }
        for (std::size_t t = lo; t <= hi; ++t) times.push_back(t);
      }
      for (const auto& t : times) {
        const std::pair<std::string, std::optional<std::size_t>> key{item.var.name, t};
        if (std::find(keys.begin(), keys.end(), key) != keys.end()) {
          error(item.span, "'" + (t ? indexed_name(item.var.name, *t) : item.var.name) + "' is projected twice");
        }
        keys.push_back(key);
      }
    }
    return part_from_observation(program_->model_.system, name, [&](const Behavior& b) {
      Behavior::Record r;
      for (const auto& [var, t] : keys) r.push_back({t ? indexed_name(var, *t) : var, *b.lookup(var, t)});
      return Behavior::record(std::move(r));
    });
  }

  void constraint(const ConstraintDecl& d) {
    const Part& part = resolve_part(*program_, d.part);
    check_fresh(d.name);
    Compiler c(Context::System, program_->model_.params, program_.get());
    const std::vector<bool> values = c.over_system(d.body);
    Constraint value = on_part(values, part, d.part.name, d.body->span, "constraint '" + d.name.name + "'");
    program_->constraints_.push_back(NamedConstraint{d.name.name, d.part.name, std::move(value), c.notes()});
  }

  std::shared_ptr<Program> program_;
  bool declared_ = false;
};

ElaborationResult elaborate(const SpecAst& spec) {
  ElaborationResult out;
  try {
    out.program = Elaborator().run(spec);
  } catch (const DslError& e) {
    out.diagnostics.push_back(e.diagnostic());
  }
  return out;
}

ElaborationResult load(std::string_view text) {
  auto parsed = parse(text);
  if (!parsed) return ElaborationResult{nullptr, {*parsed.diagnostic}};
  return elaborate(*parsed.value);
}

}  // namespace mereology::dsl
