#include <sstream>

#include "mereology/dsl/parser.hpp"

namespace mereology::dsl {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Binding strength; a child printed where a higher one is required gets
// parentheses.
enum Prec : int { kQuant = 0, kImplies = 1, kOr = 2, kAnd = 3, kNot = 4, kCmp = 5, kSum = 6, kProd = 7, kUnary = 8, kAtom = 9 };

int precedence(const Expr& e) {
  return std::visit(overloaded{
                        [](const Binary& b) {
                          switch (b.op) {
                            case BinaryOp::Implies:
                              return int{kImplies};
                            case BinaryOp::Or:
                              return int{kOr};
                            case BinaryOp::And:
                              return int{kAnd};
                            case BinaryOp::Add:
                            case BinaryOp::Sub:
                              return int{kSum};
                            case BinaryOp::Mul:
                            case BinaryOp::Div:
                              return int{kProd};
                            default:
                              return int{kCmp};
                          }
                        },
                        [](const Unary& u) { return u.op == UnaryOp::Not ? int{kNot} : int{kUnary}; },
                        [](const Quantified&) { return int{kQuant}; },
                        [](const NumberLit& n) { return n.value.sign() >= 0 ? int{kAtom} : int{kUnary}; },
                        [](const auto&) { return int{kAtom}; },
                    },
                    e.node);
}

const char* op_text(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add:
      return "+";
    case BinaryOp::Sub:
      return "-";
    case BinaryOp::Mul:
      return "*";
    case BinaryOp::Div:
      return "/";
    case BinaryOp::Eq:
      return "=";
    case BinaryOp::Ne:
      return "!=";
    case BinaryOp::Lt:
      return "<";
    case BinaryOp::Le:
      return "<=";
    case BinaryOp::Gt:
      return ">";
    case BinaryOp::Ge:
      return ">=";
    case BinaryOp::And:
      return "and";
    case BinaryOp::Or:
      return "or";
    case BinaryOp::Implies:
      return "implies";
  }
  return "?";
}

// Literals come from decimal source text, so the expansion terminates.
std::string literal_text(const Rational& v) {
  if (v.is_integer()) return v.to_string();
  const Rational ten(10);
  Rational scaled = v.abs();
  std::size_t digits = 0;
  while (!scaled.is_integer() && digits < 64) {
    scaled *= ten;
    ++digits;
  }
  if (!scaled.is_integer()) return "(" + v.to_string() + ")";
  std::string s = scaled.to_string();
  if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
  s.insert(s.size() - digits, ".");
  return (v.sign() < 0 ? "-" : "") + s;
}

std::string expr_text(const Expr& e, int required);

std::string child(const ExprPtr& e, int required) { return expr_text(*e, required); }

std::string expr_text(const Expr& e, int required) {
  std::string s = std::visit(
      overloaded{
          [](const NumberLit& n) { return literal_text(n.value); },
          [](const BoolLit& b) { return std::string(b.value ? "true" : "false"); },
          [](const VarRef& v) { return v.index ? v.name + "[" + child(v.index, kQuant) + "]" : v.name; },
          [](const Unary& u) {
            return u.op == UnaryOp::Not ? "not " + child(u.operand, kNot) : "-" + child(u.operand, kUnary);
          },
          [](const Binary& b) {
            int lhs = kSum;
            int rhs = kProd;
            switch (b.op) {
              case BinaryOp::Implies:
                lhs = kOr;
                rhs = kImplies;
                break;
              case BinaryOp::Or:
                lhs = kOr;
                rhs = kAnd;
                break;
              case BinaryOp::And:
                lhs = kAnd;
                rhs = kNot;
                break;
              case BinaryOp::Add:
              case BinaryOp::Sub:
                lhs = kSum;
                rhs = kProd;
                break;
              case BinaryOp::Mul:
              case BinaryOp::Div:
                lhs = kProd;
                rhs = kUnary;
                break;
              default:
                lhs = kSum;
                rhs = kSum;
                break;
            }
            return child(b.lhs, lhs) + " " + op_text(b.op) + " " + child(b.rhs, rhs);
          },
          [](const AbsCall& a) { return "abs(" + child(a.arg, kQuant) + ")"; },
          [](const Quantified& q) {
            return std::string(q.universal ? "forall " : "exists ") + q.var.name + " in " + child(q.lo, kSum) + ".." +
                   child(q.hi, kSum) + ": " + child(q.body, kQuant);
          },
          [](const Modal& m) {
            return std::string(m.ensures ? "ensures(" : "allows(") + m.from.name + " -> " + m.to.name + ", " +
                   child(m.body, kQuant) + ")";
          },
      },
      e.node);
  return precedence(e) < required ? "(" + s + ")" : s;
}

std::string values_text(const std::variant<RangeValues, ListValues>& v);

std::string range_text(const RangeValues& r) {
  std::string s = child(r.lo, kSum) + ".." + child(r.hi, kSum);
  if (r.step) s += " step " + child(r.step, kSum);
  return s;
}

std::string list_text(const ListValues& l) {
  std::string s = "{";
  for (std::size_t i = 0; i < l.values.size(); ++i) s += (i ? ", " : "") + child(l.values[i], kQuant);
  return s + "}";
}

std::string values_text(const std::variant<RangeValues, ListValues>& v) {
  return std::visit(overloaded{[](const RangeValues& r) { return range_text(r); },
                               [](const ListValues& l) { return list_text(l); }},
                    v);
}

std::string grid_text(const GridClause& g) {
  std::string s = "grid ";
  for (std::size_t i = 0; i < g.bindings.size(); ++i) {
    s += (i ? ", " : "") + g.bindings[i].var.name + " in " + values_text(g.bindings[i].values);
  }
  if (g.where) s += " where " + child(g.where, kQuant);
  return s;
}

std::string constraint_arg_text(const ConstraintArg& c) {
  std::string s = child(c.expr, kQuant);
  if (c.on) s += " on " + c.on->name;
  return s;
}

std::string behavior_ref_text(const BehaviorRef& r) {
  if (r.index) return r.part.name + "[" + std::to_string(*r.index) + "]";
  std::string s = r.part.name + "{";
  for (std::size_t i = 0; i < r.fields.size(); ++i) {
    s += (i ? ", " : "") + r.fields[i].first.name + " = " + child(r.fields[i].second, kQuant);
  }
  return s + "}";
}

std::string query_text(const QueryAst& q) {
  std::string s = std::visit(
      overloaded{
          [](const AllowsQuery& a) {
            return "allows(" + a.from.name + " -> " + a.to.name + ", " + constraint_arg_text(a.phi) + ")";
          },
          [](const EnsuresQuery& a) {
            return "ensures(" + a.from.name + " -> " + a.to.name + ", " + constraint_arg_text(a.phi) + ")";
          },
          [](const CompatibleQuery& c) {
            return "compatible(" + behavior_ref_text(c.lhs) + ", " + behavior_ref_text(c.rhs) + ")";
          },
          [](const DeterminesQuery& c) {
            return "determines(" + behavior_ref_text(c.lhs) + ", " + behavior_ref_text(c.rhs) + ")";
          },
          [](const EntailsQuery& e) {
            return "entails(" + constraint_arg_text(e.lhs) + ", " + constraint_arg_text(e.rhs) + ")";
          },
          [](const LeqQuery& l) { return "leq(" + l.lhs.name + ", " + l.rhs.name + ")"; },
          [](const MeetQuery& l) { return "meet(" + l.lhs.name + ", " + l.rhs.name + ")"; },
          [](const JoinQuery& l) { return "join(" + l.lhs.name + ", " + l.rhs.name + ")"; },
          [](const LawsQuery&) { return std::string("laws"); },
      },
      q.kind);
  return s;
}

std::string decl_text(const Decl& d) {
  return std::visit(
      overloaded{
          [](const SystemDecl& s) {
            std::string out = "system " + s.name.name + " {\n";
            for (const auto& p : s.params) out += "  param " + p.name.name + " = " + child(p.value, kQuant) + "\n";
            out += "  behaviors: ";
            out += std::visit(
                overloaded{
                    [](const ExplicitList& l) {
                      std::string t = "{";
                      for (std::size_t i = 0; i < l.items.size(); ++i) {
                        t += i ? ", " : "";
                        const auto& item = l.items[i];
                        if (item.token) {
                          t += item.token->name;
                        } else {
                          t += "(";
                          for (std::size_t f = 0; f < item.fields.size(); ++f) {
                            t += (f ? ", " : "") + item.fields[f].first.name + " = " + child(item.fields[f].second, kQuant);
                          }
                          t += ")";
                        }
                      }
                      return t + "}";
                    },
                    [](const GridClause& g) { return grid_text(g); },
                    [](const SimulateClause& sim) {
                      std::string t = "simulate init " + grid_text(sim.init) + "\n    update";
                      for (std::size_t i = 0; i < sim.updates.size(); ++i) {
                        t += std::string(i ? "," : "") + "\n      next " + sim.updates[i].var.name + " = " +
                             child(sim.updates[i].value, kQuant);
                      }
                      return t + "\n    horizon " + std::to_string(sim.horizon);
                    },
                    [](const GeneratorCall& g) {
                      std::string t = "generator " + g.name.name + "(";
                      for (std::size_t i = 0; i < g.args.size(); ++i) {
                        t += (i ? ", " : "") + g.args[i].name.name + " = ";
                        t += std::visit(overloaded{[](const ExprPtr& e) { return child(e, kQuant); },
                                                   [](const ListValues& l) { return list_text(l); },
                                                   [](const RangeValues& r) { return range_text(r); }},
                                        g.args[i].value);
                      }
                      return t + ")";
                    },
                },
                s.behaviors);
            return out + "\n}";
          },
          [](const PartDecl& p) {
            std::string out = "part " + p.name.name + " of " + p.system.name + " = ";
            out += std::visit(overloaded{
                                  [](const ProjectPart& pr) {
                                    std::string t = "project(";
                                    for (std::size_t i = 0; i < pr.items.size(); ++i) {
                                      const auto& it = pr.items[i];
                                      t += (i ? ", " : "") + it.var.name;
                                      if (it.from) {
                                        t += "[" + std::to_string(*it.from);
                                        if (it.to) t += ".." + std::to_string(*it.to);
                                        t += "]";
                                      }
                                    }
                                    return t + ")";
                                  },
                                  [](const ByPart& b) { return "by(" + child(b.observe, kQuant) + ")"; },
                                  [](const JoinPart& j) { return "join(" + j.lhs.name + ", " + j.rhs.name + ")"; },
                                  [](const MeetPart& m) { return "meet(" + m.lhs.name + ", " + m.rhs.name + ")"; },
                              },
                              p.def);
            return out;
          },
          [](const ConstraintDecl& c) {
            return "constraint " + c.name.name + " on " + c.part.name + " = " + child(c.body, kQuant);
          },
      },
      d);
}

// Tree dump -----------------------------------------------------------------

class Dumper {
 public:
  explicit Dumper(bool spans) : spans_(spans) {}

  std::string take() { return out_.str(); }

  void line(int depth, const std::string& text, const SourceSpan* span = nullptr) {
    out_ << std::string(static_cast<std::size_t>(depth) * 2, ' ') << text;
    if (spans_ && span) out_ << " @" << span->line << ":" << span->column << "+" << span->length;
    out_ << "\n";
  }

  void expr(int depth, const ExprPtr& e) {
    if (!e) {
      line(depth, "<none>");
      return;
    }
    std::visit(overloaded{
                   [&](const NumberLit& n) { line(depth, "Number " + n.value.to_string(), &e->span); },
                   [&](const BoolLit& b) { line(depth, std::string("Bool ") + (b.value ? "true" : "false"), &e->span); },
                   [&](const VarRef& v) {
                     line(depth, "Var " + v.name, &e->span);
                     if (v.index) expr(depth + 1, v.index);
                   },
                   [&](const Unary& u) {
                     line(depth, u.op == UnaryOp::Not ? "Not" : "Negate", &e->span);
                     expr(depth + 1, u.operand);
                   },
                   [&](const Binary& b) {
                     line(depth, std::string("Binary ") + op_text(b.op), &e->span);
                     expr(depth + 1, b.lhs);
                     expr(depth + 1, b.rhs);
                   },
                   [&](const AbsCall& a) {
                     line(depth, "Abs", &e->span);
                     expr(depth + 1, a.arg);
                   },
                   [&](const Quantified& q) {
                     line(depth, std::string(q.universal ? "Forall " : "Exists ") + q.var.name, &e->span);
                     expr(depth + 1, q.lo);
                     expr(depth + 1, q.hi);
                     expr(depth + 1, q.body);
                   },
                   [&](const Modal& m) {
                     line(depth, std::string(m.ensures ? "Ensures " : "Allows ") + m.from.name + " -> " + m.to.name,
                          &e->span);
                     expr(depth + 1, m.body);
                   },
               },
               e->node);
  }

  void values(int depth, const std::variant<RangeValues, ListValues>& v) {
    std::visit(overloaded{[&](const RangeValues& r) { range(depth, r); }, [&](const ListValues& l) { list(depth, l); }}, v);
  }
  void range(int depth, const RangeValues& r) {
    line(depth, "Range");
    expr(depth + 1, r.lo);
    expr(depth + 1, r.hi);
    if (r.step) expr(depth + 1, r.step);
  }
  void list(int depth, const ListValues& l) {
    line(depth, "List");
    for (const auto& v : l.values) expr(depth + 1, v);
  }
  void grid(int depth, const GridClause& g) {
    line(depth, "Grid", &g.span);
    for (const auto& b : g.bindings) {
      line(depth + 1, "Binding " + b.var.name, &b.span);
      values(depth + 2, b.values);
    }
    if (g.where) {
      line(depth + 1, "Where");
      expr(depth + 2, g.where);
    }
  }
  void constraint_arg(int depth, const ConstraintArg& c) {
    line(depth, "Constraint" + (c.on ? " on " + c.on->name : std::string()), &c.span);
    expr(depth + 1, c.expr);
  }
  void behavior_ref(int depth, const BehaviorRef& r) {
    if (r.index) {
      line(depth, "Behavior " + r.part.name + "[" + std::to_string(*r.index) + "]", &r.span);
      return;
    }
    line(depth, "Behavior " + r.part.name, &r.span);
    for (const auto& [k, v] : r.fields) {
      line(depth + 1, "Field " + k.name, &k.span);
      expr(depth + 2, v);
    }
  }

  void decl(const Decl& d) {
    std::visit(
        overloaded{
            [&](const SystemDecl& s) {
              line(1, "System " + s.name.name, &s.span);
              for (const auto& p : s.params) {
                line(2, "Param " + p.name.name, &p.name.span);
                expr(3, p.value);
              }
              std::visit(overloaded{
                             [&](const ExplicitList& l) {
                               line(2, "Explicit", &l.span);
                               for (const auto& item : l.items) {
                                 if (item.token) {
                                   line(3, "Token " + item.token->name, &item.span);
                                 } else {
                                   line(3, "Record", &item.span);
                                   for (const auto& [k, v] : item.fields) {
                                     line(4, "Field " + k.name, &k.span);
                                     expr(5, v);
                                   }
                                 }
                               }
                             },
                             [&](const GridClause& g) { grid(2, g); },
                             [&](const SimulateClause& sim) {
                               line(2, "Simulate horizon " + std::to_string(sim.horizon), &sim.span);
                               grid(3, sim.init);
                               for (const auto& u : sim.updates) {
                                 line(3, "Next " + u.var.name, &u.var.span);
                                 expr(4, u.value);
                               }
                             },
                             [&](const GeneratorCall& g) {
                               line(2, "Generator " + g.name.name, &g.span);
                               for (const auto& a : g.args) {
                                 line(3, "Arg " + a.name.name, &a.span);
                                 std::visit(overloaded{[&](const ExprPtr& e) { expr(4, e); },
                                                       [&](const ListValues& l) { list(4, l); },
                                                       [&](const RangeValues& r) { range(4, r); }},
                                            a.value);
                               }
                             },
                         },
                         s.behaviors);
            },
            [&](const PartDecl& p) {
              line(1, "Part " + p.name.name + " of " + p.system.name, &p.span);
              std::visit(overloaded{
                             [&](const ProjectPart& pr) {
                               line(2, "Project");
                               for (const auto& it : pr.items) {
                                 std::string t = "Item " + it.var.name;
                                 if (it.from) t += "[" + std::to_string(*it.from) + (it.to ? ".." + std::to_string(*it.to) : "") + "]";
                                 line(3, t, &it.span);
                               }
                             },
                             [&](const ByPart& b) {
                               line(2, "By");
                               expr(3, b.observe);
                             },
                             [&](const JoinPart& j) { line(2, "Join " + j.lhs.name + " " + j.rhs.name); },
                             [&](const MeetPart& m) { line(2, "Meet " + m.lhs.name + " " + m.rhs.name); },
                         },
                         p.def);
            },
            [&](const ConstraintDecl& c) {
              line(1, "Constraint " + c.name.name + " on " + c.part.name, &c.span);
              expr(2, c.body);
            },
        },
        d);
  }

  void query(const QueryAst& q) {
    line(1, std::string(q.is_assert ? "Assert " : "Query ") + q.kind_name(), &q.span);
    std::visit(overloaded{
                   [&](const AllowsQuery& a) {
                     line(2, a.from.name + " -> " + a.to.name);
                     constraint_arg(2, a.phi);
                   },
                   [&](const EnsuresQuery& a) {
                     line(2, a.from.name + " -> " + a.to.name);
                     constraint_arg(2, a.phi);
                   },
                   [&](const CompatibleQuery& c) {
                     behavior_ref(2, c.lhs);
                     behavior_ref(2, c.rhs);
                   },
                   [&](const DeterminesQuery& c) {
                     behavior_ref(2, c.lhs);
                     behavior_ref(2, c.rhs);
                   },
                   [&](const EntailsQuery& e) {
                     constraint_arg(2, e.lhs);
                     constraint_arg(2, e.rhs);
                   },
                   [&](const LeqQuery& l) { line(2, l.lhs.name + ", " + l.rhs.name); },
                   [&](const MeetQuery& l) { line(2, l.lhs.name + ", " + l.rhs.name); },
                   [&](const JoinQuery& l) { line(2, l.lhs.name + ", " + l.rhs.name); },
                   [&](const LawsQuery&) {},
               },
               q.kind);
  }

 private:
  bool spans_;
  std::ostringstream out_;
};

}  // namespace

std::string print(const Expr& expr) { return expr_text(expr, kQuant); }

std::string print(const QueryAst& query) { return query_text(query); }

std::string print(const SpecAst& spec) {
  std::string out;
  for (const auto& d : spec.decls) out += decl_text(d) + "\n";
  for (const auto& q : spec.queries) out += std::string(q.is_assert ? "assert " : "query ") + query_text(q) + "\n";
  return out;
}

std::string dump(const SpecAst& spec, bool with_spans) {
  Dumper d(with_spans);
  d.line(0, "Spec");
  for (const auto& decl : spec.decls) d.decl(decl);
  for (const auto& q : spec.queries) d.query(q);
  return d.take();
}

}  // namespace mereology::dsl
