#include "mereology/dsl/parser.hpp"

#include <algorithm>

#include "mereology/dsl/lexer.hpp"

namespace mereology::dsl {

namespace {

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  SpecAst spec() {
    SpecAst out;
    if (!at_keyword("system") && !at_keyword("part") && !at_keyword("constraint")) {
      fail({"declaration"}, "expected declaration");
    }
    while (at_keyword("system") || at_keyword("part") || at_keyword("constraint")) out.decls.push_back(decl());
    while (at_keyword("query") || at_keyword("assert")) out.queries.push_back(query(true));
    if (!at_end()) {
      if (out.queries.empty()) {
        fail({"'system'", "'part'", "'constraint'", "'query'", "'assert'", "end of input"});
      }
      fail({"'query'", "'assert'", "end of input"});
    }
    return out;
  }

  QueryAst lone_query() {
    QueryAst q = query(at_keyword("query") || at_keyword("assert"));
    if (!at_end()) fail({"end of input"});
    return q;
  }

 private:
  // Token access ------------------------------------------------------------

  const Token& peek(std::size_t ahead = 0) const { return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)]; }
  bool at_end() const { return peek().kind == TokenKind::End; }
  bool at_keyword(std::string_view k) const { return peek().is_keyword(k); }
  bool at_punct(std::string_view p) const { return peek().is_punct(p); }
  const Token& take() {
    const Token& t = peek();
    if (pos_ < tokens_.size() - 1) ++pos_;
    last_ = t.span;
    return t;
  }

  [[noreturn]] void fail(std::vector<std::string> expected, std::string message = "") const {
    Diagnostic d;
    d.phase = Diagnostic::Phase::Parse;
    d.span = peek().span;
    d.expected = std::move(expected);
    if (message.empty()) {
      if (d.expected.size() == 1) {
        message = "expected " + d.expected.front();
      } else {
        message = "expected one of ";
        for (std::size_t i = 0; i < d.expected.size(); ++i) message += (i ? ", " : "") + d.expected[i];
      }
      message += ", found " + peek().describe();
    }
    d.message = std::move(message);
    throw DslError(std::move(d));
  }

  const Token& expect_keyword(std::string_view k) {
    if (!at_keyword(k)) fail({"'" + std::string(k) + "'"});
    return take();
  }
  const Token& expect_punct(std::string_view p) {
    if (!at_punct(p)) fail({"'" + std::string(p) + "'"});
    return take();
  }
  Ident ident(const std::string& what = "identifier") {
    if (peek().kind != TokenKind::Ident) fail({what});
    const Token& t = take();
    return Ident{t.text, t.span};
  }
  std::size_t natural() {
    if (peek().kind != TokenKind::Number || peek().text.find('.') != std::string::npos) fail({"natural number"});
    const Token& t = take();
    try {
      return static_cast<std::size_t>(std::stoull(t.text));
    } catch (const std::exception&) {
      Diagnostic d{Diagnostic::Phase::Parse, t.span, "number " + t.text + " is too large", {}};
      throw DslError(std::move(d));
    }
  }
  SourceSpan since(const SourceSpan& start) const { return merge(start, last_); }

  // Declarations ------------------------------------------------------------

  Decl decl() {
    if (at_keyword("system")) return system_decl();
    if (at_keyword("part")) return part_decl();
    return constraint_decl();
  }

  SystemDecl system_decl() {
    const SourceSpan start = take().span;
    SystemDecl d;
    d.name = ident("system name");
    expect_punct("{");
    while (at_keyword("param")) {
      take();
      ParamDecl p;
      p.name = ident("parameter name");
      expect_punct("=");
      p.value = expr();
      d.params.push_back(std::move(p));
    }
    if (!at_keyword("behaviors")) fail({"'param'", "'behaviors'"});
    take();
    expect_punct(":");
    if (at_punct("{")) {
      d.behaviors = explicit_list();
    } else if (at_keyword("grid")) {
      d.behaviors = grid_clause(true);
    } else if (at_keyword("simulate")) {
      d.behaviors = simulate_clause();
    } else if (at_keyword("generator")) {
      d.behaviors = generator_call();
    } else {
      fail({"'{'", "'grid'", "'simulate'", "'generator'"});
    }
    expect_punct("}");
    d.span = since(start);
    return d;
  }

  ExplicitList explicit_list() {
    ExplicitList out;
    const SourceSpan start = take().span;
    do {
      out.items.push_back(explicit_item());
    } while (at_punct(",") && (take(), true));
    expect_punct("}");
    out.span = since(start);
    return out;
  }

  ExplicitItem explicit_item() {
    ExplicitItem item;
    if (peek().kind == TokenKind::Ident) {
      item.token = ident();
      item.span = item.token->span;
      return item;
    }
    if (!at_punct("(")) fail({"identifier", "'('"});
    const SourceSpan start = take().span;
    do {
      Ident key = ident("field name");
      expect_punct("=");
      item.fields.emplace_back(std::move(key), expr());
    } while (at_punct(",") && (take(), true));
    expect_punct(")");
    item.span = since(start);
    return item;
  }

  GridClause grid_clause(bool allow_where) {
    GridClause g;
    const SourceSpan start = expect_keyword("grid").span;
    do {
      g.bindings.push_back(grid_binding());
    } while (at_punct(",") && (take(), true));
    if (allow_where && at_keyword("where")) {
      take();
      g.where = expr();
    }
    g.span = since(start);
    return g;
  }

  GridBinding grid_binding() {
    GridBinding b;
    b.var = ident("variable name");
    expect_keyword("in");
    if (at_punct("{")) {
      b.values = list_values();
    } else {
      b.values = range_values(sum());
    }
    b.span = since(b.var.span);
    return b;
  }

  ListValues list_values() {
    ListValues out;
    expect_punct("{");
    do {
      out.values.push_back(expr());
    } while (at_punct(",") && (take(), true));
    expect_punct("}");
    return out;
  }

  RangeValues range_values(ExprPtr lo) {
    RangeValues r;
    r.lo = std::move(lo);
    expect_punct("..");
    r.hi = sum();
    if (at_keyword("step")) {
      take();
      r.step = sum();
    }
    return r;
  }

  SimulateClause simulate_clause() {
    SimulateClause s;
    const SourceSpan start = take().span;
    expect_keyword("init");
    s.init = grid_clause(false);
    expect_keyword("update");
    do {
      if (at_punct(",")) take();
      expect_keyword("next");
      Assign a;
      a.var = ident("state variable");
      expect_punct("=");
      a.value = expr();
      s.updates.push_back(std::move(a));
    } while (at_keyword("next") || at_punct(","));
    expect_keyword("horizon");
    const SourceSpan hs = peek().span;
    s.horizon = natural();
    s.horizon_span = hs;
    s.span = since(start);
    return s;
  }

  GeneratorCall generator_call() {
    GeneratorCall g;
    const SourceSpan start = take().span;
    g.name = ident("generator name");
    expect_punct("(");
    if (!at_punct(")")) {
      do {
        GeneratorArg a;
        // Argument names may collide with keywords, as water's `init` does.
        if (peek().kind == TokenKind::Keyword) {
          const Token& t = take();
          a.name = Ident{t.text, t.span};
        } else {
          a.name = ident("argument name");
        }
        expect_punct("=");
        if (at_punct("{")) {
          a.value = list_values();
        } else {
          ExprPtr v = expr();
          if (at_punct("..")) {
            a.value = range_values(std::move(v));
          } else {
            a.value = std::move(v);
          }
        }
        a.span = since(a.name.span);
        g.args.push_back(std::move(a));
      } while (at_punct(",") && (take(), true));
    }
    expect_punct(")");
    g.span = since(start);
    return g;
  }

  PartDecl part_decl() {
    const SourceSpan start = take().span;
    PartDecl d;
    d.name = ident("part name");
    expect_keyword("of");
    d.system = ident("system name");
    expect_punct("=");
    if (at_keyword("project")) {
      take();
      expect_punct("(");
      ProjectPart p;
      do {
        if (at_punct(",")) take();
        p.items.push_back(project_item());
      } while (peek().kind == TokenKind::Ident || at_punct(","));
      expect_punct(")");
      d.def = std::move(p);
    } else if (at_keyword("by")) {
      take();
      expect_punct("(");
      d.def = ByPart{expr()};
      expect_punct(")");
    } else if (at_keyword("join") || at_keyword("meet")) {
      const bool is_join = take().text == "join";
      expect_punct("(");
      Ident lhs = ident("part name");
      expect_punct(",");
      Ident rhs = ident("part name");
      expect_punct(")");
      if (is_join) {
        d.def = JoinPart{std::move(lhs), std::move(rhs)};
      } else {
        d.def = MeetPart{std::move(lhs), std::move(rhs)};
      }
    } else {
      fail({"'project'", "'by'", "'join'", "'meet'"});
    }
    d.span = since(start);
    return d;
  }

  ProjectItem project_item() {
    ProjectItem item;
    item.var = ident("variable name");
    if (at_punct("[")) {
      take();
      item.from = natural();
      if (at_punct("..")) {
        take();
        item.to = natural();
      }
      expect_punct("]");
    }
    item.span = since(item.var.span);
    return item;
  }

  ConstraintDecl constraint_decl() {
    const SourceSpan start = take().span;
    ConstraintDecl d;
    d.name = ident("constraint name");
    expect_keyword("on");
    d.part = ident("part name");
    expect_punct("=");
    d.body = expr();
    d.span = since(start);
    return d;
  }

  // Queries -------------------------------------------------------------------

  QueryAst query(bool with_prefix) {
    QueryAst q;
    const SourceSpan start = peek().span;
    if (with_prefix) q.is_assert = take().text == "assert";
    const Token& head = peek();
    if (head.is_keyword("allows") || head.is_keyword("ensures")) {
      const bool is_ensures = take().text == "ensures";
      expect_punct("(");
      Ident from = ident("part name");
      expect_punct("->");
      Ident to = ident("part name");
      expect_punct(",");
      ConstraintArg phi = constraint_arg();
      expect_punct(")");
      if (is_ensures) {
        q.kind = EnsuresQuery{std::move(from), std::move(to), std::move(phi)};
      } else {
        q.kind = AllowsQuery{std::move(from), std::move(to), std::move(phi)};
      }
    } else if (head.is_keyword("compatible") || head.is_keyword("determines")) {
      const bool is_determines = take().text == "determines";
      expect_punct("(");
      BehaviorRef lhs = behavior_ref();
      expect_punct(",");
      BehaviorRef rhs = behavior_ref();
      expect_punct(")");
      if (is_determines) {
        q.kind = DeterminesQuery{std::move(lhs), std::move(rhs)};
      } else {
        q.kind = CompatibleQuery{std::move(lhs), std::move(rhs)};
      }
    } else if (head.is_keyword("entails")) {
      take();
      expect_punct("(");
      ConstraintArg lhs = constraint_arg();
      expect_punct(",");
      ConstraintArg rhs = constraint_arg();
      expect_punct(")");
      q.kind = EntailsQuery{std::move(lhs), std::move(rhs)};
    } else if (head.is_keyword("leq") || head.is_keyword("meet") || head.is_keyword("join")) {
      const std::string which = take().text;
      expect_punct("(");
      Ident lhs = ident("part name");
      expect_punct(",");
      Ident rhs = ident("part name");
      expect_punct(")");
      if (which == "leq") {
        q.kind = LeqQuery{std::move(lhs), std::move(rhs)};
      } else if (which == "meet") {
        q.kind = MeetQuery{std::move(lhs), std::move(rhs)};
      } else {
        q.kind = JoinQuery{std::move(lhs), std::move(rhs)};
      }
    } else if (head.is_keyword("laws")) {
      take();
      q.kind = LawsQuery{};
    } else {
      fail({"'allows'", "'ensures'", "'compatible'", "'determines'", "'entails'", "'leq'", "'meet'", "'join'", "'laws'"},
           "expected query kind, found " + head.describe());
    }
    q.span = since(start);
    return q;
  }

  ConstraintArg constraint_arg() {
    ConstraintArg c;
    c.expr = expr();
    if (at_keyword("on")) {
      take();
      c.on = ident("part name");
    }
    c.span = since(c.expr->span);
    return c;
  }

  BehaviorRef behavior_ref() {
    BehaviorRef r;
    r.part = ident("part name");
    if (at_punct("[")) {
      take();
      r.index = natural();
      expect_punct("]");
    } else if (at_punct("{")) {
      take();
      do {
        Ident key = ident("field name");
        if (at_punct("[")) {
          take();
          const std::size_t t = natural();
          expect_punct("]");
          key.name += "[" + std::to_string(t) + "]";
          key.span = since(key.span);
        }
        expect_punct("=");
        r.fields.emplace_back(std::move(key), expr());
      } while (at_punct(",") && (take(), true));
      expect_punct("}");
    } else {
      fail({"'{'", "'['"});
    }
    r.span = since(r.part.span);
    return r;
  }

  // Expressions -------------------------------------------------------------

  ExprPtr make(SourceSpan start, decltype(Expr::node) node) {
    return std::make_shared<const Expr>(Expr{since(start), std::move(node)});
  }

  ExprPtr expr() { return implies(); }

  ExprPtr implies() {
    ExprPtr lhs = or_expr();
    if (at_keyword("implies")) {
      take();
      ExprPtr rhs = implies();
      const SourceSpan start = lhs->span;
      return make(start, Binary{BinaryOp::Implies, std::move(lhs), std::move(rhs)});
    }
    return lhs;
  }

  ExprPtr or_expr() {
    ExprPtr lhs = and_expr();
    while (at_keyword("or")) {
      take();
      ExprPtr rhs = and_expr();
      const SourceSpan start = lhs->span;
      lhs = make(start, Binary{BinaryOp::Or, std::move(lhs), std::move(rhs)});
    }
    return lhs;
  }

  ExprPtr and_expr() {
    ExprPtr lhs = not_expr();
    while (at_keyword("and")) {
      take();
      ExprPtr rhs = not_expr();
      const SourceSpan start = lhs->span;
      lhs = make(start, Binary{BinaryOp::And, std::move(lhs), std::move(rhs)});
    }
    return lhs;
  }

  ExprPtr not_expr() {
    if (at_keyword("not")) {
      const SourceSpan start = take().span;
      ExprPtr operand = not_expr();
      return make(start, Unary{UnaryOp::Not, std::move(operand)});
    }
    return comparison();
  }

  ExprPtr comparison() {
    ExprPtr lhs = sum();
    static const std::vector<std::pair<std::string_view, BinaryOp>> ops{
        {"=", BinaryOp::Eq}, {"!=", BinaryOp::Ne}, {"<", BinaryOp::Lt},
        {"<=", BinaryOp::Le}, {">", BinaryOp::Gt}, {">=", BinaryOp::Ge}};
    for (const auto& [text, op] : ops) {
      if (at_punct(text)) {
        take();
        ExprPtr rhs = sum();
        const SourceSpan start = lhs->span;
        return make(start, Binary{op, std::move(lhs), std::move(rhs)});
      }
    }
    return lhs;
  }

  ExprPtr sum() {
    ExprPtr lhs = product();
    while (at_punct("+") || at_punct("-")) {
      const BinaryOp op = take().text == "+" ? BinaryOp::Add : BinaryOp::Sub;
      ExprPtr rhs = product();
      const SourceSpan start = lhs->span;
      lhs = make(start, Binary{op, std::move(lhs), std::move(rhs)});
    }
    return lhs;
  }

  ExprPtr product() {
    ExprPtr lhs = unary();
    while (at_punct("*") || at_punct("/")) {
      const BinaryOp op = take().text == "*" ? BinaryOp::Mul : BinaryOp::Div;
      ExprPtr rhs = unary();
      const SourceSpan start = lhs->span;
      lhs = make(start, Binary{op, std::move(lhs), std::move(rhs)});
    }
    return lhs;
  }

  ExprPtr unary() {
    if (at_punct("-")) {
      const SourceSpan start = take().span;
      ExprPtr operand = unary();
      return make(start, Unary{UnaryOp::Negate, std::move(operand)});
    }
    return primary();
  }

  ExprPtr primary() {
    const Token& t = peek();
    const SourceSpan start = t.span;
    if (t.kind == TokenKind::Number) {
      take();
      return make(start, NumberLit{Rational::parse(t.text)});
    }
    if (t.is_keyword("true") || t.is_keyword("false")) {
      take();
      return make(start, BoolLit{t.text == "true"});
    }
    if (t.kind == TokenKind::Ident) {
      take();
      VarRef v{t.text, nullptr};
      if (at_punct("[")) {
        take();
        v.index = expr();
        expect_punct("]");
      }
      return make(start, std::move(v));
    }
    if (t.is_punct("(")) {
      take();
      ExprPtr inner = expr();
      expect_punct(")");
      // Parentheses only regroup; the node keeps the inner span widened.
      return std::make_shared<const Expr>(Expr{since(start), inner->node});
    }
    if (t.is_keyword("abs")) {
      take();
      expect_punct("(");
      ExprPtr arg = expr();
      expect_punct(")");
      return make(start, AbsCall{std::move(arg)});
    }
    if (t.is_keyword("forall") || t.is_keyword("exists")) {
      Quantified q;
      q.universal = take().text == "forall";
      q.var = ident("bound variable");
      expect_keyword("in");
      q.lo = sum();
      expect_punct("..");
      q.hi = sum();
      expect_punct(":");
      q.body = expr();
      return make(start, std::move(q));
    }
    if (t.is_keyword("allows") || t.is_keyword("ensures")) {
      Modal m;
      m.ensures = take().text == "ensures";
      expect_punct("(");
      m.from = ident("part name");
      expect_punct("->");
      m.to = ident("part name");
      expect_punct(",");
      m.body = expr();
      expect_punct(")");
      return make(start, std::move(m));
    }
    fail({"expression"}, "expected expression, found " + t.describe());
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  SourceSpan last_;
};

template <class T, class F>
Parsed<T> run(std::string_view text, F&& body) {
  Parsed<T> out;
  try {
    Parser p(lex(text));
    out.value = body(p);
  } catch (const DslError& e) {
    out.diagnostic = e.diagnostic();
  }
  return out;
}

}  // namespace

Parsed<SpecAst> parse(std::string_view text) {
  return run<SpecAst>(text, [](Parser& p) { return p.spec(); });
}

Parsed<QueryAst> parse_query(std::string_view text) {
  return run<QueryAst>(text, [](Parser& p) { return p.lone_query(); });
}

std::string QueryAst::kind_name() const {
  static const char* const names[] = {"allows", "ensures", "compatible", "determines", "entails",
                                      "leq",    "meet",    "join",       "laws"};
  return names[kind.index()];
}

}  // namespace mereology::dsl
