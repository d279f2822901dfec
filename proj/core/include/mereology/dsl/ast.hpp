#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mereology/dsl/source.hpp"
#include "mereology/rational.hpp"

namespace mereology::dsl {

struct Ident {
  std::string name;
  SourceSpan span;
};

// Expressions ---------------------------------------------------------------

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class UnaryOp { Negate, Not };
enum class BinaryOp { Add, Sub, Mul, Div, Eq, Ne, Lt, Le, Gt, Ge, And, Or, Implies };

struct NumberLit {
  Rational value;
};
struct BoolLit {
  bool value = false;
};
/// `x` or `x[index]`.
struct VarRef {
  std::string name;
  ExprPtr index;  ///< may be null
};
struct Unary {
  UnaryOp op;
  ExprPtr operand;
};
struct Binary {
  BinaryOp op;
  ExprPtr lhs;
  ExprPtr rhs;
};
/// `abs(e)`.
struct AbsCall {
  ExprPtr arg;
};
/// `forall t in lo..hi: body` / `exists ...`.
struct Quantified {
  bool universal = true;
  Ident var;
  ExprPtr lo;
  ExprPtr hi;
  ExprPtr body;
};
/// `allows(P -> Q, body)` / `ensures(P -> Q, body)` used as a predicate on Q.
struct Modal {
  bool ensures = false;
  Ident from;
  Ident to;
  ExprPtr body;
};

struct Expr {
  SourceSpan span;
  std::variant<NumberLit, BoolLit, VarRef, Unary, Binary, AbsCall, Quantified, Modal> node;
};

// Systems -------------------------------------------------------------------

struct RangeValues {
  ExprPtr lo;
  ExprPtr hi;
  ExprPtr step;  ///< may be null: step 1
};
struct ListValues {
  std::vector<ExprPtr> values;
};

/// `x in lo..hi [step s]` or `x in {a, b, c}`.
struct GridBinding {
  Ident var;
  std::variant<RangeValues, ListValues> values;
  SourceSpan span;
};

struct GridClause {
  std::vector<GridBinding> bindings;
  ExprPtr where;  ///< may be null
  SourceSpan span;
};

struct Assign {
  Ident var;
  ExprPtr value;
};

struct SimulateClause {
  GridClause init;
  std::vector<Assign> updates;
  std::size_t horizon = 0;
  SourceSpan horizon_span;
  SourceSpan span;
};

/// `a` (opaque token) or `(x = 1, y = 2)` (record).
struct ExplicitItem {
  std::optional<Ident> token;
  std::vector<std::pair<Ident, ExprPtr>> fields;
  SourceSpan span;
};

struct ExplicitList {
  std::vector<ExplicitItem> items;
  SourceSpan span;
};

/// `name = value`, `name = {a, b}` or `name = lo..hi [step s]`.
struct GeneratorArg {
  Ident name;
  std::variant<ExprPtr, ListValues, RangeValues> value;
  SourceSpan span;
};

struct GeneratorCall {
  Ident name;
  std::vector<GeneratorArg> args;
  SourceSpan span;
};

struct ParamDecl {
  Ident name;
  ExprPtr value;
};

struct SystemDecl {
  Ident name;
  std::vector<ParamDecl> params;
  std::variant<ExplicitList, GridClause, SimulateClause, GeneratorCall> behaviors;
  SourceSpan span;
};

// Parts and constraints -----------------------------------------------------

/// `x`, `x[t]` or `x[t1..t2]`.
struct ProjectItem {
  Ident var;
  std::optional<std::size_t> from;
  std::optional<std::size_t> to;
  SourceSpan span;
};

struct ProjectPart {
  std::vector<ProjectItem> items;
};
struct ByPart {
  ExprPtr observe;
};
struct JoinPart {
  Ident lhs;
  Ident rhs;
};
struct MeetPart {
  Ident lhs;
  Ident rhs;
};

struct PartDecl {
  Ident name;
  Ident system;
  std::variant<ProjectPart, ByPart, JoinPart, MeetPart> def;
  SourceSpan span;
};

struct ConstraintDecl {
  Ident name;
  Ident part;
  ExprPtr body;
  SourceSpan span;
};

using Decl = std::variant<SystemDecl, PartDecl, ConstraintDecl>;

// Queries -------------------------------------------------------------------

/// A constraint operand: an expression, optionally pinned to a part.
struct ConstraintArg {
  ExprPtr expr;
  std::optional<Ident> on;
  SourceSpan span;
};

/// `P{x = 1, y = 2}` or `P[3]`.
struct BehaviorRef {
  Ident part;
  std::vector<std::pair<Ident, ExprPtr>> fields;  ///< keys may read "T[1]"
  std::optional<std::size_t> index;
  SourceSpan span;
};

struct AllowsQuery {
  Ident from;
  Ident to;
  ConstraintArg phi;
};
struct EnsuresQuery {
  Ident from;
  Ident to;
  ConstraintArg phi;
};
struct CompatibleQuery {
  BehaviorRef lhs;
  BehaviorRef rhs;
};
struct DeterminesQuery {
  BehaviorRef lhs;
  BehaviorRef rhs;
};
struct EntailsQuery {
  ConstraintArg lhs;
  ConstraintArg rhs;
};
struct LeqQuery {
  Ident lhs;
  Ident rhs;
};
struct MeetQuery {
  Ident lhs;
  Ident rhs;
};
struct JoinQuery {
  Ident lhs;
  Ident rhs;
};
struct LawsQuery {};

struct QueryAst {
  bool is_assert = false;
  std::variant<AllowsQuery, EnsuresQuery, CompatibleQuery, DeterminesQuery, EntailsQuery, LeqQuery, MeetQuery, JoinQuery,
               LawsQuery>
      kind;
  SourceSpan span;

  std::string kind_name() const;
};

struct SpecAst {
  std::vector<Decl> decls;
  std::vector<QueryAst> queries;
};

}  // namespace mereology::dsl
