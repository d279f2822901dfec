#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mereology/constraint.hpp"
#include "mereology/dsl/ast.hpp"
#include "mereology/dsl/source.hpp"
#include "mereology/model.hpp"
#include "mereology/part.hpp"

namespace mereology::dsl {

/// What the behaviors of the declared system look like.
enum class BehaviorShape { Tokens, Records, Trajectories };

struct NamedConstraint {
  std::string name;
  std::string part;
  Constraint value;
  std::vector<std::string> notes;
};

/// A query with every name resolved and every constraint evaluated.
struct ResolvedModal {
  bool ensures = false;
  std::string from_name;
  std::string to_name;
  Part from;
  Part to;
  Constraint phi;  ///< on `from`
};
struct ResolvedBehaviorPair {
  bool determines = false;
  std::string lhs_name;
  std::string rhs_name;
  Part lhs;
  std::size_t a = 0;
  Part rhs;
  std::size_t b = 0;
};
struct ResolvedEntails {
  std::string carrier_name;
  Constraint lhs;
  Constraint rhs;
};
struct ResolvedPartPair {
  enum class Op { Leq, Meet, Join };
  Op op = Op::Leq;
  std::string lhs_name;
  std::string rhs_name;
  Part lhs;
  Part rhs;
};
struct ResolvedLaws {};

struct ElaboratedQuery {
  QueryAst ast;
  std::variant<ResolvedModal, ResolvedBehaviorPair, ResolvedEntails, ResolvedPartPair, ResolvedLaws> op;
  std::vector<std::string> notes;
};


/// The elaborated form of a spec file: one system, its parts, its named
/// constraints, and its queries.
class Program {
 public:
  const SystemModel& model() const { return model_; }
  const std::string& system_name() const { return system_name_; }
  BehaviorShape shape() const { return shape_; }
  /// Record field names or trajectory state variables, in declaration order.
  const std::vector<std::string>& variables() const { return variables_; }
  std::size_t horizon() const { return horizon_; }
  const std::vector<NamedConstraint>& constraints() const { return constraints_; }
  const std::vector<ElaboratedQuery>& queries() const { return queries_; }

  /// Declared parts plus the builtins Top and Bottom.
  const Part* find_part(std::string_view name) const;
  /// Every part in declaration order, Top and Bottom last unless declared.
  std::vector<NamedPart> all_parts() const;

  /// Resolves a query against this program. Throws DslError.
  ElaboratedQuery elaborate_query(const QueryAst& query) const;

 private:
  friend class Elaborator;

  SystemModel model_;
  std::string system_name_;
  BehaviorShape shape_ = BehaviorShape::Tokens;
  std::vector<std::string> variables_;
  std::size_t horizon_ = 0;
  std::optional<Part> top_;
  std::optional<Part> bottom_;
  std::vector<NamedConstraint> constraints_;
  std::vector<ElaboratedQuery> queries_;
};

struct ElaborationResult {
  std::shared_ptr<const Program> program;  ///< null iff diagnostics is nonempty
  std::vector<Diagnostic> diagnostics;

  explicit operator bool() const { return program != nullptr; }
};

ElaborationResult elaborate(const SpecAst& spec);

/// Parse then elaborate.
ElaborationResult load(std::string_view text);

}  // namespace mereology::dsl
