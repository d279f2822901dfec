#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "mereology/dsl/elaborate.hpp"
#include "mereology/laws.hpp"
#include "mereology/part.hpp"

namespace mereology::dsl {

/// Blocks past this many are counted, not listed; so are labels within a block.
inline constexpr std::size_t kMaxListed = 20;

/// A behavior that backs up (or refutes) a boolean answer.
struct Witness {
  std::string role;  ///< "witness", "counterexample" or "factor"
  std::string part;  ///< the part or system the behavior belongs to
  std::string behavior;
};

struct ConstraintValue {
  std::string carrier;
  std::size_t carrier_size = 0;
  std::vector<std::string> satisfying;  ///< labels, in carrier order
};

struct Block {
  std::vector<std::string> labels;  ///< at most kMaxListed
  std::size_t size = 0;
};

/// A part shown as its partition of the system's behaviors.
struct PartSummary {
  std::string name;
  std::size_t size = 0;
  std::vector<Block> blocks;  ///< at most kMaxListed
  std::vector<std::string> equivalent_to;  ///< declared parts with the same partition
};

struct QueryResult {
  std::string query;
  std::string kind;
  bool is_assert = false;
  std::variant<bool, ConstraintValue, PartSummary> value;
  std::vector<Witness> witnesses;
  std::vector<LawReport> laws;  ///< laws queries only
  std::vector<std::string> notes;

  /// A falsified assert or a failed law.
  bool failed() const;
};

PartSummary summarize(const Part& part, const std::string& name, const std::vector<NamedPart>& declared);

QueryResult eval_query(const Program& program, const ElaboratedQuery& query);

}  // namespace mereology::dsl
