#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "mereology/rational.hpp"

namespace mereology {

/// A single named variable with an exact value.
struct Binding {
  std::string name;
  Rational value;
  friend bool operator==(const Binding&, const Binding&) = default;
};

/// A time-indexed run of a discrete system: states[t][i] is the value of
/// variables[i] at time t.
struct Trajectory {
  std::vector<std::string> variables;
  std::vector<std::vector<Rational>> states;
  friend bool operator==(const Trajectory&, const Trajectory&) = default;

  std::size_t horizon() const { return states.empty() ? 0 : states.size() - 1; }
};

/// One behavior of a system or part. Equality is exact.
class Behavior {
 public:
  struct Token {
    std::string name;
    friend bool operator==(const Token&, const Token&) = default;
  };
  using Record = std::vector<Binding>;
  using Tuple = std::vector<Behavior>;
  using Value = std::variant<Token, Rational, Record, Trajectory, Tuple>;

  Behavior() : value_(Token{}) {}
  explicit Behavior(Value v) : value_(std::move(v)) {}

  static Behavior token(std::string name) { return Behavior(Token{std::move(name)}); }
  static Behavior number(Rational r) { return Behavior(std::move(r)); }
  static Behavior record(Record r) { return Behavior(std::move(r)); }
  static Behavior trajectory(Trajectory t) { return Behavior(std::move(t)); }
  static Behavior tuple(Tuple t) { return Behavior(std::move(t)); }

  const Value& value() const { return value_; }

  /// Looks a variable up. Records answer plain names and "name[t]" keys;
  /// trajectories answer only time-indexed lookups; tuples ask each component
  /// in turn.
  std::optional<Rational> lookup(const std::string& name, std::optional<std::size_t> time = std::nullopt) const;

  /// Variable names visible through lookup().
  std::vector<std::string> variables() const;

  std::string to_string() const;

  friend bool operator==(const Behavior& a, const Behavior& b) { return a.value_ == b.value_; }

 private:
  Value value_;
};

std::string indexed_name(const std::string& name, std::size_t time);

struct BehaviorHash {
  std::size_t operator()(const Behavior& b) const;
};

/// A finite, nonempty set of pairwise distinct behaviors.
class BehaviorType {
 public:
  /// Throws std::invalid_argument if empty or if labels repeat.
  BehaviorType(std::string id, std::vector<Behavior> labels);

  const std::string& id() const { return id_; }
  std::size_t size() const { return labels_.size(); }
  const Behavior& operator[](std::size_t i) const { return labels_.at(i); }
  const std::vector<Behavior>& labels() const { return labels_; }
  std::optional<std::size_t> index_of(const Behavior& b) const;

 private:
  std::string id_;
  std::vector<Behavior> labels_;
};

using BehaviorTypePtr = std::shared_ptr<const BehaviorType>;

inline BehaviorTypePtr make_behavior_type(std::string id, std::vector<Behavior> labels) {
  return std::make_shared<const BehaviorType>(std::move(id), std::move(labels));
}

}  // namespace mereology
