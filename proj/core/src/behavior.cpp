#include "mereology/behavior.hpp"

#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace mereology {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

std::string indexed_name(const std::string& name, std::size_t time) {
  return name + "[" + std::to_string(time) + "]";
}

std::optional<Rational> Behavior::lookup(const std::string& name, std::optional<std::size_t> time) const {
  return std::visit(overloaded{
                        [&](const Record& r) -> std::optional<Rational> {
                          const std::string key = time ? indexed_name(name, *time) : name;
                          for (const auto& b : r) {
                            if (b.name == key) return b.value;
                          }
                          return std::nullopt;
                        },
                        [&](const Trajectory& t) -> std::optional<Rational> {
                          if (!time || *time >= t.states.size()) return std::nullopt;
                          for (std::size_t i = 0; i < t.variables.size(); ++i) {
                            if (t.variables[i] == name) return t.states[*time][i];
                          }
                          return std::nullopt;
                        },
                        [&](const Tuple& parts) -> std::optional<Rational> {
                          for (const auto& b : parts) {
                            if (auto v = b.lookup(name, time)) return v;
                          }
                          return std::nullopt;
                        },
                        [](const auto&) -> std::optional<Rational> { return std::nullopt; },
                    },
                    value_);
}

std::vector<std::string> Behavior::variables() const {
  std::vector<std::string> out;
  if (const auto* r = std::get_if<Record>(&value_)) {
    for (const auto& b : *r) out.push_back(b.name);
  } else if (const auto* t = std::get_if<Trajectory>(&value_)) {
    for (std::size_t time = 0; time < t->states.size(); ++time) {
      for (const auto& v : t->variables) out.push_back(indexed_name(v, time));
    }
  }
  return out;
}

std::string Behavior::to_string() const {
  return std::visit(overloaded{
                        [](const Token& t) { return t.name; },
                        [](const Rational& r) { return r.to_string(); },
                        [](const Record& r) {
                          std::string s = "(";
                          for (std::size_t i = 0; i < r.size(); ++i) {
                            if (i) s += ", ";
                            s += r[i].name + "=" + r[i].value.to_string();
                          }
                          return s + ")";
                        },
                        [](const Trajectory& t) {
                          std::string s = "[";
                          for (std::size_t time = 0; time < t.states.size(); ++time) {
                            if (time) s += "; ";
                            for (std::size_t i = 0; i < t.variables.size(); ++i) {
                              if (i) s += ", ";
                              s += t.states[time][i].to_string();
                            }
                          }
                          return s + "]";
                        },
                        [](const Tuple& t) {
                          std::string s = "<";
                          for (std::size_t i = 0; i < t.size(); ++i) {
                            if (i) s += ", ";
                            s += t[i].to_string();
                          }
                          return s + ">";
                        },
                    },
                    value_);
}

std::size_t BehaviorHash::operator()(const Behavior& b) const {
  return std::hash<std::string>{}(std::to_string(b.value().index()) + ":" + b.to_string());
}

BehaviorType::BehaviorType(std::string id, std::vector<Behavior> labels) : id_(std::move(id)), labels_(std::move(labels)) {
  if (labels_.empty()) throw std::invalid_argument("behavior type '" + id_ + "' is empty");
  std::unordered_set<Behavior, BehaviorHash> seen;
  for (const auto& b : labels_) {
    if (!seen.insert(b).second) throw std::invalid_argument("behavior type '" + id_ + "' repeats label " + b.to_string());
  }
}

std::optional<std::size_t> BehaviorType::index_of(const Behavior& b) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == b) return i;
  }
  return std::nullopt;
}

}  // namespace mereology
