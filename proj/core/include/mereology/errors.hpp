#pragma once

#include <stdexcept>
#include <string>

namespace mereology {

/// Two operands live over different ambient systems.
class SystemMismatch : public std::invalid_argument {
 public:
  explicit SystemMismatch(const std::string& what) : std::invalid_argument(what) {}
};

/// A constraint was applied to a behavior type it is not carried by.
class CarrierMismatch : public std::invalid_argument {
 public:
  explicit CarrierMismatch(const std::string& what) : std::invalid_argument(what) {}
};

/// A behavior index does not name a behavior of the relevant type.
class IndexOutOfRange : public std::out_of_range {
 public:
  explicit IndexOutOfRange(const std::string& what) : std::out_of_range(what) {}
};

/// A part map that misses some codomain behavior.
class NotSurjective : public std::invalid_argument {
 public:
  explicit NotSurjective(const std::string& what) : std::invalid_argument(what) {}
};

/// An accessibility relation that is not reflexive, symmetric and transitive.
class NotAnEquivalence : public std::invalid_argument {
 public:
  explicit NotAnEquivalence(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace mereology
