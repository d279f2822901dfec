#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mereology/model.hpp"

namespace mereology {

/// Enough information to replay a failing check by hand.
struct Counterexample {
  std::vector<std::string> parts;
  std::vector<std::size_t> behaviors;
  std::vector<std::string> constraints;  ///< bit strings, behavior 0 first
  std::string detail;
};

struct LawReport {
  std::string law;
  std::string system_id;
  bool passed = true;
  std::size_t checks = 0;
  std::optional<Counterexample> counterexample;  ///< set iff !passed
};

struct LawSuiteOptions {
  /// Parts with at most this many behaviors get every constraint.
  std::size_t exhaustive_limit = 6;
  /// Otherwise this many seeded random constraints, plus the point
  /// constraints.
  std::size_t samples = 64;
};

/// Names of every law, in report order.
const std::vector<std::string>& law_names();

/// Runs every law over all ordered pairs (and chains) of the model's parts,
/// with Top and Bottom added when absent. One report per law; a law fails
/// on its first counterexample.
std::vector<LawReport> law_suite(const SystemModel& model, std::uint64_t seed, const LawSuiteOptions& options = {});

}  // namespace mereology
