#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mereology/behavior.hpp"
#include "mereology/model.hpp"
#include "mereology/rational.hpp"

namespace mereology {

/// One variable of a grid: either an arithmetic range or an explicit list.
struct GridAxis {
  std::string name;
  std::vector<Rational> values;

  /// min, min+step, ..., max. Throws std::invalid_argument unless
  /// min <= max, step > 0 and step divides max - min.
  static GridAxis range(std::string name, const Rational& min, const Rational& max, const Rational& step);
  /// Throws std::invalid_argument on an empty or repeating list.
  static GridAxis list(std::string name, std::vector<Rational> values);
};

/// A finite grid of records, enumerated row-major (first axis outermost),
/// optionally filtered.
struct GridSpec {
  std::vector<GridAxis> axes;
  std::function<bool(const Behavior::Record&)> filter;
};

std::vector<Behavior::Record> grid_points(const GridSpec& grid);

/// Throws std::invalid_argument if the filtered grid is empty.
BehaviorTypePtr build_grid_system(std::string id, const GridSpec& grid);

using UpdateFn = std::function<Rational(std::span<const Rational>)>;

/// A deterministic discrete-time system run from every initial condition.
struct SimSpec {
  std::vector<std::string> state;
  GridSpec initial;  ///< axes name the state variables, in order
  std::vector<UpdateFn> update;  ///< update[i] computes the next value of state[i]
  std::size_t horizon = 1;
};

std::vector<Trajectory> simulate(const SimSpec& spec);
BehaviorTypePtr build_trajectory_system(std::string id, const SimSpec& spec);

/// Observes the given variable at the given times as a record keyed
/// "name[t]".
Part project_times(const BehaviorTypePtr& system, std::string part_name, const std::string& variable,
                   std::span<const std::size_t> times);

/// Observes the given record variables.
Part project_variables(const BehaviorTypePtr& system, std::string part_name, std::span<const std::string> variables);

// Running examples --------------------------------------------------------

/// p, w in [-5, 5] with step 1/2.
GridSpec default_bicycle_grid();

/// Grid points (p, w) with w >= r p; parts Pedal (p) and Wheel (w).
/// Any filter already on `grid` is applied as well.
ModelBundle build_bicycle(const Rational& r, GridSpec grid = default_bicycle_grid());

/// Temperature trajectories T[t+1] = T[t] + k (R - T[t]) for t < horizon, one
/// per initial temperature. Parts Water_t for every t, plus Water_<t1>_<t2>...
/// for every requested window.
ModelBundle build_water(const Rational& k, const Rational& room, std::vector<Rational> init_temps, std::size_t horizon,
                        const std::vector<std::vector<std::size_t>>& windows = {});

inline constexpr std::size_t kMaxEcosystemHorizon = 10;

struct EcosystemParams {
  Rational fox_death;        ///< d_f
  Rational rabbit_birth;     ///< b_r
  Rational fox_gain;         ///< c_f
  Rational rabbit_loss;      ///< c_r
};

/// A window over which a variable ("f" or "r") is joined across times.
struct TimeWindow {
  std::string variable;
  std::vector<std::size_t> times;
};

/// f, r in {0, 10, 20, 30}.
GridSpec default_ecosystem_grid();

/// Lotka–Volterra trajectories from every initial (f, r); parts Fox_t and
/// Rabbit_t for every t, plus joins over the requested windows named
/// Fox_<t1>_<t2>... or Rabbit_<t1>_<t2>....
/// Throws std::invalid_argument if horizon > kMaxEcosystemHorizon.
ModelBundle build_ecosystem(const EcosystemParams& params, const GridSpec& init_grid, std::size_t horizon,
                            const std::vector<TimeWindow>& windows = {});

inline EcosystemParams default_ecosystem_params() {
  return {Rational(1, 10), Rational(1, 5), Rational(1, 100), Rational(1, 100)};
}

// Random systems ------------------------------------------------------------

/// Opaque behaviors s0..s{size-1}; parts P0..P{num_parts-1} are uniformly
/// random surjections; Top and Bottom are always included.
/// Requires 1 <= size <= 8 and 2 <= num_parts <= 4.
ModelBundle random_system(std::uint64_t seed, std::size_t size, std::size_t num_parts);

/// Draws size in [1, max_size] and num_parts in [2, 4] from the seed.
ModelBundle random_system(std::uint64_t seed, std::size_t max_size = 8);

}  // namespace mereology
