#include "mereology/models.hpp"

#include <random>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "mereology/lattice.hpp"

namespace mereology {

GridAxis GridAxis::range(std::string name, const Rational& min, const Rational& max, const Rational& step) {
  if (step.sign() <= 0) throw std::invalid_argument("grid axis '" + name + "': step must be positive");
  if (max < min) throw std::invalid_argument("grid axis '" + name + "': min exceeds max");
  const Rational span = (max - min) / step;
  if (!span.is_integer()) throw std::invalid_argument("grid axis '" + name + "': step does not divide max - min");
  GridAxis axis{std::move(name), {}};
  const std::int64_t n = span.to_int64();
  axis.values.reserve(static_cast<std::size_t>(n + 1));
  for (std::int64_t i = 0; i <= n; ++i) axis.values.push_back(min + step * Rational(i));
  return axis;
}

GridAxis GridAxis::list(std::string name, std::vector<Rational> values) {
  if (values.empty()) throw std::invalid_argument("grid axis '" + name + "' has no values");
  std::set<Rational> seen(values.begin(), values.end());
  if (seen.size() != values.size()) throw std::invalid_argument("grid axis '" + name + "' repeats a value");
  return GridAxis{std::move(name), std::move(values)};
}

std::vector<Behavior::Record> grid_points(const GridSpec& grid) {
  std::vector<Behavior::Record> out;
  if (grid.axes.empty()) return out;
  std::vector<std::size_t> cursor(grid.axes.size(), 0);
  for (const auto& axis : grid.axes) {
    if (axis.values.empty()) return out;
  }
  while (true) {
    Behavior::Record point;
    point.reserve(grid.axes.size());
    for (std::size_t i = 0; i < grid.axes.size(); ++i) point.push_back({grid.axes[i].name, grid.axes[i].values[cursor[i]]});
    if (!grid.filter || grid.filter(point)) out.push_back(std::move(point));
    std::size_t i = grid.axes.size();
    while (i > 0) {
      --i;
      if (++cursor[i] < grid.axes[i].values.size()) break;
      cursor[i] = 0;
      if (i == 0) return out;
    }
  }
}

BehaviorTypePtr build_grid_system(std::string id, const GridSpec& grid) {
  std::vector<Behavior> labels;
  for (auto& point : grid_points(grid)) labels.push_back(Behavior::record(std::move(point)));
  if (labels.empty()) throw std::invalid_argument("system '" + id + "': the filtered grid is empty");
  return make_behavior_type(std::move(id), std::move(labels));
}

std::vector<Trajectory> simulate(const SimSpec& spec) {
  if (spec.horizon < 1) throw std::invalid_argument("simulation horizon must be at least 1");
  if (spec.update.size() != spec.state.size()) throw std::invalid_argument("need one update per state variable");
  if (spec.initial.axes.size() != spec.state.size()) throw std::invalid_argument("initial grid must cover the state");
  for (std::size_t i = 0; i < spec.state.size(); ++i) {
    if (spec.initial.axes[i].name != spec.state[i]) {
      throw std::invalid_argument("initial grid axis '" + spec.initial.axes[i].name + "' does not match state variable '" +
                                  spec.state[i] + "'");
    }
  }
  std::vector<Trajectory> out;
  for (const auto& point : grid_points(spec.initial)) {
    Trajectory t{spec.state, {}};
    std::vector<Rational> current;
    for (const auto& b : point) current.push_back(b.value);
    t.states.push_back(current);
    for (std::size_t step = 0; step < spec.horizon; ++step) {
      std::vector<Rational> next;
      next.reserve(current.size());
      for (const auto& f : spec.update) next.push_back(f(current));
      t.states.push_back(next);
      current = std::move(next);
    }
    out.push_back(std::move(t));
  }
  return out;
}

BehaviorTypePtr build_trajectory_system(std::string id, const SimSpec& spec) {
  std::vector<Behavior> labels;
  for (auto& t : simulate(spec)) labels.push_back(Behavior::trajectory(std::move(t)));
  if (labels.empty()) throw std::invalid_argument("system '" + id + "' has no initial conditions");
  return make_behavior_type(std::move(id), std::move(labels));
}

Part project_times(const BehaviorTypePtr& system, std::string part_name, const std::string& variable,
                   std::span<const std::size_t> times) {
  return part_from_observation(system, std::move(part_name), [&](const Behavior& b) {
    Behavior::Record r;
    for (std::size_t t : times) {
      auto v = b.lookup(variable, t);
      if (!v) throw std::invalid_argument("behavior has no value for " + indexed_name(variable, t));
      r.push_back({indexed_name(variable, t), *v});
    }
    return Behavior::record(std::move(r));
  });
}

Part project_variables(const BehaviorTypePtr& system, std::string part_name, std::span<const std::string> variables) {
  return part_from_observation(system, std::move(part_name), [&](const Behavior& b) {
    Behavior::Record r;
    for (const auto& name : variables) {
      auto v = b.lookup(name);
      if (!v) throw std::invalid_argument("behavior has no variable '" + name + "'");
      r.push_back({name, *v});
    }
    return Behavior::record(std::move(r));
  });
}

GridSpec default_bicycle_grid() {
  return GridSpec{{GridAxis::range("p", Rational(-5), Rational(5), Rational(1, 2)),
                   GridAxis::range("w", Rational(-5), Rational(5), Rational(1, 2))},
                  {}};
}

ModelBundle build_bicycle(const Rational& r, GridSpec grid) {
  if (grid.axes.size() != 2 || grid.axes[0].name != "p" || grid.axes[1].name != "w") {
    throw std::invalid_argument("bicycle grid must range over p then w");
  }
  auto inner = std::move(grid.filter);
  grid.filter = [r, inner](const Behavior::Record& pt) {
    return pt[1].value >= r * pt[0].value && (!inner || inner(pt));
  };
  ModelBundle m;
  m.system = build_grid_system("Bicycle", grid);
  m.params = {{"r", r}};
  const std::vector<std::string> pedal{"p"};
  const std::vector<std::string> wheel{"w"};
  m.add_part("Pedal", project_variables(m.system, "Pedal", pedal));
  m.add_part("Wheel", project_variables(m.system, "Wheel", wheel));
  return m;
}

namespace {

std::string window_name(const std::string& prefix, const std::vector<std::size_t>& times) {
  std::string name = prefix;
  for (auto t : times) name += "_" + std::to_string(t);
  return name;
}

}  // namespace

ModelBundle build_water(const Rational& k, const Rational& room, std::vector<Rational> init_temps, std::size_t horizon,
                        const std::vector<std::vector<std::size_t>>& windows) {
  SimSpec spec;
  spec.state = {"T"};
  spec.initial.axes.push_back(GridAxis::list("T", std::move(init_temps)));
  spec.update.push_back([k, room](std::span<const Rational> s) { return s[0] + k * (room - s[0]); });
  spec.horizon = horizon;

  ModelBundle m;
  m.system = build_trajectory_system("Water", spec);
  m.params = {{"k", k}, {"R", room}};
  for (std::size_t t = 0; t <= horizon; ++t) {
    const std::vector<std::size_t> at{t};
    const std::string name = "Water_" + std::to_string(t);
    m.add_part(name, project_times(m.system, name, "T", at));
  }
  for (const auto& times : windows) {
    for (auto t : times) {
      if (t > horizon) throw std::invalid_argument("water window reaches past the horizon");
    }
    const std::string name = window_name("Water", times);
    m.add_part(name, project_times(m.system, name, "T", times));
  }
  return m;
}

GridSpec default_ecosystem_grid() {
  const std::vector<Rational> pops{Rational(0), Rational(10), Rational(20), Rational(30)};
  return GridSpec{{GridAxis::list("f", pops), GridAxis::list("r", pops)}, {}};
}

ModelBundle build_ecosystem(const EcosystemParams& params, const GridSpec& init_grid, std::size_t horizon,
                            const std::vector<TimeWindow>& windows) {
  if (horizon > kMaxEcosystemHorizon) {
    throw std::invalid_argument("ecosystem horizon " + std::to_string(horizon) + " exceeds the cap of " +
                                std::to_string(kMaxEcosystemHorizon));
  }
  SimSpec spec;
  spec.state = {"f", "r"};
  spec.initial = init_grid;
  spec.update.push_back([params](std::span<const Rational> s) {
    return (Rational(1) - params.fox_death) * s[0] + params.fox_gain * s[1] * s[0];
  });
  spec.update.push_back([params](std::span<const Rational> s) {
    return (Rational(1) + params.rabbit_birth) * s[1] - params.rabbit_loss * s[1] * s[0];
  });
  spec.horizon = horizon;

  ModelBundle m;
  m.system = build_trajectory_system("Ecosystem", spec);
  m.params = {{"d_f", params.fox_death}, {"b_r", params.rabbit_birth}, {"c_f", params.fox_gain}, {"c_r", params.rabbit_loss}};
  for (std::size_t t = 0; t <= horizon; ++t) {
    const std::vector<std::size_t> at{t};
    m.add_part("Fox_" + std::to_string(t), project_times(m.system, "Fox_" + std::to_string(t), "f", at));
    m.add_part("Rabbit_" + std::to_string(t), project_times(m.system, "Rabbit_" + std::to_string(t), "r", at));
  }
  for (const auto& w : windows) {
    if (w.times.empty()) throw std::invalid_argument("empty ecosystem window");
    const std::string prefix = w.variable == "f" ? "Fox" : w.variable == "r" ? "Rabbit" : "";
    if (prefix.empty()) throw std::invalid_argument("ecosystem window over unknown variable '" + w.variable + "'");
    std::optional<Part> acc;
    for (auto t : w.times) {
      if (t > horizon) throw std::invalid_argument("ecosystem window reaches past the horizon");
      const Part& at = m.part(prefix + "_" + std::to_string(t));
      acc = acc ? join(*acc, at) : at;
    }
    const std::string name = window_name(prefix, w.times);
    m.add_part(name, acc->renamed(name));
  }
  return m;
}

namespace {

std::size_t draw(std::mt19937_64& rng, std::size_t lo, std::size_t hi) { return lo + rng() % (hi - lo + 1); }

Part random_surjection(std::mt19937_64& rng, const BehaviorTypePtr& system, const std::string& name) {
  const std::size_t n = system->size();
  const std::size_t m = draw(rng, 1, n);
  std::vector<std::size_t> map(n);
  while (true) {
    std::vector<bool> hit(m, false);
    std::size_t hits = 0;
    for (auto& a : map) {
      a = draw(rng, 0, m - 1);
      if (!hit[a]) {
        hit[a] = true;
        ++hits;
      }
    }
    if (hits == m) break;
  }
  std::unordered_map<std::size_t, std::size_t> relabel;
  for (auto& a : map) a = relabel.try_emplace(a, relabel.size()).first->second;
  std::vector<Behavior> labels;
  for (std::size_t a = 0; a < m; ++a) labels.push_back(Behavior::token(name + "." + std::to_string(a)));
  return Part(system, name, std::move(labels), std::move(map));
}

}  // namespace

ModelBundle random_system(std::uint64_t seed, std::size_t size, std::size_t num_parts) {
  if (size < 1 || size > 8) throw std::invalid_argument("random system size must be in [1, 8]");
  if (num_parts < 2 || num_parts > 4) throw std::invalid_argument("random system part count must be in [2, 4]");
  std::mt19937_64 rng(seed);
  std::vector<Behavior> labels;
  for (std::size_t s = 0; s < size; ++s) labels.push_back(Behavior::token("s" + std::to_string(s)));
  ModelBundle m;
  m.system = make_behavior_type("random-" + std::to_string(seed), std::move(labels));
  for (std::size_t i = 0; i < num_parts; ++i) {
    const std::string name = "P" + std::to_string(i);
    m.add_part(name, random_surjection(rng, m.system, name));
  }
  m.add_part("Top", top(m.system));
  m.add_part("Bottom", bottom(m.system));
  return m;
}

ModelBundle random_system(std::uint64_t seed, std::size_t max_size) {
  if (max_size < 1 || max_size > 8) throw std::invalid_argument("random system max size must be in [1, 8]");
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  const std::size_t size = draw(rng, 1, max_size);
  const std::size_t parts = draw(rng, 2, 4);
  return random_system(seed, size, parts);
}

}  // namespace mereology
