// Runs every acceptance criterion and prints one PASS/FAIL line for each.
// Exit status is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "constraints.hpp"
#include "mereo/cli.hpp"
#include "mereology/kripke.hpp"
#include "mereology/lattice.hpp"
#include "mereology/laws.hpp"
#include "mereology/modalities.hpp"
#include "mereology/models.hpp"
#include "mereology/quantifiers.hpp"
#include "mereology/relations.hpp"
#include "oracle.hpp"

namespace fs = std::filesystem;
using namespace mereology;

namespace {

constexpr std::uint64_t kSystems = 500;

struct Outcome {
  bool passed = true;
  std::string detail;

  void fail(const std::string& why) {
    if (passed) detail = why;
    passed = false;
  }
};

std::vector<Part> parts_of(const SystemModel& m) {
  std::vector<Part> out;
  for (const auto& np : m.parts) out.push_back(np.part);
  return oracle::parts_with_bounds(out);
}

std::string where(const SystemModel& m, const Part& p, const Part& q) {
  return m.system->id() + " (" + p.name() + ", " + q.name() + ")";
}

Outcome law_suite_on_random_systems() {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  std::size_t checks = 0;
  for (std::uint64_t seed = 0; seed < kSystems; ++seed) {
    const auto model = random_system(seed);
    for (const auto& r : law_suite(model, seed)) {
      checks += r.checks;
      if (!r.passed) out.fail(r.law + " fails on " + r.system_id + ": " + r.counterexample->detail);
    }
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (seconds >= 10.0) out.fail("took " + std::to_string(seconds) + " s");
  if (out.passed) {
    std::ostringstream s;
    s.precision(2);
    s << std::fixed << kSystems << " systems, " << law_names().size() << " laws, " << checks << " checks, " << seconds
      << " s";
    out.detail = s.str();
  }
  return out;
}

void check_four_conditions(const Part& p, const Part& q, bool expected, const std::string& at, Outcome& out) {
  const auto c = determination_conditions(p, q);
  if (!c.agree()) out.fail("conditions disagree on " + at);
  if (c.part_of != expected) out.fail("wrong verdict on " + at);
}

Outcome determination_equivalences() {
  Outcome out;
  std::size_t pairs = 0;
  for (std::uint64_t seed = 0; seed < kSystems; ++seed) {
    const auto model = random_system(seed);
    const auto parts = parts_of(model);
    for (const auto& p : parts) {
      for (const auto& q : parts) {
        check_four_conditions(p, q, oracle::part_of(q, p), where(model, p, q), out);
        ++pairs;
      }
    }
  }
  // A chain of coarsenings of 16 behaviors: s mod 16, 8, 4, 2, 1.
  std::vector<Behavior> labels;
  for (int i = 0; i < 16; ++i) labels.push_back(Behavior::token("s" + std::to_string(i)));
  const auto system = make_behavior_type("Chain", labels);
  std::vector<Part> chain;
  for (std::size_t mod : {16U, 8U, 4U, 2U, 1U}) {
    chain.push_back(part_from_observation(system, "mod" + std::to_string(mod), [&](const Behavior& b) {
      const auto& name = std::get<Behavior::Token>(b.value()).name;
      return Behavior::number(Rational(static_cast<std::int64_t>(std::stoul(name.substr(1)) % mod)));
    }));
  }
  for (std::size_t i = 0; i < chain.size(); ++i) {
    for (std::size_t j = 0; j < chain.size(); ++j) {
      check_four_conditions(chain[i], chain[j], i <= j, "chain " + chain[i].name() + " " + chain[j].name(), out);
    }
  }
  const auto bike = build_bicycle(2);
  check_four_conditions(bike.part("Pedal"), bike.part("Wheel"), false, "Pedal, Wheel", out);
  check_four_conditions(bike.part("Wheel"), bike.part("Pedal"), false, "Wheel, Pedal", out);
  if (out.passed) out.detail = std::to_string(pairs) + " random pairs, 25 chain pairs, 2 bicycle pairs";
  return out;
}

Outcome roundtrip_identity() {
  Outcome out;
  std::size_t pairs = 0;
  std::size_t identities = 0;
  for (std::uint64_t seed = 0; seed < kSystems; ++seed) {
    const auto model = random_system(seed);
    const auto parts = parts_of(model);
    for (const auto& p : parts) {
      if (p.size() > 6) continue;
      const auto all = oracle::constraints_on(p, 0);
      for (const auto& q : parts) {
        bool identity = true;
        for (const auto& phi : all) identity = identity && roundtrip_allows(p, q, phi) == phi;
        if (identity != part_leq(p, q).has_value()) out.fail("mismatch on " + where(model, p, q));
        identities += identity;
        ++pairs;
      }
    }
  }
  if (out.passed) out.detail = std::to_string(pairs) + " pairs, " + std::to_string(identities) + " identities";
  return out;
}

Outcome bicycle_reproduction() {
  Outcome out;
  const Rational r(2);
  const auto model = build_bicycle(r);
  const Part& pedal = model.part("Pedal");
  const Part& wheel = model.part("Wheel");
  const auto slow = Constraint::from_predicate(wheel.codomain_ptr(),
                                               [&](std::size_t b) { return *wheel.codomain()[b].lookup("w") <= 2; });
  std::set<Rational> got;
  for (std::size_t a : allows(wheel, pedal, slow).satisfying()) got.insert(*pedal.codomain()[a].lookup("p"));
  // p ≤ 2/r, over pedal speeds for which the grid has some admissible wheel speed.
  const auto grid = default_bicycle_grid();
  std::set<Rational> expected;
  for (const auto& p : grid.axes[0].values) {
    bool occurs = false;
    for (const auto& w : grid.axes[1].values) occurs = occurs || w >= r * p;
    if (occurs && p <= Rational(2) / r) expected.insert(p);
  }
  if (got != expected) out.fail("allowed pedal speeds differ from p <= 2/r");
  if (!join(pedal, wheel).same_partition(top(model.system))) out.fail("join(Pedal, Wheel) is not Top");
  if (out.passed) out.detail = std::to_string(got.size()) + " pedal speeds, join = Top";
  return out;
}

Outcome water_reproduction() {
  Outcome out;
  const Rational room(20);
  std::vector<Rational> init;
  for (int t = 0; t <= 40; t += 5) init.emplace_back(t);
  const std::size_t horizon = 6;
  const auto model = build_water(Rational(1, 2), room, init, horizon);
  for (const auto& traj : model.system->labels()) {
    for (std::size_t t = 0; t < horizon; ++t) {
      if ((room - *traj.lookup("T", t + 1)).abs() > (room - *traj.lookup("T", t)).abs()) {
        out.fail("trajectory " + traj.to_string() + " moves away from room temperature at " + std::to_string(t));
      }
    }
  }
  const Part& start = model.part("Water_0");
  std::size_t checks = 0;
  for (std::size_t t = 0; t <= horizon; ++t) {
    const Part& later = model.part("Water_" + std::to_string(t));
    for (std::size_t a = 0; a < start.size(); ++a) {
      const Rational distance0 = (room - *start.codomain()[a].lookup("T", 0)).abs();
      const auto further = Constraint::from_predicate(later.codomain_ptr(), [&](std::size_t b) {
        return (room - *later.codomain()[b].lookup("T", t)).abs() > distance0;
      });
      const auto reachable = allows(start, later, point_constraint(start, a));
      if (!entails(further, !reachable)) out.fail("entailment fails at t=" + std::to_string(t));
      ++checks;
    }
  }
  if (out.passed) {
    out.detail = std::to_string(model.system->size()) + " trajectories, " + std::to_string(checks) + " entailments";
  }
  return out;
}

Outcome ecosystem_reproduction() {
  Outcome out;
  const auto model = build_ecosystem(default_ecosystem_params(), default_ecosystem_grid(), 5);
  const Part& fox = model.part("Fox_0");
  const Part& rabbit = model.part("Rabbit_0");
  if (!meet(fox, rabbit).same_partition(bottom(model.system))) out.fail("meet(Fox_0, Rabbit_0) is not Bottom");
  std::size_t pairs = 0;
  for (std::size_t a = 0; a < fox.size(); ++a) {
    for (std::size_t b = 0; b < rabbit.size(); ++b) {
      if (!compatible(fox, a, rabbit, b)) out.fail("incompatible initial populations");
      ++pairs;
    }
  }
  if (out.passed) out.detail = std::to_string(pairs) + " compatible pairs, meet = Bottom";
  return out;
}

Outcome kripke_bridge() {
  Outcome out;
  std::size_t predicates = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(seed);
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 8)(rng);
    std::uniform_int_distribution<std::size_t> cls(0, n - 1);
    std::vector<std::size_t> label(n);
    for (auto& l : label) l = cls(rng);
    Accessibility relation(n, Bitset(n));
    for (std::size_t w = 0; w < n; ++w) {
      for (std::size_t v = 0; v < n; ++v) relation[w].set(v, label[w] == label[v]);
    }
    std::vector<Behavior> worlds_labels;
    for (std::size_t w = 0; w < n; ++w) worlds_labels.push_back(Behavior::token("w" + std::to_string(w)));
    const auto worlds = make_behavior_type("W" + std::to_string(seed), worlds_labels);
    std::bernoulli_distribution coin(0.5);
    for (int i = 0; i < 32; ++i) {
      Bitset bits(n);
      for (std::size_t w = 0; w < n; ++w) bits.set(w, coin(rng));
      const Constraint phi(worlds, bits);
      const auto composite = kripke_modalities(worlds, relation, phi);
      if (composite.diamond.bits() != oracle::diamond(relation, bits) ||
          composite.box.bits() != oracle::box(relation, bits)) {
        out.fail("frame " + std::to_string(seed) + " predicate " + bits.to_string());
      }
      ++predicates;
    }
  }
  if (out.passed) out.detail = "100 frames, " + std::to_string(predicates) + " predicates";
  return out;
}

void differential(const SystemModel& model, std::uint64_t seed, Outcome& out, std::size_t& ops) {
  const auto parts = parts_of(model);
  const Part none = bottom(model.system);
  for (const auto& p : parts) {
    const auto phis = oracle::constraints_on(p, seed);
    for (const auto& phi : phis) {
      if (possibility(p, phi) != oracle::allows(none, p, oracle::allows(p, none, phi)) ||
          necessity(p, phi) != oracle::ensures(none, p, oracle::ensures(p, none, phi))) {
        out.fail("possibility/necessity on " + model.system->id() + " " + p.name());
      }
      ops += 2;
    }
    for (const auto& q : parts) {
      const std::string at = where(model, p, q);
      for (std::size_t a = 0; a < p.size(); ++a) {
        for (std::size_t b = 0; b < q.size(); ++b) {
          if (compatible(p, a, q, b) != oracle::compatible(p, a, q, b)) out.fail("compatible on " + at);
          if (determines(p, a, q, b) != oracle::determines(p, a, q, b)) out.fail("determines on " + at);
          ops += 2;
        }
      }
      const auto leq = part_leq(q, p);
      if (leq.has_value() != oracle::part_of(q, p)) out.fail("part_leq on " + at);
      if (part_determines(p, q) != oracle::part_of(q, p)) out.fail("part_determines on " + at);
      if (!meet(p, q).same_partition(oracle::meet(p, q))) out.fail("meet on " + at);
      if (!join(p, q).same_partition(oracle::join(p, q))) out.fail("join on " + at);
      if (strongly_disjoint(p, q) != oracle::strongly_disjoint(p, q)) out.fail("strongly_disjoint on " + at);
      if (disjoint(p, q) != oracle::meet(p, q).same_partition(none)) out.fail("disjoint on " + at);
      ops += 6;
      const InterModality modality(p, q);
      for (const auto& phi : phis) {
        const auto allowed = oracle::allows(p, q, phi);
        const auto ensured = oracle::ensures(p, q, phi);
        if (allows(p, q, phi) != allowed || modality.allows(phi) != allowed ||
            allows_via_quantifiers(p, q, phi) != allowed) {
          out.fail("allows on " + at + " phi=" + phi.bits().to_string());
        }
        if (ensures(p, q, phi) != ensured || modality.ensures(phi) != ensured ||
            ensures_via_quantifiers(p, q, phi) != ensured) {
          out.fail("ensures on " + at + " phi=" + phi.bits().to_string());
        }
        if (roundtrip_allows(p, q, phi) != oracle::allows(q, p, allowed) ||
            roundtrip_ensures(p, q, phi) != oracle::ensures(q, p, ensured)) {
          out.fail("round trip on " + at);
        }
        ops += 8;
        if (leq) {
          if (exists_along(*leq, phi) != oracle::exists_along(p, q, phi) ||
              forall_along(*leq, phi) != oracle::forall_along(p, q, phi)) {
            out.fail("quantifiers on " + at);
          }
          ops += 2;
        }
      }
      if (leq) {
        for (const auto& psi : oracle::constraints_on(q, seed + 1)) {
          if (pullback_along(*leq, psi) != oracle::pullback_along(p, q, psi)) out.fail("pullback on " + at);
          ++ops;
        }
      }
    }
  }
}

Outcome oracle_differential() {
  Outcome out;
  std::size_t ops = 0;
  for (std::uint64_t seed = 0; seed < kSystems; ++seed) differential(random_system(seed), seed, out, ops);
  std::vector<Rational> init;
  for (int t = 0; t <= 40; t += 5) init.emplace_back(t);
  differential(build_bicycle(2), 1, out, ops);
  differential(build_water(Rational(1, 2), 20, init, 6, {{0, 2}}), 2, out, ops);
  differential(build_ecosystem(default_ecosystem_params(), default_ecosystem_grid(), 5, {{"r", {0, 1, 2}}}), 3, out,
               ops);
  if (out.passed) out.detail = std::to_string(ops) + " comparisons on 503 systems";
  return out;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome dsl_goldens_and_diagnostics() {
  Outcome out;
  const fs::path root(MEREO_SOURCE_DIR);
  std::size_t goldens = 0;
  for (const char* name : {"bicycle", "water", "ecosystem"}) {
    const auto model = (root / "models" / (std::string(name) + ".msys")).string();
    for (const auto& [flag, ext] : {std::pair{"text", ".txt"}, std::pair{"json", ".json"}}) {
      std::ostringstream o;
      std::ostringstream e;
      const int code = mereo::main_entry({"mereo", "check", model, "--format", flag}, o, e);
      const fs::path golden = root / "tests" / "golden" / (std::string(name) + ext);
      if (code != mereo::kOk) out.fail(std::string(name) + " " + flag + " exits " + std::to_string(code));
      if (!fs::exists(golden) || o.str() != slurp(golden)) out.fail(golden.filename().string() + " differs");
      ++goldens;
    }
  }
  // Each malformed file names its expected position on its first line: "# expect L:C".
  const std::regex expect_line(R"(^# expect (\d+):(\d+))");
  std::size_t malformed = 0;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(root / "tests" / "data" / "malformed")) files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  for (const auto& path : files) {
    const std::string text = slurp(path);
    std::smatch m;
    if (!std::regex_search(text, m, expect_line)) {
      out.fail(path.filename().string() + " has no expectation");
      continue;
    }
    std::ostringstream o;
    std::ostringstream e;
    const int code = mereo::main_entry({"mereo", "check", path.string(), "--format", "json"}, o, e);
    const auto doc = nlohmann::json::parse(o.str(), nullptr, false);
    const std::string got = doc.is_discarded() || doc["diagnostics"].empty()
                                ? "none"
                                : std::to_string(doc["diagnostics"][0]["line"].get<int>()) + ":" +
                                      std::to_string(doc["diagnostics"][0]["column"].get<int>());
    const std::string want = m[1].str() + ":" + m[2].str();
    if (code != mereo::kInputError) out.fail(path.filename().string() + " exits " + std::to_string(code));
    if (got != want) out.fail(path.filename().string() + " reports " + got + ", expected " + want);
    ++malformed;
  }
  if (malformed != 20) out.fail(std::to_string(malformed) + " malformed inputs, expected 20");
  if (out.passed) out.detail = std::to_string(goldens) + " golden outputs, " + std::to_string(malformed) + " malformed inputs";
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"law suite on seeded random systems", law_suite_on_random_systems},
      {"four determination conditions agree", determination_equivalences},
      {"round trip is identity exactly on parts below", roundtrip_identity},
      {"bicycle: allowed pedal speeds and join", bicycle_reproduction},
      {"water: distance to room temperature and entailment", water_reproduction},
      {"ecosystem: meet and compatibility at time 0", ecosystem_reproduction},
      {"kripke frames match direct evaluation", kripke_bridge},
      {"optimized paths match the oracle", oracle_differential},
      {"dsl goldens and malformed inputs", dsl_goldens_and_diagnostics},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    failed += !o.passed;
    std::printf("%s %zu %s: %s\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  return failed;
}
