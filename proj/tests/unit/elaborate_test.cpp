#include "mereology/dsl/elaborate.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "mereology/dsl/parser.hpp"
#include "mereology/models.hpp"

using namespace mereology;
using namespace mereology::dsl;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::shared_ptr<const Program> ok(std::string_view text) {
  auto r = load(text);
  if (!r) {
    ADD_FAILURE() << (r.diagnostics.empty() ? "no diagnostics" : r.diagnostics.front().format()) << "\n" << text;
    return nullptr;
  }
  return r.program;
}

Diagnostic error_in(std::string_view text) {
  auto r = load(text);
  EXPECT_FALSE(r) << text;
  if (r.diagnostics.empty()) return {};
  return r.diagnostics.front();
}

const char* kGrid = "system S {\n  behaviors: grid x in 0..3, y in 0..1\n}\npart X of S = project(x)\n";

}  // namespace

TEST(Elaborate, BundledModelsLoad) {
  for (const char* name : {"bicycle", "water", "ecosystem"}) {
    const auto p = ok(slurp(fs::path(MEREO_SOURCE_DIR) / "models" / (std::string(name) + ".msys")));
    ASSERT_NE(p, nullptr) << name;
    EXPECT_FALSE(p->queries().empty());
  }
}

TEST(Elaborate, GridMatchesTheBicycleBuilder) {
  const auto p = ok(slurp(fs::path(MEREO_SOURCE_DIR) / "models" / "bicycle.msys"));
  ASSERT_NE(p, nullptr);
  const auto built = build_bicycle(2);
  EXPECT_EQ(p->model().system->labels(), built.system->labels());
  EXPECT_EQ(p->shape(), BehaviorShape::Records);
  EXPECT_EQ(p->variables(), (std::vector<std::string>{"p", "w"}));
  for (const char* part : {"Pedal", "Wheel"}) {
    const auto a = p->find_part(part)->map();
    const auto b = built.part(part).map();
    EXPECT_TRUE(std::equal(a.begin(), a.end(), b.begin(), b.end())) << part;
  }
}

TEST(Elaborate, GeneratorMatchesTheBuilder) {
  const auto p = ok("system Bicycle {\n  behaviors: generator bicycle(r = 2)\n}\n");
  ASSERT_NE(p, nullptr);
  const auto built = build_bicycle(2);
  EXPECT_EQ(p->model().system->id(), built.system->id());
  EXPECT_EQ(p->model().system->labels(), built.system->labels());
  ASSERT_NE(p->find_part("Pedal"), nullptr);
  const auto a = p->find_part("Pedal")->map();
  const auto b = built.part("Pedal").map();
  EXPECT_TRUE(std::equal(a.begin(), a.end(), b.begin(), b.end()));
}

TEST(Elaborate, SimulationMatchesTheWaterBuilder) {
  const auto p = ok(slurp(fs::path(MEREO_SOURCE_DIR) / "models" / "water.msys"));
  ASSERT_NE(p, nullptr);
  std::vector<Rational> init;
  for (int t = 0; t <= 40; t += 5) init.emplace_back(t);
  const auto built = build_water(Rational(1, 2), 20, init, 6);
  EXPECT_EQ(p->model().system->labels(), built.system->labels());
  EXPECT_EQ(p->shape(), BehaviorShape::Trajectories);
  EXPECT_EQ(p->horizon(), 6U);
  EXPECT_TRUE(p->find_part("Water_2")->same_partition(p->find_part("Water_0")->renamed("x")));
}

TEST(Elaborate, ParamsAndBuiltins) {
  const auto p = ok("system S {\n  param a = 1/2\n  param b = a * 4\n  behaviors: grid x in 0..b\n}\n");
  ASSERT_NE(p, nullptr);
  EXPECT_EQ(p->model().system->size(), 3U);
  EXPECT_NE(p->find_part("Top"), nullptr);
  EXPECT_NE(p->find_part("Bottom"), nullptr);
  EXPECT_EQ(p->all_parts().size(), 2U);
}

TEST(Elaborate, ExplicitTokensAndRecords) {
  const auto t = ok("system S {\n  behaviors: {a, b, c}\n}\n");
  ASSERT_NE(t, nullptr);
  EXPECT_EQ(t->shape(), BehaviorShape::Tokens);
  EXPECT_EQ(t->model().system->size(), 3U);
  EXPECT_EQ(error_in("system S {\n  behaviors: {a, b, a}\n}\n").span.line, 2U);
  EXPECT_EQ(error_in("system S {\n  behaviors: {{x = 1}, {y = 2}}\n}\n").span.line, 2U);
}

TEST(Elaborate, ConstraintsAreCheckedForDetermination) {
  std::string text = kGrid;
  text += "constraint big on X = x >= 2\n";
  const auto p = ok(text);
  ASSERT_NE(p, nullptr);
  ASSERT_EQ(p->constraints().size(), 1U);
  EXPECT_EQ(p->constraints()[0].value.satisfying().size(), 2U);
  const auto d = error_in(std::string(kGrid) + "constraint c on X = y = 1\n");
  EXPECT_NE(d.message.find("not determined by part 'X'"), std::string::npos);
}

TEST(Elaborate, ByPartsAndLatticeParts) {
  const auto p = ok(std::string(kGrid) + "part Big of S = by(x >= 2)\npart Y of S = project(y)\n"
                                         "part XY of S = join(X, Y)\npart None of S = meet(X, Y)\n");
  ASSERT_NE(p, nullptr);
  EXPECT_EQ(p->find_part("Big")->size(), 2U);
  EXPECT_TRUE(p->find_part("XY")->same_partition(*p->find_part("Top")));
  EXPECT_TRUE(p->find_part("None")->same_partition(*p->find_part("Bottom")));
  EXPECT_EQ(p->find_part("XY")->name(), "XY");
}

TEST(Elaborate, TypeAndNameErrors) {
  EXPECT_EQ(error_in(std::string(kGrid) + "constraint c on X = x + 1\n").message,
            "expected a boolean here, found a number");
  EXPECT_EQ(error_in(std::string(kGrid) + "constraint c on X = z > 1\n").message, "unknown name 'z'");
  EXPECT_NE(error_in(std::string(kGrid) + "constraint c on X = X > 1\n").message.find("is a part"), std::string::npos);
  EXPECT_EQ(error_in(std::string(kGrid) + "query allows(X -> Q, x > 1)\n").message, "unknown part 'Q'");
  EXPECT_NE(error_in(std::string(kGrid) + "part X of S = project(y)\n").message.find("already declared"),
            std::string::npos);
}

TEST(Elaborate, SpansPointIntoTheSource) {
  const std::string text = std::string(kGrid) + "constraint c on X = x > (1 / 0)\n";
  const auto d = error_in(text);
  EXPECT_EQ(d.message, "division by zero");
  EXPECT_EQ(text.substr(d.span.offset, d.span.length), "0");
}

TEST(Elaborate, FiniteHorizonQuantifiersLeaveANote) {
  const auto p = ok("system S {\n  behaviors: simulate\n    init grid T in 0..2\n    update next T = T + 1\n"
                    "    horizon 3\n}\nquery entails(true on Top, forall t in 0..2: T[t] < T[t + 1])\n");
  ASSERT_NE(p, nullptr);
  ASSERT_EQ(p->queries().size(), 1U);
  ASSERT_EQ(p->queries()[0].notes.size(), 1U);
  EXPECT_NE(p->queries()[0].notes[0].find("stops at time 3"), std::string::npos);
}

TEST(Elaborate, TimeIndicesAreRangeChecked) {
  const auto d = error_in("system S {\n  behaviors: simulate\n    init grid T in 0..2\n    update next T = T + 1\n"
                          "    horizon 2\n}\nconstraint c on Top = forall t in 0..2: T[t + 1] > 0\n");
  EXPECT_EQ(d.message, "time index 3 is outside 0..2");
}

TEST(Elaborate, EntailsNeedsACarrier) {
  const auto d = error_in(std::string(kGrid) + "query entails(x > 1, x > 0)\n");
  EXPECT_NE(d.message.find("add 'on <part>'"), std::string::npos);
  EXPECT_NE(ok(std::string(kGrid) + "query entails(x > 1 on X, x > 0)\n"), nullptr);
}

TEST(Elaborate, BehaviorReferences) {
  EXPECT_NE(ok(std::string(kGrid) + "query compatible(X{x = 1}, Top[3])\n"), nullptr);
  EXPECT_NE(error_in(std::string(kGrid) + "query compatible(X{x = 9}, Top[3])\n").message.find("no behavior"),
            std::string::npos);
  EXPECT_NE(error_in(std::string(kGrid) + "query compatible(X[9], Top[3])\n").message, "");
  EXPECT_NE(error_in(std::string(kGrid) + "query compatible(Top{x = 1}, X[0])\n").message.find("give more fields"),
            std::string::npos);
}

TEST(Elaborate, OnlyOneSystemPerFile) {
  const auto d = error_in("system A {\n  behaviors: {a}\n}\nsystem B {\n  behaviors: {b}\n}\n");
  EXPECT_EQ(d.span.line, 4U);
}

TEST(Elaborate, GeneratorArgumentsAreValidated) {
  EXPECT_NE(error_in("system S {\n  behaviors: generator bike()\n}\n").message.find("unknown generator"),
            std::string::npos);
  EXPECT_NE(error_in("system S {\n  behaviors: generator water(q = 1)\n}\n").message.find("no argument 'q'"),
            std::string::npos);
  EXPECT_NE(error_in("system S {\n  behaviors: generator ecosystem(horizon = 11)\n}\n").message.find("cap"),
            std::string::npos);
  EXPECT_NE(error_in("system S {\n  param r = 1\n  behaviors: generator bicycle()\n}\n").message.find("clashes"),
            std::string::npos);
}

TEST(Elaborate, QueriesElaborateOnDemand) {
  const auto p = ok(kGrid);
  ASSERT_NE(p, nullptr);
  const auto q = parse_query("allows(X -> Top, x = 1)");
  ASSERT_TRUE(q);
  const auto e = p->elaborate_query(*q.value);
  EXPECT_TRUE(std::holds_alternative<ResolvedModal>(e.op));
  const auto bad = parse_query("allows(X -> Nope, x = 1)");
  EXPECT_THROW(p->elaborate_query(*bad.value), DslError);
}
