#include "mereology/dsl/parser.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <regex>
#include <sstream>

using namespace mereology::dsl;
namespace fs = std::filesystem;

namespace {

const fs::path kRoot(MEREO_SOURCE_DIR);

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Diagnostic parse_error(std::string_view text) {
  auto r = parse(text);
  EXPECT_FALSE(r) << "parsed unexpectedly: " << text;
  return r.diagnostic.value_or(Diagnostic{});
}

void expect_round_trip(const std::string& text) {
  const auto first = parse(text);
  ASSERT_TRUE(first) << first.diagnostic->format() << "\n" << text;
  const std::string printed = print(*first.value);
  const auto second = parse(printed);
  ASSERT_TRUE(second) << second.diagnostic->format() << "\n" << printed;
  EXPECT_EQ(dump(*first.value, false), dump(*second.value, false)) << printed;
  EXPECT_EQ(print(*second.value), printed);
}

/// A random expression written with arbitrary extra parentheses.
std::string random_expr(std::mt19937_64& rng, int depth, bool boolean) {
  auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
  auto paren = [&](const std::string& s) { return pick(3) == 0 ? "(" + s + ")" : s; };
  if (!boolean) {
    if (depth == 0 || pick(3) == 0) {
      const char* atoms[] = {"x", "y", "2", "1/2", "0.25", "T[t]", "T[t + 1]", "R"};
      return atoms[pick(8)];
    }
    const char* ops[] = {" + ", " - ", " * ", " / "};
    switch (pick(4)) {
      case 0:
        return "-" + paren(random_expr(rng, depth - 1, false));
      case 1:
        return "abs(" + random_expr(rng, depth - 1, false) + ")";
      default:
        return "(" + random_expr(rng, depth - 1, false) + ops[pick(4)] + random_expr(rng, depth - 1, false) + ")";
    }
  }
  if (depth == 0 || pick(4) == 0) {
    const char* cmps[] = {" < ", " <= ", " = ", " != ", " > ", " >= "};
    return paren(random_expr(rng, depth, false) + cmps[pick(6)] + random_expr(rng, depth, false));
  }
  const char* ops[] = {" and ", " or ", " implies "};
  switch (pick(5)) {
    case 0:
      return "not " + ("(" + random_expr(rng, depth - 1, true) + ")");
    case 1:
      return "(forall t in 0..2: " + random_expr(rng, depth - 1, true) + ")";
    case 2:
      return "(exists t in 1..3: " + random_expr(rng, depth - 1, true) + ")";
    default:
      return "(" + random_expr(rng, depth - 1, true) + ops[pick(3)] + random_expr(rng, depth - 1, true) + ")";
  }
}

}  // namespace

TEST(Parser, BicycleTreeMatchesGolden) {
  const auto r = parse(slurp(kRoot / "models" / "bicycle.msys"));
  ASSERT_TRUE(r) << r.diagnostic->format();
  const auto golden = kRoot / "tests" / "golden" / "bicycle.ast";
  if (std::getenv("MEREO_UPDATE_GOLDEN")) std::ofstream(golden, std::ios::binary) << dump(*r.value);
  EXPECT_EQ(dump(*r.value), slurp(golden));
}

TEST(Parser, EmptyInputExpectsADeclaration) {
  const auto d = parse_error("");
  EXPECT_EQ(d.message, "expected declaration");
  EXPECT_EQ(d.span.line, 1U);
  EXPECT_EQ(d.span.column, 1U);
}

TEST(Parser, UnbalancedBraceIsReportedAtEndOfInput) {
  const std::string text = "system S {\n  behaviors: {a, b}\n";
  const auto d = parse_error(text);
  EXPECT_EQ(d.span.offset, text.size());
  EXPECT_EQ(d.span.line, 3U);
  EXPECT_NE(std::find(d.expected.begin(), d.expected.end(), "'}'"), d.expected.end());
}

TEST(Parser, ListsWhatWasExpected) {
  const auto d = parse_error("system S { behaviors: grid x in 0..1 }\nquery allows(S, S, x > 0)");
  EXPECT_EQ(d.span.line, 2U);
  EXPECT_EQ(d.span.column, 15U);
  EXPECT_EQ(d.expected, std::vector<std::string>{"'->'"});
  EXPECT_EQ(d.message, "expected '->', found ','");
}

TEST(Parser, ComparisonsDoNotChain) {
  const auto d = parse_error("system S { behaviors: grid x in 0..1 }\nconstraint c on Top = 0 < x < 1");
  EXPECT_EQ(d.span.line, 2U);
}

TEST(Parser, ParsesStandaloneQueries) {
  const auto q = parse_query("allows(Wheel -> Pedal, w <= 2)");
  ASSERT_TRUE(q);
  EXPECT_EQ(q.value->kind_name(), "allows");
  EXPECT_FALSE(q.value->is_assert);
  const auto a = parse_query("assert leq(Pedal, Top)");
  ASSERT_TRUE(a);
  EXPECT_TRUE(a.value->is_assert);
  EXPECT_EQ(print(*a.value), "leq(Pedal, Top)");
  EXPECT_FALSE(parse_query("allows(Wheel -> Pedal, w <= 2) extra"));
}

TEST(Parser, PrintsWithMinimalParentheses) {
  const auto q = parse_query("entails(((x + (y * 2)) > 1) and (not (x = 1)) on P, (a implies (b implies c)))");
  ASSERT_TRUE(q);
  EXPECT_EQ(print(*q.value), "entails(x + y * 2 > 1 and not x = 1 on P, a implies b implies c)");
  const auto left = parse_query("entails((a implies b) implies c, (x - y) - z > x - (y - z))");
  ASSERT_TRUE(left);
  EXPECT_EQ(print(*left.value), "entails((a implies b) implies c, x - y - z > x - (y - z))");
}

TEST(Parser, BundledModelsRoundTrip) {
  for (const char* name : {"bicycle", "water", "ecosystem"}) {
    expect_round_trip(slurp(kRoot / "models" / (std::string(name) + ".msys")));
  }
}

TEST(Parser, EveryFormRoundTrips) {
  expect_round_trip(R"(system S {
  param a = -1/3
  behaviors: { red, green, blue }
}
part P of S = by(a > 0)
part Q of S = join(P, Top)
part R of S = meet(P, Q)
query laws
query compatible(P[0], Q[1])
query determines(S{x = 1, T[2] = 0.5}, P[1])
query entails(true on P, false)
)");
  expect_round_trip(R"(system S {
  behaviors: { (x = 1, y = 2), (x = -2, y = 0.125) }
}
part P of S = project(x, y)
)");
  expect_round_trip(R"(system S {
  behaviors: simulate
    init grid a in 0..4 step 2, b in {1, 3}
    update next a = a + b, next b = b
    horizon 3
}
part W of S = project(a[0..2], b[1], a)
constraint c on W = exists t in 0..1: a[t] < b[t + 1]
query ensures(W -> Top, c)
query allows(W -> Top, not c on W)
)");
  expect_round_trip("system S {\n  behaviors: generator water(k = 1/4, init = {0, 10}, horizon = 3)\n}\n");
  expect_round_trip("system S {\n  behaviors: generator bicycle(p = -1..1 step 0.5)\n}\n");
}

TEST(Parser, RandomExpressionsRoundTrip) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 400; ++i) {
    const std::string e = random_expr(rng, 4, true);
    expect_round_trip("system S { behaviors: grid x in 0..1 }\nconstraint c on Top = " + e + "\n");
  }
}

TEST(Parser, SpansLieInsideTheInput) {
  for (const char* name : {"bicycle", "water", "ecosystem"}) {
    const std::string text = slurp(kRoot / "models" / (std::string(name) + ".msys"));
    const auto r = parse(text);
    ASSERT_TRUE(r);
    std::istringstream lines(dump(*r.value, true));
    std::string line;
    const std::regex span_re(R"(@(\d+):(\d+)\+(\d+))");
    std::size_t spans = 0;
    while (std::getline(lines, line)) {
      std::smatch m;
      if (!std::regex_search(line, m, span_re)) continue;
      const std::size_t l = std::stoul(m[1]);
      const std::size_t c = std::stoul(m[2]);
      const std::size_t len = std::stoul(m[3]);
      // Recompute the offset from line and column, then check the extent.
      std::size_t offset = 0;
      for (std::size_t k = 1; k < l; ++k) offset = text.find('\n', offset) + 1;
      offset += c - 1;
      EXPECT_LE(offset + len, text.size()) << line;
      ++spans;
    }
    EXPECT_GT(spans, 20U);
  }
}

TEST(Parser, MalformedInputsNeverThrow) {
  std::mt19937_64 rng(7);
  const std::string text = slurp(kRoot / "models" / "water.msys");
  for (int i = 0; i < 300; ++i) {
    std::string broken = text;
    const std::size_t at = std::uniform_int_distribution<std::size_t>(0, broken.size() - 1)(rng);
    broken.erase(at, std::uniform_int_distribution<std::size_t>(1, 8)(rng));
    const auto r = parse(broken);
    if (!r) {
      EXPECT_LE(r.diagnostic->span.offset, broken.size());
      EXPECT_FALSE(r.diagnostic->message.empty());
    }
  }
}
