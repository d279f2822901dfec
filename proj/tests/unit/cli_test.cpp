#include "mereo/cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "mereo");
  std::ostringstream out;
  std::ostringstream err;
  const int code = mereo::main_entry(args, out, err);
  return {code, out.str(), err.str()};
}

std::string model(const std::string& name) { return (fs::path(MEREO_SOURCE_DIR) / "models" / (name + ".msys")).string(); }

fs::path temp_file(const std::string& name, const std::string& text) {
  const auto path = fs::temp_directory_path() / ("mereo_cli_test_" + name);
  std::ofstream(path, std::ios::binary) << text;
  return path;
}

}  // namespace

TEST(Cli, CheckBundledModelsSucceeds) {
  for (const char* name : {"bicycle", "water", "ecosystem"}) {
    const auto r = invoke({"check", model(name)});
    EXPECT_EQ(r.code, mereo::kOk) << r.err;
    EXPECT_NE(r.out.find(", 0 failed"), std::string::npos);
  }
}

TEST(Cli, EvalPrintsTheAllowedPedalSpeeds) {
  const auto r = invoke({"eval", model("bicycle"), "--query", "allows(Wheel -> Pedal, w <= 2)"});
  EXPECT_EQ(r.code, mereo::kOk);
  EXPECT_NE(r.out.find("13 of 16 behaviors of Pedal"), std::string::npos);
  EXPECT_NE(r.out.find("(p=1)"), std::string::npos);
  EXPECT_EQ(r.out.find("(p=3/2)"), std::string::npos);
}

TEST(Cli, EvalJson) {
  const auto r = invoke({"eval", model("bicycle"), "--query", "compatible(Pedal{p = 1}, Wheel{w = 4})", "--format",
                        "json"});
  ASSERT_EQ(r.code, mereo::kOk);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["version"], 1);
  EXPECT_EQ(doc["command"], "eval");
  EXPECT_EQ(doc["results"][0]["value"], true);
  EXPECT_EQ(doc["results"][0]["witnesses"][0]["behavior"], "(p=1, w=4)");
}

TEST(Cli, FailedAssertExitsOne) {
  const auto path = temp_file("fail.msys", "system S {\n  behaviors: {a, b}\n}\nassert leq(Top, Bottom)\n");
  const auto r = invoke({"check", path.string()});
  EXPECT_EQ(r.code, mereo::kFailed);
  EXPECT_NE(r.out.find("1 query, 1 failed"), std::string::npos);
}

TEST(Cli, ParseErrorsExitTwoWithASourceExcerpt) {
  const auto path = temp_file("bad.msys", "system S {\n  behaviors: grid x in 0..3\n}\npart P of S = project(y)\n");
  const auto r = invoke({"check", path.string()});
  EXPECT_EQ(r.code, mereo::kInputError);
  EXPECT_NE(r.err.find(":4:23: error: unknown variable 'y'"), std::string::npos);
  EXPECT_NE(r.err.find("part P of S = project(y)\n"), std::string::npos);
  EXPECT_NE(r.err.find("^"), std::string::npos);
  EXPECT_EQ(r.err.find("\x1b["), std::string::npos);
}

TEST(Cli, DiagnosticsInJson) {
  const auto path = temp_file("bad.json.msys", "system S {\n  behaviors: grid x in 0..3\n}\nquery allows(Top, x)\n");
  const auto r = invoke({"check", path.string(), "--format", "json"});
  EXPECT_EQ(r.code, mereo::kInputError);
  const auto doc = nlohmann::json::parse(r.out);
  const auto& d = doc["diagnostics"][0];
  EXPECT_EQ(d["phase"], "parse");
  EXPECT_EQ(d["line"], 4);
  EXPECT_EQ(d["column"], 17);
  EXPECT_EQ(d["expected"][0], "'->'");
}

TEST(Cli, BadQueryInEvalExitsTwo) {
  EXPECT_EQ(invoke({"eval", model("bicycle"), "--query", "allows(Wheel -> Nope, w <= 2)"}).code, mereo::kInputError);
  EXPECT_EQ(invoke({"eval", model("bicycle"), "--query", "allows(Wheel ->"}).code, mereo::kInputError);
}

TEST(Cli, UsageErrorsExitThree) {
  EXPECT_EQ(invoke({}).code, mereo::kUsageError);
  EXPECT_EQ(invoke({"frobnicate"}).code, mereo::kUsageError);
  EXPECT_EQ(invoke({"check"}).code, mereo::kUsageError);
  EXPECT_EQ(invoke({"check", "/nonexistent/file.msys"}).code, mereo::kUsageError);
  EXPECT_EQ(invoke({"eval", model("bicycle")}).code, mereo::kUsageError);
  EXPECT_EQ(invoke({"check", model("bicycle"), "--format", "xml"}).code, mereo::kUsageError);
  EXPECT_EQ(invoke({"laws", model("bicycle"), "--num-systems", "3"}).code, mereo::kUsageError);
  EXPECT_EQ(invoke({"--help"}).code, mereo::kOk);
}

TEST(Cli, LawsOnRandomSystems) {
  const auto r = invoke({"laws", "--num-systems", "20", "--seed", "3", "--max-size", "5"});
  EXPECT_EQ(r.code, mereo::kOk) << r.out;
  EXPECT_NE(r.out.find("on 20 systems"), std::string::npos);
  EXPECT_NE(r.out.find("all laws passed"), std::string::npos);
  const auto j = invoke({"laws", "--num-systems", "5", "--format", "json"});
  EXPECT_EQ(j.code, mereo::kOk);
  EXPECT_EQ(nlohmann::json::parse(j.out)["command"], "laws");
}

TEST(Cli, LawsOnAModelFile) {
  const auto r = invoke({"laws", model("water")});
  EXPECT_EQ(r.code, mereo::kOk);
  EXPECT_NE(r.out.find("all laws passed"), std::string::npos);
}

TEST(Cli, ShowPrintsPartsAndTheirOrder) {
  const auto r = invoke({"show", model("water")});
  EXPECT_EQ(r.code, mereo::kOk);
  EXPECT_NE(r.out.find("system Water: 9 behaviors"), std::string::npos);
  EXPECT_NE(r.out.find("hasse diagram (lower < upper):"), std::string::npos);
  const auto j = invoke({"show", model("bicycle"), "--format", "json"});
  EXPECT_EQ(j.code, mereo::kOk);
  EXPECT_EQ(nlohmann::json::parse(j.out)["results"][0]["kind"], "system");
}
