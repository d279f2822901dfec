#include "mereo/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <sstream>

#include "mereology/dsl/elaborate.hpp"
#include "mereology/dsl/parser.hpp"
#include "mereology/dsl/query.hpp"
#include "mereology/laws.hpp"
#include "mereology/models.hpp"

namespace mereo {

namespace {

using nlohmann::ordered_json;
using namespace mereology;
using namespace mereology::dsl;

constexpr int kJsonVersion = 1;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

const char* command_name(Command c) {
  switch (c) {
    case Command::Check:
      return "check";
    case Command::Eval:
      return "eval";
    case Command::Laws:
      return "laws";
    case Command::Show:
      return "show";
  }
  return "?";
}

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Diagnostics ---------------------------------------------------------------

const char* phase_name(Diagnostic::Phase p) {
  switch (p) {
    case Diagnostic::Phase::Lex:
      return "lex";
    case Diagnostic::Phase::Parse:
      return "parse";
    case Diagnostic::Phase::Elaborate:
      return "elaborate";
  }
  return "?";
}

std::string behaviors(std::size_t n) { return std::to_string(n) + (n == 1 ? " behavior" : " behaviors"); }

std::string source_line(const std::string& text, const SourceSpan& span) {
  std::size_t begin = std::min(span.offset, text.size());
  while (begin > 0 && text[begin - 1] != '\n') --begin;
  std::size_t end = text.find('\n', begin);
  if (end == std::string::npos) end = text.size();
  return text.substr(begin, end - begin);
}

void print_diagnostic(std::ostream& err, const std::string& file, const std::string& text, const Diagnostic& d,
                      bool color) {
  const std::string red = color ? "\x1b[1;31m" : "";
  const std::string reset = color ? "\x1b[0m" : "";
  err << file << ":" << d.span.line << ":" << d.span.column << ": " << red << "error:" << reset << " " << d.message
      << "\n";
  const std::string line = source_line(text, d.span);
  if (line.empty() && d.span.offset >= text.size()) return;
  err << "  " << line << "\n  ";
  // Keep tabs so the caret lines up under them.
  std::size_t col = 1;
  for (char c : line) {
    if (col >= d.span.column) break;
    if ((static_cast<unsigned char>(c) & 0xC0) == 0x80) continue;
    err << (c == '\t' ? '\t' : ' ');
    ++col;
  }
  const std::size_t rest = line.size() >= col ? line.size() - (col - 1) : 0;
  const std::size_t width = std::max<std::size_t>(1, std::min(d.span.length, rest == 0 ? 1 : rest));
  err << red << "^" << std::string(width - 1, '~') << reset << "\n";
}

ordered_json diagnostic_json(const std::string& file, const Diagnostic& d) {
  ordered_json j;
  j["file"] = file;
  j["phase"] = phase_name(d.phase);
  j["line"] = d.span.line;
  j["column"] = d.span.column;
  j["offset"] = d.span.offset;
  j["length"] = d.span.length;
  j["message"] = d.message;
  j["expected"] = d.expected;
  return j;
}

ordered_json document(Command c) {
  ordered_json doc;
  doc["version"] = kJsonVersion;
  doc["command"] = command_name(c);
  doc["results"] = ordered_json::array();
  doc["diagnostics"] = ordered_json::array();
  return doc;
}

// Results ---------------------------------------------------------------------

ordered_json law_report_json(const LawReport& r) {
  ordered_json j;
  j["law"] = r.law;
  j["system"] = r.system_id;
  j["passed"] = r.passed;
  j["checks"] = r.checks;
  if (r.counterexample) {
    const auto& c = *r.counterexample;
    j["counterexample"] = {{"parts", c.parts}, {"behaviors", c.behaviors}, {"constraints", c.constraints},
                           {"detail", c.detail}};
  }
  return j;
}

ordered_json part_summary_json(const PartSummary& p) {
  ordered_json j;
  j["part"] = p.name;
  j["size"] = p.size;
  ordered_json blocks = ordered_json::array();
  for (const auto& b : p.blocks) blocks.push_back({{"size", b.size}, {"labels", b.labels}});
  j["blocks"] = blocks;
  j["blocks_omitted"] = p.size - p.blocks.size();
  j["equivalent_to"] = p.equivalent_to;
  return j;
}

ordered_json result_json(const QueryResult& r) {
  ordered_json j;
  j["query"] = r.query;
  j["kind"] = r.kind;
  j["assert"] = r.is_assert;
  std::visit(overloaded{
                 [&](bool b) { j["value"] = b; },
                 [&](const ConstraintValue& c) {
                   j["value"] = {{"carrier", c.carrier}, {"size", c.carrier_size}, {"satisfying", c.satisfying}};
                 },
                 [&](const PartSummary& p) { j["value"] = part_summary_json(p); },
             },
             r.value);
  ordered_json w = ordered_json::array();
  for (const auto& x : r.witnesses) w.push_back({{"role", x.role}, {"part", x.part}, {"behavior", x.behavior}});
  j["witnesses"] = w;
  j["notes"] = r.notes;
  if (r.kind == "laws") {
    ordered_json laws = ordered_json::array();
    for (const auto& l : r.laws) laws.push_back(law_report_json(l));
    j["laws"] = laws;
  }
  return j;
}

void print_blocks(std::ostream& out, const PartSummary& p, const std::string& indent) {
  for (std::size_t i = 0; i < p.blocks.size(); ++i) {
    const auto& b = p.blocks[i];
    out << indent << "block " << (i + 1) << " (" << b.size << "): ";
    for (std::size_t k = 0; k < b.labels.size(); ++k) out << (k ? ", " : "") << b.labels[k];
    if (b.size > b.labels.size()) out << ", ... " << (b.size - b.labels.size()) << " more";
    out << "\n";
  }
  if (p.size > p.blocks.size()) out << indent << "... " << (p.size - p.blocks.size()) << " more blocks\n";
}

void print_result(std::ostream& out, const QueryResult& r) {
  out << (r.is_assert ? "assert " : "query ") << r.query << "\n";
  std::visit(overloaded{
                 [&](bool b) {
                   out << "  value: " << (b ? "true" : "false");
                   if (r.is_assert && !b) out << " (assertion failed)";
                   out << "\n";
                 },
                 [&](const ConstraintValue& c) {
                   out << "  value: " << c.satisfying.size() << " of " << behaviors(c.carrier_size) << " of " << c.carrier
                       << "\n";
                   for (std::size_t i = 0; i < c.satisfying.size() && i < kMaxListed; ++i) {
                     out << "    " << c.satisfying[i] << "\n";
                   }
                   if (c.satisfying.size() > kMaxListed) {
                     out << "    ... " << (c.satisfying.size() - kMaxListed) << " more\n";
                   }
                 },
                 [&](const PartSummary& p) {
                   out << "  value: part " << p.name << " with " << behaviors(p.size);
                   if (!p.equivalent_to.empty()) {
                     out << ", same as ";
                     for (std::size_t i = 0; i < p.equivalent_to.size(); ++i) out << (i ? ", " : "") << p.equivalent_to[i];
                   }
                   out << "\n";
                   print_blocks(out, p, "    ");
                 },
             },
             r.value);
  for (const auto& w : r.witnesses) {
    if (w.role == "factor") {
      out << "  factor: " << w.behavior << "\n";
    } else {
      out << "  " << w.role << " in " << w.part << ": " << w.behavior << "\n";
    }
  }
  for (const auto& l : r.laws) {
    out << "  " << l.law << ": " << (l.passed ? "passed" : "FAILED") << " (" << l.checks << " checks)\n";
  }
  for (const auto& n : r.notes) out << "  note: " << n << "\n";
}

// Commands ----------------------------------------------------------------------

struct Loaded {
  std::string file;
  std::string text;
  std::shared_ptr<const Program> program;
};

/// Reads and elaborates the input; on failure reports and returns the exit code.
std::variant<Loaded, int> load_input(const CliConfig& config, std::ostream& out, std::ostream& err) {
  Loaded l;
  l.file = *config.input;
  auto text = read_file(l.file);
  if (!text) {
    err << "mereo: cannot read '" << l.file << "'\n";
    return kUsageError;
  }
  l.text = std::move(*text);
  auto result = load(l.text);
  if (!result) {
    if (config.format == Format::Json) {
      auto doc = document(config.command);
      for (const auto& d : result.diagnostics) doc["diagnostics"].push_back(diagnostic_json(l.file, d));
      out << doc.dump(2) << "\n";
    }
    for (const auto& d : result.diagnostics) print_diagnostic(err, l.file, l.text, d, config.color);
    return kInputError;
  }
  l.program = result.program;
  return l;
}

void print_header(std::ostream& out, const Program& p) {
  const auto& m = p.model();
  const auto count = [](std::size_t n, const char* noun) {
    return std::to_string(n) + " " + noun + (n == 1 ? "" : "s");
  };
  out << "system " << p.system_name() << ": " << count(m.system->size(), "behavior") << ", " << count(m.parts.size(), "part")
      << ", " << count(p.constraints().size(), "constraint") << "\n";
}

int emit_results(const CliConfig& config, const std::vector<QueryResult>& results, const Program& program,
                 std::ostream& out) {
  int failed = 0;
  for (const auto& r : results) failed += r.failed() ? 1 : 0;
  if (config.format == Format::Json) {
    auto doc = document(config.command);
    for (const auto& r : results) doc["results"].push_back(result_json(r));
    out << doc.dump(2) << "\n";
  } else {
    if (config.command == Command::Check) print_header(out, program);
    for (const auto& r : results) print_result(out, r);
    if (config.command == Command::Check) {
      out << results.size() << (results.size() == 1 ? " query, " : " queries, ") << failed << " failed\n";
    }
  }
  return failed ? kFailed : kOk;
}

int check(const CliConfig& config, std::ostream& out, std::ostream& err) {
  auto loaded = load_input(config, out, err);
  if (auto* code = std::get_if<int>(&loaded)) return *code;
  const auto& l = std::get<Loaded>(loaded);
  std::vector<QueryResult> results;
  for (const auto& q : l.program->queries()) results.push_back(eval_query(*l.program, q));
  return emit_results(config, results, *l.program, out);
}

int eval(const CliConfig& config, std::ostream& out, std::ostream& err) {
  auto loaded = load_input(config, out, err);
  if (auto* code = std::get_if<int>(&loaded)) return *code;
  const auto& l = std::get<Loaded>(loaded);
  const std::string& text = *config.query;
  std::optional<Diagnostic> diag;
  std::optional<ElaboratedQuery> query;
  auto parsed = parse_query(text);
  if (!parsed) {
    diag = parsed.diagnostic;
  } else {
    try {
      query = l.program->elaborate_query(*parsed.value);
    } catch (const DslError& e) {
      diag = e.diagnostic();
    }
  }
  if (diag) {
    if (config.format == Format::Json) {
      auto doc = document(config.command);
      doc["diagnostics"].push_back(diagnostic_json("<query>", *diag));
      out << doc.dump(2) << "\n";
    }
    print_diagnostic(err, "<query>", text, *diag, config.color);
    return kInputError;
  }
  return emit_results(config, {eval_query(*l.program, *query)}, *l.program, out);
}

struct LawTally {
  std::size_t checks = 0;
  std::size_t systems = 0;
  std::size_t failures = 0;
  std::optional<LawReport> first_failure;
};

int report_laws(const CliConfig& config, const std::vector<std::vector<LawReport>>& runs, std::ostream& out) {
  std::map<std::string, LawTally> tally;
  for (const auto& reports : runs) {
    for (const auto& r : reports) {
      auto& t = tally[r.law];
      t.checks += r.checks;
      ++t.systems;
      if (!r.passed) {
        ++t.failures;
        if (!t.first_failure) t.first_failure = r;
      }
    }
  }
  std::size_t failed_laws = 0;
  for (const auto& name : law_names()) failed_laws += tally[name].failures ? 1 : 0;
  if (config.format == Format::Json) {
    auto doc = document(config.command);
    for (const auto& name : law_names()) {
      const auto& t = tally[name];
      ordered_json j;
      j["query"] = name;
      j["kind"] = "law";
      j["value"] = t.failures == 0;
      ordered_json w = ordered_json::array();
      if (t.first_failure) {
        const auto& c = *t.first_failure->counterexample;
        for (std::size_t i = 0; i < c.behaviors.size(); ++i) {
          w.push_back({{"role", "counterexample"}, {"part", t.first_failure->system_id},
                       {"behavior", "s" + std::to_string(c.behaviors[i])}});
        }
        j["counterexample"] = law_report_json(*t.first_failure);
      }
      j["witnesses"] = w;
      j["systems"] = t.systems;
      j["checks"] = t.checks;
      j["failures"] = t.failures;
      doc["results"].push_back(j);
    }
    out << doc.dump(2) << "\n";
  } else {
    for (const auto& name : law_names()) {
      const auto& t = tally[name];
      out << name << ": " << (t.failures ? "FAILED" : "passed") << " (" << t.checks << " checks on " << t.systems
          << (t.systems == 1 ? " system" : " systems") << ")\n";
      if (t.first_failure) {
        const auto& c = *t.first_failure->counterexample;
        out << "  first failure on " << t.first_failure->system_id << ": " << c.detail << "\n";
      }
    }
    if (failed_laws == 0) {
      out << "all laws passed\n";
    } else {
      out << failed_laws << " of " << law_names().size() << " laws failed\n";
    }
  }
  return failed_laws ? kFailed : kOk;
}

int laws(const CliConfig& config, std::ostream& out, std::ostream& err) {
  std::vector<std::vector<LawReport>> runs;
  if (config.input) {
    auto loaded = load_input(config, out, err);
    if (auto* code = std::get_if<int>(&loaded)) return *code;
    runs.push_back(law_suite(std::get<Loaded>(loaded).program->model(), config.seed.value_or(0)));
  } else {
    const std::uint64_t seed = config.seed.value_or(0);
    const std::size_t n = config.num_systems.value_or(100);
    const std::size_t max_size = config.max_size.value_or(8);
    for (std::size_t i = 0; i < n; ++i) runs.push_back(law_suite(random_system(seed + i, max_size), seed + i));
  }
  return report_laws(config, runs, out);
}

/// Groups parts with the same partition; classes keep declaration order.
std::vector<std::vector<const NamedPart*>> part_classes(const std::vector<NamedPart>& parts) {
  std::vector<std::vector<const NamedPart*>> classes;
  for (const auto& p : parts) {
    auto it = std::find_if(classes.begin(), classes.end(),
                           [&](const auto& c) { return c.front()->part.same_partition(p.part); });
    if (it == classes.end()) {
      classes.push_back({&p});
    } else {
      it->push_back(&p);
    }
  }
  return classes;
}

std::string class_name(const std::vector<const NamedPart*>& c) {
  std::string s;
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? " = " : "") + c[i]->name;
  return s;
}

/// Covering pairs (lower, upper) of the part order on classes.
std::vector<std::pair<std::size_t, std::size_t>> hasse(const std::vector<std::vector<const NamedPart*>>& classes) {
  const std::size_t n = classes.size();
  std::vector<std::vector<bool>> below(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      below[i][j] = i != j && part_leq(classes[i].front()->part, classes[j].front()->part).has_value();
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!below[i][j]) continue;
      bool covered = true;
      for (std::size_t k = 0; k < n && covered; ++k) covered = !(below[i][k] && below[k][j]);
      if (covered) edges.emplace_back(i, j);
    }
  }
  return edges;
}

int show(const CliConfig& config, std::ostream& out, std::ostream& err) {
  auto loaded = load_input(config, out, err);
  if (auto* code = std::get_if<int>(&loaded)) return *code;
  const Program& program = *std::get<Loaded>(loaded).program;
  const auto parts = program.all_parts();
  const auto classes = part_classes(parts);
  const auto edges = hasse(classes);
  if (config.format == Format::Json) {
    auto doc = document(config.command);
    ordered_json sys;
    sys["query"] = program.system_name();
    sys["kind"] = "system";
    sys["value"] = {{"behaviors", program.model().system->size()}, {"variables", program.variables()}};
    sys["witnesses"] = ordered_json::array();
    doc["results"].push_back(sys);
    for (const auto& p : parts) {
      ordered_json j;
      j["query"] = p.name;
      j["kind"] = "part";
      j["value"] = part_summary_json(summarize(p.part, p.name, parts));
      j["witnesses"] = ordered_json::array();
      doc["results"].push_back(j);
    }
    ordered_json h;
    h["query"] = "hasse";
    h["kind"] = "hasse";
    ordered_json e = ordered_json::array();
    for (const auto& [lo, hi] : edges) e.push_back({class_name(classes[lo]), class_name(classes[hi])});
    h["value"] = e;
    h["witnesses"] = ordered_json::array();
    doc["results"].push_back(h);
    out << doc.dump(2) << "\n";
    return kOk;
  }
  out << "system " << program.system_name() << ": " << behaviors(program.model().system->size());
  if (!program.variables().empty()) {
    out << " over ";
    for (std::size_t i = 0; i < program.variables().size(); ++i) out << (i ? ", " : "") << program.variables()[i];
    if (program.shape() == BehaviorShape::Trajectories) out << " at times 0.." << program.horizon();
  }
  out << "\n";
  for (const auto& [name, value] : program.model().params) out << "param " << name << " = " << value.to_string() << "\n";
  for (const auto& p : parts) {
    out << "part " << p.name << ": " << behaviors(p.part.size()) << "\n";
    print_blocks(out, summarize(p.part, p.name, parts), "  ");
  }
  out << "hasse diagram (lower < upper):\n";
  for (const auto& [lo, hi] : edges) out << "  " << class_name(classes[lo]) << " < " << class_name(classes[hi]) << "\n";
  return kOk;
}

}  // namespace

int run(const CliConfig& config, std::ostream& out, std::ostream& err) {
  const bool random_flags = config.seed || config.max_size || config.num_systems;
  switch (config.command) {
    case Command::Check:
    case Command::Show:
      if (!config.input) {
        err << "mereo: " << command_name(config.command) << " needs an input file\n";
        return kUsageError;
      }
      break;
    case Command::Eval:
      if (!config.input || !config.query) {
        err << "mereo: eval needs an input file and --query\n";
        return kUsageError;
      }
      break;
    case Command::Laws:
      if (config.input && (config.max_size || config.num_systems)) {
        err << "mereo: laws takes either an input file or --num-systems/--max-size, not both\n";
        return kUsageError;
      }
      if (config.max_size && (*config.max_size < 1 || *config.max_size > 8)) {
        err << "mereo: --max-size must be in 1..8\n";
        return kUsageError;
      }
      (void)random_flags;
      break;
  }
  switch (config.command) {
    case Command::Check:
      return check(config, out, err);
    case Command::Eval:
      return eval(config, out, err);
    case Command::Laws:
      return laws(config, out, err);
    case Command::Show:
      return show(config, out, err);
  }
  return kUsageError;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool color) {
  CLI::App app{"Finite behavioral mereology: check, query and inspect .msys models", "mereo"};
  app.require_subcommand(1);
  CliConfig config;
  config.color = color;
  std::string format = "text";
  std::string input;
  std::string query;
  std::uint64_t seed = 0;
  std::size_t max_size = 8;
  std::size_t num_systems = 100;

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  };
  auto* check_cmd = app.add_subcommand("check", "Parse, elaborate and run every query in a file");
  check_cmd->add_option("file", input, "Model file")->required();
  add_format(check_cmd);
  auto* eval_cmd = app.add_subcommand("eval", "Run one query against a file's model");
  eval_cmd->add_option("file", input, "Model file")->required();
  eval_cmd->add_option("--query,-q", query, "Query text")->required();
  add_format(eval_cmd);
  auto* laws_cmd = app.add_subcommand("laws", "Run the law suite on a file's model or on seeded random systems");
  laws_cmd->add_option("file", input, "Model file");
  auto* seed_opt = laws_cmd->add_option("--seed", seed, "First random seed (or the law-suite seed for a file)");
  auto* size_opt = laws_cmd->add_option("--max-size", max_size, "Largest random system");
  auto* num_opt = laws_cmd->add_option("--num-systems", num_systems, "How many random systems");
  add_format(laws_cmd);
  auto* show_cmd = app.add_subcommand("show", "Print behavior counts, partitions and the part order");
  show_cmd->add_option("file", input, "Model file")->required();
  add_format(show_cmd);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "mereo: " << e.what() << "\n" << "run 'mereo --help' for usage\n";
    return kUsageError;
  }

  if (check_cmd->parsed()) config.command = Command::Check;
  if (eval_cmd->parsed()) config.command = Command::Eval;
  if (laws_cmd->parsed()) config.command = Command::Laws;
  if (show_cmd->parsed()) config.command = Command::Show;
  config.format = format == "json" ? Format::Json : Format::Text;
  if (!input.empty()) config.input = input;
  if (eval_cmd->parsed()) config.query = query;
  if (seed_opt->count()) config.seed = seed;
  if (size_opt->count()) config.max_size = max_size;
  if (num_opt->count()) config.num_systems = num_systems;
  return run(config, out, err);
}

}  // namespace mereo
