#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "mereology/dsl/ast.hpp"
#include "mereology/dsl/source.hpp"

namespace mereology::dsl {

/// Either a value or the first diagnostic that prevented it.
template <class T>
struct Parsed {
  std::optional<T> value;
  std::optional<Diagnostic> diagnostic;

  explicit operator bool() const { return value.has_value(); }
};

/// Parses a whole `.msys` file. Never throws on bad input.
Parsed<SpecAst> parse(std::string_view text);

/// Parses one query, with or without a leading `query`/`assert`.
Parsed<QueryAst> parse_query(std::string_view text);

/// Canonical source text; reparsing it gives the same tree.
std::string print(const SpecAst& spec);
std::string print(const QueryAst& query);
std::string print(const Expr& expr);

/// Indented tree dump; with spans, every node is tagged line:col+len.
std::string dump(const SpecAst& spec, bool with_spans = true);

}  // namespace mereology::dsl
