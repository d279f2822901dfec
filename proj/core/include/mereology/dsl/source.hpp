#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace mereology::dsl {

/// Byte range in the input plus the 1-based line and column (in code points)
/// of its first byte.
struct SourceSpan {
  std::size_t offset = 0;
  std::size_t length = 0;
  std::size_t line = 1;
  std::size_t column = 1;

  std::size_t end() const { return offset + length; }
  bool contains(const SourceSpan& inner) const { return offset <= inner.offset && inner.end() <= end(); }
  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

/// Smallest span covering both.
SourceSpan merge(const SourceSpan& a, const SourceSpan& b);

struct Diagnostic {
  enum class Phase { Lex, Parse, Elaborate };
  Phase phase = Phase::Parse;
  SourceSpan span;
  std::string message;
  std::vector<std::string> expected;  ///< token descriptions, parse errors only

  /// "line:col: error: message"
  std::string format(const std::string& source_name = "") const;
};

/// Thrown internally by the parser and elaborator; always carries a span.
class DslError : public std::runtime_error {
 public:
  explicit DslError(Diagnostic d) : std::runtime_error(d.message), diagnostic_(std::move(d)) {}
  const Diagnostic& diagnostic() const { return diagnostic_; }

 private:
  Diagnostic diagnostic_;
};

}  // namespace mereology::dsl
