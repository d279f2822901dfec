#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mereology/dsl/source.hpp"

namespace mereology::dsl {

enum class TokenKind {
  Ident,
  Keyword,
  Number,
  Punct,
  End,
};

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;
  SourceSpan span;

  bool is(TokenKind k, std::string_view t) const { return kind == k && text == t; }
  bool is_keyword(std::string_view t) const { return is(TokenKind::Keyword, t); }
  bool is_punct(std::string_view t) const { return is(TokenKind::Punct, t); }
  /// "identifier 'x'", "'{'", "end of input", ...
  std::string describe() const;
};

bool is_keyword(std::string_view word);

/// Splits the input into tokens, ending with an End token. `#` starts a
/// comment running to end of line. Throws DslError on a stray character.
std::vector<Token> lex(std::string_view text);

}  // namespace mereology::dsl
