#include "mereology/dsl/lexer.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace mereology::dsl {

namespace {

constexpr std::array kKeywords{
    "system", "part",    "of",        "constraint", "on",      "behaviors", "grid",   "where",   "simulate",
    "init",   "update",  "next",      "horizon",    "project", "by",        "join",   "meet",    "query",
    "assert", "allows",  "ensures",   "compatible", "determines", "entails", "leq",   "laws",    "and",
    "or",     "not",     "implies",   "true",       "false",   "forall",    "exists", "in",      "step",
    "generator", "param", "abs",
};

// Longest first so that "<=" wins over "<".
constexpr std::array kPuncts{"!=", "<=", ">=", "->", "..", "{", "}", "(", ")", "[", "]",
                             ",",  ":",  "=",  "<",  ">",  "+", "-", "*", "/"};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space_and_comments();
      if (pos_ >= text_.size()) {
        out.push_back(Token{TokenKind::End, "", span_from(pos_, line_, column_)});
        return out;
      }
      out.push_back(next());
    }
  }

 private:
  // Columns count code points: UTF-8 continuation bytes do not advance them.
  void advance() {
    const char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
      ++column_;
    }
  }

  void skip_space_and_comments() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  SourceSpan span_from(std::size_t start, std::size_t line, std::size_t column) const {
    return SourceSpan{start, pos_ - start, line, column};
  }

  Token next() {
    const std::size_t start = pos_;
    const std::size_t line = line_;
    const std::size_t column = column_;
    const char c = text_[pos_];
    if (ident_start(c)) {
      while (pos_ < text_.size() && ident_char(text_[pos_])) advance();
      std::string word(text_.substr(start, pos_ - start));
      const TokenKind kind = is_keyword(word) ? TokenKind::Keyword : TokenKind::Ident;
      return Token{kind, std::move(word), span_from(start, line, column)};
    }
    if (digit(c)) {
      while (pos_ < text_.size() && digit(text_[pos_])) advance();
      // A '.' followed by a digit is a decimal point; ".." is a range.
      if (pos_ + 1 < text_.size() && text_[pos_] == '.' && digit(text_[pos_ + 1])) {
        advance();
        while (pos_ < text_.size() && digit(text_[pos_])) advance();
      }
      return Token{TokenKind::Number, std::string(text_.substr(start, pos_ - start)), span_from(start, line, column)};
    }
    for (std::string_view p : kPuncts) {
      if (text_.substr(pos_, p.size()) == p) {
        for (std::size_t i = 0; i < p.size(); ++i) advance();
        return Token{TokenKind::Punct, std::string(p), span_from(start, line, column)};
      }
    }
    // One whole code point for the message.
    advance();
    while (pos_ < text_.size() && (static_cast<unsigned char>(text_[pos_]) & 0xC0) == 0x80) advance();
    Diagnostic d;
    d.phase = Diagnostic::Phase::Lex;
    d.span = span_from(start, line, column);
    d.message = "unexpected character '" + std::string(text_.substr(start, pos_ - start)) + "'";
    throw DslError(std::move(d));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

}  // namespace

bool is_keyword(std::string_view word) {
  return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

std::string Token::describe() const {
  switch (kind) {
    case TokenKind::Ident:
      return "identifier '" + text + "'";
    case TokenKind::Keyword:
      return "keyword '" + text + "'";
    case TokenKind::Number:
      return "number " + text;
    case TokenKind::Punct:
      return "'" + text + "'";
    case TokenKind::End:
      return "end of input";
  }
  return text;
}

std::vector<Token> lex(std::string_view text) { return Lexer(text).run(); }

SourceSpan merge(const SourceSpan& a, const SourceSpan& b) {
  const SourceSpan& first = a.offset <= b.offset ? a : b;
  const std::size_t end = std::max(a.end(), b.end());
  return SourceSpan{first.offset, end - first.offset, first.line, first.column};
}

std::string Diagnostic::format(const std::string& source_name) const {
  std::string out;
  if (!source_name.empty()) out += source_name + ":";
  out += std::to_string(span.line) + ":" + std::to_string(span.column) + ": error: " + message;
  return out;
}

}  // namespace mereology::dsl
