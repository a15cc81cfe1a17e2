#pragma once

// Tokenizer shared by the Turtle and SPARQL readers.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "oak/error.hpp"
#include "oak/text.hpp"

namespace oak::rdf {

enum class TokenKind {
  iri_ref,   // <...>, value without brackets
  pname,     // prefix:local, prefix in `prefix`, local in `value`
  string,    // quoted, value unescaped
  integer,
  decimal,
  var,       // ?x or $x, value without the sigil
  word,      // bare keyword: a, PREFIX, SELECT, true...
  at_word,   // @prefix, @base, language tags
  blank,     // _:b1 or []
  punct,     // . ; , { } ( ) * / | ^ ^^ + ? ! = < > & etc.
  end,
};

struct Token {
  TokenKind kind = TokenKind::end;
  std::string value;
  std::string prefix;
  std::size_t line = 1;
  std::size_t column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> tokenize() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t = next();
      const bool done = t.kind == TokenKind::end;
      out.push_back(std::move(t));
      if (done) return out;
    }
  }

 private:
  [[noreturn]] void fail(ErrorKind kind, const std::string& msg, std::string detail = {}) const {
    throw ParseError(kind, msg, line_, col_, std::move(detail));
  }

  bool at_end() const { return pos_ >= src_.size(); }
  char peek(std::size_t k = 0) const { return pos_ + k < src_.size() ? src_[pos_ + k] : '\0'; }

  char advance() {
    const char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_space() {
    while (!at_end()) {
      const char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '#') {
        while (!at_end() && peek() != '\n') advance();
      } else {
        break;
      }
    }
  }

  static bool name_start(char c) { return text::is_ascii_alpha(c) || c == '_'; }
  static bool name_char(char c) {
    return text::is_ascii_alnum(c) || c == '_' || c == '-' || c == '.';
  }

  Token make(TokenKind kind, std::string value, std::size_t line, std::size_t col,
             std::string prefix = {}) {
    return Token{kind, std::move(value), std::move(prefix), line, col};
  }

  // Reads a name of name_char()s, leaving trailing dots unconsumed.
  std::string read_name() {
    std::size_t end = pos_;
    while (end < src_.size() && name_char(src_[end])) ++end;
    while (end > pos_ && src_[end - 1] == '.') --end;
    std::string out;
    while (pos_ < end) out.push_back(advance());
    return out;
  }

  Token next() {
    const auto line = line_, col = col_;
    if (at_end()) return make(TokenKind::end, "", line, col);
    const char c = peek();

    if (c == '<') {
      // An IRI reference unless it is clearly a comparison operator.
      std::size_t k = pos_ + 1;
      while (k < src_.size() && src_[k] != '>' && src_[k] != ' ' && src_[k] != '\n' &&
             src_[k] != '"' && src_[k] != '{' && src_[k] != '}') {
        ++k;
      }
      if (k < src_.size() && src_[k] == '>') {
        advance();
        std::string iri;
        while (peek() != '>') iri.push_back(advance());
        advance();
        return make(TokenKind::iri_ref, iri, line, col);
      }
      advance();
      return make(TokenKind::punct, "<", line, col);
    }

    if (c == '"' || c == '\'') return read_string(line, col);

    if (c == '?' || c == '$') {
      if (name_start(peek(1)) || text::is_ascii_digit(peek(1))) {
        advance();
        std::string name;
        while (text::is_ascii_alnum(peek()) || peek() == '_') name.push_back(advance());
        return make(TokenKind::var, name, line, col);
      }
      advance();
      return make(TokenKind::punct, std::string(1, c), line, col);
    }

    if (c == '@') {
      advance();
      std::string word;
      while (text::is_ascii_alnum(peek()) || peek() == '-') word.push_back(advance());
      if (word.empty()) fail(ErrorKind::syntax_error, "stray '@'");
      return make(TokenKind::at_word, word, line, col);
    }

    if (c == '_' && peek(1) == ':') {
      advance();
      advance();
      return make(TokenKind::blank, read_name(), line, col);
    }

    if (text::is_ascii_digit(c) || ((c == '+' || c == '-' || c == '.') &&
                                    (text::is_ascii_digit(peek(1)) ||
                                     (peek(1) == '.' && text::is_ascii_digit(peek(2)))))) {
      return read_number(line, col);
    }

    if (name_start(c) || c == ':') {
      std::string head;
      if (c != ':') {
        while (text::is_ascii_alnum(peek()) || peek() == '_' || peek() == '-' ||
               (peek() == '.' && name_char(peek(1)))) {
          head.push_back(advance());
        }
      }
      if (peek() == ':') {
        advance();
        std::string local;
        if (name_char(peek()) && peek() != '.') local = read_name();
        return make(TokenKind::pname, local, line, col, head);
      }
      return make(TokenKind::word, head, line, col);
    }

    if (c == '^' && peek(1) == '^') {
      advance();
      advance();
      return make(TokenKind::punct, "^^", line, col);
    }
    if (c == '[') {
      std::size_t k = pos_ + 1;
      while (k < src_.size() && (src_[k] == ' ' || src_[k] == '\t' || src_[k] == '\n')) ++k;
      if (k < src_.size() && src_[k] == ']') {
        while (pos_ <= k) advance();
        return make(TokenKind::blank, "", line, col);
      }
    }
    static constexpr std::string_view kPunct = ".;,{}()[]*/|^+!=>&";
    if (kPunct.find(c) != std::string_view::npos) {
      advance();
      return make(TokenKind::punct, std::string(1, c), line, col);
    }
    fail(ErrorKind::syntax_error, std::string("unexpected character '") + c + "'",
         std::string(1, c));
  }

  Token read_string(std::size_t line, std::size_t col) {
    const char q = advance();
    if (peek() == q && peek(1) == q) {
      fail(ErrorKind::unsupported_feature, "long (triple-quoted) strings are not supported",
           "long-string");
    }
    std::string out;
    for (;;) {
      if (at_end() || peek() == '\n') fail(ErrorKind::syntax_error, "unterminated string");
      const char c = advance();
      if (c == q) break;
      if (c != '\\') {
        out.push_back(c);
        continue;
      }
      if (at_end()) fail(ErrorKind::syntax_error, "unterminated escape");
      const char e = advance();
      switch (e) {
        case 'n': out.push_back('\n'); break;
        case 't': out.push_back('\t'); break;
        case 'r': out.push_back('\r'); break;
        case 'b': out.push_back('\b'); break;
        case 'f': out.push_back('\f'); break;
        case '"': out.push_back('"'); break;
        case '\'': out.push_back('\''); break;
        case '\\': out.push_back('\\'); break;
        default: fail(ErrorKind::unsupported_feature, std::string("escape \\") + e, "escape");
      }
    }
    return make(TokenKind::string, out, line, col);
  }

  Token read_number(std::size_t line, std::size_t col) {
    std::string out;
    if (peek() == '+' || peek() == '-') out.push_back(advance());
    while (text::is_ascii_digit(peek())) out.push_back(advance());
    bool decimal = false;
    if (peek() == '.' && text::is_ascii_digit(peek(1))) {
      decimal = true;
      out.push_back(advance());
      while (text::is_ascii_digit(peek())) out.push_back(advance());
    }
    if (peek() == 'e' || peek() == 'E') {
      fail(ErrorKind::unsupported_feature, "numbers with exponents are not supported", "double");
    }
    return make(decimal ? TokenKind::decimal : TokenKind::integer, out, line, col);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

inline std::vector<Token> tokenize(std::string_view src) { return Lexer(src).tokenize(); }

}  // namespace oak::rdf
