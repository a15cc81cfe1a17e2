#pragma once

// Reader and writer for the Turtle subset the knowledge maps use: prefix
// directives, IRIs, prefixed names, `a`, predicate lists, object lists and
// plain string, integer and decimal literals.

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

#include "oak/rdf/lexer.hpp"
#include "oak/rdf/term.hpp"

namespace oak::rdf {

struct Document {
  PrefixMap prefixes;
  std::vector<Triple> triples;
};

namespace detail {

class TurtleParser {
 public:
  TurtleParser(std::string_view src, PrefixMap prefixes)
      : toks_(tokenize(src)), prefixes_(std::move(prefixes)) {}

  Document parse() {
    Document doc;
    while (cur().kind != TokenKind::end) {
      if (cur().kind == TokenKind::at_word) {
        directive(doc, true);
      } else if (cur().kind == TokenKind::word &&
                 (upper(cur().value) == "PREFIX" || upper(cur().value) == "BASE")) {
        directive(doc, false);
      } else {
        statement(doc);
      }
    }
    doc.prefixes = prefixes_;
    return doc;
  }

 private:
  static std::string upper(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return s;
  }

  const Token& cur() const { return toks_[i_]; }
  const Token& take() { return toks_[i_++]; }

  [[noreturn]] void fail(ErrorKind kind, const std::string& msg, std::string detail = {}) const {
    throw ParseError(kind, msg, cur().line, cur().column, std::move(detail));
  }
  [[noreturn]] void unsupported(const std::string& feature) const {
    fail(ErrorKind::unsupported_feature, feature + " is not supported", feature);
  }

  bool is_punct(std::string_view p) const {
    return cur().kind == TokenKind::punct && cur().value == p;
  }

  void expect_punct(std::string_view p) {
    if (!is_punct(p)) {
      fail(ErrorKind::syntax_error,
           "expected '" + std::string(p) + "' but found '" + describe(cur()) + "'");
    }
    ++i_;
  }

  static std::string describe(const Token& t) {
    switch (t.kind) {
      case TokenKind::end: return "end of input";
      case TokenKind::pname: return t.prefix + ":" + t.value;
      case TokenKind::iri_ref: return "<" + t.value + ">";
      case TokenKind::string: return "\"" + t.value + "\"";
      case TokenKind::var: return "?" + t.value;
      case TokenKind::at_word: return "@" + t.value;
      default: return t.value;
    }
  }

  void directive(Document&, bool at_form) {
    const auto name = at_form ? cur().value : upper(cur().value);
    if (name == "base" || name == "BASE") unsupported("base");
    if (name != "prefix" && name != "PREFIX") unsupported("directive @" + name);
    ++i_;
    if (cur().kind != TokenKind::pname || !cur().value.empty()) {
      fail(ErrorKind::syntax_error, "expected a prefix name such as 'ex:'");
    }
    const auto pfx = take().prefix;
    if (cur().kind != TokenKind::iri_ref) fail(ErrorKind::syntax_error, "expected <namespace IRI>");
    prefixes_[pfx] = take().value;
    if (at_form) expect_punct(".");
  }

  Term iri_term(bool allow_a) {
    const auto& t = cur();
    switch (t.kind) {
      case TokenKind::iri_ref:
        if (t.value.find(':') == std::string::npos) unsupported("relative IRI");
        ++i_;
        return Term::iri(t.value);
      case TokenKind::pname: {
        auto it = prefixes_.find(t.prefix);
        if (it == prefixes_.end()) {
          fail(ErrorKind::unknown_prefix, "prefix '" + t.prefix + ":' is not declared", t.prefix);
        }
        ++i_;
        return Term::iri(it->second + t.value);
      }
      case TokenKind::word:
        if (allow_a && t.value == "a") {
          ++i_;
          return Term::iri(vocab::rdf("type"));
        }
        break;
      case TokenKind::blank: unsupported("blank node");
      default: break;
    }
    fail(ErrorKind::syntax_error, "expected an IRI but found '" + describe(t) + "'");
  }

  Term object() {
    const auto& t = cur();
    switch (t.kind) {
      case TokenKind::string: {
        ++i_;
        Term lit = Term::literal(t.value);
        if (cur().kind == TokenKind::at_word) unsupported("language tag");
        if (is_punct("^^")) unsupported("datatyped literal");
        return lit;
      }
      case TokenKind::integer:
        ++i_;
        return Term{TermKind::literal, t.value, Datatype::integer};
      case TokenKind::decimal:
        ++i_;
        return Term{TermKind::literal, t.value, Datatype::decimal};
      case TokenKind::word:
        if (t.value == "true" || t.value == "false") unsupported("boolean literal");
        break;
      case TokenKind::punct:
        if (t.value == "(") unsupported("collection");
        if (t.value == "[") unsupported("blank node");
        break;
      default: break;
    }
    return iri_term(false);
  }

  void statement(Document& doc) {
    if (is_punct("(")) unsupported("collection");
    if (is_punct("[")) unsupported("blank node");
    const Term subject = iri_term(false);
    for (;;) {
      const Term predicate = iri_term(true);
      for (;;) {
        doc.triples.push_back({subject, predicate, object()});
        if (!is_punct(",")) break;
        ++i_;
      }
      if (is_punct(".")) {
        ++i_;
        return;
      }
      expect_punct(";");
      while (is_punct(";")) ++i_;
      if (is_punct(".")) {
        ++i_;
        return;
      }
    }
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
  PrefixMap prefixes_;
};

}  // namespace detail

/// Parses a Turtle document. `prefixes` are in scope before the first directive.
inline Document parse_turtle(std::string_view src, PrefixMap prefixes = {}) {
  return detail::TurtleParser(src, std::move(prefixes)).parse();
}

/// Canonical Turtle: prefix header, subjects in term order, one predicate
/// group per subject with `;` and `,`. Duplicates collapse.
inline std::string to_turtle(std::vector<Triple> triples, const PrefixMap& prefixes) {
  std::sort(triples.begin(), triples.end());
  triples.erase(std::unique(triples.begin(), triples.end()), triples.end());

  std::string out;
  for (const auto& [name, ns] : prefixes) out += "@prefix " + name + ": <" + ns + "> .\n";
  if (!prefixes.empty()) out += "\n";

  auto term = [&](const Term& t) { return to_string(t, prefixes); };
  for (std::size_t i = 0; i < triples.size();) {
    const auto& s = triples[i].s;
    std::size_t end = i;
    while (end < triples.size() && triples[end].s == s) ++end;
    const std::string indent(4, ' ');
    out += term(s);
    for (std::size_t j = i; j < end;) {
      const auto& p = triples[j].p;
      out += (j == i ? " " : " ;\n" + indent) + term(p) + " ";
      bool first = true;
      for (; j < end && triples[j].p == p; ++j) {
        out += (first ? "" : ", ") + term(triples[j].o);
        first = false;
      }
    }
    out += " .\n";
    i = end;
  }
  return out;
}

inline std::string to_turtle(const Document& doc) { return to_turtle(doc.triples, doc.prefixes); }

}  // namespace oak::rdf
