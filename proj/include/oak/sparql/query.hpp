#pragma once

// SELECT queries over basic graph patterns: PREFIX declarations, a `*` or
// variable projection, one WHERE block of triple patterns and LIMIT.

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "oak/rdf/lexer.hpp"
#include "oak/rdf/term.hpp"

namespace oak::sparql {

using rdf::Term;

struct Variable {
  std::string name;
  auto operator<=>(const Variable&) const = default;
};

using PatternTerm = std::variant<Term, Variable>;

inline const Variable* as_var(const PatternTerm& t) { return std::get_if<Variable>(&t); }
inline const Term* as_term(const PatternTerm& t) { return std::get_if<Term>(&t); }

struct TriplePattern {
  PatternTerm s, p, o;
  bool operator==(const TriplePattern&) const = default;
};

struct Query {
  rdf::PrefixMap prefixes;
  bool select_all = false;
  std::vector<std::string> projection;  // empty when select_all
  std::vector<TriplePattern> patterns;
  std::optional<std::size_t> limit;

  /// Variables in order of first appearance in the patterns.
  std::vector<std::string> pattern_variables() const {
    std::vector<std::string> out;
    for (const auto& tp : patterns) {
      for (const auto* pt : {&tp.s, &tp.p, &tp.o}) {
        if (const auto* v = as_var(*pt);
            v && std::find(out.begin(), out.end(), v->name) == out.end()) {
          out.push_back(v->name);
        }
      }
    }
    return out;
  }

  std::vector<std::string> header() const { return select_all ? pattern_variables() : projection; }
};

namespace detail {

using rdf::Token;
using rdf::TokenKind;

inline std::string upper(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

class QueryParser {
 public:
  QueryParser(std::string_view src, rdf::PrefixMap prefixes) : toks_(rdf::tokenize(src)) {
    q_.prefixes = std::move(prefixes);
  }

  Query parse() {
    while (keyword("PREFIX") || keyword("BASE")) {
      if (keyword("BASE")) unsupported("BASE");
      ++i_;
      if (cur().kind != TokenKind::pname || !cur().value.empty()) {
        fail(ErrorKind::syntax_error, "expected a prefix name such as 'ex:'");
      }
      const auto name = take().prefix;
      if (cur().kind != TokenKind::iri_ref) fail(ErrorKind::syntax_error, "expected <namespace IRI>");
      q_.prefixes[name] = take().value;
    }
    for (auto form : {"CONSTRUCT", "ASK", "DESCRIBE", "INSERT", "DELETE", "LOAD", "CLEAR",
                      "CREATE", "DROP", "WITH"}) {
      if (keyword(form)) unsupported(form);
    }
    if (!keyword("SELECT")) fail(ErrorKind::syntax_error, "expected SELECT but found '" + describe(cur()) + "'");
    ++i_;
    for (auto mod : {"DISTINCT", "REDUCED"}) {
      if (keyword(mod)) unsupported(mod);
    }
    if (punct("*")) {
      ++i_;
      q_.select_all = true;
    } else {
      while (cur().kind == TokenKind::var) q_.projection.push_back(var_name(take()));
      if (punct("(")) unsupported("expression in SELECT");
      if (q_.projection.empty()) fail(ErrorKind::syntax_error, "expected '*' or variables after SELECT");
    }
    if (keyword("FROM")) unsupported("FROM");
    if (keyword("WHERE")) ++i_;
    if (!punct("{")) fail(ErrorKind::syntax_error, "expected '{' but found '" + describe(cur()) + "'");
    ++i_;
    group();
    modifiers();
    if (cur().kind != TokenKind::end) {
      fail(ErrorKind::syntax_error, "unexpected '" + describe(cur()) + "' after query");
    }
    if (q_.patterns.empty()) fail(ErrorKind::syntax_error, "WHERE block has no triple patterns");
    const auto vars = q_.pattern_variables();
    for (const auto& v : q_.projection) {
      if (std::find(vars.begin(), vars.end(), v) == vars.end()) {
        throw Error(ErrorKind::syntax_error, "projected variable ?" + v + " does not occur in WHERE", v);
      }
    }
    return q_;
  }

 private:
  const Token& cur() const { return toks_[i_]; }
  const Token& take() { return toks_[i_++]; }

  bool keyword(std::string_view kw) const {
    return cur().kind == TokenKind::word && upper(cur().value) == kw;
  }
  bool punct(std::string_view p) const { return cur().kind == TokenKind::punct && cur().value == p; }

  [[noreturn]] void fail(ErrorKind kind, const std::string& msg, std::string detail = {}) const {
    throw ParseError(kind, msg, cur().line, cur().column, std::move(detail));
  }
  [[noreturn]] void unsupported(const std::string& feature) const {
    fail(ErrorKind::unsupported_feature, feature + " is not supported", feature);
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

  std::string var_name(const Token& t) const {
    if (t.value.empty() || !text::is_ascii_alpha(t.value[0])) {
      throw ParseError(ErrorKind::syntax_error, "variable names start with a letter", t.line,
                       t.column, t.value);
    }
    return t.value;
  }

  void check_group_keyword() const {
    if (cur().kind != TokenKind::word) return;
    static constexpr std::string_view kUnsupported[] = {
        "FILTER", "OPTIONAL", "UNION", "MINUS", "BIND", "VALUES", "SERVICE", "GRAPH", "EXISTS"};
    const auto w = upper(cur().value);
    for (auto u : kUnsupported) {
      if (w == u) unsupported(std::string(u));
    }
  }

  void group() {
    for (;;) {
      check_group_keyword();
      if (punct("}")) {
        ++i_;
        return;
      }
      if (punct("{")) unsupported("nested group");
      const auto s = subject();
      for (;;) {
        const auto p = predicate();
        for (;;) {
          q_.patterns.push_back({s, p, object()});
          if (!punct(",")) break;
          ++i_;
        }
        if (!punct(";")) break;
        while (punct(";")) ++i_;
        if (punct(".") || punct("}")) break;
      }
      if (punct(".")) {
        ++i_;
        continue;
      }
      check_group_keyword();
      if (!punct("}")) {
        fail(ErrorKind::syntax_error, "expected '.' or '}' but found '" + describe(cur()) + "'");
      }
    }
  }

  void modifiers() {
    for (auto mod : {"ORDER", "GROUP", "HAVING", "OFFSET"}) {
      if (keyword(mod)) unsupported(std::string(mod) == "ORDER" ? "ORDER BY" : mod);
    }
    if (keyword("LIMIT")) {
      ++i_;
      if (cur().kind != TokenKind::integer || cur().value[0] == '-' || cur().value[0] == '+') {
        fail(ErrorKind::syntax_error, "LIMIT expects a non-negative integer");
      }
      const auto n = text::parse_int(take().value);
      if (!n) fail(ErrorKind::syntax_error, "LIMIT out of range");
      q_.limit = static_cast<std::size_t>(*n);
    }
    for (auto mod : {"ORDER", "GROUP", "HAVING", "OFFSET"}) {
      if (keyword(mod)) unsupported(std::string(mod) == "ORDER" ? "ORDER BY" : mod);
    }
  }

  Term iri(const Token& t) const {
    if (t.kind == TokenKind::iri_ref) {
      if (t.value.find(':') == std::string::npos) unsupported("relative IRI");
      return Term::iri(t.value);
    }
    auto it = q_.prefixes.find(t.prefix);
    if (it == q_.prefixes.end()) {
      throw ParseError(ErrorKind::unknown_prefix, "prefix '" + t.prefix + ":' is not declared",
                       t.line, t.column, t.prefix);
    }
    return Term::iri(it->second + t.value);
  }

  PatternTerm subject() {
    const auto& t = cur();
    if (t.kind == TokenKind::var) return Variable{var_name(take())};
    if (t.kind == TokenKind::iri_ref || t.kind == TokenKind::pname) return iri(take());
    if (t.kind == TokenKind::blank || punct("[")) unsupported("blank node");
    if (punct("(")) unsupported("collection");
    fail(ErrorKind::syntax_error, "expected a subject but found '" + describe(t) + "'");
  }

  void reject_path() const {
    if (cur().kind == TokenKind::punct) {
      static constexpr std::string_view kPath[] = {"/", "|", "*", "+", "?", "^"};
      for (auto p : kPath) {
        if (cur().value == p) unsupported("property path");
      }
    }
  }

  PatternTerm predicate() {
    const auto& t = cur();
    if (t.kind == TokenKind::punct && (t.value == "^" || t.value == "!" || t.value == "(")) {
      unsupported("property path");
    }
    PatternTerm out;
    if (t.kind == TokenKind::var) {
      out = Variable{var_name(take())};
    } else if (t.kind == TokenKind::word && t.value == "a") {
      ++i_;
      out = Term::iri(vocab::rdf("type"));
    } else if (t.kind == TokenKind::iri_ref || t.kind == TokenKind::pname) {
      out = iri(take());
    } else {
      fail(ErrorKind::syntax_error, "expected a predicate but found '" + describe(t) + "'");
    }
    reject_path();
    return out;
  }

  PatternTerm object() {
    const auto& t = cur();
    switch (t.kind) {
      case TokenKind::var: return Variable{var_name(take())};
      case TokenKind::iri_ref:
      case TokenKind::pname: return iri(take());
      case TokenKind::string: {
        auto lit = Term::literal(take().value);
        if (cur().kind == TokenKind::at_word) unsupported("language tag");
        if (punct("^^")) unsupported("datatyped literal");
        return lit;
      }
      case TokenKind::integer:
        ++i_;
        return Term{rdf::TermKind::literal, t.value, rdf::Datatype::integer};
      case TokenKind::decimal:
        ++i_;
        return Term{rdf::TermKind::literal, t.value, rdf::Datatype::decimal};
      case TokenKind::blank: unsupported("blank node");
      default: break;
    }
    if (punct("[")) unsupported("blank node");
    if (punct("(")) unsupported("collection");
    if (t.kind == TokenKind::word && (t.value == "true" || t.value == "false")) {
      unsupported("boolean literal");
    }
    check_group_keyword();
    fail(ErrorKind::syntax_error, "expected an object but found '" + describe(t) + "'");
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
  Query q_;
};

}  // namespace detail

/// `prefixes` are in scope before the query's own PREFIX lines.
inline Query parse_query(std::string_view text, rdf::PrefixMap prefixes = {}) {
  return detail::QueryParser(text, std::move(prefixes)).parse();
}

inline std::string to_string(const PatternTerm& t, const rdf::PrefixMap& prefixes) {
  if (const auto* v = as_var(t)) return "?" + v->name;
  return rdf::to_string(std::get<Term>(t), prefixes);
}

/// Query text that parses back to an equal query.
inline std::string to_string(const Query& q) {
  std::string out;
  for (const auto& [name, ns] : q.prefixes) out += "PREFIX " + name + ": <" + ns + ">\n";
  out += "SELECT";
  if (q.select_all) {
    out += " *";
  } else {
    for (const auto& v : q.projection) out += " ?" + v;
  }
  out += "\nWHERE {\n";
  for (const auto& tp : q.patterns) {
    out += "  " + to_string(tp.s, q.prefixes) + " " + to_string(tp.p, q.prefixes) + " " +
           to_string(tp.o, q.prefixes) + " .\n";
  }
  out += "}";
  if (q.limit) out += "\nLIMIT " + std::to_string(*q.limit);
  out += "\n";
  return out;
}

}  // namespace oak::sparql
