#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "oak/error.hpp"
#include "oak/text.hpp"
#include "oak/vocabulary.hpp"

namespace oak::rdf {

enum class TermKind { iri, literal };
enum class Datatype { string, integer, decimal };

constexpr std::string_view to_string(Datatype d) {
  switch (d) {
    case Datatype::string: return "string";
    case Datatype::integer: return "integer";
    case Datatype::decimal: return "decimal";
  }
  return "";
}

/// An IRI or a literal. Literals keep their lexical form; two terms are equal
/// only when kind, lexical form and datatype all agree.
struct Term {
  TermKind kind = TermKind::iri;
  std::string value;
  Datatype datatype = Datatype::string;

  static Term iri(std::string v) { return Term{TermKind::iri, std::move(v), Datatype::string}; }
  static Term literal(std::string v) {
    return Term{TermKind::literal, std::move(v), Datatype::string};
  }
  static Term integer(std::int64_t v) {
    return Term{TermKind::literal, std::to_string(v), Datatype::integer};
  }
  static Term decimal(double v) {
    return Term{TermKind::literal, text::format_decimal(v), Datatype::decimal};
  }

  bool is_iri() const { return kind == TermKind::iri; }
  bool is_literal() const { return kind == TermKind::literal; }

  std::optional<double> number() const {
    if (!is_literal() || datatype == Datatype::string) return std::nullopt;
    return text::parse_double(value);
  }

  auto operator<=>(const Term&) const = default;
};

struct Triple {
  Term s, p, o;
  auto operator<=>(const Triple&) const = default;
};

/// `[+-]?[0-9]+`
inline bool is_integer_lexical(std::string_view s) {
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!text::is_ascii_digit(c)) return false;
  }
  return true;
}

/// `[+-]?[0-9]*\.[0-9]+`
inline bool is_decimal_lexical(std::string_view s) {
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) s.remove_prefix(1);
  const auto dot = s.find('.');
  if (dot == std::string_view::npos || dot + 1 == s.size()) return false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i != dot && !text::is_ascii_digit(s[i])) return false;
  }
  return true;
}

/// Local part of a prefixed name that both the Turtle and SPARQL readers
/// accept back: no leading '.' or '-', no trailing '.'.
inline bool is_pname_local(std::string_view s) {
  if (s.empty()) return false;
  if (s.front() == '.' || s.front() == '-' || s.back() == '.') return false;
  for (char c : s) {
    if (!(text::is_ascii_alnum(c) || c == '_' || c == '-' || c == '.')) return false;
  }
  return true;
}

using PrefixMap = std::map<std::string, std::string>;

/// `prefix:local` using the longest matching namespace, or nullopt.
inline std::optional<std::string> compact(std::string_view iri, const PrefixMap& prefixes) {
  const std::pair<const std::string, std::string>* best = nullptr;
  for (const auto& entry : prefixes) {
    const auto& ns = entry.second;
    if (iri.size() > ns.size() && iri.substr(0, ns.size()) == ns &&
        is_pname_local(iri.substr(ns.size())) && (!best || ns.size() > best->second.size())) {
      best = &entry;
    }
  }
  if (!best) return std::nullopt;
  return best->first + ":" + std::string(iri.substr(best->second.size()));
}

inline std::string escape_string(std::string_view s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

/// Turtle/SPARQL spelling of a term.
inline std::string to_string(const Term& t, const PrefixMap& prefixes = {}) {
  if (t.is_iri()) {
    if (auto c = compact(t.value, prefixes)) return *c;
    return "<" + t.value + ">";
  }
  if (t.datatype == Datatype::string) return "\"" + escape_string(t.value) + "\"";
  return t.value;
}

/// Display form: compact IRI when possible, bare lexical form for literals.
inline std::string display(const Term& t, const PrefixMap& prefixes = vocab::standard_prefixes()) {
  if (t.is_iri()) {
    if (auto c = compact(t.value, prefixes)) return *c;
    return t.value;
  }
  return t.value;
}

/// Local name after the last '#' or '/'.
inline std::string local_name(std::string_view iri) {
  const auto cut = iri.find_last_of("#/");
  return std::string(cut == std::string_view::npos ? iri : iri.substr(cut + 1));
}

}  // namespace oak::rdf
