#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace oak {

enum class ErrorKind {
  syntax_error,
  unknown_prefix,
  unsupported_feature,
  no_match,
  out_of_domain,
  undeclared_concept,
  subject_mismatch,
  invalid_descriptor,
  invalid_task,
  unknown_algorithm,
  unresolved_concepts,
  unresolved_transformation,
  invalid_state,
  below_threshold,
  inconsistent_input,
  no_concepts_recognized,
  no_template,
  io_error,
  not_found,
  invalid_element,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::syntax_error: return "syntax-error";
    case ErrorKind::unknown_prefix: return "unknown-prefix";
    case ErrorKind::unsupported_feature: return "unsupported-feature";
    case ErrorKind::no_match: return "no-match";
    case ErrorKind::out_of_domain: return "out-of-domain";
    case ErrorKind::undeclared_concept: return "undeclared-concept";
    case ErrorKind::subject_mismatch: return "subject-mismatch";
    case ErrorKind::invalid_descriptor: return "invalid-descriptor";
    case ErrorKind::invalid_task: return "invalid-task";
    case ErrorKind::unknown_algorithm: return "unknown-algorithm";
    case ErrorKind::unresolved_concepts: return "unresolved-concepts";
    case ErrorKind::unresolved_transformation: return "unresolved-transformation";
    case ErrorKind::invalid_state: return "invalid-state";
    case ErrorKind::below_threshold: return "below-threshold";
    case ErrorKind::inconsistent_input: return "inconsistent-input";
    case ErrorKind::no_concepts_recognized: return "no-concepts-recognized";
    case ErrorKind::no_template: return "no-template";
    case ErrorKind::io_error: return "io-error";
    case ErrorKind::not_found: return "not-found";
    case ErrorKind::invalid_element: return "invalid-element";
  }
  return "error";
}

/// Base exception for every fault raised by the library. `detail` carries the
/// offending token (prefix name, feature name, term) when there is one.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::string detail = {})
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        detail_(std::move(detail)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

/// Parse failure with a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(ErrorKind kind, const std::string& message, std::size_t line,
             std::size_t column, std::string detail = {})
      : Error(kind,
              message + " at line " + std::to_string(line) + ", column " +
                  std::to_string(column),
              std::move(detail)),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Error that reports every failing term at once instead of the first.
class TermListError : public Error {
 public:
  TermListError(ErrorKind kind, std::vector<std::string> terms)
      : Error(kind, join(terms)), terms_(std::move(terms)) {}

  const std::vector<std::string>& terms() const noexcept { return terms_; }

 private:
  static std::string join(const std::vector<std::string>& terms) {
    std::string out;
    for (const auto& t : terms) {
      if (!out.empty()) out += ", ";
      out += t;
    }
    return out;
  }

  std::vector<std::string> terms_;
};

}  // namespace oak
