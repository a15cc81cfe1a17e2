#pragma once

#include <cctype>
#include <charconv>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace oak::text {

inline bool is_ascii_alpha(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}
inline bool is_ascii_digit(char c) { return c >= '0' && c <= '9'; }
inline bool is_ascii_alnum(char c) { return is_ascii_alpha(c) || is_ascii_digit(c); }
inline char ascii_lower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

/// Lexicon key: lowercase, `_` and `-` act as word breaks, other ASCII
/// punctuation is dropped, whitespace runs collapse to one space.
inline std::string normalize_term(std::string_view surface) {
  std::string out;
  out.reserve(surface.size());
  bool pending_space = false;
  for (char c : surface) {
    const auto uc = static_cast<unsigned char>(c);
    if (std::isspace(uc) || c == '_' || c == '-') {
      pending_space = true;
      continue;
    }
    if (uc < 0x80 && std::ispunct(uc)) continue;
    if (pending_space && !out.empty()) out.push_back(' ');
    pending_space = false;
    out.push_back(ascii_lower(c));
  }
  return out;
}

/// "SoilPH" -> "Soil PH", "OrganicCarbon" -> "Organic Carbon",
/// "Algorithm_CPANN" -> "Algorithm CPANN".
inline std::string split_identifier(std::string_view id) {
  std::string out;
  for (std::size_t i = 0; i < id.size(); ++i) {
    const char c = id[i];
    if (c == '_') {
      out.push_back(' ');
      continue;
    }
    if (i > 0 && !out.empty() && out.back() != ' ') {
      const char prev = id[i - 1];
      const bool upper = c >= 'A' && c <= 'Z';
      const bool prev_lower = prev >= 'a' && prev <= 'z';
      const bool prev_digit = is_ascii_digit(prev);
      const bool next_lower = i + 1 < id.size() && id[i + 1] >= 'a' && id[i + 1] <= 'z';
      const bool prev_upper = prev >= 'A' && prev <= 'Z';
      if (upper && (prev_lower || prev_digit || (prev_upper && next_lower))) {
        out.push_back(' ');
      }
    }
    out.push_back(c);
  }
  return out;
}

/// `[A-Za-z_][A-Za-z0-9_]*`
inline bool is_identifier(std::string_view s) {
  if (s.empty() || !(is_ascii_alpha(s[0]) || s[0] == '_')) return false;
  for (char c : s) {
    if (!(is_ascii_alnum(c) || c == '_')) return false;
  }
  return true;
}

inline std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

/// Shortest fixed-notation form that round-trips, always with a '.'.
inline std::string format_decimal(double value) {
  char buf[400];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed);
  std::string out(buf, end);
  if (out.find('.') == std::string::npos) out += ".0";
  return out;
}

inline std::optional<double> parse_double(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

inline std::optional<std::int64_t> parse_int(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace oak::text
