#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "oak/rdf/store.hpp"
#include "oak/sparql/query.hpp"

namespace oak::sparql {

struct SolutionTable {
  std::vector<std::string> header;
  std::vector<std::vector<Term>> rows;  // one term per header variable

  std::size_t size() const { return rows.size(); }

  std::optional<std::size_t> column(std::string_view var) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == var) return i;
    }
    return std::nullopt;
  }

  bool operator==(const SolutionTable&) const = default;
};

using Binding = std::map<std::string, Term>;

namespace detail {

inline rdf::Slot bound(const PatternTerm& pt, const Binding& b) {
  if (const auto* t = as_term(pt)) return *t;
  auto it = b.find(as_var(pt)->name);
  if (it == b.end()) return std::nullopt;
  return it->second;
}

/// Extends `b` with the variables of `tp` matched against `t`; false when a
/// variable repeated inside the pattern would bind two different terms.
inline bool unify(const TriplePattern& tp, const rdf::Triple& t, Binding& b) {
  const std::pair<const PatternTerm*, const Term*> slots[] = {{&tp.s, &t.s}, {&tp.p, &t.p}, {&tp.o, &t.o}};
  for (const auto& [pt, term] : slots) {
    const auto* v = as_var(*pt);
    if (!v) continue;
    auto [it, inserted] = b.emplace(v->name, *term);
    if (!inserted && it->second != *term) return false;
  }
  return true;
}

inline std::size_t unbound_positions(const TriplePattern& tp, const std::set<std::string>& vars) {
  std::size_t n = 0;
  for (const auto* pt : {&tp.s, &tp.p, &tp.o}) {
    if (const auto* v = as_var(*pt); v && !vars.count(v->name)) ++n;
  }
  return n;
}

inline SolutionTable finish(const Query& q, const std::vector<Binding>& solutions) {
  SolutionTable out;
  out.header = q.header();
  out.rows.reserve(solutions.size());
  for (const auto& b : solutions) {
    std::vector<Term> row;
    row.reserve(out.header.size());
    for (const auto& v : out.header) row.push_back(b.at(v));
    out.rows.push_back(std::move(row));
  }
  std::sort(out.rows.begin(), out.rows.end());
  if (q.limit && out.rows.size() > *q.limit) out.rows.resize(*q.limit);
  return out;
}

}  // namespace detail

/// Pattern order chosen by evaluate(): start from the pattern with the fewest
/// variable positions, then repeatedly take the one left with the fewest
/// still-unbound positions. Ties go to the smaller match count, then to
/// query order.
inline std::vector<std::size_t> plan(const rdf::TripleStore& store, const Query& q) {
  std::vector<std::size_t> left(q.patterns.size());
  std::iota(left.begin(), left.end(), 0);
  std::vector<std::size_t> order;
  std::set<std::string> vars;
  auto estimate = [&](const TriplePattern& tp) {
    auto slot = [&](const PatternTerm& pt) -> rdf::Slot {
      if (const auto* t = as_term(pt)) return *t;
      return std::nullopt;
    };
    return store.count(slot(tp.s), slot(tp.p), slot(tp.o));
  };
  std::vector<std::size_t> sizes;
  for (const auto& tp : q.patterns) sizes.push_back(estimate(tp));
  while (!left.empty()) {
    auto best = std::min_element(left.begin(), left.end(), [&](std::size_t a, std::size_t b) {
      const auto ua = detail::unbound_positions(q.patterns[a], vars);
      const auto ub = detail::unbound_positions(q.patterns[b], vars);
      if (ua != ub) return ua < ub;
      if (sizes[a] != sizes[b]) return sizes[a] < sizes[b];
      return a < b;
    });
    const auto idx = *best;
    left.erase(best);
    order.push_back(idx);
    for (const auto* pt : {&q.patterns[idx].s, &q.patterns[idx].p, &q.patterns[idx].o}) {
      if (const auto* v = as_var(*pt)) vars.insert(v->name);
    }
  }
  return order;
}

/// Index-nested-loop join of the patterns in the given order.
inline SolutionTable evaluate_in_order(const rdf::TripleStore& store, const Query& q,
                                       const std::vector<std::size_t>& order) {
  std::vector<Binding> current{Binding{}};
  for (auto idx : order) {
    const auto& tp = q.patterns.at(idx);
    std::vector<Binding> next;
    for (const auto& b : current) {
      store.scan(detail::bound(tp.s, b), detail::bound(tp.p, b), detail::bound(tp.o, b),
                 [&](const rdf::Triple& t) {
                   Binding ext = b;
                   if (detail::unify(tp, t, ext)) next.push_back(std::move(ext));
                 });
    }
    current = std::move(next);
    if (current.empty()) break;
  }
  return detail::finish(q, current);
}

inline SolutionTable evaluate(const rdf::TripleStore& store, const Query& q) {
  return evaluate_in_order(store, q, plan(store, q));
}

}  // namespace oak::sparql
