#pragma once

// In-memory triple store with three permutation indexes and a snapshot
// handle for concurrent readers.

#include <algorithm>
#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <type_traits>
#include <unordered_map>
#include <vector>

#include "oak/rdf/turtle.hpp"

namespace oak::rdf {

struct TermHash {
  std::size_t operator()(const Term& t) const {
    return std::hash<std::string>{}(t.value) * 31 + static_cast<std::size_t>(t.kind) * 7 +
           static_cast<std::size_t>(t.datatype);
  }
};

/// Triple pattern slot: a fixed term or a wildcard.
using Slot = std::optional<Term>;

class TripleStore {
 public:
  using Id = std::uint32_t;
  using Key = std::array<Id, 3>;

  TripleStore() = default;
  explicit TripleStore(PrefixMap prefixes) : prefixes_(std::move(prefixes)) {}

  /// Returns false when the triple was already present.
  bool insert(const Triple& t) {
    const Key spo{intern(t.s), intern(t.p), intern(t.o)};
    if (!spo_.insert(spo).second) return false;
    pos_.insert({spo[1], spo[2], spo[0]});
    osp_.insert({spo[2], spo[0], spo[1]});
    return true;
  }

  std::size_t insert(const std::vector<Triple>& ts) {
    std::size_t n = 0;
    for (const auto& t : ts) n += insert(t) ? 1 : 0;
    return n;
  }

  bool erase(const Triple& t) {
    auto s = lookup(t.s), p = lookup(t.p), o = lookup(t.o);
    if (!s || !p || !o) return false;
    if (!spo_.erase({*s, *p, *o})) return false;
    pos_.erase({*p, *o, *s});
    osp_.erase({*o, *s, *p});
    return true;
  }

  bool contains(const Triple& t) const {
    auto s = lookup(t.s), p = lookup(t.p), o = lookup(t.o);
    return s && p && o && spo_.count({*s, *p, *o});
  }

  std::size_t size() const { return spo_.size(); }

  /// Every triple matching the pattern, in (s, p, o) term order.
  std::vector<Triple> match(const Slot& s, const Slot& p, const Slot& o) const {
    std::vector<Triple> out;
    scan(s, p, o, [&](const Triple& t) { out.push_back(t); });
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Number of matches without materializing them.
  std::size_t count(const Slot& s, const Slot& p, const Slot& o) const {
    std::size_t n = 0;
    scan(s, p, o, [&](const Triple&) { ++n; });
    return n;
  }

  /// Unordered visit of matching triples; cheapest access path first.
  void scan(const Slot& s, const Slot& p, const Slot& o,
            const std::function<void(const Triple&)>& fn) const {
    std::optional<Id> si, pi, oi;
    if (s && !(si = lookup(*s))) return;
    if (p && !(pi = lookup(*p))) return;
    if (o && !(oi = lookup(*o))) return;

    auto emit = [&](Id a, Id b, Id c) { fn(Triple{terms_[a], terms_[b], terms_[c]}); };
    if (si) {
      if (!pi && oi) {
        range(osp_, *oi, si, [&](const Key& k) { emit(k[1], k[2], k[0]); });
      } else {
        range(spo_, *si, pi, [&](const Key& k) {
          if (!oi || k[2] == *oi) emit(k[0], k[1], k[2]);
        });
      }
    } else if (pi) {
      range(pos_, *pi, oi, [&](const Key& k) { emit(k[2], k[0], k[1]); });
    } else if (oi) {
      range(osp_, *oi, std::nullopt, [&](const Key& k) { emit(k[1], k[2], k[0]); });
    } else {
      for (const auto& k : spo_) emit(k[0], k[1], k[2]);
    }
  }

  std::vector<Triple> triples() const { return match(std::nullopt, std::nullopt, std::nullopt); }

  const PrefixMap& prefixes() const { return prefixes_; }
  void add_prefix(const std::string& name, const std::string& ns) { prefixes_[name] = ns; }

  std::string to_turtle() const { return rdf::to_turtle(triples(), prefixes_); }

 private:
  Id intern(const Term& t) {
    auto [it, inserted] = ids_.emplace(t, static_cast<Id>(terms_.size()));
    if (inserted) terms_.push_back(t);
    return it->second;
  }

  std::optional<Id> lookup(const Term& t) const {
    auto it = ids_.find(t);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
  }

  template <class F>
  static void range(const std::set<Key>& index, Id first, std::optional<Id> second, F&& fn) {
    const Key lo{first, second.value_or(0), 0};
    for (auto it = index.lower_bound(lo); it != index.end(); ++it) {
      const auto& k = *it;
      if (k[0] != first || (second && k[1] != *second)) break;
      fn(k);
    }
  }

  PrefixMap prefixes_;
  std::vector<Term> terms_;
  std::unordered_map<Term, Id, TermHash> ids_;
  std::set<Key> spo_, pos_, osp_;
};

inline TripleStore load_turtle(std::string_view src, PrefixMap prefixes = {}) {
  auto doc = parse_turtle(src, std::move(prefixes));
  TripleStore store(doc.prefixes);
  store.insert(doc.triples);
  return store;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io_error, "cannot read " + path.string(), path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Writes through a temporary file and a rename so readers never see a
/// half-written snapshot.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::io_error, "cannot write " + tmp.string(), tmp.string());
    out << content;
    if (!out.flush()) throw Error(ErrorKind::io_error, "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorKind::io_error, "cannot replace " + path.string() + ": " + ec.message());
}

inline void save_snapshot(const TripleStore& store, const std::filesystem::path& path) {
  write_file_atomic(path, store.to_turtle());
}

inline TripleStore load_snapshot(const std::filesystem::path& path) {
  return load_turtle(read_file(path));
}

/// Shared store. Readers take an immutable snapshot; writers build a new
/// version off to the side and swap it in, so a reader never sees a partial
/// update and never waits for one to finish.
class StoreHandle {
 public:
  StoreHandle() : current_(std::make_shared<const TripleStore>()) {}
  explicit StoreHandle(TripleStore store)
      : current_(std::make_shared<const TripleStore>(std::move(store))) {}

  std::shared_ptr<const TripleStore> snapshot() const {
    std::lock_guard lock(ptr_mu_);
    return current_;
  }

  /// Applies `fn` to a copy of the current store and publishes the result.
  template <class F>
  auto update(F&& fn) {
    std::lock_guard writer(write_mu_);
    auto next = std::make_shared<TripleStore>(*snapshot());
    if constexpr (std::is_void_v<decltype(fn(*next))>) {
      fn(*next);
      publish(std::move(next));
    } else {
      auto result = fn(*next);
      publish(std::move(next));
      return result;
    }
  }

 private:
  void publish(std::shared_ptr<TripleStore> next) {
    std::lock_guard lock(ptr_mu_);
    current_ = std::move(next);
  }

  mutable std::mutex ptr_mu_;
  std::mutex write_mu_;
  std::shared_ptr<const TripleStore> current_;
};

}  // namespace oak::rdf
