#pragma once

// A knowledge repository: the ontology plus a shared triple store holding
// the published ontology and every imported knowledge item, optionally
// backed by a Turtle snapshot file.

#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <string>

#include "oak/publish.hpp"
#include "oak/rdf/store.hpp"
#include "oak/wrapper.hpp"

namespace oak {

/// Largest numeric suffix among the stored knowledge-model ids.
inline std::uint64_t max_item(const rdf::TripleStore& store) {
  std::uint64_t best = 0;
  for (const auto& id : publish::kmap_ids(store)) {
    if (auto n = text::parse_int(instance_suffix(id)); n && *n > 0) {
      best = std::max<std::uint64_t>(best, static_cast<std::uint64_t>(*n));
    }
  }
  return best;
}

class Repository {
 public:
  /// Opens `snapshot` when it exists, otherwise starts from the published
  /// ontology. An empty path keeps the repository in memory.
  explicit Repository(Ontology ontology, std::filesystem::path snapshot = {})
      : ontology_(std::make_shared<const Ontology>(std::move(ontology))), path_(std::move(snapshot)) {
    rdf::TripleStore store(vocab::standard_prefixes());
    if (!path_.empty() && std::filesystem::exists(path_)) {
      auto loaded = rdf::load_snapshot(path_);
      for (const auto& [name, ns] : loaded.prefixes()) store.add_prefix(name, ns);
      store.insert(loaded.triples());
    }
    store.insert(publish::ontology_triples(*ontology_));
    store_ = std::make_unique<rdf::StoreHandle>(std::move(store));
  }

  std::shared_ptr<const Ontology> ontology() const {
    std::lock_guard lock(onto_mu_);
    return ontology_;
  }

  std::shared_ptr<const rdf::TripleStore> snapshot() const { return store_->snapshot(); }
  rdf::StoreHandle& handle() { return *store_; }
  const std::filesystem::path& path() const { return path_; }

  std::uint64_t next_item() const { return max_item(*snapshot()) + 1; }

  /// Wraps and imports one descriptor. The item number is allocated inside
  /// the writer slot so concurrent imports never share a suffix.
  WrapResult add(const Descriptor& d) {
    std::optional<WrapResult> out;
    store_->update([&](rdf::TripleStore& s) {
      const auto onto = ontology();
      auto res = wrap(d, *onto, max_item(s) + 1);
      if (s.count(publish::kmap_iri(res.kr.id), std::nullopt, std::nullopt)) {
        throw Error(ErrorKind::inconsistent_input, res.kr.id + " already exists", res.kr.id);
      }
      if (res.ontology.transformations.size() != onto->transformations.size()) {
        s.insert(publish::ontology_triples(res.ontology));
        std::lock_guard lock(onto_mu_);
        ontology_ = std::make_shared<const Ontology>(res.ontology);
      }
      s.insert(publish::kr_triples(res.kr));
      persist(s);
      out = std::move(res);
    });
    return std::move(*out);
  }

  /// Imports a Turtle document; standard prefixes are predeclared. Returns
  /// the number of triples that were new to the store.
  std::size_t import_turtle(std::string_view text) {
    auto doc = rdf::parse_turtle(text, vocab::standard_prefixes());
    const auto n = store_->update([&](rdf::TripleStore& s) {
      for (const auto& [name, ns] : doc.prefixes) s.add_prefix(name, ns);
      const auto added = s.insert(doc.triples);
      persist(s);
      return added;
    });
    return n;
  }

  void save() {
    store_->update([&](rdf::TripleStore& s) { persist(s); });
  }

 private:
  // Runs inside the writer slot, so snapshot files are written one at a time.
  void persist(const rdf::TripleStore& s) const {
    if (!path_.empty()) rdf::save_snapshot(s, path_);
  }

  mutable std::mutex onto_mu_;
  std::shared_ptr<const Ontology> ontology_;
  std::filesystem::path path_;
  std::unique_ptr<rdf::StoreHandle> store_;
};

}  // namespace oak
