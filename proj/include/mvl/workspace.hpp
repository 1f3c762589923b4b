#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "mvl/generator.hpp"
#include "mvl/io.hpp"

namespace mvl {

enum class EntityKind { kAlgebra, kRenaming, kModule, kBridge };

/// Collection name used in routes and on disk: "algebras", "renamings", ...
std::string_view collection_name(EntityKind k);
std::optional<EntityKind> kind_from_collection(std::string_view name);

class NotFound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Referential integrity violation: a reference to a missing entity, or a
/// removal of an entity still referenced.
class ReferenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Named entities addressed by the hash of their canonical JSON. A document
/// may refer to another stored entity by id (a string where an object is
/// expected): module.algebra, bridge.source / target / renaming / module, and
/// the session inputs A, B, f. Documents are validated on insertion, after
/// resolving references. With a directory, every entity and session is
/// written through as a file and reloaded on construction.
class Workspace {
 public:
  explicit Workspace(std::optional<std::filesystem::path> dir = std::nullopt);

  /// Returns (id, created). Throws StructuralError / AxiomError on invalid
  /// documents and ReferenceError on dangling references.
  std::pair<std::string, bool> put(EntityKind kind, const io::Json& doc);
  /// Stored document as given (references unresolved). Throws NotFound.
  io::Json get(EntityKind kind, const std::string& id) const;
  /// Stored document with every reference replaced by its target.
  io::Json resolved(EntityKind kind, const std::string& id) const;
  std::vector<std::string> list(EntityKind kind) const;
  /// Throws NotFound, or ReferenceError while another entity refers to it.
  void remove(EntityKind kind, const std::string& id);

  /// Replaces id strings at the reference positions of `doc`.
  io::Json resolve(EntityKind kind, const io::Json& doc) const;

  // Sessions -----------------------------------------------------------------

  /// Starts a session; the id hashes the canonical inputs and a creation
  /// ordinal, so equal inputs still yield distinct sessions.
  std::string create_session(const io::Json& request);
  /// Runs fn on the session under its lock. Throws NotFound.
  template <class Fn>
  auto with_session(const std::string& id, Fn&& fn) {
    auto entry = session_entry(id);
    std::lock_guard lock(entry->mutex);
    return fn(entry->session);
  }
  /// Applies a selection and persists the history.
  void select(const std::string& id, std::optional<int> candidate);
  std::vector<std::string> list_sessions() const;

 private:
  struct SessionEntry {
    SessionEntry(io::Json in, Session s) : inputs(std::move(in)), session(std::move(s)) {}
    io::Json inputs;
    Session session;
    std::size_t ordinal = 0;
    std::mutex mutex;
  };

  io::Json resolve_ref(EntityKind kind, const io::Json& node, const std::string& path) const;
  void validate(EntityKind kind, const io::Json& resolved_doc) const;
  std::vector<std::pair<EntityKind, std::string>> references(EntityKind kind,
                                                             const io::Json& doc) const;
  std::shared_ptr<SessionEntry> session_entry(const std::string& id) const;
  void persist(EntityKind kind, const std::string& id, const io::Json& doc) const;
  void persist_session(const std::string& id, const SessionEntry& e) const;
  void load();

  std::optional<std::filesystem::path> dir_;
  mutable std::shared_mutex mutex_;
  std::map<EntityKind, std::map<std::string, io::Json>> entities_;
  std::map<std::string, std::shared_ptr<SessionEntry>> sessions_;
  std::size_t session_ordinal_ = 0;
};

}  // namespace mvl
