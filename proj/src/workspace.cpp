#include "mvl/workspace.hpp"

#include <fstream>

#include "mvl/errors.hpp"

namespace mvl {

using io::Json;

std::string_view collection_name(EntityKind k) {
  switch (k) {
    case EntityKind::kAlgebra: return "algebras";
    case EntityKind::kRenaming: return "renamings";
    case EntityKind::kModule: return "modules";
    case EntityKind::kBridge: return "bridges";
  }
  return "";
}

std::optional<EntityKind> kind_from_collection(std::string_view name) {
  for (auto k : {EntityKind::kAlgebra, EntityKind::kRenaming, EntityKind::kModule,
                 EntityKind::kBridge}) {
    if (collection_name(k) == name) return k;
  }
  return std::nullopt;
}

namespace {

// Reference positions per kind: member name -> referenced kind.
const std::vector<std::pair<std::string, EntityKind>>& ref_slots(EntityKind kind) {
  static const std::vector<std::pair<std::string, EntityKind>> none;
  static const std::vector<std::pair<std::string, EntityKind>> module{
      {"algebra", EntityKind::kAlgebra}};
  static const std::vector<std::pair<std::string, EntityKind>> bridge{
      {"source", EntityKind::kAlgebra},
      {"target", EntityKind::kAlgebra},
      {"renaming", EntityKind::kRenaming},
      {"module", EntityKind::kModule}};
  switch (kind) {
    case EntityKind::kModule: return module;
    case EntityKind::kBridge: return bridge;
    default: return none;
  }
}

const std::vector<std::pair<std::string, EntityKind>>& session_slots() {
  static const std::vector<std::pair<std::string, EntityKind>> slots{
      {"A", EntityKind::kAlgebra},
      {"B", EntityKind::kAlgebra},
      {"Bchain", EntityKind::kAlgebra},
      {"f", EntityKind::kRenaming}};
  return slots;
}

Json read_json(const std::filesystem::path& p) {
  std::ifstream in(p);
  return Json::parse(in);
}

void write_json(const std::filesystem::path& p, const Json& j) {
  std::filesystem::create_directories(p.parent_path());
  const auto tmp = p.string() + ".tmp";
  {
    std::ofstream out(tmp);
    out << j.dump(2) << '\n';
  }
  std::filesystem::rename(tmp, p);
}

}  // namespace

Workspace::Workspace(std::optional<std::filesystem::path> dir) : dir_(std::move(dir)) {
  for (EntityKind k : {EntityKind::kAlgebra, EntityKind::kRenaming, EntityKind::kModule,
                       EntityKind::kBridge}) {
    entities_[k];
  }
  if (dir_) load();
}

Json Workspace::resolve_ref(EntityKind kind, const Json& node, const std::string& path) const {
  if (!node.is_string()) return node;
  const auto& coll = entities_.at(kind);
  auto it = coll.find(node.get<std::string>());
  if (it == coll.end()) {
    throw ReferenceError(path + ": no " + std::string(collection_name(kind)) + " entry '" +
                         node.get<std::string>() + "'");
  }
  return resolve(kind, it->second);
}

Json Workspace::resolve(EntityKind kind, const Json& doc) const {
  if (!doc.is_object()) return doc;
  Json out = doc;
  for (const auto& [slot, target] : ref_slots(kind)) {
    if (out.contains(slot)) out[slot] = resolve_ref(target, out[slot], "/" + slot);
  }
  return out;
}

void Workspace::validate(EntityKind kind, const Json& doc) const {
  switch (kind) {
    case EntityKind::kAlgebra: io::algebra_from_json(doc); break;
    case EntityKind::kRenaming: io::renaming_from_json(doc); break;
    case EntityKind::kModule: io::module_from_json(doc); break;
    case EntityKind::kBridge: {
      auto b = io::bridge_from_json(doc);
      Bridge(b.source, b.target, b.f);
      break;
    }
  }
}

std::vector<std::pair<EntityKind, std::string>> Workspace::references(EntityKind kind,
                                                                      const Json& doc) const {
  std::vector<std::pair<EntityKind, std::string>> out;
  if (!doc.is_object()) return out;
  for (const auto& [slot, target] : ref_slots(kind)) {
    if (doc.contains(slot) && doc[slot].is_string()) {
      out.emplace_back(target, doc[slot].get<std::string>());
    }
  }
  return out;
}

std::pair<std::string, bool> Workspace::put(EntityKind kind, const Json& doc) {
  if (!doc.is_object()) throw StructuralError("expected an object", "/");
  std::unique_lock lock(mutex_);
  validate(kind, resolve(kind, doc));
  const std::string id = io::content_hash(doc).substr(0, 16);
  auto& coll = entities_[kind];
  const bool created = coll.emplace(id, doc).second;
  if (created) persist(kind, id, doc);
  return {id, created};
}

Json Workspace::get(EntityKind kind, const std::string& id) const {
  std::shared_lock lock(mutex_);
  const auto& coll = entities_.at(kind);
  auto it = coll.find(id);
  if (it == coll.end()) {
    throw NotFound("no " + std::string(collection_name(kind)) + " entry '" + id + "'");
  }
  return it->second;
}

Json Workspace::resolved(EntityKind kind, const std::string& id) const {
  Json doc = get(kind, id);
  std::shared_lock lock(mutex_);
  return resolve(kind, doc);
}

std::vector<std::string> Workspace::list(EntityKind kind) const {
  std::shared_lock lock(mutex_);
  std::vector<std::string> out;
  for (const auto& [id, doc] : entities_.at(kind)) out.push_back(id);
  return out;
}

void Workspace::remove(EntityKind kind, const std::string& id) {
  std::unique_lock lock(mutex_);
  auto& coll = entities_[kind];
  if (!coll.count(id)) {
    throw NotFound("no " + std::string(collection_name(kind)) + " entry '" + id + "'");
  }
  for (const auto& [k, docs] : entities_) {
    for (const auto& [other, doc] : docs) {
      for (const auto& ref : references(k, doc)) {
        if (ref == std::pair{kind, id}) {
          throw ReferenceError(std::string(collection_name(k)) + " entry '" + other +
                               "' refers to '" + id + "'");
        }
      }
    }
  }
  coll.erase(id);
  if (dir_) {
    std::filesystem::remove(*dir_ / collection_name(kind) / (id + ".json"));
  }
}

std::string Workspace::create_session(const Json& request) {
  if (!request.is_object()) throw StructuralError("expected an object", "/");
  Json inputs_doc;
  std::string id;
  {
    std::unique_lock lock(mutex_);
    Json req = request;
    for (const auto& [slot, target] : session_slots()) {
      if (!req.contains(slot)) continue;
      req[slot] = resolve_ref(target, req[slot], "/" + slot);
    }
    // An algebra given for Bchain contributes its chain only.
    if (req.contains("Bchain") && req["Bchain"].is_object()) {
      req["Bchain"] = req["Bchain"].value("chain", Json());
    }
    inputs_doc = io::to_json(io::session_inputs_from_json(req));
    const std::size_t ordinal = session_ordinal_++;
    id = io::content_hash({{"inputs", inputs_doc}, {"ordinal", ordinal}}).substr(0, 16);
    auto entry = std::make_shared<SessionEntry>(
        inputs_doc, Session::start(io::session_inputs_from_json(inputs_doc)));
    entry->ordinal = ordinal;
    sessions_.emplace(id, entry);
    persist_session(id, *entry);
  }
  return id;
}

std::shared_ptr<Workspace::SessionEntry> Workspace::session_entry(const std::string& id) const {
  std::shared_lock lock(mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw NotFound("no session '" + id + "'");
  return it->second;
}

void Workspace::select(const std::string& id, std::optional<int> candidate) {
  auto entry = session_entry(id);
  std::lock_guard lock(entry->mutex);
  entry->session.select(candidate);
  persist_session(id, *entry);
}

std::vector<std::string> Workspace::list_sessions() const {
  std::shared_lock lock(mutex_);
  std::vector<std::string> out;
  for (const auto& [id, e] : sessions_) out.push_back(id);
  return out;
}

void Workspace::persist(EntityKind kind, const std::string& id, const Json& doc) const {
  if (dir_) write_json(*dir_ / collection_name(kind) / (id + ".json"), doc);
}

void Workspace::persist_session(const std::string& id, const SessionEntry& e) const {
  if (!dir_) return;
  Json choices = Json::array();
  for (const auto& [phase, choice] : e.session.history()) {
    choices.push_back(choice ? Json(*choice) : Json(nullptr));
  }
  write_json(*dir_ / "sessions" / (id + ".json"),
             {{"inputs", e.inputs}, {"ordinal", e.ordinal}, {"choices", choices}});
}

void Workspace::load() {
  namespace fs = std::filesystem;
  for (auto k : {EntityKind::kAlgebra, EntityKind::kRenaming, EntityKind::kModule,
                 EntityKind::kBridge}) {
    auto& coll = entities_[k];
    const fs::path sub = *dir_ / collection_name(k);
    if (!fs::is_directory(sub)) continue;
    for (const auto& f : fs::directory_iterator(sub)) {
      if (f.path().extension() == ".json") coll.emplace(f.path().stem().string(), read_json(f));
    }
  }
  const fs::path sub = *dir_ / "sessions";
  if (!fs::is_directory(sub)) return;
  for (const auto& f : fs::directory_iterator(sub)) {
    if (f.path().extension() != ".json") continue;
    const Json j = read_json(f);
    std::vector<std::optional<int>> choices;
    for (const auto& c : j.at("choices")) {
      choices.push_back(c.is_null() ? std::nullopt : std::optional<int>(c.get<int>()));
    }
    auto entry = std::make_shared<SessionEntry>(
        j.at("inputs"), Session::replay(io::session_inputs_from_json(j.at("inputs")), choices));
    entry->ordinal = j.at("ordinal").get<std::size_t>();
    session_ordinal_ = std::max(session_ordinal_, entry->ordinal + 1);
    sessions_.emplace(f.path().stem().string(), entry);
  }
}

}  // namespace mvl
