#include "mvl/io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdio>

#include "mvl/errors.hpp"

namespace mvl::io {

std::string child(const std::string& path, std::string_view key) {
  std::string out = path + "/";
  for (char c : key) {
    if (c == '~') {
      out += "~0";
    } else if (c == '/') {
      out += "~1";
    } else {
      out += c;
    }
  }
  return out;
}

std::string child(const std::string& path, std::size_t index) {
  return path + "/" + std::to_string(index);
}

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw StructuralError(msg, path.empty() ? "/" : path);
}

const Json& member(const Json& j, std::string_view key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(child(path, key), "missing member");
  return *it;
}

const Json& array_member(const Json& j, std::string_view key, const std::string& path) {
  const Json& a = member(j, key, path);
  if (!a.is_array()) fail(child(path, key), "expected an array");
  return a;
}

std::string string_at(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

std::vector<std::string> strings_at(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(string_at(j[k], child(path, k)));
  return out;
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return "";
  auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

Value label_value(std::string_view text, const Chain& chain, const std::string& path) {
  if (auto v = chain.find(text)) return *v;
  fail(path, "'" + std::string(text) + "' is not a value of the chain");
}

Json value_json(const Chain& chain, Value v) { return chain.label(v); }

}  // namespace

Json to_json(const Chain& chain) { return chain.labels(); }

Chain chain_from_json(const Json& j, const std::string& path) {
  if (j.is_object()) return chain_from_json(member(j, "chain", path), child(path, "chain"));
  auto labels = strings_at(j, path);
  try {
    return Chain(std::move(labels));
  } catch (const StructuralError& e) {
    fail(path, e.what());
  }
}

Value value_from_json(const Json& j, const Chain& chain, const std::string& path) {
  if (j.is_number_integer()) {
    const auto v = j.get<long long>();
    if (v < 0 || v >= chain.size()) fail(path, "index " + std::to_string(v) + " is off the chain");
    return static_cast<Value>(v);
  }
  if (j.is_string()) return label_value(j.get<std::string>(), chain, path);
  fail(path, "expected a chain label or index");
}

Json interval_to_json(const Chain& chain, const Interval& i) {
  return Json::array({value_json(chain, i.lo), value_json(chain, i.hi)});
}

Interval interval_from_json(const Json& j, const Chain& chain, const std::string& path) {
  Interval i;
  if (j.is_array()) {
    if (j.size() != 2) fail(path, "expected [lo, hi]");
    i = {value_from_json(j[0], chain, child(path, 0)), value_from_json(j[1], chain, child(path, 1))};
  } else if (j.is_string() && !j.get<std::string>().empty() && j.get<std::string>()[0] == '[') {
    const std::string s = j.get<std::string>();
    const auto comma = s.find(',');
    if (s.back() != ']' || comma == std::string::npos) fail(path, "expected \"[lo,hi]\"");
    i = {label_value(trim(s.substr(1, comma - 1)), chain, path),
         label_value(trim(s.substr(comma + 1, s.size() - comma - 2)), chain, path)};
  } else {
    i = Interval::point(value_from_json(j, chain, path));
  }
  if (!i.valid()) fail(path, "interval bounds are reversed");
  return i;
}

Json table_to_json(const Chain& chain, const ConjTable& t) {
  Json rows = Json::array();
  for (Value a = 0; a < t.size(); ++a) {
    Json row = Json::array();
    for (Value b = 0; b < t.size(); ++b) row.push_back(value_json(chain, t(a, b)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ConjTable table_from_json(const Json& j, const Chain& chain, const std::string& path) {
  const int n = chain.size();
  if (!j.is_array() || static_cast<int>(j.size()) != n) {
    fail(path, "expected " + std::to_string(n) + " rows");
  }
  ConjTable t(n);
  for (int a = 0; a < n; ++a) {
    const std::string rp = child(path, a);
    if (!j[a].is_array() || static_cast<int>(j[a].size()) != n) {
      fail(rp, "expected " + std::to_string(n) + " entries");
    }
    for (int b = 0; b < n; ++b) t.set(a, b, value_from_json(j[a][b], chain, child(rp, b)));
  }
  return t;
}

AlgebraDoc algebra_doc_from_json(const Json& j, const std::string& path) {
  Chain chain = chain_from_json(member(j, "chain", path), child(path, "chain"));
  ConjTable t = table_from_json(member(j, "conj", path), chain, child(path, "conj"));
  return {std::move(chain), std::move(t)};
}

Json to_json(const Algebra& alg) {
  return {{"chain", to_json(alg.chain())}, {"conj", table_to_json(alg.chain(), alg.table())}};
}

Algebra algebra_from_json(const Json& j, const std::string& path) {
  auto doc = algebra_doc_from_json(j, path);
  return Algebra(std::move(doc.chain), std::move(doc.table));
}

Json renaming_to_json(const Chain& from, const Chain& to, const Renaming& f) {
  Json image = Json::object();
  for (Value x = 0; x < from.size(); ++x) image[from.label(x)] = interval_to_json(to, f(x));
  return {{"from", to_json(from)}, {"toChain", to_json(to)}, {"image", std::move(image)}};
}

Renaming renaming_from_json(const Json& j, const Chain& from, const Chain& to,
                            const std::string& path) {
  if (j.contains("from") && chain_from_json(j["from"], child(path, "from")) != from) {
    fail(child(path, "from"), "does not match the source chain");
  }
  if (j.contains("toChain") && chain_from_json(j["toChain"], child(path, "toChain")) != to) {
    fail(child(path, "toChain"), "does not match the target chain");
  }
  const Json& image = member(j, "image", path);
  const std::string ip = child(path, "image");
  Renaming f;
  f.image.resize(from.size());
  if (image.is_array()) {
    if (static_cast<int>(image.size()) != from.size()) {
      fail(ip, "expected " + std::to_string(from.size()) + " images");
    }
    for (int x = 0; x < from.size(); ++x) {
      f.image[x] = interval_from_json(image[x], to, child(ip, x));
    }
    return f;
  }
  if (!image.is_object()) fail(ip, "expected an object keyed by source label");
  for (auto it = image.begin(); it != image.end(); ++it) {
    if (!from.find(it.key())) fail(child(ip, it.key()), "not a source value");
  }
  for (Value x = 0; x < from.size(); ++x) {
    const std::string& label = from.label(x);
    if (!image.contains(label)) fail(child(ip, label), "missing image");
    f.image[x] = interval_from_json(image[label], to, child(ip, label));
  }
  return f;
}

RenamingDoc renaming_from_json(const Json& j, const std::string& path) {
  Chain from = chain_from_json(member(j, "from", path), child(path, "from"));
  Chain to = chain_from_json(member(j, "toChain", path), child(path, "toChain"));
  Renaming f = renaming_from_json(j, from, to, path);
  return {std::move(from), std::move(to), std::move(f)};
}

namespace {

Literal literal_from_text(const KnowledgeModule& km, std::string text, const std::string& path) {
  text = trim(text);
  bool negated = false;
  while (true) {
    if (!text.empty() && (text[0] == '!' || text[0] == '~')) {
      negated = !negated;
      text = trim(text.substr(1));
    } else if (text.rfind("\xC2\xAC", 0) == 0) {
      negated = !negated;
      text = trim(text.substr(2));
    } else {
      break;
    }
  }
  try {
    return {km.atom(text), negated};
  } catch (const StructuralError& e) {
    fail(path, e.what());
  }
}

std::vector<Literal> literals_from_json(const KnowledgeModule& km, const Json& j,
                                        const std::string& path) {
  std::vector<Literal> out;
  if (j.is_string()) {
    out.push_back(literal_from_text(km, j.get<std::string>(), path));
    return out;
  }
  if (!j.is_array() || j.empty()) fail(path, "expected a non-empty array of literals");
  for (std::size_t k = 0; k < j.size(); ++k) {
    out.push_back(literal_from_text(km, string_at(j[k], child(path, k)), child(path, k)));
  }
  return out;
}

}  // namespace

Json sentence_to_json(const KnowledgeModule& km, const Sentence& s) {
  return format_sentence(km, s);
}

Sentence sentence_from_json(const Json& j, const KnowledgeModule& km, const std::string& path) {
  if (j.is_string()) {
    try {
      return parse_sentence(km, j.get<std::string>());
    } catch (const StructuralError& e) {
      fail(path, e.what());
    }
  }
  if (!j.is_object()) fail(path, "expected a sentence string or object");
  const Chain& chain = km.algebra().chain();
  const Interval w = interval_from_json(member(j, "weight", path), chain, child(path, "weight"));
  if (j.contains("if")) {
    auto body = literals_from_json(km, j["if"], child(path, "if"));
    const Json& then = member(j, "then", path);
    const Literal head = literal_from_text(km, string_at(then, child(path, "then")),
                                           child(path, "then"));
    if (head.negated) fail(child(path, "then"), "a rule head is a plain atom");
    return {Formula::rule(std::move(body), head.atom), w};
  }
  if (j.contains("fact")) {
    return {Formula::literal(
                literal_from_text(km, string_at(j["fact"], child(path, "fact")), child(path, "fact"))),
            w};
  }
  if (j.contains("fact_conj")) {
    return {Formula::conjunction(literals_from_json(km, j["fact_conj"], child(path, "fact_conj"))),
            w};
  }
  fail(path, "expected one of \"if\", \"fact\", \"fact_conj\"");
}

Json to_json(const KnowledgeModule& km) {
  Json sentences = Json::array();
  for (const auto& s : km.sentences()) sentences.push_back(sentence_to_json(km, s));
  return {{"atoms", km.atoms()}, {"algebra", to_json(km.algebra())}, {"sentences", sentences}};
}

KnowledgeModule module_from_json(const Json& j, const std::string& path) {
  auto atoms = strings_at(member(j, "atoms", path), child(path, "atoms"));
  Algebra alg = algebra_from_json(member(j, "algebra", path), child(path, "algebra"));
  std::optional<KnowledgeModule> km;
  try {
    km.emplace(alg, atoms);
  } catch (const StructuralError& e) {
    fail(child(path, "atoms"), e.what());
  }
  std::vector<Sentence> sentences;
  if (j.contains("sentences")) {
    const Json& arr = array_member(j, "sentences", path);
    const std::string sp = child(path, "sentences");
    for (std::size_t k = 0; k < arr.size(); ++k) {
      sentences.push_back(sentence_from_json(arr[k], *km, child(sp, k)));
    }
  }
  return km->with_sentences(std::move(sentences));
}

Json to_json(const BridgeDoc& b) {
  Json j = {{"source", to_json(b.source)},
            {"target", to_json(b.target)},
            {"renaming", renaming_to_json(b.source.chain(), b.target.chain(), b.f)}};
  if (b.module) j["module"] = to_json(*b.module);
  return j;
}

BridgeDoc bridge_from_json(const Json& j, const std::string& path) {
  Algebra source = algebra_from_json(member(j, "source", path), child(path, "source"));
  Algebra target = algebra_from_json(member(j, "target", path), child(path, "target"));
  Renaming f = renaming_from_json(member(j, "renaming", path), source.chain(), target.chain(),
                                  child(path, "renaming"));
  std::optional<KnowledgeModule> km;
  if (j.contains("module")) {
    km = module_from_json(j["module"], child(path, "module"));
    if (!(km->algebra() == source)) {
      fail(child(path, "module"), "module algebra differs from the bridge source");
    }
  }
  return {std::move(source), std::move(target), std::move(f), std::move(km)};
}

Json trace_to_json(const KnowledgeModule& km, const DerivationTrace& t) {
  Json steps = Json::array();
  for (std::size_t k = 0; k < t.steps.size(); ++k) {
    const Step& s = t.steps[k];
    steps.push_back({{"id", k},
                     {"rule", std::string(rule_tag(s.rule))},
                     {"premises", s.premises},
                     {"sentence", format_sentence(km, s.conclusion)}});
  }
  return steps;
}

Json to_json(const ValidationReport& r, const Chain& chain) {
  Json violations = Json::array();
  for (const auto& v : r.violations) {
    Json w = Json::array();
    for (Value x : v.witness) w.push_back(chain.label(x));
    violations.push_back({{"axiom", v.axiom}, {"witness", std::move(w)}});
  }
  return {{"ok", r.ok()}, {"violations", std::move(violations)}};
}

Json to_json(const QuasiMorphismReport& r, const Chain& a, const Chain& b) {
  Json violations = Json::array();
  for (const auto& v : r.violations) {
    Json w = Json::array();
    for (Value x : v.witness) w.push_back(a.label(x));
    violations.push_back({{"condition", v.condition},
                          {"witness", std::move(w)},
                          {"actual", interval_to_json(b, v.actual)},
                          {"expected", interval_to_json(b, v.expected)}});
  }
  return {{"ok", r.ok()},
          {"violations", std::move(violations)},
          {"leqReadingHolds", r.leq_reading_holds},
          {"topPreserved", r.top_preserved}};
}

Json intervals_json(const IntervalAlgebra& ia) {
  const Chain& chain = ia.base().chain();
  auto list = [&](const std::vector<Interval>& v) {
    Json out = Json::array();
    for (const auto& i : v) out.push_back(interval_to_json(chain, i));
    return out;
  };
  Json edges = Json::array();
  for (const auto& [u, v] : hasse(ia)) edges.push_back({u, v});
  const SignClasses sc = sign_classes(ia);
  return {{"chain", to_json(chain)},
          {"intervals", list(ia.carrier())},
          {"hasse", std::move(edges)},
          {"signs",
           {{"negative", list(sc.negative)},
            {"fixed", list(sc.fixed)},
            {"positive", list(sc.positive)},
            {"indefinite", list(sc.indefinite)}}}};
}

Json candidate_to_json(const Candidate& c, const Chain& a, const Chain& b) {
  Json j = {{"id", c.id},
            {"renaming", renaming_to_json(a, b, c.renaming)},
            {"metrics",
             {{"morphism", c.metrics.morphism},
              {"imprecision", c.metrics.imprecision},
              {"displacement", c.metrics.displacement},
              {"tableDistance", c.metrics.table_distance}}}};
  if (c.table) j["table"] = table_to_json(b, *c.table);
  return j;
}

SessionInputs session_inputs_from_json(const Json& j, const std::string& path) {
  Algebra a = algebra_from_json(member(j, "A", path), child(path, "A"));
  std::optional<Chain> b_chain;
  std::optional<ConjTable> b_table;
  if (j.contains("B")) {
    auto doc = algebra_doc_from_json(j["B"], child(path, "B"));
    b_chain = std::move(doc.chain);
    b_table = std::move(doc.table);
  } else {
    b_chain = chain_from_json(member(j, "Bchain", path), child(path, "Bchain"));
    if (j.contains("Btable") && !j["Btable"].is_null()) {
      b_table = table_from_json(j["Btable"], *b_chain, child(path, "Btable"));
    }
  }
  Renaming f = renaming_from_json(member(j, "f", path), a.chain(), *b_chain, child(path, "f"));
  return {std::move(a), std::move(*b_chain), std::move(b_table), std::move(f)};
}

Json to_json(const SessionInputs& in) {
  Json j = {{"A", to_json(in.a)},
            {"Bchain", to_json(in.b_chain)},
            {"f", renaming_to_json(in.a.chain(), in.b_chain, in.f)}};
  j["Btable"] = in.b_table ? table_to_json(in.b_chain, *in.b_table) : Json(nullptr);
  return j;
}

Json session_result_json(const Session& s) {
  if (!s.finished()) return {{"shape", "pending"}, {"result", nullptr}};
  if (!s.result()) return {{"shape", "nil"}, {"result", nullptr}};
  const SessionResult& r = *s.result();
  return {{"shape", r.origin},
          {"result",
           {{"A", to_json(r.a)},
            {"B", to_json(r.b)},
            {"f", renaming_to_json(r.a.chain(), r.b.chain(), r.f)}}}};
}

Json session_state_json(const Session& s, const std::string& id) {
  Json history = Json::array();
  for (const auto& [phase, choice] : s.history()) {
    history.push_back({{"phase", std::string(phase_name(phase))},
                       {"candidate", choice ? Json(*choice) : Json(nullptr)}});
  }
  Json declined = Json::array();
  for (Phase p : s.declined()) declined.push_back(std::string(phase_name(p)));
  int morphisms = 0;
  for (const auto& c : s.candidates()) morphisms += c.metrics.morphism;
  Json j = session_result_json(s);
  j["id"] = id;
  j["phase"] = std::string(phase_name(s.phase()));
  j["candidateCount"] = s.candidates().size();
  j["morphismCount"] = morphisms;
  j["history"] = std::move(history);
  j["declined"] = std::move(declined);
  return j;
}

Json candidates_page_json(const Session& s, int page, int size) {
  if (page < 0) throw StructuralError("page must be non-negative", "/page");
  if (size < 1) throw StructuralError("size must be positive", "/size");
  const auto& all = s.candidates();
  Json items = Json::array();
  const std::size_t begin = static_cast<std::size_t>(page) * size;
  const std::size_t end = std::min(all.size(), begin + size);
  const Chain& a = s.inputs().a.chain();
  const Chain& b = s.inputs().b_chain;
  for (std::size_t k = begin; k < end; ++k) items.push_back(candidate_to_json(all[k], a, b));
  int morphisms = 0;
  for (const auto& c : all) morphisms += c.metrics.morphism;
  return {{"phase", std::string(phase_name(s.phase()))},
          {"page", page},
          {"size", size},
          {"total", all.size()},
          {"morphismCount", morphisms},
          {"items", std::move(items)}};
}

std::optional<int> selection_from_json(const Json& j) {
  if (j.is_string() && j.get<std::string>() == "none") return std::nullopt;
  if (!j.is_object()) fail("", "expected {\"candidate\": id | null}");
  if (j.contains("none")) {
    if (!j["none"].is_boolean() || !j["none"].get<bool>()) fail("/none", "expected true");
    return std::nullopt;
  }
  const Json& c = member(j, "candidate", "");
  if (c.is_null() || (c.is_string() && c.get<std::string>() == "none")) return std::nullopt;
  if (!c.is_number_integer()) fail("/candidate", "expected an integer id or null");
  return c.get<int>();
}

std::string content_hash(const Json& j) {
  const std::string text = j.dump();
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr);
  std::string hex;
  hex.reserve(2 * len);
  char buf[3];
  for (unsigned int k = 0; k < len; ++k) {
    std::snprintf(buf, sizeof buf, "%02x", digest[k]);
    hex += buf;
  }
  return hex;
}

}  // namespace mvl::io
