#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"
#include "mvl/chain_algebra.hpp"
#include "mvl/entailment.hpp"
#include "mvl/generator.hpp"
#include "mvl/interval_algebra.hpp"
#include "mvl/morphism.hpp"
#include "mvl/translation.hpp"

/// JSON documents for every entity. Parsers throw StructuralError carrying a
/// JSON pointer to the offending node, and AxiomError when a well-formed
/// algebra or renaming fails its algebraic requirements.
///
/// Values are written as chain labels and read as labels or integer indices.
/// Intervals are [lo, hi] pairs, or a single value for a point.
///
///   chain     ["0", "a1", "1"]
///   algebra   {"chain": [...], "conj": [[...], ...]}
///   renaming  {"from": [...], "toChain": [...], "image": {"a1": ["0", "b"], ...}}
///   sentence  "p & !q -> r : [a1,1]"
///             | {"if": ["p", "!q"], "then": "r", "weight": ...}
///             | {"fact": "!p", "weight": ...}
///             | {"fact_conj": ["p", "q"], "weight": ...}
///   module    {"atoms": [...], "algebra": {...}, "sentences": [...]}
///   bridge    {"source": {...}, "target": {...}, "renaming": {...}, "module"?: {...}}
namespace mvl::io {

using Json = nlohmann::json;

/// Appends a key or index to a JSON pointer, escaping '~' and '/'.
std::string child(const std::string& path, std::string_view key);
std::string child(const std::string& path, std::size_t index);

Json to_json(const Chain& chain);
/// Accepts a label array or any object with a "chain" member.
Chain chain_from_json(const Json& j, const std::string& path = "");

Value value_from_json(const Json& j, const Chain& chain, const std::string& path);
Json interval_to_json(const Chain& chain, const Interval& i);
Interval interval_from_json(const Json& j, const Chain& chain, const std::string& path);

Json table_to_json(const Chain& chain, const ConjTable& t);
ConjTable table_from_json(const Json& j, const Chain& chain, const std::string& path);

/// Chain and table before axiom validation, for reporting.
struct AlgebraDoc {
  Chain chain;
  ConjTable table;
};
AlgebraDoc algebra_doc_from_json(const Json& j, const std::string& path = "");

Json to_json(const Algebra& alg);
Algebra algebra_from_json(const Json& j, const std::string& path = "");

struct RenamingDoc {
  Chain from;
  Chain to;
  Renaming f;
};
Json renaming_to_json(const Chain& from, const Chain& to, const Renaming& f);
RenamingDoc renaming_from_json(const Json& j, const std::string& path = "");
/// Parses against known chains; "from" / "toChain", when present, must match.
Renaming renaming_from_json(const Json& j, const Chain& from, const Chain& to,
                            const std::string& path = "");

Json sentence_to_json(const KnowledgeModule& km, const Sentence& s);
Sentence sentence_from_json(const Json& j, const KnowledgeModule& km,
                            const std::string& path = "");

Json to_json(const KnowledgeModule& km);
KnowledgeModule module_from_json(const Json& j, const std::string& path = "");

struct BridgeDoc {
  Algebra source;
  Algebra target;
  Renaming f;
  std::optional<KnowledgeModule> module;
};
Json to_json(const BridgeDoc& b);
/// Parses without the quasi-morphism check; see Bridge for that.
BridgeDoc bridge_from_json(const Json& j, const std::string& path = "");

Json trace_to_json(const KnowledgeModule& km, const DerivationTrace& t);

Json to_json(const ValidationReport& r, const Chain& chain);
Json to_json(const QuasiMorphismReport& r, const Chain& a, const Chain& b);
Json intervals_json(const IntervalAlgebra& ia);

Json candidate_to_json(const Candidate& c, const Chain& a, const Chain& b);

/// {"A": algebra, "Bchain": chain, "Btable"?: rows, "f": renaming}. A "B"
/// algebra may stand in for Bchain and Btable.
SessionInputs session_inputs_from_json(const Json& j, const std::string& path = "");
Json to_json(const SessionInputs& in);

/// The outcome of the generator loop: shape is one of
/// "check", "renaming", "table", "both", "nil", or "pending" while active.
Json session_result_json(const Session& s);
Json session_state_json(const Session& s, const std::string& id);
/// One page of the current candidates; page numbers start at 0.
Json candidates_page_json(const Session& s, int page, int size);

/// Selection request body: {"candidate": id} or {"candidate": null} /
/// {"none": true}.
std::optional<int> selection_from_json(const Json& j);

/// Lowercase hex SHA-256 of the canonical (sorted-key, compact) dump.
std::string content_hash(const Json& j);

}  // namespace mvl::io
