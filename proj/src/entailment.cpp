#include "mvl/entailment.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>

#include "mvl/errors.hpp"

namespace mvl {

Formula Formula::conjunction(std::vector<Literal> lits) {
  if (lits.empty()) throw StructuralError("empty conjunction");
  std::sort(lits.begin(), lits.end());
  return {std::move(lits), std::nullopt};
}

Formula Formula::rule(std::vector<Literal> lits, int head) {
  Formula f = conjunction(std::move(lits));
  f.head = head;
  return f;
}

KnowledgeModule::KnowledgeModule(Algebra algebra, std::vector<std::string> atoms,
                                 std::vector<Sentence> sentences)
    : algebra_(std::move(algebra)),
      atoms_(std::move(atoms)),
      sentences_(std::move(sentences)) {
  std::set<std::string> seen;
  for (const auto& a : atoms_) {
    if (a.empty()) throw StructuralError("empty atom name");
    if (!seen.insert(a).second) throw StructuralError("duplicate atom '" + a + "'");
  }
  for (const auto& s : sentences_) check(s);
}

int KnowledgeModule::atom(std::string_view name) const {
  for (int i = 0; i < static_cast<int>(atoms_.size()); ++i) {
    if (atoms_[i] == name) return i;
  }
  throw StructuralError("undeclared atom '" + std::string(name) + "'");
}

void KnowledgeModule::check(const Sentence& s) const {
  const int k = static_cast<int>(atoms_.size());
  for (const auto& l : s.formula.body) {
    if (l.atom < 0 || l.atom >= k) throw StructuralError("undeclared atom in sentence");
  }
  if (s.formula.body.empty()) throw StructuralError("empty conjunction");
  if (s.formula.head && (*s.formula.head < 0 || *s.formula.head >= k)) {
    throw StructuralError("undeclared atom in rule conclusion");
  }
  if (!s.weight.valid() || s.weight.hi >= algebra_.size()) {
    throw StructuralError("weight " + to_string(s.weight) +
                          " is not an interval over the module's chain");
  }
}

// ---------------------------------------------------------------------------
// Text syntax

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

std::string normalize_symbols(std::string_view text) {
  std::string out(text);
  const std::string neg = "\xC2\xAC";       // ¬
  const std::string arrow = "\xE2\x86\x92";  // →
  for (auto pos = out.find(neg); pos != std::string::npos; pos = out.find(neg)) {
    out.replace(pos, neg.size(), "!");
  }
  for (auto pos = out.find(arrow); pos != std::string::npos; pos = out.find(arrow)) {
    out.replace(pos, arrow.size(), "->");
  }
  return out;
}

Literal parse_literal(const KnowledgeModule& km, std::string_view text) {
  text = trim(text);
  bool negated = false;
  while (!text.empty() && (text.front() == '!' || text.front() == '~')) {
    negated = !negated;
    text = trim(text.substr(1));
  }
  if (text.empty()) throw StructuralError("missing atom in literal");
  return {km.atom(text), negated};
}

std::vector<Literal> parse_body(const KnowledgeModule& km, std::string_view text) {
  std::vector<Literal> lits;
  while (true) {
    const auto amp = text.find('&');
    lits.push_back(parse_literal(km, text.substr(0, amp)));
    if (amp == std::string_view::npos) break;
    text.remove_prefix(amp + 1);
  }
  return lits;
}

Value parse_value(const Chain& chain, std::string_view text) {
  text = trim(text);
  if (auto v = chain.find(text)) return *v;
  Value v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !chain.contains(v)) {
    throw StructuralError("'" + std::string(text) + "' is not a value of the chain");
  }
  return v;
}

}  // namespace

Formula parse_formula(const KnowledgeModule& km, std::string_view text) {
  const std::string norm = normalize_symbols(text);
  std::string_view s = norm;
  const auto arrow = s.find("->");
  if (arrow == std::string_view::npos) return Formula::conjunction(parse_body(km, s));
  auto head = trim(s.substr(arrow + 2));
  if (!head.empty() && (head.front() == '!' || head.front() == '~')) {
    throw StructuralError("a rule conclusion must be a plain atom");
  }
  return Formula::rule(parse_body(km, s.substr(0, arrow)), km.atom(head));
}

Sentence parse_sentence(const KnowledgeModule& km, std::string_view text) {
  const auto colon = text.rfind(':');
  if (colon == std::string_view::npos) {
    throw StructuralError("sentence needs a weight: '<formula> : [lo,hi]'");
  }
  Sentence s{parse_formula(km, text.substr(0, colon)), {}};
  auto w = trim(text.substr(colon + 1));
  const Chain& chain = km.algebra().chain();
  if (!w.empty() && w.front() == '[') {
    if (w.back() != ']') throw StructuralError("unterminated interval");
    w = w.substr(1, w.size() - 2);
    const auto comma = w.find(',');
    if (comma == std::string_view::npos) throw StructuralError("interval needs two ends");
    s.weight = {parse_value(chain, w.substr(0, comma)),
                parse_value(chain, w.substr(comma + 1))};
  } else {
    s.weight = Interval::point(parse_value(chain, w));
  }
  km.check(s);
  return s;
}

std::string format_formula(const KnowledgeModule& km, const Formula& f) {
  std::string out;
  for (std::size_t i = 0; i < f.body.size(); ++i) {
    if (i) out += " & ";
    if (f.body[i].negated) out += '!';
    out += km.atoms().at(f.body[i].atom);
  }
  if (f.head) out += " -> " + km.atoms().at(*f.head);
  return out;
}

std::string format_sentence(const KnowledgeModule& km, const Sentence& s) {
  const Chain& c = km.algebra().chain();
  return format_formula(km, s.formula) + " : [" + c.label(s.weight.lo) + "," +
         c.label(s.weight.hi) + "]";
}

// ---------------------------------------------------------------------------
// Semantics

Value evaluate(const Algebra& alg, const Formula& f, const Valuation& v) {
  Value acc = alg.top();
  for (const auto& l : f.body) {
    const Value x = l.negated ? alg.neg(v[l.atom]) : v[l.atom];
    acc = alg.conj(acc, x);
  }
  return f.head ? alg.impl(acc, v[*f.head]) : acc;
}

bool satisfies(const Algebra& alg, const Valuation& v, const Sentence& s) {
  return s.weight.contains(evaluate(alg, s.formula, v));
}

bool semantic_entails(const KnowledgeModule& km, const Sentence& s, std::size_t cap) {
  km.check(s);
  const auto& alg = km.algebra();
  const std::size_t k = km.atoms().size();
  std::size_t total = 1;
  for (std::size_t i = 0; i < k; ++i) {
    total *= static_cast<std::size_t>(alg.size());
    if (total > cap) {
      throw CapExceeded("semantic check needs more than " + std::to_string(cap) +
                        " valuations");
    }
  }
  Valuation v(k, 0);
  for (std::size_t count = 0; count < total; ++count) {
    bool model = true;
    for (const auto& g : km.sentences()) {
      if (!satisfies(alg, v, g)) {
        model = false;
        break;
      }
    }
    if (model && !satisfies(alg, v, s)) return false;
    for (std::size_t i = 0; i < k; ++i) {
      if (++v[i] < alg.size()) break;
      v[i] = 0;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Derivations

std::string_view rule_tag(Rule r) {
  switch (r) {
    case Rule::kPremise: return "premise";
    case Rule::kWeakening: return "RI-1";
    case Rule::kNot: return "RI-2";
    case Rule::kAnd: return "RI-3";
    case Rule::kModusPonens: return "RI-4'";
    case Rule::kModusPonensExact: return "RI-4";
  }
  return "?";
}

std::optional<Rule> rule_from_tag(std::string_view tag) {
  for (Rule r : {Rule::kPremise, Rule::kWeakening, Rule::kNot, Rule::kAnd,
                 Rule::kModusPonens, Rule::kModusPonensExact}) {
    if (rule_tag(r) == tag) return r;
  }
  return std::nullopt;
}

std::vector<int> DerivationTrace::leaves() const {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(steps.size()); ++i) {
    if (steps[i].rule == Rule::kPremise) out.push_back(i);
  }
  return out;
}

std::optional<Interval> detach_weight(const Algebra& alg, MpMode mode,
                                      const Interval& fact, const Interval& rule) {
  if (mode == MpMode::kModified) {
    return Interval{alg.conj(fact.lo, rule.lo), alg.conj(fact.hi, rule.hi)};
  }
  std::optional<Interval> out;
  for (Value a = fact.lo; a <= fact.hi; ++a) {
    for (Value b = rule.lo; b <= rule.hi; ++b) {
      if (auto s = mp_solutions(alg, a, b)) out = out ? hull(*out, *s) : *s;
    }
  }
  return out;
}

namespace {

int default_arity(const KnowledgeModule& km) {
  int bound = 2;
  for (const auto& s : km.sentences()) bound = std::max(bound, s.formula.arity());
  return bound;
}

}  // namespace

Closure::Closure(const KnowledgeModule& km, ClosureOptions options)
    : km_(km), options_(options) {
  arity_bound_ = options_.max_arity.value_or(default_arity(km_));
  for (const auto& s : km_.sentences()) add(Rule::kPremise, {}, s);
  while (!worklist_.empty()) {
    const int id = worklist_.front();
    worklist_.pop_front();
    process(id);
  }
}

void Closure::add(Rule rule, std::vector<int> premises, Sentence s) {
  auto& ids = entries_[s.formula];
  for (int id : ids) {
    if (steps_[id].conclusion.weight.subset_of(s.weight)) return;
  }
  if (steps_.size() >= options_.max_steps) {
    throw CapExceeded("derivation closure exceeded " +
                      std::to_string(options_.max_steps) + " steps");
  }
  const int id = static_cast<int>(steps_.size());
  std::erase_if(ids, [&](int old) {
    if (!s.weight.subset_of(steps_[old].conclusion.weight)) return false;
    live_[old] = false;
    return true;
  });
  steps_.push_back({rule, std::move(premises), std::move(s)});
  live_.push_back(true);
  ids.push_back(id);
  worklist_.push_back(id);
}

void Closure::process(int id) {
  if (!live_[id]) return;
  const Sentence s = steps_[id].conclusion;
  const Formula& f = s.formula;
  const Algebra& alg = km_.algebra();

  if (f.is_rule()) {
    auto it = entries_.find(f.antecedent());
    if (it == entries_.end()) return;
    const std::vector<int> facts = it->second;
    for (int fact : facts) detach(fact, id);
    return;
  }

  if (f.is_literal()) {
    add(Rule::kNot, {id},
        {Formula::literal(f.body.front().negate()),
         {alg.neg(s.weight.hi), alg.neg(s.weight.lo)}});
  }

  std::vector<int> partners;
  std::vector<int> rules;
  for (const auto& [g, ids] : entries_) {
    if (g.is_rule()) {
      if (g.body == f.body) rules.insert(rules.end(), ids.begin(), ids.end());
    } else if (g.arity() + f.arity() <= arity_bound_) {
      partners.insert(partners.end(), ids.begin(), ids.end());
    }
  }
  for (int other : partners) {
    if (!live_[id]) return;
    if (!live_[other]) continue;
    const Sentence& o = steps_[other].conclusion;
    std::vector<Literal> merged = f.body;
    merged.insert(merged.end(), o.formula.body.begin(), o.formula.body.end());
    Interval w{alg.conj(s.weight.lo, o.weight.lo), alg.conj(s.weight.hi, o.weight.hi)};
    add(Rule::kAnd, {id, other}, {Formula::conjunction(std::move(merged)), w});
  }
  for (int r : rules) {
    if (!live_[id]) return;
    if (live_[r]) detach(id, r);
  }
}

void Closure::detach(int fact, int rule) {
  const Sentence& fs = steps_[fact].conclusion;
  const Sentence& rs = steps_[rule].conclusion;
  auto w = detach_weight(km_.algebra(), options_.mp, fs.weight, rs.weight);
  if (!w) {
    contradictions_.emplace_back(fact, rule);
    return;
  }
  const Rule tag =
      options_.mp == MpMode::kModified ? Rule::kModusPonens : Rule::kModusPonensExact;
  add(tag, {fact, rule}, {Formula::literal({*rs.formula.head, false}), *w});
}

std::vector<int> Closure::minimal_steps() const {
  std::vector<int> out;
  for (const auto& [f, ids] : entries_) out.insert(out.end(), ids.begin(), ids.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<int> Closure::find_entailing(const Sentence& s) const {
  auto it = entries_.find(s.formula);
  if (it == entries_.end()) return std::nullopt;
  for (int id : it->second) {
    if (steps_[id].conclusion.weight.subset_of(s.weight)) return id;
  }
  return std::nullopt;
}

DerivationTrace Closure::trace(int id) const {
  std::set<int> reach;
  std::vector<int> stack{id};
  while (!stack.empty()) {
    const int cur = stack.back();
    stack.pop_back();
    if (!reach.insert(cur).second) continue;
    for (int p : steps_[cur].premises) stack.push_back(p);
  }
  // Ids are allocated in derivation order, so ascending order is topological.
  std::map<int, int> remap;
  DerivationTrace t;
  for (int old : reach) {
    Step st = steps_[old];
    for (int& p : st.premises) p = remap.at(p);
    remap[old] = static_cast<int>(t.steps.size());
    t.steps.push_back(std::move(st));
  }
  return t;
}

EntailmentResult entails(const KnowledgeModule& km, const Sentence& s,
                         ClosureOptions options) {
  km.check(s);
  const int bound = options.max_arity.value_or(default_arity(km));
  options.max_arity = std::max(bound, s.formula.arity());
  Closure closure(km, options);
  auto id = closure.find_entailing(s);
  if (!id) return {false, std::nullopt};
  DerivationTrace t = closure.trace(*id);
  if (t.conclusion().weight != s.weight) {
    const int last = static_cast<int>(t.steps.size()) - 1;
    t.steps.push_back({Rule::kWeakening, {last}, s});
  }
  return {true, std::move(t)};
}

std::vector<std::optional<Interval>> replay(const Algebra& alg,
                                            const DerivationTrace& trace,
                                            const std::map<int, Interval>& leaf_weights) {
  std::vector<std::optional<Interval>> w(trace.steps.size());
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const Step& st = trace.steps[i];
    auto in = [&](int k) { return w[st.premises.at(k)]; };
    switch (st.rule) {
      case Rule::kPremise: {
        auto it = leaf_weights.find(static_cast<int>(i));
        w[i] = it != leaf_weights.end() ? it->second : st.conclusion.weight;
        break;
      }
      case Rule::kWeakening:
        w[i] = in(0);
        break;
      case Rule::kNot:
        if (auto v = in(0)) w[i] = Interval{alg.neg(v->hi), alg.neg(v->lo)};
        break;
      case Rule::kAnd:
        if (auto a = in(0), b = in(1); a && b) {
          w[i] = Interval{alg.conj(a->lo, b->lo), alg.conj(a->hi, b->hi)};
        }
        break;
      case Rule::kModusPonens:
      case Rule::kModusPonensExact:
        if (auto a = in(0), b = in(1); a && b) {
          const MpMode mode =
              st.rule == Rule::kModusPonens ? MpMode::kModified : MpMode::kExact;
          w[i] = detach_weight(alg, mode, *a, *b);
        }
        break;
    }
  }
  return w;
}

}  // namespace mvl
