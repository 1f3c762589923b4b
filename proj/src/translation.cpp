#include "mvl/translation.hpp"

#include "mvl/errors.hpp"

namespace mvl {

Bridge::Bridge(Algebra source, Algebra target, Renaming f, Unchecked)
    : source_(std::move(source)), target_(std::move(target)), f_(std::move(f)) {}

Bridge::Bridge(Algebra source, Algebra target, Renaming f)
    : Bridge(std::move(source), std::move(target), std::move(f), Unchecked{}) {
  auto report = is_quasi_morphism(source_, target_, f_);
  if (!report.ok()) {
    const auto& v = report.violations.front();
    throw AxiomError("renaming is not a quasi-morphism: condition " +
                     std::to_string(v.condition) + " fails");
  }
}

Bridge Bridge::unchecked(Algebra source, Algebra target, Renaming f) {
  return Bridge(std::move(source), std::move(target), std::move(f), Unchecked{});
}

Interval Bridge::translate(const Interval& v) const {
  if (!v.valid() || v.hi >= source_.size()) {
    throw StructuralError("weight " + to_string(v) + " is not over the source chain");
  }
  return f_.extend(v);
}

Sentence Bridge::translate(const Sentence& s) const {
  return {s.formula, translate(s.weight)};
}

KnowledgeModule Bridge::translate(const KnowledgeModule& km) const {
  std::vector<Sentence> out;
  out.reserve(km.sentences().size());
  for (const auto& s : km.sentences()) out.push_back(translate(s));
  return KnowledgeModule(target_, km.atoms(), std::move(out));
}

Sentence replay_witness(const Bridge& bridge, const KnowledgeModule& gamma,
                        const DerivationTrace& target_trace) {
  std::map<int, Interval> leaf_weights;
  for (int leaf : target_trace.leaves()) {
    const Sentence& t = target_trace.steps[leaf].conclusion;
    const Sentence* origin = nullptr;
    for (const auto& s : gamma.sentences()) {
      if (s.formula == t.formula && bridge.translate(s.weight) == t.weight) {
        origin = &s;
        break;
      }
    }
    if (!origin) {
      throw StructuralError("trace leaf '" + format_sentence(gamma, {t.formula, {}}) +
                            "' is not the translation of a source sentence");
    }
    leaf_weights[leaf] = origin->weight;
  }
  auto weights = replay(bridge.source(), target_trace, leaf_weights);
  if (!weights.back()) {
    throw PreconditionError("replayed derivation has an empty detachment");
  }
  return {target_trace.conclusion().formula, *weights.back()};
}

bool check_map(const Bridge& bridge, const KnowledgeModule& gamma, const Sentence& e,
               ClosureOptions options) {
  if (!entails(gamma, e, options).holds) return true;
  return entails(bridge.translate(gamma), bridge.translate(e), options).holds;
}

namespace {

ClosureOptions with_arity(ClosureOptions options, const KnowledgeModule& gamma,
                          int query_arity) {
  int bound = 2;
  for (const auto& s : gamma.sentences()) bound = std::max(bound, s.formula.arity());
  options.max_arity = std::max(options.max_arity.value_or(bound), query_arity);
  return options;
}

// E witnesses E' when gamma |- E and {H(E)} |- E'.
bool witness_holds(const Bridge& bridge, const KnowledgeModule& gamma,
                   const Closure& source_closure, const Sentence& e,
                   const Sentence& e_prime, const ClosureOptions& options) {
  if (!source_closure.find_entailing(e)) return false;
  auto single = KnowledgeModule(bridge.target(), gamma.atoms(), {bridge.translate(e)});
  return entails(single, e_prime, options).holds;
}

}  // namespace

WeakConservativeResult check_weak_conservative(const Bridge& bridge,
                                               const KnowledgeModule& gamma,
                                               const Sentence& e_prime,
                                               ClosureOptions options) {
  options = with_arity(options, gamma, e_prime.formula.arity());
  const KnowledgeModule image = bridge.translate(gamma);
  Closure target(image, options);
  auto id = target.find_entailing(e_prime);
  if (!id) throw PreconditionError("E' is not derivable from the translated premises");

  WeakConservativeResult r;
  r.target_trace = target.trace(*id);
  r.witness = replay_witness(bridge, gamma, r.target_trace);
  Closure source(gamma, options);
  r.holds = witness_holds(bridge, gamma, source, r.witness, e_prime, options);
  return r;
}

BridgeAudit audit_weak_conservative(const Bridge& bridge, const KnowledgeModule& gamma,
                                    ClosureOptions options) {
  options = with_arity(options, gamma, 0);
  BridgeAudit audit;
  const KnowledgeModule image = bridge.translate(gamma);
  Closure target(image, options);
  Closure source(gamma, options);
  for (int id : target.minimal_steps()) {
    ++audit.checked;
    const Sentence& e_prime = target.step(id).conclusion;
    const auto trace = target.trace(id);
    std::string note;
    try {
      const Sentence e = replay_witness(bridge, gamma, trace);
      if (!witness_holds(bridge, gamma, source, e, e_prime, options)) {
        note = "witness " + format_sentence(gamma, e) + " does not reach " +
               format_sentence(image, e_prime);
      }
    } catch (const std::exception& ex) {
      note = format_sentence(image, e_prime) + ": " + ex.what();
    }
    if (!note.empty()) audit.failures.push_back(std::move(note));
  }
  return audit;
}

BridgeAudit audit_map(const Bridge& bridge, const KnowledgeModule& gamma,
                      ClosureOptions options) {
  options = with_arity(options, gamma, 0);
  BridgeAudit audit;
  Closure source(gamma, options);
  Closure target(bridge.translate(gamma), options);
  for (int id : source.minimal_steps()) {
    ++audit.checked;
    const Sentence& e = source.step(id).conclusion;
    if (!target.find_entailing(bridge.translate(e))) {
      audit.failures.push_back("H(" + format_sentence(gamma, e) +
                               ") is not derivable in the target");
    }
  }
  return audit;
}

std::optional<MapCounterexample> find_map_counterexample(const Bridge& bridge) {
  const Algebra& a = bridge.source();
  const std::vector<std::string> atoms{"p", "q"};
  const Literal p{0, false};
  const Literal q{1, false};
  auto attempt = [&](std::vector<Sentence> gamma,
                     Sentence e) -> std::optional<MapCounterexample> {
    KnowledgeModule km(a, atoms, std::move(gamma));
    if (check_map(bridge, km, e)) return std::nullopt;
    return MapCounterexample{std::move(km), std::move(e)};
  };
  for (Value x = 0; x < a.size(); ++x) {
    const Interval px = Interval::point(x);
    if (auto c = attempt({{Formula::literal(p), px}},
                         {Formula::literal(p.negate()), Interval::point(a.neg(x))})) {
      return c;
    }
    for (Value y = 0; y < a.size(); ++y) {
      const Interval py = Interval::point(y);
      const Interval t = Interval::point(a.conj(x, y));
      if (auto c = attempt({{Formula::literal(p), px}, {Formula::literal(q), py}},
                           {Formula::conjunction({p, q}), t})) {
        return c;
      }
      if (auto c = attempt({{Formula::literal(p), px}, {Formula::rule({p}, 1), py}},
                           {Formula::literal(q), t})) {
        return c;
      }
    }
  }
  return std::nullopt;
}

}  // namespace mvl
