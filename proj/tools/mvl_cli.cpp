// Command-line front end: exit 0 = pass/true, 1 = fail/false, 2 = structural
// error (unreadable or malformed input).

#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "mvl/errors.hpp"
#include "mvl/io.hpp"
#include "mvl/sampling.hpp"
#include "mvl/service.hpp"
#include "mvl/workspace.hpp"

namespace {

using mvl::io::Json;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kStructural = 2;

bool g_json = false;

Json load(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw mvl::StructuralError("cannot read " + file);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw mvl::StructuralError(file + ": invalid JSON: " + e.what());
  }
}

void emit(const Json& j, const std::string& human) {
  if (g_json) {
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << human;
  }
}

std::string table_text(const mvl::Chain& chain, const mvl::ConjTable& t) {
  std::size_t w = 1;
  for (const auto& l : chain.labels()) w = std::max(w, l.size());
  auto cell = [&](const std::string& s) { return s + std::string(w + 1 - s.size(), ' '); };
  std::ostringstream os;
  os << cell("T") << "| ";
  for (const auto& l : chain.labels()) os << cell(l);
  os << '\n' << std::string(w + 1, '-') << "+-" << std::string((w + 1) * chain.size(), '-')
     << '\n';
  for (mvl::Value a = 0; a < chain.size(); ++a) {
    os << cell(chain.label(a)) << "| ";
    for (mvl::Value b = 0; b < chain.size(); ++b) os << cell(chain.label(t(a, b)));
    os << '\n';
  }
  return os.str();
}

std::string interval_text(const mvl::Chain& c, const mvl::Interval& i) {
  if (i.is_point()) return c.label(i.lo);
  return "[" + c.label(i.lo) + "," + c.label(i.hi) + "]";
}

std::string renaming_text(const mvl::Chain& a, const mvl::Chain& b, const mvl::Renaming& f) {
  std::string out;
  for (mvl::Value x = 0; x < a.size(); ++x) {
    if (x) out += ", ";
    out += a.label(x) + "->" + interval_text(b, f(x));
  }
  return out;
}

std::string candidates_text(const std::vector<mvl::Candidate>& cs, const mvl::Chain& a,
                            const mvl::Chain& b, std::size_t limit) {
  std::ostringstream os;
  os << cs.size() << " candidate(s)\n";
  for (std::size_t k = 0; k < cs.size() && k < limit; ++k) {
    const auto& c = cs[k];
    os << "#" << c.id << (c.metrics.morphism ? " morphism" : " quasi") << " imprecision="
       << c.metrics.imprecision << " displacement=" << c.metrics.displacement
       << " table-distance=" << c.metrics.table_distance << "\n  "
       << renaming_text(a, b, c.renaming) << '\n';
    if (c.table) os << table_text(b, *c.table);
  }
  if (cs.size() > limit) os << "... " << cs.size() - limit << " more\n";
  return os.str();
}

Json candidates_json(const std::vector<mvl::Candidate>& cs, const mvl::Chain& a,
                     const mvl::Chain& b, std::size_t limit) {
  Json items = Json::array();
  int morphisms = 0;
  for (const auto& c : cs) morphisms += c.metrics.morphism;
  for (std::size_t k = 0; k < cs.size() && k < limit; ++k) {
    items.push_back(mvl::io::candidate_to_json(cs[k], a, b));
  }
  return {{"total", cs.size()}, {"morphismCount", morphisms}, {"items", items}};
}

// ---------------------------------------------------------------------------

int cmd_validate(const std::string& file) {
  auto doc = mvl::io::algebra_doc_from_json(load(file));
  auto report = mvl::validate_conj(doc.chain, doc.table);
  Json j = mvl::io::to_json(report, doc.chain);
  std::string human;
  if (report.ok()) {
    const auto neg = mvl::negation(doc.chain);
    const auto part = mvl::sign_partition(doc.chain);
    human = "valid: T1-T5 hold\nnegation:";
    for (mvl::Value x = 0; x < doc.chain.size(); ++x) {
      human += " " + doc.chain.label(x) + "->" + doc.chain.label(neg[x]);
    }
    auto names = [&](const std::vector<mvl::Value>& v) {
      Json out = Json::array();
      for (auto x : v) out.push_back(doc.chain.label(x));
      return out;
    };
    human += "\nnegatives: " + names(part.negatives).dump() + "  fixed: " +
             names(part.fixed).dump() + "  positives: " + names(part.positives).dump() + "\n";
    j["negation"] = Json::array();
    for (auto x : neg) j["negation"].push_back(doc.chain.label(x));
    j["signs"] = {{"negatives", names(part.negatives)},
                  {"fixed", names(part.fixed)},
                  {"positives", names(part.positives)}};
  } else {
    human = "invalid:\n";
    for (const auto& v : report.violations) {
      human += "  " + v.axiom + " witness";
      for (auto x : v.witness) human += " " + doc.chain.label(x);
      human += "\n";
    }
  }
  emit(j, human);
  return report.ok() ? kPass : kFail;
}

int cmd_enumerate(int n, int cap, bool show) {
  const mvl::Chain chain = mvl::Chain::standard(n);
  Json tables = Json::array();
  std::string human;
  std::size_t count = 0;
  mvl::for_each_conj(
      chain,
      [&](const mvl::ConjTable& t) {
        ++count;
        if (show) {
          tables.push_back(mvl::io::table_to_json(chain, t));
          human += "table " + std::to_string(count) + "\n" + table_text(chain, t);
        }
        return true;
      },
      cap);
  Json j = {{"n", n}, {"count", count}};
  if (show) j["tables"] = tables;
  emit(j, human + std::to_string(count) + " conjunction table(s) on a " + std::to_string(n) +
              "-chain\n");
  return kPass;
}

int cmd_intervals(const std::string& file) {
  const auto ia = mvl::build(mvl::io::algebra_from_json(load(file)));
  Json j = mvl::io::intervals_json(ia);
  std::ostringstream os;
  const auto& chain = ia.base().chain();
  const auto& c = ia.carrier();
  os << c.size() << " intervals:";
  for (const auto& i : c) os << ' ' << interval_text(chain, i);
  os << "\nHasse edges (<=*):\n";
  for (const auto& [u, v] : mvl::hasse(ia)) {
    os << "  " << interval_text(chain, c[u]) << " -> " << interval_text(chain, c[v]) << '\n';
  }
  const auto sc = mvl::sign_classes(ia);
  auto line = [&](const char* name, const std::vector<mvl::Interval>& v) {
    os << name << ':';
    for (const auto& i : v) os << ' ' << interval_text(chain, i);
    os << '\n';
  };
  line("negative", sc.negative);
  line("fixed", sc.fixed);
  line("positive", sc.positive);
  line("indefinite", sc.indefinite);
  emit(j, os.str());
  return kPass;
}

int cmd_gen_renamings(const std::string& fa, const std::string& fb,
                      const std::string& initial, std::size_t limit) {
  const auto a = mvl::io::algebra_from_json(load(fa));
  const auto b = mvl::io::algebra_from_json(load(fb));
  std::optional<mvl::Renaming> f0;
  if (!initial.empty()) f0 = mvl::io::renaming_from_json(load(initial), a.chain(), b.chain());
  const auto cs = mvl::gen_renamings(a, b, f0);
  emit(candidates_json(cs, a.chain(), b.chain(), limit),
       candidates_text(cs, a.chain(), b.chain(), limit));
  return cs.empty() ? kFail : kPass;
}

int cmd_gen_tables(const std::string& fa, const std::string& fb, const std::string& ff,
                   std::size_t limit, int cap) {
  const auto a = mvl::io::algebra_from_json(load(fa));
  const auto bchain = mvl::io::chain_from_json(load(fb));
  const auto f = mvl::io::renaming_from_json(load(ff), a.chain(), bchain);
  const auto cs = mvl::gen_tables(a, bchain, f, std::nullopt, cap);
  emit(candidates_json(cs, a.chain(), bchain, limit),
       candidates_text(cs, a.chain(), bchain, limit));
  return cs.empty() ? kFail : kPass;
}

int cmd_gen_both(const std::string& fa, const std::string& fb, std::size_t limit, int cap) {
  const auto a = mvl::io::algebra_from_json(load(fa));
  const auto bchain = mvl::io::chain_from_json(load(fb));
  const auto cs = mvl::gen_both(a, bchain, std::nullopt, std::nullopt, cap);
  emit(candidates_json(cs, a.chain(), bchain, limit),
       candidates_text(cs, a.chain(), bchain, limit));
  return cs.empty() ? kFail : kPass;
}

int cmd_check_qm(const std::string& fa, const std::string& fb, const std::string& ff) {
  const auto a = mvl::io::algebra_from_json(load(fa));
  const auto b = mvl::io::algebra_from_json(load(fb));
  const auto f = mvl::io::renaming_from_json(load(ff), a.chain(), b.chain());
  const auto report = mvl::is_quasi_morphism(a, b, f);
  const bool morphism = report.ok() && f.all_points();
  Json j = mvl::io::to_json(report, a.chain(), b.chain());
  j["morphism"] = morphism;
  std::string human = renaming_text(a.chain(), b.chain(), f) + "\n";
  if (report.ok()) {
    human += morphism ? "morphism\n" : "quasi-morphism (not a morphism)\n";
  } else {
    for (const auto& v : report.violations) {
      human += "condition " + std::to_string(v.condition) + " fails at";
      for (auto x : v.witness) human += " " + a.chain().label(x);
      human += ": got " + interval_text(b.chain(), v.actual) + ", need " +
               interval_text(b.chain(), v.expected) + "\n";
    }
  }
  emit(j, human);
  return report.ok() ? kPass : kFail;
}

mvl::ClosureOptions closure_options(bool exact, int max_arity) {
  mvl::ClosureOptions o;
  o.mp = exact ? mvl::MpMode::kExact : mvl::MpMode::kModified;
  if (max_arity > 0) o.max_arity = max_arity;
  return o;
}

std::string trace_text(const mvl::KnowledgeModule& km, const mvl::DerivationTrace& t) {
  std::ostringstream os;
  for (std::size_t k = 0; k < t.steps.size(); ++k) {
    const auto& s = t.steps[k];
    os << "  " << k << ". " << mvl::format_sentence(km, s.conclusion) << "   ["
       << mvl::rule_tag(s.rule);
    for (int p : s.premises) os << ' ' << p;
    os << "]\n";
  }
  return os.str();
}

int cmd_derive(const std::string& file, const std::string& goal, bool exact, int max_arity) {
  const auto km = mvl::io::module_from_json(load(file));
  const auto options = closure_options(exact, max_arity);
  if (goal.empty()) {
    mvl::Closure c(km, options);
    Json items = Json::array();
    std::string human;
    for (int id : c.minimal_steps()) {
      const auto text = mvl::format_sentence(km, c.step(id).conclusion);
      items.push_back({{"sentence", text}, {"rule", std::string(mvl::rule_tag(c.step(id).rule))}});
      human += text + "\n";
    }
    emit({{"closure", items}, {"contradictions", c.contradictions().size()}}, human);
    return kPass;
  }
  const auto s = mvl::parse_sentence(km, goal);
  const auto r = mvl::entails(km, s, options);
  Json j = {{"goal", mvl::format_sentence(km, s)}, {"holds", r.holds}};
  std::string human = mvl::format_sentence(km, s) + (r.holds ? " is derivable\n" : " is not derivable\n");
  if (r.trace) {
    j["trace"] = mvl::io::trace_to_json(km, *r.trace);
    human += trace_text(km, *r.trace);
  }
  emit(j, human);
  return r.holds ? kPass : kFail;
}

// Atoms for a sentence given without a module: every identifier before ':'.
std::vector<std::string> atoms_in(const std::string& text) {
  std::vector<std::string> out;
  const std::string head = text.substr(0, text.find(':'));
  std::string cur;
  auto flush = [&] {
    if (!cur.empty() && std::find(out.begin(), out.end(), cur) == out.end()) out.push_back(cur);
    cur.clear();
  };
  for (char ch : head) {
    if (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_') {
      cur += ch;
    } else {
      flush();
    }
  }
  flush();
  return out;
}

int cmd_translate(const std::string& file, const std::string& text) {
  const auto doc = mvl::io::bridge_from_json(load(file));
  const mvl::Bridge bridge(doc.source, doc.target, doc.f);
  const mvl::KnowledgeModule km =
      doc.module ? *doc.module : mvl::KnowledgeModule(doc.source, atoms_in(text));
  const auto s = mvl::parse_sentence(km, text);
  const auto t = bridge.translate(s);
  const mvl::KnowledgeModule image(doc.target, km.atoms());
  const auto out = mvl::format_sentence(image, t);
  emit({{"source", mvl::format_sentence(km, s)}, {"target", out}}, out + "\n");
  return kPass;
}

int cmd_verify_bridge(const std::string& file, bool exhaustive, unsigned seed, int samples) {
  const auto doc = mvl::io::bridge_from_json(load(file));
  const auto report = mvl::is_quasi_morphism(doc.source, doc.target, doc.f);
  Json j = {{"quasiMorphism", report.ok()}};
  std::string human;
  if (!report.ok()) {
    human = "renaming is not a quasi-morphism\n";
    j["report"] = mvl::io::to_json(report, doc.source.chain(), doc.target.chain());
    emit(j, human);
    return kFail;
  }
  const mvl::Bridge bridge(doc.source, doc.target, doc.f);
  std::vector<mvl::KnowledgeModule> modules;
  if (doc.module) modules.push_back(*doc.module);
  if (exhaustive) {
    std::mt19937 rng(seed);
    for (int k = 0; k < samples; ++k) {
      const int count = std::uniform_int_distribution<int>(1, 3)(rng);
      modules.push_back(mvl::random_module(doc.source, count, {}, rng));
    }
  }
  std::size_t checked = 0;
  Json failures = Json::array();
  const bool morphism = bridge.is_morphism();
  for (const auto& km : modules) {
    auto weak = mvl::audit_weak_conservative(bridge, km);
    checked += weak.checked;
    for (auto& f : weak.failures) failures.push_back("weak-conservative: " + f);
    if (morphism) {
      auto map = mvl::audit_map(bridge, km);
      checked += map.checked;
      for (auto& f : map.failures) failures.push_back("map: " + f);
    }
  }
  j["morphism"] = morphism;
  j["modules"] = modules.size();
  j["checked"] = checked;
  j["failures"] = failures;
  human = std::string(morphism ? "morphism" : "quasi-morphism") + "; " +
          std::to_string(modules.size()) + " module(s), " + std::to_string(checked) +
          " sentence check(s), " + std::to_string(failures.size()) + " failure(s)\n";
  for (const auto& f : failures) human += "  " + f.get<std::string>() + "\n";
  emit(j, human);
  return failures.empty() ? kPass : kFail;
}

// ---------------------------------------------------------------------------
// Sessions

struct SessionArgs {
  std::string a, b, bchain, f;
  std::string workspace;
  bool non_interactive = false;
  std::string pick = "first";
  std::string id;
  std::string choice;
  int page = 0;
  int size = 20;
};

Json session_request(const SessionArgs& s) {
  Json req = {{"A", load(s.a)}, {"f", load(s.f)}};
  if (!s.b.empty()) req["B"] = load(s.b);
  if (!s.bchain.empty()) req["Bchain"] = load(s.bchain);
  if (s.b.empty() && s.bchain.empty()) {
    throw mvl::StructuralError("one of --b or --bchain is required");
  }
  return req;
}

std::optional<int> prompt(const mvl::Session& s) {
  const auto& in = s.inputs();
  std::cout << "phase " << mvl::phase_name(s.phase()) << ": "
            << candidates_text(s.candidates(), in.a.chain(), in.b_chain, 20)
            << "select a candidate id, or 'none': " << std::flush;
  std::string line;
  while (std::getline(std::cin, line)) {
    if (line == "none" || line == "n") return std::nullopt;
    try {
      return std::stoi(line);
    } catch (const std::exception&) {
      std::cout << "enter a candidate id or 'none': " << std::flush;
    }
  }
  return std::nullopt;
}

int finish_session(const mvl::Session& s, const std::string& id) {
  const Json state = mvl::io::session_state_json(s, id);
  const Json result = mvl::io::session_result_json(s);
  std::string human = "phase " + state["phase"].get<std::string>() + ", result shape " +
                      result["shape"].get<std::string>() + "\n";
  if (s.result()) {
    const auto& r = *s.result();
    human += renaming_text(r.a.chain(), r.b.chain(), r.f) + "\n" + table_text(r.b.chain(), r.b.table());
  }
  emit(result, human);
  return s.result() ? kPass : kFail;
}

int cmd_session_start(const SessionArgs& args) {
  const Json req = session_request(args);
  if (!args.workspace.empty()) {
    mvl::Workspace ws(std::filesystem::path(args.workspace));
    const std::string id = ws.create_session(req);
    const Json state = ws.with_session(id, [&](const mvl::Session& s) {
      return mvl::io::session_state_json(s, id);
    });
    emit(state, "session " + id + " phase " + state["phase"].get<std::string>() + "\n");
    return kPass;
  }
  // In-memory run through the same workspace code path as the service.
  mvl::Workspace ws;
  const std::string id = ws.create_session(req);
  while (!ws.with_session(id, [](const mvl::Session& s) { return s.finished(); })) {
    std::optional<int> choice;
    if (args.non_interactive) {
      const bool any = ws.with_session(id, [](const mvl::Session& s) {
        return !s.candidates().empty();
      });
      if (args.pick == "first" && any) choice = 0;
    } else {
      choice = ws.with_session(id, [](const mvl::Session& s) { return prompt(s); });
    }
    ws.select(id, choice);
  }
  return ws.with_session(id, [&](const mvl::Session& s) { return finish_session(s, id); });
}

int cmd_session_state(const SessionArgs& args) {
  mvl::Workspace ws(std::filesystem::path(args.workspace));
  const Json state = ws.with_session(args.id, [&](const mvl::Session& s) {
    return mvl::io::session_state_json(s, args.id);
  });
  emit(state, "session " + args.id + " phase " + state["phase"].get<std::string>() +
                  ", result shape " + state["shape"].get<std::string>() + "\n");
  return kPass;
}

int cmd_session_candidates(const SessionArgs& args) {
  mvl::Workspace ws(std::filesystem::path(args.workspace));
  return ws.with_session(args.id, [&](const mvl::Session& s) {
    const Json page = mvl::io::candidates_page_json(s, args.page, args.size);
    const auto& cs = s.candidates();
    const std::size_t begin = std::min(cs.size(), static_cast<std::size_t>(args.page) * args.size);
    const std::size_t end = std::min(cs.size(), begin + args.size);
    std::vector<mvl::Candidate> slice(cs.begin() + begin, cs.begin() + end);
    emit(page, "phase " + std::string(mvl::phase_name(s.phase())) + ", " +
                   candidates_text(slice, s.inputs().a.chain(), s.inputs().b_chain, slice.size()));
    return kPass;
  });
}

int cmd_session_select(const SessionArgs& args) {
  mvl::Workspace ws(std::filesystem::path(args.workspace));
  std::optional<int> choice;
  if (args.choice != "none") {
    try {
      choice = std::stoi(args.choice);
    } catch (const std::exception&) {
      throw mvl::StructuralError("expected a candidate id or 'none'");
    }
  }
  ws.select(args.id, choice);
  return ws.with_session(args.id, [&](const mvl::Session& s) {
    if (s.finished()) return finish_session(s, args.id);
    const Json state = mvl::io::session_state_json(s, args.id);
    emit(state, "phase " + state["phase"].get<std::string>() + "\n");
    return kPass;
  });
}

mvl::Service* g_service = nullptr;

int cmd_serve(const std::string& host, int port, const std::string& dir) {
  auto ws = std::make_shared<mvl::Workspace>(
      dir.empty() ? std::nullopt : std::optional<std::filesystem::path>(dir));
  mvl::Service service(ws);
  g_service = &service;
  std::signal(SIGINT, [](int) {
    if (g_service) g_service->stop();
  });
  std::cerr << "listening on " << host << ":" << port << std::endl;
  return service.listen(host, port) ? kPass : kStructural;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite truth-value algebras, quasi-morphisms and MV entailment"};
  app.require_subcommand(1);
  app.add_flag("--json", g_json, "Emit JSON instead of human-readable text");

  std::string f1, f2, f3, goal, initial;
  int n = 3, cap = mvl::kDefaultEnumerationCap, max_arity = 0, samples = 200;
  std::size_t limit = 20;
  bool show = false, exact = false, exhaustive = false;
  unsigned seed = 42;
  std::function<int()> run;

  auto* validate = app.add_subcommand("validate", "Check T1-T5 for an algebra document");
  validate->add_option("algebra", f1)->required();
  validate->callback([&] { run = [&] { return cmd_validate(f1); }; });

  auto* enumerate = app.add_subcommand("enumerate-tnorms", "Count conjunction tables on an n-chain");
  enumerate->add_option("-n", n, "Chain length")->required()->check(CLI::Range(2, 64));
  enumerate->add_option("--cap", cap, "Largest chain enumerated");
  enumerate->add_flag("--tables", show, "Print every table");
  enumerate->callback([&] { run = [&] { return cmd_enumerate(n, cap, show); }; });

  auto* intervals = app.add_subcommand("intervals", "Interval algebra, Hasse diagram, sign classes");
  intervals->add_option("algebra", f1)->required();
  intervals->callback([&] { run = [&] { return cmd_intervals(f1); }; });

  auto* gr = app.add_subcommand("gen-renamings", "Quasi-morphism renamings A -> B");
  gr->add_option("A", f1)->required();
  gr->add_option("B", f2)->required();
  gr->add_option("--initial", initial, "Initial renaming used for ranking");
  gr->add_option("--limit", limit, "Candidates shown");
  gr->callback([&] { run = [&] { return cmd_gen_renamings(f1, f2, initial, limit); }; });

  auto* gt = app.add_subcommand("gen-tables", "Target conjunctions making f a quasi-morphism");
  gt->add_option("A", f1)->required();
  gt->add_option("Bchain", f2)->required();
  gt->add_option("f", f3)->required();
  gt->add_option("--limit", limit, "Candidates shown");
  gt->add_option("--cap", cap, "Largest chain enumerated");
  gt->callback([&] { run = [&] { return cmd_gen_tables(f1, f2, f3, limit, cap); }; });

  auto* gb = app.add_subcommand("gen-both", "(renaming, table) pairs forming a quasi-morphism");
  gb->add_option("A", f1)->required();
  gb->add_option("Bchain", f2)->required();
  gb->add_option("--limit", limit, "Candidates shown");
  gb->add_option("--cap", cap, "Largest chain enumerated");
  gb->callback([&] { run = [&] { return cmd_gen_both(f1, f2, limit, cap); }; });

  auto* qm = app.add_subcommand("check-qm", "Check the quasi-morphism conditions");
  qm->add_option("A", f1)->required();
  qm->add_option("B", f2)->required();
  qm->add_option("f", f3)->required();
  qm->callback([&] { run = [&] { return cmd_check_qm(f1, f2, f3); }; });

  auto* derive = app.add_subcommand("derive", "Closure of a module, or a derivation of --goal");
  derive->add_option("module", f1)->required();
  derive->add_option("--goal", goal, "Sentence, e.g. \"q : [a1,1]\"");
  derive->add_flag("--exact", exact, "Use exact modus ponens instead of T*");
  derive->add_option("--max-arity", max_arity, "Largest conjunction built");
  derive->callback([&] { run = [&] { return cmd_derive(f1, goal, exact, max_arity); }; });

  auto* translate = app.add_subcommand("translate", "Translate a sentence through a bridge");
  translate->add_option("bridge", f1)->required();
  translate->add_option("sentence", goal)->required();
  translate->callback([&] { run = [&] { return cmd_translate(f1, goal); }; });

  auto* verify = app.add_subcommand("verify-bridge", "Audit map / weak conservative properties");
  verify->add_option("bridge", f1)->required();
  verify->add_flag("--exhaustive", exhaustive, "Also audit randomly drawn modules");
  verify->add_option("--seed", seed, "Seed for drawn modules");
  verify->add_option("--samples", samples, "Number of drawn modules");
  verify->callback([&] { run = [&] { return cmd_verify_bridge(f1, exhaustive, seed, samples); }; });

  SessionArgs sa;
  auto* session = app.add_subcommand("session", "Interactive quasi-morphism generator");
  session->require_subcommand(1);
  auto* start = session->add_subcommand("start", "Start (and, without --workspace, run) a session");
  start->add_option("A", sa.a)->required();
  start->add_option("f", sa.f)->required();
  start->add_option("--b", sa.b, "Target algebra");
  start->add_option("--bchain", sa.bchain, "Target chain (no table)");
  start->add_option("--workspace", sa.workspace, "Persist the session in this directory");
  start->add_flag("--non-interactive", sa.non_interactive, "Select automatically");
  start->add_option("--pick", sa.pick, "Automatic choice per phase")
      ->check(CLI::IsMember({"first", "none"}));
  start->callback([&] { run = [&] { return cmd_session_start(sa); }; });
  auto* state = session->add_subcommand("state", "Show a persisted session");
  state->add_option("--workspace", sa.workspace)->required();
  state->add_option("id", sa.id)->required();
  state->callback([&] { run = [&] { return cmd_session_state(sa); }; });
  auto* cands = session->add_subcommand("candidates", "Page through current candidates");
  cands->add_option("--workspace", sa.workspace)->required();
  cands->add_option("id", sa.id)->required();
  cands->add_option("--page", sa.page);
  cands->add_option("--size", sa.size);
  cands->callback([&] { run = [&] { return cmd_session_candidates(sa); }; });
  auto* sel = session->add_subcommand("select", "Select a candidate id, or 'none'");
  sel->add_option("--workspace", sa.workspace)->required();
  sel->add_option("id", sa.id)->required();
  sel->add_option("choice", sa.choice)->required();
  sel->callback([&] { run = [&] { return cmd_session_select(sa); }; });

  std::string host = "127.0.0.1", dir;
  int port = 8080;
  auto* serve = app.add_subcommand("serve", "Run the HTTP service");
  serve->add_option("--host", host);
  serve->add_option("--port", port);
  serve->add_option("--workspace", dir, "Persistence directory");
  serve->callback([&] { run = [&] { return cmd_serve(host, port, dir); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kStructural;
  }
  try {
    return run();
  } catch (const mvl::StructuralError& e) {
    std::cerr << "structural error: " << e.what() << '\n';
  } catch (const mvl::AxiomError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
  } catch (const mvl::CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << '\n';
  } catch (const mvl::NotFound& e) {
    std::cerr << "not found: " << e.what() << '\n';
  } catch (const mvl::ReferenceError& e) {
    std::cerr << "reference error: " << e.what() << '\n';
  } catch (const mvl::TransitionError& e) {
    std::cerr << "transition error: " << e.what() << '\n';
    return kFail;
  } catch (const mvl::UnknownCandidate& e) {
    std::cerr << "unknown candidate: " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return kStructural;
}
