#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "mvl/errors.hpp"
#include "mvl/interval_algebra.hpp"
#include "mvl/sampling.hpp"
#include "mvl/workspace.hpp"
#include "support.hpp"

using namespace mvl;
using io::Json;

namespace {

std::string error_path(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const StructuralError& e) {
    return e.path();
  }
  return "<no error>";
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    static int counter = 0;
    path = std::filesystem::temp_directory_path() /
           ("mvl-io-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST(Pointer, Escaping) {
  EXPECT_EQ(io::child("", "a/b"), "/a~1b");
  EXPECT_EQ(io::child("/x", "m~n"), "/x/m~0n");
  EXPECT_EQ(io::child("/x", std::size_t{3}), "/x/3");
}

TEST(RoundTrip, Algebras) {
  for (const auto& a : support::algebras(2, 5)) {
    const Algebra back = io::algebra_from_json(io::to_json(a));
    ASSERT_EQ(back.chain().labels(), a.chain().labels());
    ASSERT_EQ(back.table(), a.table());
  }
  const Algebra four_chain = support::fixture_algebra("a4.json");
  EXPECT_EQ(io::to_json(four_chain), support::fixture("a4.json"));
}

TEST(RoundTrip, Renamings) {
  const Algebra a = support::fixture_algebra("a5.json");
  const Algebra b = support::fixture_algebra("b7_min.json");
  for (const auto& r : negation_renamings(a.chain(), b.chain())) {
    const Json j = io::renaming_to_json(a.chain(), b.chain(), r);
    ASSERT_EQ(io::renaming_from_json(j, a.chain(), b.chain()), r);
    const auto doc = io::renaming_from_json(j);
    ASSERT_EQ(doc.f, r);
    ASSERT_EQ(doc.to.labels(), b.chain().labels());
  }
}

TEST(RoundTrip, ModulesAndSentences) {
  std::mt19937 rng(3);
  for (const auto& a : support::algebras(2, 4)) {
    const auto km = random_module(a, 4, {}, rng);
    const auto back = io::module_from_json(io::to_json(km));
    ASSERT_EQ(back.atoms(), km.atoms());
    ASSERT_EQ(back.sentences(), km.sentences());
    for (const auto& s : km.sentences()) {
      ASSERT_EQ(io::sentence_from_json(io::sentence_to_json(km, s), km), s);
    }
  }
}

TEST(RoundTrip, SentenceObjectForms) {
  const auto km = io::module_from_json(support::fixture("a5_module.json"));
  const Sentence rule = parse_sentence(km, "p & !q -> r : [a1,1]");
  EXPECT_EQ(io::sentence_from_json(
                Json{{"if", {"p", "!q"}}, {"then", "r"}, {"weight", {"a1", "1"}}}, km),
            rule);
  EXPECT_EQ(io::sentence_from_json(Json{{"fact", "~p"}, {"weight", "a2"}}, km),
            parse_sentence(km, "!p : a2"));
  EXPECT_EQ(io::sentence_from_json(Json{{"fact_conj", {"q", "p"}}, {"weight", "[0,a3]"}}, km),
            parse_sentence(km, "p & q : [0,a3]"));
}

TEST(RoundTrip, Bridges) {
  const auto doc = io::bridge_from_json(support::fixture("a5_b7_bridge.json"));
  const auto back = io::bridge_from_json(io::to_json(doc));
  EXPECT_EQ(back.f, doc.f);
  EXPECT_EQ(back.source.table(), doc.source.table());
  EXPECT_EQ(back.target.table(), doc.target.table());
  ASSERT_TRUE(back.module.has_value());
  EXPECT_EQ(back.module->sentences(), doc.module->sentences());
}

TEST(RoundTrip, SessionInputs) {
  Json req{{"A", support::fixture("a4.json")},
           {"B", support::fixture("B3_min.json")},
           {"f", support::fixture("a4_b3_collapse.json")}};
  const auto in = io::session_inputs_from_json(req);
  const auto back = io::session_inputs_from_json(io::to_json(in));
  EXPECT_EQ(back.f, in.f);
  EXPECT_EQ(back.b_table, in.b_table);
  EXPECT_EQ(back.b_chain.labels(), in.b_chain.labels());
}

TEST(Errors, PointersToTheOffendingNode) {
  Json alg = support::fixture("a4.json");
  alg["conj"][1][2] = "zz";
  EXPECT_EQ(error_path([&] { io::algebra_from_json(alg); }), "/conj/1/2");
  alg = support::fixture("a4.json");
  alg["conj"][3].erase(0);
  EXPECT_EQ(error_path([&] { io::algebra_from_json(alg); }), "/conj/3");
  alg = support::fixture("a4.json");
  alg.erase("conj");
  EXPECT_EQ(error_path([&] { io::algebra_from_json(alg); }), "/conj");

  Json r = support::fixture("a5_b7_f.json");
  r["image"]["a2"] = {"b5", "b1"};
  EXPECT_EQ(error_path([&] { io::renaming_from_json(r); }), "/image/a2");

  Json m = support::fixture("a5_module.json");
  m["sentences"][1] = "p & zz : 1";
  EXPECT_EQ(error_path([&] { io::module_from_json(m); }), "/sentences/1");
}

TEST(Errors, AxiomViolationsAreNotStructural) {
  Json alg = support::fixture("a4.json");
  alg["conj"][1][2] = "a1";
  alg["conj"][2][1] = "a1";
  EXPECT_THROW(io::algebra_from_json(alg), AxiomError);
  EXPECT_NO_THROW(io::algebra_doc_from_json(alg));
}

TEST(Reports, IntervalsDocument) {
  const Json j = io::intervals_json(build(min_algebra(4)));
  EXPECT_EQ(j["intervals"].size(), 10u);
  EXPECT_EQ(j["hasse"].size(), 12u);
}

TEST(Selection, Forms) {
  EXPECT_EQ(io::selection_from_json(Json{{"candidate", 3}}), 3);
  EXPECT_EQ(io::selection_from_json(Json{{"candidate", nullptr}}), std::nullopt);
  EXPECT_EQ(io::selection_from_json(Json{{"candidate", "none"}}), std::nullopt);
  EXPECT_EQ(io::selection_from_json(Json{{"none", true}}), std::nullopt);
  EXPECT_EQ(io::selection_from_json(Json("none")), std::nullopt);
  EXPECT_THROW(io::selection_from_json(Json{{"candidate", "x"}}), StructuralError);
}

TEST(ContentHash, StableAndKeyOrderFree) {
  const Json a = Json::parse(R"({"x":1,"y":[1,2]})");
  const Json b = Json::parse(R"({"y":[1,2],"x":1})");
  EXPECT_EQ(io::content_hash(a), io::content_hash(b));
  EXPECT_EQ(io::content_hash(Json::parse("{}")),
            "44136fa355b3678a1146ad16f7e8649e94fb4fc21fe77e8310c060f61caaff8a");
}

TEST(Workspace, PutGetIsIdempotent) {
  Workspace ws;
  const auto [id, created] = ws.put(EntityKind::kAlgebra, support::fixture("a4.json"));
  EXPECT_TRUE(created);
  EXPECT_EQ(ws.put(EntityKind::kAlgebra, support::fixture("a4.json")),
            std::make_pair(id, false));
  EXPECT_EQ(ws.get(EntityKind::kAlgebra, id), support::fixture("a4.json"));
  EXPECT_EQ(ws.list(EntityKind::kAlgebra), std::vector<std::string>{id});
  EXPECT_THROW(ws.get(EntityKind::kAlgebra, "nope"), NotFound);
  EXPECT_THROW(ws.get(EntityKind::kModule, id), NotFound);
}

TEST(Workspace, RejectsInvalidDocuments) {
  Workspace ws;
  Json alg = support::fixture("a4.json");
  alg["conj"][1][2] = alg["conj"][2][1] = "a1";
  EXPECT_THROW(ws.put(EntityKind::kAlgebra, alg), AxiomError);
  EXPECT_THROW(ws.put(EntityKind::kAlgebra, Json{{"chain", {"0"}}}), StructuralError);
  Json bridge = support::fixture("a5_b7_bridge.json");
  bridge["renaming"]["image"]["a1"] = "0";
  bridge["renaming"]["image"]["a3"] = "1";
  bridge["renaming"]["image"]["a2"] = "1";
  EXPECT_THROW(ws.put(EntityKind::kBridge, bridge), AxiomError);
  EXPECT_TRUE(ws.list(EntityKind::kBridge).empty());
}

TEST(Workspace, ReferencesAndRemoval) {
  Workspace ws;
  const auto a = ws.put(EntityKind::kAlgebra, support::fixture("a5.json")).first;
  const auto b = ws.put(EntityKind::kAlgebra, support::fixture("b7_min.json")).first;
  const auto f = ws.put(EntityKind::kRenaming, support::fixture("a5_b7_f.json")).first;
  Json module = support::fixture("a5_module.json");
  module["algebra"] = a;
  const auto m = ws.put(EntityKind::kModule, module).first;
  const auto br = ws.put(EntityKind::kBridge,
                         Json{{"source", a}, {"target", b}, {"renaming", f}, {"module", m}})
                      .first;
  const Json resolved = ws.resolved(EntityKind::kBridge, br);
  EXPECT_EQ(resolved["source"], support::fixture("a5.json"));
  EXPECT_EQ(resolved["module"]["algebra"], support::fixture("a5.json"));
  EXPECT_NO_THROW(io::bridge_from_json(resolved));

  EXPECT_THROW(ws.put(EntityKind::kBridge, Json{{"source", "missing"}, {"target", b},
                                                {"renaming", f}}),
               ReferenceError);
  EXPECT_THROW(ws.remove(EntityKind::kAlgebra, a), ReferenceError);
  EXPECT_THROW(ws.remove(EntityKind::kModule, m), ReferenceError);
  ws.remove(EntityKind::kBridge, br);
  ws.remove(EntityKind::kModule, m);
  ws.remove(EntityKind::kAlgebra, a);
  EXPECT_THROW(ws.remove(EntityKind::kAlgebra, a), NotFound);
}

TEST(Workspace, SessionsUseReferencesAndReplay) {
  Workspace ws;
  const auto a = ws.put(EntityKind::kAlgebra, support::fixture("a4.json")).first;
  const auto b = ws.put(EntityKind::kAlgebra, support::fixture("B3_min.json")).first;
  const auto f = ws.put(EntityKind::kRenaming, support::fixture("a4_b3_collapse.json")).first;
  const Json req{{"A", a}, {"B", b}, {"f", f}};
  const auto s1 = ws.create_session(req);
  const auto s2 = ws.create_session(req);
  EXPECT_NE(s1, s2);
  EXPECT_EQ(ws.list_sessions().size(), 2u);
  ws.with_session(s1, [](Session& s) { EXPECT_EQ(s.phase(), Phase::kSelectRenaming); });
  ws.select(s1, std::nullopt);
  ws.select(s1, std::nullopt);
  ws.select(s1, std::nullopt);
  ws.with_session(s1, [](Session& s) { EXPECT_EQ(s.phase(), Phase::kFailed); });
  EXPECT_THROW(ws.select(s1, 0), TransitionError);
  EXPECT_THROW(ws.select("missing", 0), NotFound);
  EXPECT_THROW(ws.create_session(Json{{"A", "missing"}, {"B", b}, {"f", f}}), ReferenceError);
}

TEST(Workspace, PersistsEntitiesAndSessions) {
  TempDir dir;
  std::string alg_id;
  std::string session_id;
  {
    Workspace ws(dir.path);
    alg_id = ws.put(EntityKind::kAlgebra, support::fixture("a4.json")).first;
    session_id = ws.create_session(Json{{"A", alg_id},
                                        {"B", support::fixture("B3_min.json")},
                                        {"f", support::fixture("a4_b3_collapse.json")}});
    ws.select(session_id, std::nullopt);
    ws.select(session_id, std::nullopt);
    ws.select(session_id, 0);
  }
  EXPECT_TRUE(std::filesystem::exists(dir.path / "algebras" / (alg_id + ".json")));
  Workspace again(dir.path);
  EXPECT_EQ(again.get(EntityKind::kAlgebra, alg_id), support::fixture("a4.json"));
  again.with_session(session_id, [](Session& s) {
    EXPECT_EQ(s.phase(), Phase::kDone);
    ASSERT_TRUE(s.result().has_value());
    EXPECT_EQ(s.result()->origin, "both");
  });
  // A new session after reload does not collide with the restored one.
  const auto next = again.create_session(Json{{"A", alg_id},
                                              {"B", support::fixture("B3_min.json")},
                                              {"f", support::fixture("a4_b3_collapse.json")}});
  EXPECT_NE(next, session_id);
}

TEST(Collections, Names) {
  for (EntityKind k : {EntityKind::kAlgebra, EntityKind::kRenaming, EntityKind::kModule,
                       EntityKind::kBridge}) {
    EXPECT_EQ(kind_from_collection(collection_name(k)), k);
  }
  EXPECT_FALSE(kind_from_collection("sessions").has_value());
}
