#pragma once

// Conversions between library types and the oracle's plain representations,
// plus fixture loading.

#include <fstream>
#include <string>

#include "mvl/io.hpp"
#include "oracle/oracle.hpp"

namespace support {

inline oracle::Table table(const mvl::Algebra& a) { return a.table().rows(); }

inline oracle::Map map(const mvl::Renaming& f) {
  oracle::Map out;
  for (const auto& j : f.image) out.emplace_back(j.lo, j.hi);
  return out;
}

inline mvl::Renaming renaming(const oracle::Map& m) {
  mvl::Renaming f;
  for (const auto& [lo, hi] : m) f.image.push_back({lo, hi});
  return f;
}

inline mvl::Algebra algebra(const oracle::Table& t) {
  return mvl::Algebra(mvl::Chain::standard(static_cast<int>(t.size())),
                      mvl::ConjTable::from_rows(t));
}

inline oracle::Formula formula(const mvl::Formula& f) {
  oracle::Formula out;
  for (const auto& l : f.body) out.body.push_back(2 * l.atom + (l.negated ? 1 : 0));
  out.head = f.head.value_or(-1);
  return out;
}

inline oracle::Sentence sentence(const mvl::Sentence& s) {
  return {formula(s.formula), {s.weight.lo, s.weight.hi}};
}

inline std::vector<oracle::Sentence> sentences(const mvl::KnowledgeModule& km) {
  std::vector<oracle::Sentence> out;
  for (const auto& s : km.sentences()) out.push_back(sentence(s));
  return out;
}

inline mvl::io::Json fixture(const std::string& name) {
  std::ifstream in(std::string(MVL_FIXTURE_DIR) + "/" + name);
  return mvl::io::Json::parse(in);
}

inline mvl::Algebra fixture_algebra(const std::string& name) {
  return mvl::io::algebra_from_json(fixture(name));
}

/// Every algebra on the standard chains of sizes lo..hi.
inline std::vector<mvl::Algebra> algebras(int lo, int hi) {
  std::vector<mvl::Algebra> out;
  for (int n = lo; n <= hi; ++n) {
    for (auto& a : mvl::enumerate_algebras(n)) out.push_back(std::move(a));
  }
  return out;
}

}  // namespace support
