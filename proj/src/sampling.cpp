#include "mvl/sampling.hpp"

namespace mvl {

std::vector<std::string> atom_names(int count) {
  static const char* kNames[] = {"p", "q", "r", "s", "t", "u", "v", "w"};
  std::vector<std::string> out;
  for (int k = 0; k < count; ++k) {
    out.push_back(k < 8 ? kNames[k] : "x" + std::to_string(k));
  }
  return out;
}

Sentence random_sentence(const Algebra& alg, const ShapeOptions& shape, std::mt19937& rng) {
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto literal = [&] {
    return Literal{uniform(0, shape.atoms - 1), shape.negation && uniform(0, 1) == 1};
  };
  const int top = alg.top();
  Interval w;
  if (shape.upper_only) {
    w = {uniform(0, top), top};
  } else {
    const int a = uniform(0, top);
    const int b = uniform(0, top);
    w = {std::min(a, b), std::max(a, b)};
  }
  std::vector<Literal> body;
  const int n = uniform(1, shape.max_body);
  for (int k = 0; k < n; ++k) body.push_back(literal());
  switch (uniform(0, 2)) {
    case 0: return {Formula::literal(body.front()), w};
    case 1: return {Formula::conjunction(std::move(body)), w};
    default: return {Formula::rule(std::move(body), uniform(0, shape.atoms - 1)), w};
  }
}

KnowledgeModule random_module(const Algebra& alg, int count, const ShapeOptions& shape,
                              std::mt19937& rng) {
  std::vector<Sentence> sentences;
  for (int k = 0; k < count; ++k) sentences.push_back(random_sentence(alg, shape, rng));
  return KnowledgeModule(alg, atom_names(shape.atoms), std::move(sentences));
}

}  // namespace mvl
