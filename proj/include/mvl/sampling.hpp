#pragma once

#include <random>
#include <string>
#include <vector>

#include "mvl/entailment.hpp"

namespace mvl {

/// Formula shapes drawn by the samplers.
struct ShapeOptions {
  int atoms = 3;
  int max_body = 2;
  bool negation = true;     // allow negated literals
  bool upper_only = false;  // weights [v, 1] only
};

/// Atom names p, q, r, s, ...
std::vector<std::string> atom_names(int count);

/// A uniformly shaped random sentence: literal, conjunction or rule, with a
/// random interval weight over the algebra's chain.
Sentence random_sentence(const Algebra& alg, const ShapeOptions& shape, std::mt19937& rng);

/// Module of `count` random sentences over shape.atoms atoms.
KnowledgeModule random_module(const Algebra& alg, int count, const ShapeOptions& shape,
                              std::mt19937& rng);

}  // namespace mvl
