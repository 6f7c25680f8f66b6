#pragma once

// Seeded random KBs, queries and scenes for the property and oracle tests.

#include <cstdint>
#include <random>
#include <string>

#include "vtkb/kb_model.hpp"
#include "vtkb/query.hpp"
#include "vtkb/scene_selector.hpp"

namespace vtkb::testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
  bool chance(double p) { return std::bernoulli_distribution(p)(gen_); }
  template <typename C>
  const auto& pick(const C& c) {
    return c[static_cast<std::size_t>(uniform(0, static_cast<int>(c.size()) - 1))];
  }
  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

// `n` concepts C0..C(n-1) with up to `m` edges, all pointing from a lower to
// a higher index of a random permutation (so the graph is acyclic).
Taxonomy random_dag(Rng& rng, int n, int m);

// A valid KB exercising every statement kind: concepts, properties,
// individuals with object, concept-valued and literal assertions, tasks,
// contexts, evaluations and rules. validate() reports nothing for it.
KnowledgeBase random_kb(Rng& rng);

// A valid KB of at most `max_individuals` individuals over a small taxonomy,
// shaped for query testing (dense property assertions, shared literals).
KnowledgeBase random_query_kb(Rng& rng, int max_individuals);

// A query over `kb` of 1..max_atoms atoms and at most three variables that
// passes check_query.
Query random_query(Rng& rng, const KnowledgeBase& kb, int max_atoms);

struct SelectionCase {
  KnowledgeBase kb;
  SceneSpec scene;
  int top_n = 1;
};

// Up to `max_items` data items and `max_techniques` techniques on a fixed
// taxonomy, with random evaluations and extra rules.
SelectionCase random_selection_case(Rng& rng, int max_items, int max_techniques);

}  // namespace vtkb::testing
