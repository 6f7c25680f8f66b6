#pragma once

// Deliberately naive reference implementations the engine is compared with.

#include <set>
#include <string>
#include <vector>

#include "vtkb/kb_model.hpp"
#include "vtkb/query.hpp"
#include "vtkb/scene_selector.hpp"

namespace vtkb::testing {

// Reflexive-transitive closure by squaring the boolean adjacency matrix until
// it stops changing. Returns sorted (sub, sup) pairs.
std::vector<std::pair<std::string, std::string>> matrix_closure(const Taxonomy& taxonomy);

// Every assignment of every body variable over all nodes and literals of the
// KB, keeping the head tuples of assignments that satisfy all atoms.
std::set<std::vector<Term>> brute_force_query(const KnowledgeBase& kb, const Query& query);

// Full Cartesian product of candidates, filtered by the plan checker, scored,
// fully sorted and truncated. Throws InfeasibleItem like recommend().
std::vector<RankedPlan> enumerate_plans(const KnowledgeBase& kb,
                                        const SubsumptionClosure& closure,
                                        const SceneSpec& scene, int top_n,
                                        const SelectorConfig& config = {});

// Sorted text lines describing a KB independently of the serializer; two KBs
// are structurally identical iff their descriptions are equal.
std::vector<std::string> describe(const KnowledgeBase& kb);

}  // namespace vtkb::testing
