#pragma once

#include <string>
#include <vector>

#include "ccgsem/graph.hpp"
#include "ccgsem/kb.hpp"

namespace ccgsem {

struct GroundingConfig {
  int max_candidates = 500;
  bool strict_types = true;
};

struct GroundResult {
  std::vector<GroundedGraph> candidates;  // deterministic (canonical) order
  bool truncated = false;
};

// Every structure-preserving relabeling of u into the KB vocabulary that
// is satisfiable (non-empty answer set when a target is present).
GroundResult ground(const UngroundedGraph& u, const KnowledgeBase& kb,
                    const GroundingConfig& cfg = {});

struct CandidateSet {
  std::string sentence_id;
  UngroundedGraph ungrounded;
  std::vector<GroundedGraph> candidates;
  std::vector<int> positives;  // indexes into candidates (training only)
  bool truncated = false;
};

// positives = candidates whose first answer equals gold.
CandidateSet filter_candidates(std::vector<GroundedGraph> cands,
                               const KnowledgeBase& kb,
                               const std::string& gold);

}  // namespace ccgsem
