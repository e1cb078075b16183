#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ccgsem/config.hpp"
#include "ccgsem/corpus.hpp"
#include "ccgsem/grounding.hpp"
#include "ccgsem/lexicon.hpp"
#include "ccgsem/perceptron.hpp"

namespace ccgsem {

// Per-token lexical category candidates under the active supervision
// mode. Gold mode reads the record's supertags (throws LexiconError when
// absent); constrained modes fall back to induced categories for keys
// missing from the lexicon; induced mode ignores the lexicon entirely.
// The blank token is always forced to {NP}.
std::vector<std::set<CoindexedCategory>> candidate_categories(
    const CorpusRecord& rec, const Lexicon& lex, const RunConfig& cfg);

// parse -> compose -> validate -> ground, pooling candidates across the
// top_n derivations, deduplicated and canonically ordered. Coverage and
// composition failures yield an empty set rather than throwing.
CandidateSet assemble_candidates(const CorpusRecord& rec, const Lexicon& lex,
                                 const KnowledgeBase& kb,
                                 const RunConfig& cfg);

// assemble + positive marking for every record (training input).
std::vector<CandidateSet> assemble_corpus(
    const std::vector<CorpusRecord>& corpus, const Lexicon& lex,
    const KnowledgeBase& kb, const RunConfig& cfg);

struct Prediction {
  std::string answer;
  GroundedGraph graph;
};

// Highest-scoring candidate under the averaged weights; ties go to the
// earlier candidate in canonical order. Absent when nothing grounds or
// the winner's query returns no answer.
std::optional<Prediction> predict(const CorpusRecord& rec, const Lexicon& lex,
                                  const KnowledgeBase& kb,
                                  const PerceptronModel& model,
                                  const RunConfig& cfg);

// Lexicon construction for a supervision mode from the configured files.
Lexicon build_lexicon(const RunConfig& cfg);

}  // namespace ccgsem
