#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "ccgsem/config.hpp"
#include "ccgsem/corpus.hpp"
#include "ccgsem/kb.hpp"
#include "ccgsem/lexicon.hpp"
#include "ccgsem/parser.hpp"

namespace ccgsem {

struct EvalReport {
  double overall = 0.0;            // percent
  double bucket_acc[3] = {};       // 2-, 3-, 4-or-more-entity sentences
  long bucket_correct[3] = {};
  long bucket_total[3] = {};
  long total = 0;
  long correct = 0;
  long unanswered = 0;
  bool folded_buckets = false;  // a sentence with >4 entities was folded in

  std::string table() const;  // aligned text table
  std::string tsv() const;    // machine-readable rows
};

using PredictFn =
    std::function<std::optional<std::string>(const CorpusRecord&)>;

// Absent predictions count as wrong; deterministic and order-invariant.
EvalReport evaluate(const std::vector<CorpusRecord>& corpus,
                    const PredictFn& system);

// Head dependency: (functor head token, argument head token, functor
// head's lexical category). Heads percolate through the functor except
// for modifiers, which keep the argument's head.
using LabeledDep = std::tuple<int, int, std::string>;
std::set<LabeledDep> extract_dependencies(const Derivation& d);

struct SyntaxScore {
  double lf1 = 0.0;  // labeled, directed
  double uf1 = 0.0;  // unlabeled, undirected
  bool degenerate = false;  // an empty dependency set on either side
};

SyntaxScore score_syntax(const Derivation& predicted,
                         const Derivation& reference);

struct SweepRow {
  int size = 0;
  double lf1 = 0.0;      // mean syntax LF1 vs gold supertag derivations
  double accuracy = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  bool partial = false;  // a retrain failed; remaining sizes skipped
  std::string tsv() const;
};

// For each size k: constrain the ranked lexicon to its top k entries,
// retrain the ranker with the configured seed, evaluate on test. Sizes
// must be ascending and unique.
SweepResult sweep_lexicon(const std::vector<CorpusRecord>& train,
                          const std::vector<CorpusRecord>& test,
                          const RankedEntries& ranked,
                          const std::vector<int>& sizes,
                          const KnowledgeBase& kb, const RunConfig& cfg);

}  // namespace ccgsem
