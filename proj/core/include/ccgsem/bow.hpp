#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ccgsem/corpus.hpp"
#include "ccgsem/kb.hpp"

namespace ccgsem {

// Word features for one (blank, other entity) pair: lowercased unigrams
// plus (word, side-of-the-other-entity) bigrams; the blank token itself
// is excluded.
std::map<std::string, double> bow_features(const CorpusRecord& rec,
                                           int other_token);

// Pair label "type|role_blank|role_other", or "NULL".
extern const std::string kBowNull;

// Distant-supervision label: the lexicographically first KB link between
// the gold answer and the other entity, else NULL.
std::string bow_pair_label(const std::string& answer, const std::string& other,
                           const KnowledgeBase& kb);

struct BowConfig {
  int epochs = 5;
  std::uint64_t seed = 1;
};

struct BowModel {
  // weights["label~feature"]; scoring sums per label
  std::map<std::string, double> weights;
  std::map<std::string, double> averaged;
  std::vector<std::string> labels;  // sorted label inventory
  int epochs_trained = 0;
  std::uint64_t seed = 0;

  std::string predict_label(const std::map<std::string, double>& feats) const;

  void save(std::ostream& out) const;
  static BowModel load(std::istream& in);
};

// Multiclass averaged perceptron over pair examples, distant labels from
// the KB. Deterministic given the seed; throws TrainError on an empty
// corpus.
BowModel train_bow(const std::vector<CorpusRecord>& corpus,
                   const KnowledgeBase& kb, const BowConfig& cfg);

// Predict a relation per pair, conjoin all non-NULL predictions into one
// query with the target at the blank's role, execute, return the first
// answer. All-NULL (or an empty answer set) yields absent.
std::optional<std::string> predict_bow(const CorpusRecord& rec,
                                       const KnowledgeBase& kb,
                                       const BowModel& model);

// The executable conjunction predict_bow builds, exposed for tests.
std::optional<GroundedGraph> bow_query(
    const CorpusRecord& rec,
    const std::vector<std::pair<std::string, std::string>>& pair_labels);

}  // namespace ccgsem
