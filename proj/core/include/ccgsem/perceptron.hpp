#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "ccgsem/grounding.hpp"

namespace ccgsem {

// Sparse predicate-alignment feature counts.
struct FeatureVector {
  std::map<std::string, double> f;

  double dot(const std::map<std::string, double>& w) const;
};

// Alignment features from the candidate's back-mapping: (event lemma,
// event type), (edge label, role), (edge label + event lemma, role),
// (type lemma, KB type), and a bias.
FeatureVector featurize(const GroundedGraph& g);

struct PerceptronConfig {
  int epochs = 5;
  std::uint64_t seed = 1;
};

struct PerceptronModel {
  std::map<std::string, double> weights;
  std::map<std::string, double> averaged;  // used at inference
  int epochs_trained = 0;
  std::uint64_t seed = 0;
  std::string header_tag = "ranker";

  double score(const FeatureVector& fv) const { return fv.dot(averaged); }
  double raw_score(const FeatureVector& fv) const { return fv.dot(weights); }

  void save(std::ostream& out) const;
  static PerceptronModel load(std::istream& in);
};

struct TrainStats {
  int skipped_no_positive = 0;
  long updates = 0;
  std::vector<long> errors_per_epoch;
};

// Latent-positive averaged perceptron: when the argmax candidate is not
// a positive, update toward the best-scoring positive. Examples are
// shuffled per epoch by the seeded RNG; deterministic given the seed.
// Throws TrainError when no example is usable.
PerceptronModel train(const std::vector<CandidateSet>& corpus,
                      const PerceptronConfig& cfg,
                      TrainStats* stats = nullptr);

// Deterministic Fisher-Yates driven by a splitmix-style generator; fixed
// across platforms, unlike std::shuffle.
void seeded_shuffle(std::vector<int>& v, std::uint64_t seed);

}  // namespace ccgsem
