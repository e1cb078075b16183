#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ccgsem/corpus.hpp"
#include "ccgsem/kb.hpp"
#include "ccgsem/lexicon.hpp"

namespace ccgsem {

// Seeded generator for the bundled KB + cloze corpus. Sentences come from
// a fixed template inventory (transitives, PP attachments, relative
// clauses, appositives, passives) over invented entities; every record is
// blanked at an entity whose answer is uniquely recoverable from the KB.
struct SynthConfig {
  std::uint64_t seed = 7;
  int companies = 260;
  int people = 140;
  int cities = 80;
  int countries = 30;
  int years = 70;  // consecutive years starting at year_base
  int year_base = 1950;
  int train_sentences = 2400;
  int test_sentences = 2100;
};

struct SynthOutput {
  KnowledgeBase kb;
  std::vector<CorpusRecord> train;
  std::vector<CorpusRecord> test;
  // gold word lexicon ranked by train-corpus frequency, and the POS
  // lexicon observed in train
  RankedEntries word_ranked;
  std::map<std::string, std::set<Category>> pos_lexicon;
  std::string manifest_json;
};

SynthOutput generate_synth(const SynthConfig& cfg);

// Writes kb.txt, train.jsonl, test.jsonl, word_lexicon.txt,
// pos_lexicon.txt and manifest.json into dir (created if needed).
void write_synth(const SynthOutput& out, const std::string& dir);

}  // namespace ccgsem
