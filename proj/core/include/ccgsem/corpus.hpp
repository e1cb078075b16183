#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ccgsem/parser.hpp"

namespace ccgsem {

// One cloze sentence: POS-tagged tokens with one blanked-out entity
// mention and the entity that used to fill it.
struct CorpusRecord {
  std::string id;
  std::vector<Token> tokens;
  int blank_index = -1;
  std::string answer;
  std::vector<std::string> supertags;  // empty when not provided
  int entity_count = 0;                // original count, including the blank
};

struct CorpusStats {
  long sentences = 0;
  long tokens = 0;
  long word_types = 0;
  long entities = 0;  // distinct entity ids mentioned (incl. answers)
};

struct LoadReport {
  std::vector<CorpusRecord> records;
  std::vector<std::string> rejected;  // "id: reason"
  CorpusStats stats;
};

// Newline-delimited JSON, one record per line:
//   {"id": ..., "tokens": [[surface, pos, entity-or-null], ...],
//    "blank_index": ..., "answer": ..., "entity_count": ...,
//    "supertags": [...]?}
// The blank token's surface is "__blank__". Bad records are collected and
// reported; more than 1% rejections aborts with a CorpusError.
LoadReport load_corpus(std::istream& in);
LoadReport load_corpus_file(const std::string& path);

void save_corpus(std::ostream& out, const std::vector<CorpusRecord>& recs);

std::string format_stats(const CorpusStats& s);

}  // namespace ccgsem
