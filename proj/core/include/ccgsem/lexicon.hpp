#pragma once

#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ccgsem/category.hpp"

namespace ccgsem {

enum class LexiconMode { Gold, WordConstrained, PosConstrained, Induced };

const char* lexicon_mode_name(LexiconMode m);

struct Lexicon {
  LexiconMode mode = LexiconMode::Induced;
  std::map<std::string, std::set<Category>> word_entries;
  std::map<std::string, std::set<Category>> pos_entries;
};

// One entry per line: `key<TAB>cat1,cat2,...`; '#' starts a comment.
// The comma atom is written "comma" inside lexicon files.
std::map<std::string, std::set<Category>> load_lexicon_file(std::istream& in);
void save_lexicon_file(std::ostream& out,
                       const std::map<std::string, std::set<Category>>& m);

// Frequency-ranked entry list, as read from a lexicon file whose lines are
// already ordered most frequent first.
using RankedEntries =
    std::vector<std::pair<std::string, std::set<Category>>>;

RankedEntries load_ranked_lexicon_file(std::istream& in);

// Top-k keys of ranked get exactly their listed sets as word entries; all
// other words fall back to induced candidates at lookup time. k larger
// than the entry list clamps; k == 0 returns lex unchanged; k < 0 throws.
Lexicon constrain_lexicon(const Lexicon& lex, const RankedEntries& ranked,
                          int k);

}  // namespace ccgsem
