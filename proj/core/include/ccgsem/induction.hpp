#pragma once

#include <set>
#include <string>
#include <vector>

#include "ccgsem/category.hpp"

namespace ccgsem {

struct InductionConfig {
  int rounds = 2;
  int max_category_depth = 5;
  int max_arity = 3;
  // Unknown POS tags get {NP} with a warning; true skips induction for
  // the token instead (empty set).
  bool skip_unknown_pos = false;
};

bool noun_like_pos(const std::string& pos);
bool verb_like_pos(const std::string& pos);
bool known_pos(const std::string& pos);

// Seed categories for a POS class: nouns/entities {N, NP}, verbs {S},
// everything else empty.
std::set<Category> seed_categories(const std::string& pos);

// Bounded deterministic category growth from POS seeds. Each round a
// token may (a) take seed atoms available in either direction as
// arguments, (b) become a modifier X|X of a category visible in that
// direction, (c) head a PP over a noun to its right. Monotone in rounds.
std::vector<std::set<Category>> induce_categories(
    const std::vector<std::string>& pos_tags, const InductionConfig& cfg);

}  // namespace ccgsem
