#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ccgsem/category.hpp"

namespace ccgsem {

struct Token {
  std::string surface;
  std::string pos;
  std::optional<std::string> entity;
  bool is_blank = false;
};

// Binary derivation tree. Leaves carry a co-indexed lexical category;
// internal nodes carry the combinator tag and the resulting category.
struct Derivation {
  struct Node {
    // leaf
    int token_index = -1;
    std::optional<CoindexedCategory> lexical;
    // internal
    std::string combinator;
    std::shared_ptr<const Node> left, right;

    Category category;
    bool is_leaf() const { return token_index >= 0; }
  };

  std::shared_ptr<const Node> root;
  double score = 0.0;

  // Canonical bracketed form, the deterministic total order used for
  // tie-breaking and dedup.
  std::string str() const;
};

// First applicable of: forward application, backward application,
// forward composition, backward composition, conj expansion
// (conj X -> X\X). Empty result when no rule applies.
std::optional<std::pair<Category, std::string>> apply_combinator(
    const Category& left, const Category& right);

// -(distinct combinator types) - 0.1 * (sum of leaf category depths)
double score_derivation(const Derivation& d);

// Re-derives every internal node with apply_combinator.
bool revalidate(const Derivation& d);

struct ParseConfig {
  int beam_width = 50;
  int top_n = 10;
  int max_category_depth = 5;
};

// CKY over per-token candidate categories. Full-sentence analyses only
// (root S or NP), sorted by heuristic score descending with canonical
// tie-breaking, capped at top_n. Throws CoverageError when a token has
// an empty candidate set; returns an empty list when nothing parses.
std::vector<Derivation> parse(
    const std::vector<Token>& tokens,
    const std::vector<std::set<CoindexedCategory>>& candidates,
    const ParseConfig& cfg);

// Convenience: expand plain categories to all their co-indexations.
std::set<CoindexedCategory> coindex_all(const std::set<Category>& cats);

}  // namespace ccgsem
