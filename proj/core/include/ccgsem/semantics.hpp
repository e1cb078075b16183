#pragma once

#include <functional>
#include <vector>

#include "ccgsem/graph.hpp"
#include "ccgsem/parser.hpp"

namespace ccgsem {

// Intermediate composition value: a fragment of the sentence graph plus
// the unsaturated argument positions still owed by the category.
struct SemanticExpr {
  std::vector<int> heads;  // node ids this expression is about
  int arity = 0;           // remaining unsaturated arguments
  std::function<SemanticExpr(const SemanticExpr&)> apply;  // set iff arity > 0

  bool is_type = false;    // heads are Type nodes
  bool is_ppfrag = false;  // saturated PP: heads are the NP, label pending
  std::string pp_label;
  bool is_conj = false;    // bare conjunction, consumed by the conj rule
  bool vacuous = false;    // no semantic contribution (e.g. "," category)
};

class GraphBuilder {
 public:
  int add_node(UngroundedGraph::NodeKind kind, const std::string& label,
               int token_index);
  void add_edge(int src, const std::string& label, int dst);
  UngroundedGraph finish() const;  // dedups edges, canonical order

 private:
  UngroundedGraph g_;
};

// Word-level semantics for a supertagged token. Throws ComposeError when
// no template covers the category.
SemanticExpr lexical_semantics(const Token& t, const CoindexedCategory& c,
                               GraphBuilder& builder);

// Composes lexical semantics bottom-up along the derivation. One graph
// per co-indexation combination used at the leaves (the derivation fixes
// one, so the list has a single element). Throws ComposeError on slot
// mismatches or an unsaturated root.
std::vector<UngroundedGraph> compose(const Derivation& d,
                                     const std::vector<Token>& tokens);

}  // namespace ccgsem
