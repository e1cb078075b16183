#pragma once

#include <optional>
#include <string>
#include <vector>

namespace ccgsem {

// Event-graph semantic representation with surface-word predicates.
struct UngroundedGraph {
  enum class NodeKind { Event, Entity, Type, Target };

  struct Node {
    NodeKind kind;
    std::string label;    // event/type lemma or entity id; empty for Target
    int token_index = -1; // source token, drives canonical numbering
    bool operator==(const Node&) const = default;
  };

  struct Edge {
    int src = 0;
    int dst = 0;
    std::string label;  // argN, preposition lemma, or "type"
    bool operator==(const Edge&) const = default;
  };

  std::vector<Node> nodes;
  std::vector<Edge> edges;
  std::optional<int> target;  // index of the TargetNode, if any

  bool operator==(const UngroundedGraph&) const = default;

  std::string node_name(int i) const;  // canonical rendering of a node
  // Canonical text form: one `label(src, dst)` line, sorted.
  std::string str() const;
  // Sorts edges into canonical order (by rendered line).
  void canonicalize();
};

struct ValidationResult {
  bool ok = true;
  std::string reason;  // variable-node | unreachable-entity |
                       // target-unattached | no-event
};

// ok iff the graph has an event, no variable-valued nodes besides the
// target (an arg/preposition edge into a Type node counts as one), every
// entity is reachable from some event, and the target has an edge.
ValidationResult validate(const UngroundedGraph& g);

}  // namespace ccgsem
