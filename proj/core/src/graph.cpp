#include "ccgsem/graph.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <sstream>

namespace ccgsem {

std::string UngroundedGraph::node_name(int i) const {
  const Node& nd = nodes[i];
  switch (nd.kind) {
    case NodeKind::Entity:
      return nd.label;
    case NodeKind::Target:
      return "TARGET";
    case NodeKind::Event:
    case NodeKind::Type:
      break;
  }
  // events e1,e2,... and types t1,t2,... numbered in token order
  int rank = 1;
  for (int j = 0; j < static_cast<int>(nodes.size()); ++j) {
    if (j == i) break;
    if (nodes[j].kind == nd.kind &&
        (nodes[j].token_index < nd.token_index ||
         (nodes[j].token_index == nd.token_index && j < i)))
      ++rank;
  }
  char tag = nd.kind == NodeKind::Event ? 'e' : 't';
  return nd.label + ":" + tag + std::to_string(rank);
}

std::string UngroundedGraph::str() const {
  std::vector<std::string> lines;
  for (const auto& e : edges)
    lines.push_back(e.label + "(" + node_name(e.src) + ", " +
                    node_name(e.dst) + ")");
  std::sort(lines.begin(), lines.end());
  std::ostringstream out;
  for (const auto& l : lines) out << l << "\n";
  return out.str();
}

void UngroundedGraph::canonicalize() {
  std::stable_sort(edges.begin(), edges.end(),
                   [this](const Edge& a, const Edge& b) {
                     auto ka = a.label + "(" + node_name(a.src) + ", " +
                               node_name(a.dst) + ")";
                     auto kb = b.label + "(" + node_name(b.src) + ", " +
                               node_name(b.dst) + ")";
                     return ka < kb;
                   });
}

ValidationResult validate(const UngroundedGraph& g) {
  bool has_event = false;
  for (const auto& nd : g.nodes)
    if (nd.kind == UngroundedGraph::NodeKind::Event) has_event = true;
  if (!has_event) return {false, "no-event"};

  for (const auto& e : g.edges) {
    if (g.nodes[e.dst].kind == UngroundedGraph::NodeKind::Type &&
        e.label != "type")
      return {false, "variable-node"};
  }

  // reachability from event nodes over directed edges
  std::vector<char> reach(g.nodes.size(), 0);
  std::queue<int> q;
  for (int i = 0; i < static_cast<int>(g.nodes.size()); ++i)
    if (g.nodes[i].kind == UngroundedGraph::NodeKind::Event) {
      reach[i] = 1;
      q.push(i);
    }
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (const auto& e : g.edges)
      if (e.src == u && !reach[e.dst]) {
        reach[e.dst] = 1;
        q.push(e.dst);
      }
  }
  for (int i = 0; i < static_cast<int>(g.nodes.size()); ++i)
    if (g.nodes[i].kind == UngroundedGraph::NodeKind::Entity && !reach[i])
      return {false, "unreachable-entity"};

  if (g.target) {
    bool attached = false;
    for (const auto& e : g.edges)
      if (e.src == *g.target || e.dst == *g.target) attached = true;
    if (!attached) return {false, "target-unattached"};
  }
  return {};
}

}  // namespace ccgsem
