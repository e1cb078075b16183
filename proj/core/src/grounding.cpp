#include "ccgsem/grounding.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace ccgsem {

namespace {

using NodeKind = UngroundedGraph::NodeKind;

struct EventLabeling {
  std::string type;
  std::map<int, std::string> edge_roles;  // edge index -> role
};

// Locally admissible (type, role-per-edge) labelings for one event node:
// some KB instance of the type must match every fixed-entity edge and
// carry every role used by a target edge.
std::vector<EventLabeling> event_options(const UngroundedGraph& u,
                                         const KnowledgeBase& kb, int node,
                                         const std::vector<int>& edges) {
  (void)node;
  // Enumerate witnesses instance-first: per instance, the roles that can
  // serve each edge, then the (small) per-instance product. Dedup across
  // instances of the same type.
  std::map<std::string, std::set<std::vector<std::string>>> by_type;
  for (const auto& inst : kb.events) {
    std::vector<std::vector<std::string>> per_edge;
    bool dead = false;
    for (int ei : edges) {
      const auto& dnode = u.nodes[u.edges[ei].dst];
      if (dnode.kind == NodeKind::Type) {
        dead = true;  // role edge may not point at a type node
        break;
      }
      std::vector<std::string> roles;
      for (const auto& [role, filler] : inst.fillers)
        if (dnode.kind != NodeKind::Entity || filler == dnode.label)
          roles.push_back(role);
      if (roles.empty()) {
        dead = true;
        break;
      }
      per_edge.push_back(std::move(roles));
    }
    if (dead) continue;
    std::vector<std::string> combo(edges.size());
    std::function<void(std::size_t)> expand = [&](std::size_t at) {
      if (at == edges.size()) {
        by_type[inst.type].insert(combo);
        return;
      }
      for (const auto& r : per_edge[at]) {
        combo[at] = r;
        expand(at + 1);
      }
    };
    expand(0);
  }
  std::vector<EventLabeling> out;
  for (const auto& [type, combos] : by_type)
    for (const auto& combo : combos) {
      EventLabeling lab;
      lab.type = type;
      for (std::size_t k = 0; k < edges.size(); ++k)
        lab.edge_roles[edges[k]] = combo[k];
      out.push_back(std::move(lab));
    }
  return out;
}

}  // namespace

GroundResult ground(const UngroundedGraph& u, const KnowledgeBase& kb,
                    const GroundingConfig& cfg) {
  GroundResult res;

  std::vector<int> event_nodes, type_nodes;
  std::map<int, std::vector<int>> event_edges;
  for (int i = 0; i < static_cast<int>(u.nodes.size()); ++i) {
    if (u.nodes[i].kind == NodeKind::Event) event_nodes.push_back(i);
    if (u.nodes[i].kind == NodeKind::Type) type_nodes.push_back(i);
  }
  for (int ei = 0; ei < static_cast<int>(u.edges.size()); ++ei) {
    const auto& e = u.edges[ei];
    if (u.nodes[e.src].kind == NodeKind::Event)
      event_edges[e.src].push_back(ei);
    else if (!(u.nodes[e.dst].kind == NodeKind::Type && e.label == "type"))
      return res;  // edge not anchored at an event: nothing grounds
  }

  std::vector<std::vector<EventLabeling>> options;
  for (int n : event_nodes) {
    options.push_back(event_options(u, kb, n, event_edges[n]));
    if (options.back().empty()) return res;
  }

  std::set<std::string> kb_type_names;
  for (const auto& [ent, tys] : kb.entity_types)
    kb_type_names.insert(tys.begin(), tys.end());
  if (!type_nodes.empty() && kb_type_names.empty()) return res;

  const long safety_cap = static_cast<long>(cfg.max_candidates) * 20;
  std::vector<GroundedGraph> found;
  bool hit_cap = false;

  GroundedGraph base;
  base.source = u;
  base.node_labels.resize(u.nodes.size());
  base.edge_labels.resize(u.edges.size());
  for (int i = 0; i < static_cast<int>(u.nodes.size()); ++i)
    if (u.nodes[i].kind == NodeKind::Entity)
      base.node_labels[i] = u.nodes[i].label;
  for (int ei = 0; ei < static_cast<int>(u.edges.size()); ++ei)
    if (u.edges[ei].label == "type") base.edge_labels[ei] = "type";

  // product over event labelings, then type-node labels
  std::vector<std::size_t> pick(event_nodes.size(), 0);
  std::function<void(std::size_t, GroundedGraph&)> assign_types =
      [&](std::size_t ti, GroundedGraph& g) {
        if (hit_cap) return;
        if (ti == type_nodes.size()) {
          if (satisfiable(g, kb, cfg.strict_types)) {
            found.push_back(g);
            if (static_cast<long>(found.size()) >= safety_cap) hit_cap = true;
          }
          return;
        }
        for (const auto& ty : kb_type_names) {
          g.node_labels[type_nodes[ti]] = ty;
          assign_types(ti + 1, g);
        }
      };

  std::function<void(std::size_t, GroundedGraph&)> assign_events =
      [&](std::size_t vi, GroundedGraph& g) {
        if (hit_cap) return;
        if (vi == event_nodes.size()) {
          assign_types(0, g);
          return;
        }
        for (const auto& opt : options[vi]) {
          g.node_labels[event_nodes[vi]] = opt.type;
          for (const auto& [ei, role] : opt.edge_roles)
            g.edge_labels[ei] = role;
          assign_events(vi + 1, g);
        }
      };

  GroundedGraph work = base;
  assign_events(0, work);

  // canonical text first; label vectors break ties between labelings
  // that serialize identically (e.g. swapped roles on parallel edges)
  std::sort(found.begin(), found.end(),
            [](const GroundedGraph& a, const GroundedGraph& b) {
              auto as = a.str(), bs = b.str();
              if (as != bs) return as < bs;
              if (a.node_labels != b.node_labels)
                return a.node_labels < b.node_labels;
              return a.edge_labels < b.edge_labels;
            });
  found.erase(std::unique(found.begin(), found.end()), found.end());
  if (hit_cap ||
      static_cast<int>(found.size()) > cfg.max_candidates) {
    res.truncated = true;
    if (static_cast<int>(found.size()) > cfg.max_candidates)
      found.resize(cfg.max_candidates);
  }
  res.candidates = std::move(found);
  return res;
}

CandidateSet filter_candidates(std::vector<GroundedGraph> cands,
                               const KnowledgeBase& kb,
                               const std::string& gold) {
  CandidateSet out;
  out.candidates = std::move(cands);
  for (int i = 0; i < static_cast<int>(out.candidates.size()); ++i) {
    auto answers = execute(out.candidates[i], kb);
    if (!answers.empty() && answers.front() == gold) out.positives.push_back(i);
  }
  if (!out.candidates.empty()) out.ungrounded = out.candidates[0].source;
  return out;
}

}  // namespace ccgsem
