#pragma once

#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "ccgsem/graph.hpp"

namespace ccgsem {

// Reified event: typed, with named role fillers.
struct EventInstance {
  std::string id;
  std::string type;
  std::map<std::string, std::string> fillers;  // role -> entity or literal

  bool operator==(const EventInstance&) const = default;
};

struct KnowledgeBase {
  std::set<std::string> entities;  // includes literal leaf values
  std::map<std::string, std::vector<std::string>> schema;  // type -> roles
  std::vector<EventInstance> events;
  std::map<std::string, std::set<std::string>> entity_types;

  // entity -> event indexes; (a,b) -> event indexes linking the pair
  std::map<std::string, std::vector<int>> entity_index;
  std::map<std::pair<std::string, std::string>, std::vector<int>> pair_index;

  void build_indexes();
  bool indexes_consistent() const;  // rebuild-and-compare audit

  bool operator==(const KnowledgeBase& o) const {
    return entities == o.entities && schema == o.schema &&
           events == o.events && entity_types == o.entity_types;
  }
};

// Sections: [schema] `type: role1, role2`, [types] `entity: t1, t2`,
// [events] `id<TAB>type<TAB>role=filler;...`. Throws KbError with the
// offending line number.
KnowledgeBase load_kb(std::istream& in);
KnowledgeBase load_kb_file(const std::string& path);
void save_kb(std::ostream& out, const KnowledgeBase& kb);

// Ungrounded graph relabeled into the KB vocabulary. Structure (nodes,
// edges, indexes) is shared with `source`, making the back-mapping a
// bijection by construction.
struct GroundedGraph {
  UngroundedGraph source;
  std::vector<std::string> node_labels;  // grounded label per node
  std::vector<std::string> edge_labels;  // grounded role per edge

  std::string str() const;  // canonical text form, grounded labels
  bool operator==(const GroundedGraph&) const = default;
};

// All entities fillable at the target such that some assignment of KB
// events to the graph's event nodes satisfies every edge and type
// constraint; ordered by support count descending, then entity id.
// Throws QueryError when the graph has no target.
std::vector<std::string> execute(const GroundedGraph& g,
                                 const KnowledgeBase& kb,
                                 bool strict_types = true);

// Whether any event assignment (plus target binding, if present)
// satisfies the graph.
bool satisfiable(const GroundedGraph& g, const KnowledgeBase& kb,
                 bool strict_types = true);

// For each ordered pair drawn from `entities`, the (event type, role_a,
// role_b) triples some event realizes; symmetric closure explicit.
std::map<std::pair<std::string, std::string>,
         std::set<std::tuple<std::string, std::string, std::string>>>
predicates_between(const std::set<std::string>& entities,
                   const KnowledgeBase& kb);

}  // namespace ccgsem
